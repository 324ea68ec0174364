// Copyright 2026 The Realm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace realm {

/// Base class of all library errors. `module_name` identifies the subsystem
/// that raised the error so the CLI can report structured failures.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string what_arg)
      : std::runtime_error(std::move(what_arg)), module_(std::move(module)) {}
  const std::string& module_name() const { return module_; }

 private:
  std::string module_;
};

// -- metric ------------------------------------------------------------------

struct AsymmetryError : Error {
  int i, j;
  AsymmetryError(int i_, int j_, const std::string& msg) : Error("metric", msg), i(i_), j(j_) {}
};

struct NonzeroDiagonalError : Error {
  int i;
  NonzeroDiagonalError(int i_, const std::string& msg) : Error("metric", msg), i(i_) {}
};

struct TriangleViolation : Error {
  int i, j, k;
  TriangleViolation(int i_, int j_, int k_, const std::string& msg)
      : Error("metric", msg), i(i_), j(j_), k(k_) {}
};

// -- patchwork ---------------------------------------------------------------

struct OffsetOutOfRange : Error {
  explicit OffsetOutOfRange(const std::string& msg) : Error("patchwork", msg) {}
};

struct PreconditionViolation : Error {
  explicit PreconditionViolation(std::string module, const std::string& msg)
      : Error(std::move(module), msg) {}
};

// -- nets --------------------------------------------------------------------

struct SegmentTooShort : Error {
  explicit SegmentTooShort(const std::string& msg) : Error("nets", msg) {}
};

struct ArcTooSmall : Error {
  explicit ArcTooSmall(const std::string& msg) : Error("nets", msg) {}
};

struct ZetaTooLarge : Error {
  explicit ZetaTooLarge(std::string module, const std::string& msg)
      : Error(std::move(module), msg) {}
};

struct TooManyClassesNeeded : Error {
  explicit TooManyClassesNeeded(const std::string& msg) : Error("nets", msg) {}
};

// -- walls -------------------------------------------------------------------

struct OffsetBandOutOfRange : Error {
  explicit OffsetBandOutOfRange(const std::string& msg) : Error("walls", msg) {}
};

struct InfeasibleConfig : Error {
  explicit InfeasibleConfig(const std::string& msg) : Error("walls", msg) {}
};

// -- realization -------------------------------------------------------------

struct VertLengthNonpositive : Error {
  explicit VertLengthNonpositive(const std::string& msg) : Error("realization", msg) {}
};

struct MissingTangencyMetadata : Error {
  explicit MissingTangencyMetadata(const std::string& msg) : Error("realization", msg) {}
};

// -- geodesy -----------------------------------------------------------------

struct InvalidDimension : Error {
  explicit InvalidDimension(const std::string& msg) : Error("geodesy", msg) {}
};

struct NodeBudgetExceeded : Error {
  double suggested_h;
  NodeBudgetExceeded(double h, const std::string& msg)
      : Error("geodesy", msg), suggested_h(h) {}
};

// -- tsp ---------------------------------------------------------------------

struct TooLarge : Error {
  explicit TooLarge(const std::string& msg) : Error("tsp", msg) {}
};

struct SpreadTooLarge : Error {
  explicit SpreadTooLarge(const std::string& msg) : Error("tsp", msg) {}
};

// -- cli ---------------------------------------------------------------------

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error("cli", msg) {}
};

}  // namespace realm
