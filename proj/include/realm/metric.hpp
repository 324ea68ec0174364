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

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace realm {

/// A finite metric space: point labels plus a symmetric distance matrix.
/// Instances are only created through validate_metric, so holding one is a
/// certificate that the metric axioms hold (with the documented float
/// tolerances). Labels are opaque; indexing is positional.
class FiniteMetric {
 public:
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  double operator()(int i, int j) const { return dist_[i][j]; }
  const std::vector<std::vector<double>>& matrix() const { return dist_; }

  double min_distance() const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j) m = std::min(m, dist_[i][j]);
    return m;
  }
  double max_distance() const {
    double m = 0;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j) m = std::max(m, dist_[i][j]);
    return m;
  }

 private:
  friend FiniteMetric validate_metric(const std::vector<std::vector<double>>&,
                                      std::vector<std::string>);
  FiniteMetric(std::vector<std::string> labels, std::vector<std::vector<double>> dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {}

  std::vector<std::string> labels_;
  std::vector<std::vector<double>> dist_;
};

struct SpreadReport {
  double max_dist = 0;
  double min_dist = 0;
  double spread = 1;  // dimensionless ratio, >= 1
};

/// Validates the metric axioms and wraps the matrix. The triangle inequality
/// is checked with an additive tolerance of 1e-9 * max entry, because inputs
/// may come from files with rounded decimals.
inline FiniteMetric validate_metric(const std::vector<std::vector<double>>& matrix,
                                    std::vector<std::string> labels = {}) {
  int n = static_cast<int>(matrix.size());
  if (n < 2) throw PreconditionViolation("metric", "metric needs at least 2 points");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != n)
      throw PreconditionViolation("metric", "distance matrix is not square");
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  if (static_cast<int>(labels.size()) != n)
    throw PreconditionViolation("metric", "label count does not match matrix size");

  double max_d = 0;
  for (const auto& row : matrix)
    for (double d : row) max_d = std::max(max_d, d);
  const double tol = 1e-9 * max_d;

  for (int i = 0; i < n; ++i) {
    if (matrix[i][i] != 0.0) {
      std::ostringstream os;
      os << "diagonal entry (" << i << "," << i << ") = " << matrix[i][i] << " is not zero";
      throw NonzeroDiagonalError(i, os.str());
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(matrix[i][j] - matrix[j][i]) > tol) {
        std::ostringstream os;
        os << "dist(" << labels[i] << "," << labels[j] << ") = " << matrix[i][j]
           << " but dist(" << labels[j] << "," << labels[i] << ") = " << matrix[j][i];
        throw AsymmetryError(i, j, os.str());
      }
      if (!(matrix[i][j] > 0)) {
        std::ostringstream os;
        os << "off-diagonal distance (" << labels[i] << "," << labels[j]
           << ") = " << matrix[i][j] << " is not positive";
        throw PreconditionViolation("metric", os.str());
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + tol) {
          std::ostringstream os;
          os << "triangle inequality violated on (" << labels[i] << "," << labels[j] << ","
             << labels[k] << "): " << matrix[i][k] << " > " << matrix[i][j] << " + "
             << matrix[j][k];
          throw TriangleViolation(i, j, k, os.str());
        }
  return FiniteMetric(std::move(labels), matrix);
}

inline SpreadReport spread(const FiniteMetric& m) {
  SpreadReport r;
  r.max_dist = m.max_distance();
  r.min_dist = m.min_distance();
  r.spread = r.max_dist / r.min_dist;
  return r;
}

/// Rescales so the minimum pairwise distance is exactly 41 n^3 / eps, the
/// floor the embedding construction assumes. Returns the scaled metric and
/// the factor applied, so downstream outputs can be mapped back.
inline std::pair<FiniteMetric, double> rescale_to_min(const FiniteMetric& m, int n, double eps) {
  if (!(eps > 0 && eps < 1))
    throw PreconditionViolation("metric", "epsilon must be in (0,1)");
  double target = 41.0 * n * n * n / eps;
  double factor = target / m.min_distance();
  std::vector<std::vector<double>> scaled(m.size(), std::vector<double>(m.size(), 0.0));
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (i != j) scaled[i][j] = m(i, j) * factor;
  return {validate_metric(scaled, m.labels()), factor};
}

}  // namespace realm
