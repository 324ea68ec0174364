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

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <ostream>

namespace realm {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
  constexpr bool operator!=(const Vec3& o) const { return !(*this == o); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
constexpr double norm2(const Vec3& v) { return dot(v, v); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }
constexpr double dist2(const Vec3& a, const Vec3& b) { return norm2(a - b); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  return v / n;
}

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

/// Exact bit-pattern key for deduplicating points that were produced by the
/// same arithmetic expression (shared boundary nets rely on this).
struct Vec3BitKey {
  std::uint64_t bx, by, bz;
  explicit Vec3BitKey(const Vec3& v) {
    std::memcpy(&bx, &v.x, 8);
    std::memcpy(&by, &v.y, 8);
    std::memcpy(&bz, &v.z, 8);
  }
  bool operator==(const Vec3BitKey& o) const { return bx == o.bx && by == o.by && bz == o.bz; }
};

struct Vec3BitKeyHash {
  std::size_t operator()(const Vec3BitKey& k) const {
    std::uint64_t h = k.bx * 0x9e3779b97f4a7c15ull;
    h ^= k.by + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= k.bz + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Axis-aligned orthonormal frame: origin plus three mutually orthogonal unit
/// axes, each of which is a signed coordinate direction. All patch placements
/// in this library are axis-parallel, so frames never hold general rotations.
struct AxisFrame {
  Vec3 origin;
  Vec3 u{1, 0, 0}, v{0, 1, 0}, w{0, 0, 1};

  Vec3 to_world(const Vec3& local) const {
    return origin + u * local.x + v * local.y + w * local.z;
  }
  Vec3 dir_to_world(const Vec3& local) const {
    return u * local.x + v * local.y + w * local.z;
  }
  Vec3 to_local(const Vec3& world) const {
    Vec3 d = world - origin;
    return {dot(d, u), dot(d, v), dot(d, w)};
  }
  Vec3 dir_to_local(const Vec3& d) const { return {dot(d, u), dot(d, v), dot(d, w)}; }
};

/// Unit vector for coordinate axis 0,1,2 with sign.
inline Vec3 axis_dir(int axis, int sign = 1) {
  Vec3 v;
  v[axis] = static_cast<double>(sign);
  return v;
}

}  // namespace realm
