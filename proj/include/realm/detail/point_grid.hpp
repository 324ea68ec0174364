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

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "../vec3.hpp"

namespace realm::detail {

/// Uniform hash grid over points, for radius queries at a fixed scale.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell) {}

  void reserve(std::size_t n) { pts_.reserve(n); }

  int insert(const Vec3& p) {
    int id = static_cast<int>(pts_.size());
    pts_.push_back(p);
    cells_[key(p)].push_back(id);
    return id;
  }

  /// Visit indices of all stored points within `r` of `q` (r must be <= cell).
  template <typename F>
  void for_each_within(const Vec3& q, double r, F&& f) const {
    double r2 = r * r;
    std::int64_t cx = coord(q.x), cy = coord(q.y), cz = coord(q.z);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (int id : it->second)
            if (dist2(pts_[id], q) <= r2) f(id);
        }
  }

  bool any_within(const Vec3& q, double r) const {
    bool found = false;
    double r2 = r * r;
    std::int64_t cx = coord(q.x), cy = coord(q.y), cz = coord(q.z);
    for (std::int64_t dx = -1; dx <= 1 && !found; ++dx)
      for (std::int64_t dy = -1; dy <= 1 && !found; ++dy)
        for (std::int64_t dz = -1; dz <= 1 && !found; ++dz) {
          auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (int id : it->second)
            if (dist2(pts_[id], q) <= r2) { found = true; break; }
        }
    return found;
  }

  /// Squared distance to the nearest stored point, searching rings of cells
  /// outward. Returns infinity for an empty grid.
  double nearest_dist2(const Vec3& q) const {
    if (pts_.empty()) return std::numeric_limits<double>::infinity();
    std::int64_t cx = coord(q.x), cy = coord(q.y), cz = coord(q.z);
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t ring = 0;; ++ring) {
      bool any_cell = false;
      for (std::int64_t dx = -ring; dx <= ring; ++dx)
        for (std::int64_t dy = -ring; dy <= ring; ++dy)
          for (std::int64_t dz = -ring; dz <= ring; ++dz) {
            if (std::max({std::llabs(dx), std::llabs(dy), std::llabs(dz)}) != ring) continue;
            auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
            if (it == cells_.end()) continue;
            any_cell = true;
            for (int id : it->second) best = std::min(best, dist2(pts_[id], q));
          }
    // points in ring k are at least (k-1)*cell away; stop once no closer ring can help
      if (best < std::numeric_limits<double>::infinity()) {
        double safe = static_cast<double>(ring) * cell_;
        if (best <= safe * safe) return best;
      }
      if (ring > 2 && !any_cell && ring * cell_ > 8 * cell_ + std::sqrt(best)) return best;
      if (ring > 1024) return best;  // degenerate fallback
    }
  }

  const std::vector<Vec3>& points() const { return pts_; }

 private:
  std::int64_t coord(double x) const { return static_cast<std::int64_t>(std::floor(x / cell_)); }
  static std::uint64_t pack(std::int64_t x, std::int64_t y, std::int64_t z) {
    auto m = [](std::int64_t v) { return static_cast<std::uint64_t>(v) & 0x1fffffull; };
    return (m(x) << 42) | (m(y) << 21) | m(z);
  }
  std::uint64_t key(const Vec3& p) const { return pack(coord(p.x), coord(p.y), coord(p.z)); }

  double cell_;
  std::vector<Vec3> pts_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

}  // namespace realm::detail
