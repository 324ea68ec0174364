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

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <vector>

#include "detail/parallel.hpp"
#include "errors.hpp"
#include "vec3.hpp"

namespace realm {

// ---------------------------------------------------------------------------
// Adaptive orientation predicate
// ---------------------------------------------------------------------------

namespace detail_pred {

using BigInt = boost::multiprecision::cpp_int;

/// Exact integer image of a double: x = mantissa * 2^exponent.
struct ScaledInt {
  std::int64_t mantissa = 0;
  int exponent = 0;
};

inline ScaledInt decompose(double x) {
  ScaledInt s;
  if (x == 0.0) return s;
  int e;
  double f = std::frexp(x, &e);               // f in [0.5, 1)
  s.mantissa = std::llround(std::ldexp(f, 53));  // exact: 53-bit mantissa
  s.exponent = e - 53;
  return s;
}

/// Exact sign of det[b-a, c-a, d-a] over scaled integers. No rounding, no
/// gcd normalization; fast enough to sit on the hot path.
inline int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  ScaledInt s[12] = {decompose(a.x), decompose(a.y), decompose(a.z), decompose(b.x),
                     decompose(b.y), decompose(b.z), decompose(c.x), decompose(c.y),
                     decompose(c.z), decompose(d.x), decompose(d.y), decompose(d.z)};
  int emin = 0;
  bool any = false;
  for (const auto& v : s)
    if (v.mantissa != 0 && (!any || v.exponent < emin)) {
      emin = v.exponent;
      any = true;
    }
  if (!any) return 0;
  BigInt x[12];
  for (int i = 0; i < 12; ++i) {
    x[i] = s[i].mantissa;
    if (s[i].mantissa != 0) x[i] <<= (s[i].exponent - emin);
  }
  BigInt adx = x[0] - x[9], ady = x[1] - x[10], adz = x[2] - x[11];
  BigInt bdx = x[3] - x[9], bdy = x[4] - x[10], bdz = x[5] - x[11];
  BigInt cdx = x[6] - x[9], cdy = x[7] - x[10], cdz = x[8] - x[11];
  BigInt det = adz * (bdx * cdy - cdx * bdy) + bdz * (cdx * ady - adx * cdy) +
               cdz * (adx * bdy - bdx * ady);
  if (det > 0) return 1;
  if (det < 0) return -1;
  return 0;
}

/// Sign of det[b-a, c-a, d-a]. Fast double path with a conservative error
/// filter; exact integer fallback when the filter cannot certify the sign.
/// Grazing contacts are the common case for geodesics, so the fallback is
/// load-bearing, not decoration.
inline int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const double adx = a.x - d.x, ady = a.y - d.y, adz = a.z - d.z;
  const double bdx = b.x - d.x, bdy = b.y - d.y, bdz = b.z - d.z;
  const double cdx = c.x - d.x, cdy = c.y - d.y, cdz = c.z - d.z;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
  const double errbound = 7.77e-16 * permanent;
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  return orient3d_exact(a, b, c, d);
}

}  // namespace detail_pred

// ---------------------------------------------------------------------------
// Obstacles
// ---------------------------------------------------------------------------

enum class ObstacleKind { Triangle, Square, Tetrahedron };

struct ObstacleMeta {
  int layer = -1;          // layer index within a wall band, -1 if not applicable
  double delta = 0;        // offset of the tangency surface
  std::int64_t tangency_id = -1;  // net-point id the obstacle is tangent at
};

/// A convex obstacle: planar equilateral triangle, planar square, or regular
/// tetrahedron (a solid). Planar obstacles block transversal crossings only.
struct Obstacle {
  ObstacleKind kind = ObstacleKind::Triangle;
  std::vector<Vec3> vertices;  // 3, 4, or 4 points
  ObstacleMeta meta;

  int vertex_count() const { return static_cast<int>(vertices.size()); }

  Vec3 centroid() const {
    Vec3 c;
    for (const Vec3& v : vertices) c += v;
    return c / static_cast<double>(vertices.size());
  }

  double edge_length() const { return dist(vertices[0], vertices[1]); }

  void bbox(Vec3& lo, Vec3& hi) const {
    lo = hi = vertices[0];
    for (const Vec3& v : vertices)
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
  }

  /// Shape invariants at 1e-9 relative: equilateral / planar square with
  /// equal sides / regular tetrahedron.
  bool well_formed() const {
    const double s = edge_length();
    if (!(s > 0)) return false;
    auto close = [&](double a, double b) { return std::abs(a - b) <= 1e-9 * s; };
    switch (kind) {
      case ObstacleKind::Triangle:
        return vertices.size() == 3 && close(dist(vertices[1], vertices[2]), s) &&
               close(dist(vertices[2], vertices[0]), s);
      case ObstacleKind::Square: {
        if (vertices.size() != 4) return false;
        for (int i = 0; i < 4; ++i)
          if (!close(dist(vertices[i], vertices[(i + 1) % 4]), s)) return false;
        if (!close(dist(vertices[0], vertices[2]), s * std::sqrt(2.0))) return false;
        Vec3 n = cross(vertices[1] - vertices[0], vertices[2] - vertices[0]);
        return std::abs(dot(vertices[3] - vertices[0], n)) <= 1e-9 * s * norm(n);
      }
      case ObstacleKind::Tetrahedron: {
        if (vertices.size() != 4) return false;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j)
            if (!close(dist(vertices[i], vertices[j]), s)) return false;
        return true;
      }
    }
    return false;
  }

  /// Faces as triangles (1, 2, or 4).
  template <typename F>
  void for_each_triangle(F&& f) const {
    switch (kind) {
      case ObstacleKind::Triangle:
        f(vertices[0], vertices[1], vertices[2]);
        break;
      case ObstacleKind::Square:
        f(vertices[0], vertices[1], vertices[2]);
        f(vertices[0], vertices[2], vertices[3]);
        break;
      case ObstacleKind::Tetrahedron:
        f(vertices[0], vertices[1], vertices[2]);
        f(vertices[0], vertices[1], vertices[3]);
        f(vertices[0], vertices[2], vertices[3]);
        f(vertices[1], vertices[2], vertices[3]);
        break;
    }
  }

  /// Edges (3, 4, or 6).
  template <typename F>
  void for_each_edge(F&& f) const {
    switch (kind) {
      case ObstacleKind::Triangle:
      case ObstacleKind::Square: {
        int n = vertex_count();
        for (int i = 0; i < n; ++i) f(vertices[i], vertices[(i + 1) % n]);
        break;
      }
      case ObstacleKind::Tetrahedron:
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) f(vertices[i], vertices[j]);
        break;
    }
  }
};

// ---------------------------------------------------------------------------
// Distances (exact closed forms on doubles)
// ---------------------------------------------------------------------------

namespace detail_geom {

inline double point_segment_dist2(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = b - a;
  double t = norm2(ab) > 0 ? std::clamp(dot(p - a, ab) / norm2(ab), 0.0, 1.0) : 0.0;
  return dist2(p, a + ab * t);
}

inline double segment_segment_dist2(const Vec3& p1, const Vec3& q1, const Vec3& p2,
                                    const Vec3& q2) {
  // Ericson-style closest point between segments
  Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
  double s, t;
  if (a <= 1e-300 && e <= 1e-300) return dist2(p1, p2);
  if (a <= 1e-300) {
    s = 0;
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = dot(d1, r);
    if (e <= 1e-300) {
      t = 0;
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = dot(d1, d2), denom = a * e - b * b;
      s = denom > 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return dist2(p1 + d1 * s, p2 + d2 * t);
}

inline double point_triangle_dist2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // project to the plane; inside test via barycentric signs, else edges
  Vec3 n = cross(b - a, c - a);
  double nn = norm2(n);
  if (nn > 0) {
    double sd = dot(p - a, n);
    Vec3 proj = p - n * (sd / nn);
    double w0 = dot(cross(b - a, proj - a), n);
    double w1 = dot(cross(c - b, proj - b), n);
    double w2 = dot(cross(a - c, proj - c), n);
    if (w0 >= 0 && w1 >= 0 && w2 >= 0) return sd * sd / nn;
  }
  return std::min({point_segment_dist2(p, a, b), point_segment_dist2(p, b, c),
                   point_segment_dist2(p, c, a)});
}

inline double triangle_triangle_dist2(const Vec3& a0, const Vec3& a1, const Vec3& a2,
                                      const Vec3& b0, const Vec3& b1, const Vec3& b2) {
  double best = std::numeric_limits<double>::infinity();
  const Vec3 A[3] = {a0, a1, a2}, B[3] = {b0, b1, b2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      best = std::min(best, segment_segment_dist2(A[i], A[(i + 1) % 3], B[j], B[(j + 1) % 3]));
  for (int i = 0; i < 3; ++i) {
    best = std::min(best, point_triangle_dist2(A[i], b0, b1, b2));
    best = std::min(best, point_triangle_dist2(B[i], a0, a1, a2));
  }
  return best;
}

}  // namespace detail_geom

/// True if p is strictly inside the (well-formed) tetrahedron.
inline bool inside_tetrahedron(const Obstacle& t, const Vec3& p) {
  const auto& v = t.vertices;
  int s0 = detail_pred::orient3d(v[0], v[1], v[2], v[3]);
  if (s0 == 0) return false;
  return detail_pred::orient3d(v[0], v[1], v[2], p) == s0 &&
         detail_pred::orient3d(v[0], v[3], v[1], p) == s0 &&
         detail_pred::orient3d(v[1], v[3], v[2], p) == s0 &&
         detail_pred::orient3d(v[2], v[3], v[0], p) == s0;
}

/// Euclidean distance between two obstacles (0 if they touch or overlap).
inline double obstacle_distance(const Obstacle& x, const Obstacle& y) {
  double best2 = std::numeric_limits<double>::infinity();
  x.for_each_triangle([&](const Vec3& a0, const Vec3& a1, const Vec3& a2) {
    y.for_each_triangle([&](const Vec3& b0, const Vec3& b1, const Vec3& b2) {
      best2 = std::min(best2, detail_geom::triangle_triangle_dist2(a0, a1, a2, b0, b1, b2));
    });
  });
  // containment: one solid swallowing the other leaves face distances positive
  if (x.kind == ObstacleKind::Tetrahedron && inside_tetrahedron(x, y.centroid())) return 0.0;
  if (y.kind == ObstacleKind::Tetrahedron && inside_tetrahedron(y, x.centroid())) return 0.0;
  return std::sqrt(best2);
}

// ---------------------------------------------------------------------------
// Segment-vs-obstacle crossing (the visibility predicate's core)
// ---------------------------------------------------------------------------

/// Does segment pq cross the relative interior of triangle abc transversally?
/// Touching the boundary or lying in the plane does not count.
inline bool segment_crosses_triangle(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                                     const Vec3& c) {
  using detail_pred::orient3d;
  int sp = orient3d(a, b, c, p);
  int sq = orient3d(a, b, c, q);
  if (sp == 0 || sq == 0 || sp == sq) return false;  // no strict transversal crossing
  int s1 = orient3d(p, q, a, b);
  int s2 = orient3d(p, q, b, c);
  if (s1 != 0 && s2 != 0 && s1 != s2) return false;
  int s3 = orient3d(p, q, c, a);
  if ((s1 != 0 && s3 != 0 && s1 != s3) || (s2 != 0 && s3 != 0 && s2 != s3)) return false;
  // any zero means the crossing point is on the triangle boundary: allowed
  if (s1 == 0 || s2 == 0 || s3 == 0) return false;
  return true;
}

/// Does the segment cross the relative interior of the planar convex polygon
/// (given in cyclic order)? Decomposition into triangles would wrongly treat
/// the diagonal as boundary, so the polygon is tested directly.
inline bool segment_crosses_polygon(const Vec3& p, const Vec3& q, const std::vector<Vec3>& poly) {
  using detail_pred::orient3d;
  int n = static_cast<int>(poly.size());
  int sp = orient3d(poly[0], poly[1], poly[2], p);
  int sq = orient3d(poly[0], poly[1], poly[2], q);
  if (sp == 0 || sq == 0 || sp == sq) return false;
  int ref = 0;
  for (int i = 0; i < n; ++i) {
    int s = orient3d(p, q, poly[i], poly[(i + 1) % n]);
    if (s == 0) return false;  // crossing point on an edge: allowed
    if (ref == 0) ref = s;
    else if (s != ref) return false;
  }
  return true;
}

/// Does the segment meet the open interior of the tetrahedron? Endpoints on
/// the boundary and edge-grazing contacts do not block.
inline bool segment_crosses_tetrahedron(const Vec3& p, const Vec3& q, const Obstacle& t,
                                        double tol = 1e-12) {
  const auto& v = t.vertices;
  int s0 = detail_pred::orient3d(v[0], v[1], v[2], v[3]);
  if (s0 == 0) return false;
  const std::array<std::array<int, 3>, 4> faces{{{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}};
  double t0 = 0.0, t1 = 1.0;
  Vec3 d = q - p;
  double scale = std::max(1.0, norm(d));
  for (const auto& f : faces) {
    Vec3 n = cross(v[f[1]] - v[f[0]], v[f[2]] - v[f[0]]);
    // orient n outward: the remaining vertex must lie on the negative side
    int other = 6 - f[0] - f[1] - f[2];
    if (dot(n, v[other] - v[f[0]]) > 0) n = -n;
    double denom = dot(n, d);
    double num = dot(n, p - v[f[0]]);
    if (std::abs(denom) < tol * norm(n) * scale) {
      if (num > -tol * norm(n)) return false;  // parallel and outside/on this face
      continue;
    }
    double tc = -num / denom;
    if (denom < 0) t0 = std::max(t0, tc);
    else t1 = std::min(t1, tc);
    if (t0 >= t1) return false;
  }
  if (t1 - t0 <= tol) return false;
  Vec3 mid = p + d * (0.5 * (t0 + t1));
  return inside_tetrahedron(t, mid);
}

inline bool segment_crosses_obstacle(const Vec3& p, const Vec3& q, const Obstacle& o) {
  switch (o.kind) {
    case ObstacleKind::Triangle:
      return segment_crosses_triangle(p, q, o.vertices[0], o.vertices[1], o.vertices[2]);
    case ObstacleKind::Square:
      return segment_crosses_polygon(p, q, o.vertices);
    case ObstacleKind::Tetrahedron:
      return segment_crosses_tetrahedron(p, q, o);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Obstacle sets and the BVH
// ---------------------------------------------------------------------------

/// Construction parameters recorded alongside an obstacle set.
struct Provenance {
  double zeta = 0;
  double sigma = 0;
  double t = 0;
  double nu = 0;
  double side_factor = 0;
  double band_step = 0;
  std::string mode;  // "fidelity", "relaxed", or builder name
  // per band: base offset delta and number of class sub-layers emitted
  std::vector<std::pair<double, int>> band_schedule;
  double declared_band_span = 0;
  double separation_claim = 0;  // certified separation (0 when none is claimed)
};

struct ObstacleSet {
  std::vector<Obstacle> obstacles;
  Provenance provenance;

  std::size_t size() const { return obstacles.size(); }
  bool empty() const { return obstacles.empty(); }

  double max_extent() const {
    if (obstacles.empty()) return 1.0;
    Vec3 lo, hi, l, h;
    obstacles[0].bbox(lo, hi);
    for (const auto& o : obstacles) {
      o.bbox(l, h);
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], l[k]);
        hi[k] = std::max(hi[k], h[k]);
      }
    }
    return std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z, 1e-300});
  }
};

/// Median-split AABB tree over obstacles.
class ObstacleBVH {
 public:
  explicit ObstacleBVH(const ObstacleSet& set) : set_(&set) {
    std::size_t n = set.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    boxes_lo_.resize(n);
    boxes_hi_.resize(n);
    for (std::size_t i = 0; i < n; ++i) set.obstacles[i].bbox(boxes_lo_[i], boxes_hi_[i]);
    if (n > 0) {
      nodes_.reserve(2 * n / kLeafSize + 2);
      build(0, n);
    }
  }

  /// Visit obstacle indices whose box intersects the segment's box inflated
  /// by pad, and which the segment's line can actually meet.
  template <typename F>
  void for_each_segment_candidate(const Vec3& p, const Vec3& q, F&& f, double pad = 0.0) const {
    if (nodes_.empty()) return;
    Vec3 lo{std::min(p.x, q.x) - pad, std::min(p.y, q.y) - pad, std::min(p.z, q.z) - pad};
    Vec3 hi{std::max(p.x, q.x) + pad, std::max(p.y, q.y) + pad, std::max(p.z, q.z) + pad};
    walk_segment(0, p, q, lo, hi, pad, f);
  }

  template <typename F>
  void for_each_box_candidate(const Vec3& lo, const Vec3& hi, F&& f) const {
    if (nodes_.empty()) return;
    walk_box(0, lo, hi, f);
  }

 private:
  static constexpr std::size_t kLeafSize = 8;

  struct Node {
    Vec3 lo, hi;
    int left = -1, right = -1;
    std::uint32_t begin = 0, end = 0;  // leaf range in order_
  };

  int build(std::size_t begin, std::size_t end) {
    int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (std::size_t i = begin; i < end; ++i) {
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], boxes_lo_[order_[i]][k]);
        hi[k] = std::max(hi[k], boxes_hi_[order_[i]][k]);
      }
    }
    nodes_[id].lo = lo;
    nodes_[id].hi = hi;
    if (end - begin <= kLeafSize) {
      nodes_[id].begin = static_cast<std::uint32_t>(begin);
      nodes_[id].end = static_cast<std::uint32_t>(end);
      return id;
    }
    int axis = 0;
    Vec3 ext = hi - lo;
    if (ext.y > ext.x) axis = 1;
    if (ext.z > ext[axis]) axis = 2;
    std::size_t mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::size_t a, std::size_t b) {
                       return boxes_lo_[a][axis] + boxes_hi_[a][axis] <
                              boxes_lo_[b][axis] + boxes_hi_[b][axis];
                     });
    int l = build(begin, mid);
    int r = build(mid, end);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  static bool boxes_overlap(const Vec3& alo, const Vec3& ahi, const Vec3& blo, const Vec3& bhi) {
    return alo.x <= bhi.x && blo.x <= ahi.x && alo.y <= bhi.y && blo.y <= ahi.y &&
           alo.z <= bhi.z && blo.z <= ahi.z;
  }

  static bool segment_hits_box(const Vec3& p, const Vec3& q, const Vec3& lo, const Vec3& hi) {
    double t0 = 0, t1 = 1;
    for (int k = 0; k < 3; ++k) {
      double d = q[k] - p[k];
      if (std::abs(d) < 1e-300) {
        if (p[k] < lo[k] || p[k] > hi[k]) return false;
        continue;
      }
      double a = (lo[k] - p[k]) / d, b = (hi[k] - p[k]) / d;
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
      if (t0 > t1) return false;
    }
    return true;
  }

  template <typename F>
  void walk_segment(int id, const Vec3& p, const Vec3& q, const Vec3& lo, const Vec3& hi,
                    double pad, F&& f) const {
    const Node& n = nodes_[id];
    if (!boxes_overlap(n.lo, n.hi, lo, hi)) return;
    Vec3 grow{pad, pad, pad};
    if (!segment_hits_box(p, q, n.lo - grow, n.hi + grow)) return;
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) f(order_[i]);
      return;
    }
    walk_segment(n.left, p, q, lo, hi, pad, f);
    walk_segment(n.right, p, q, lo, hi, pad, f);
  }

  template <typename F>
  void walk_box(int id, const Vec3& lo, const Vec3& hi, F&& f) const {
    const Node& n = nodes_[id];
    if (!boxes_overlap(n.lo, n.hi, lo, hi)) return;
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) f(order_[i]);
      return;
    }
    walk_box(n.left, lo, hi, f);
    walk_box(n.right, lo, hi, f);
  }

  const ObstacleSet* set_;
  std::vector<std::size_t> order_;
  std::vector<Vec3> boxes_lo_, boxes_hi_;
  std::vector<Node> nodes_;
};

struct DisjointnessReport {
  bool ok = true;
  std::size_t pairs_tested = 0;
  std::vector<std::pair<std::size_t, std::size_t>> intersecting_pairs;
  double min_pair_distance = std::numeric_limits<double>::infinity();
};

/// Exact pairwise disjointness: closed obstacles must keep distance
/// >= 1e-12 * scale. BVH prunes candidate pairs; rows are independent, so
/// the scan parallelizes (results merged order-independently).
inline DisjointnessReport verify_disjoint(const ObstacleSet& set) {
  DisjointnessReport rep;
  if (set.size() < 2) return rep;
  ObstacleBVH bvh(set);
  const double threshold = 1e-12 * set.max_extent();
  std::mutex merge;
  detail::parallel_for(set.size(), [&](std::size_t i) {
    Vec3 lo, hi;
    set.obstacles[i].bbox(lo, hi);
    for (int k = 0; k < 3; ++k) {
      lo[k] -= threshold;
      hi[k] += threshold;
    }
    std::size_t tested = 0;
    double local_min = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    bvh.for_each_box_candidate(lo, hi, [&](std::size_t j) {
      if (j <= i) return;
      ++tested;
      double d = obstacle_distance(set.obstacles[i], set.obstacles[j]);
      local_min = std::min(local_min, d);
      if (d < threshold) bad.emplace_back(i, j);
    });
    std::scoped_lock lock(merge);
    rep.pairs_tested += tested;
    rep.min_pair_distance = std::min(rep.min_pair_distance, local_min);
    for (auto& p : bad) {
      rep.ok = false;
      if (rep.intersecting_pairs.size() < 64) rep.intersecting_pairs.push_back(p);
    }
  });
  std::sort(rep.intersecting_pairs.begin(), rep.intersecting_pairs.end());
  return rep;
}

}  // namespace realm
