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
#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "detail/point_grid.hpp"
#include "errors.hpp"
#include "patchwork.hpp"

namespace realm {

/// An (a,b)-net on a surface: pairwise Euclidean distances >= a, every
/// surface point within Euclidean distance b of some net point.
struct Net {
  std::vector<SurfacePoint> points;
  double a = 0;
  double b = 0;
  double zeta = 0;
};

struct ClassPartition {
  std::vector<std::vector<int>> classes;  // point indices per class
  std::vector<int> class_of;              // per point
  double t = 0;
  double zeta = 0;
};

// ---------------------------------------------------------------------------
// 1D building blocks
// ---------------------------------------------------------------------------

/// k = floor(|ab| / zeta) equal subdivisions, endpoints included. Consecutive
/// spacing lands in [zeta, 1.2*zeta).
inline std::vector<Vec3> segment_net(const Vec3& a, const Vec3& b, double zeta) {
  double len = dist(a, b);
  if (len < 1.0) throw SegmentTooShort("segment length must be >= 1");
  if (zeta > 0.125) throw ZetaTooLarge("nets", "zeta must be <= 1/8");
  int k = static_cast<int>(std::floor(len / zeta));
  std::vector<Vec3> out;
  out.reserve(k + 1);
  out.push_back(a);
  for (int i = 1; i < k; ++i) out.push_back(a + (b - a) * (static_cast<double>(i) / k));
  out.push_back(b);
  return out;
}

/// Angular stations for an arc of the given radius and angular extent,
/// sliced into k = floor(arclen / (1.2*zeta)) equal sub-arcs. For full
/// circles the k stations are distinct (no duplicated endpoint).
inline std::vector<double> arc_stations(double radius, double angle_extent, double zeta,
                                        bool full_circle) {
  if (radius < zeta) throw ArcTooSmall("arc radius must be >= zeta");
  if (zeta > 0.125) throw ZetaTooLarge("nets", "zeta must be <= 1/8");
  double arclen = radius * angle_extent;
  int k = static_cast<int>(std::floor(arclen / (1.2 * zeta)));
  std::vector<double> out;
  if (k < 1) {
    out.push_back(0.0);
    if (!full_circle) out.push_back(angle_extent);
    return out;
  }
  int count = full_circle ? k : k + 1;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(angle_extent * i / k);
  return out;
}

/// Net points on a circular arc (angle pi/2 or a full circle).
inline std::vector<Vec3> arc_net(const Vec3& center, const Vec3& axis_u, const Vec3& axis_v,
                                 double radius, double angle_extent, double zeta,
                                 bool full_circle = false) {
  auto stations = arc_stations(radius, angle_extent, zeta, full_circle);
  std::vector<Vec3> out;
  out.reserve(stations.size());
  for (double t : stations)
    out.push_back(center + axis_u * (radius * std::cos(t)) + axis_v * (radius * std::sin(t)));
  return out;
}

// ---------------------------------------------------------------------------
// Curve nets (shared between adjacent patches)
// ---------------------------------------------------------------------------

struct CurveNet {
  std::vector<double> params;  // segment fraction or angle
  std::vector<Vec3> points;
};

namespace detail_nets {

inline CurveNet segment_curve_net(const BoundaryCurve& c, double zeta) {
  CurveNet n;
  double len = dist(c.a, c.b);
  if (len < 1.0) throw SegmentTooShort("boundary segment shorter than 1");
  int k = static_cast<int>(std::floor(len / zeta));
  n.params.reserve(k + 1);
  n.points.reserve(k + 1);
  for (int i = 0; i <= k; ++i) {
    double t = static_cast<double>(i) / k;
    n.params.push_back(t);
    if (i == 0) n.points.push_back(c.a);
    else if (i == k) n.points.push_back(c.b);
    else n.points.push_back(c.a + (c.b - c.a) * t);
  }
  return n;
}

inline CurveNet arc_curve_net(const BoundaryCurve& c, double zeta) {
  CurveNet n;
  double extent = c.angle1 - c.angle0;
  auto stations = arc_stations(c.radius, extent, zeta, false);
  for (std::size_t i = 0; i < stations.size(); ++i) {
    double th = c.angle0 + stations[i];
    n.params.push_back(th);
    if (i == 0) n.points.push_back(c.a);
    else if (i + 1 == stations.size()) n.points.push_back(c.b);
    else n.points.push_back(c.point_at_angle(th));
  }
  return n;
}

/// Circles are netted as four aligned quarter arcs with exact anchors at the
/// axis directions, so that a cylinder and the joint it meets agree exactly.
inline CurveNet circle_curve_net(const BoundaryCurve& c, double zeta) {
  CurveNet n;
  auto stations = arc_stations(c.radius, kPi / 2, zeta, false);
  const Vec3 anchors[4] = {c.center + c.axis_u * c.radius, c.center + c.axis_v * c.radius,
                           c.center - c.axis_u * c.radius, c.center - c.axis_v * c.radius};
  for (int q = 0; q < 4; ++q) {
    double base = q * (kPi / 2);
    for (std::size_t i = 0; i + 1 < stations.size(); ++i) {  // skip end: next quarter's start
      double th = base + stations[i];
      n.params.push_back(th);
      n.points.push_back(i == 0 ? anchors[q] : c.point_at_angle(th));
    }
  }
  return n;
}

/// A rim circle copies the angular stations of its base circle, evaluated at
/// the rim's own center and radius (shared hole-boundary construction).
inline CurveNet derived_circle_net(const BoundaryCurve& rim, const CurveNet& base) {
  CurveNet n;
  const Vec3 anchors[4] = {rim.center + rim.axis_u * rim.radius, rim.center + rim.axis_v * rim.radius,
                           rim.center - rim.axis_u * rim.radius, rim.center - rim.axis_v * rim.radius};
  for (double th : base.params) {
    n.params.push_back(th);
    double q = th / (kPi / 2);
    double qi = std::round(q);
    if (std::abs(q - qi) < 1e-15 && qi >= 0 && qi < 4)
      n.points.push_back(anchors[static_cast<int>(qi)]);
    else
      n.points.push_back(rim.point_at_angle(th));
  }
  return n;
}

inline CurveNet curve_net(const BoundaryCurve& c, double zeta) {
  switch (c.kind) {
    case BoundaryCurve::Kind::Segment: return segment_curve_net(c, zeta);
    case BoundaryCurve::Kind::Arc: return arc_curve_net(c, zeta);
    case BoundaryCurve::Kind::Circle: return circle_curve_net(c, zeta);
  }
  return {};
}

}  // namespace detail_nets

// ---------------------------------------------------------------------------
// Per-patch interiors
// ---------------------------------------------------------------------------

namespace detail_nets {

/// Interior grid of a square patch: strict interior of the k x k grid, with
/// points inside a hole or within zeta of a hole-rim net point removed.
inline void square_interior(const Patch& p, double zeta,
                            const std::vector<const CurveNet*>& rim_nets,
                            std::vector<SurfacePoint>& out) {
  int k = static_cast<int>(std::floor(p.side / zeta));
  for (int i = 1; i < k; ++i)
    for (int j = 1; j < k; ++j) {
      double lu = p.side * i / k, lv = p.side * j / k;
      if (p.in_hole(lu, lv)) continue;
      Vec3 pos = p.position(lu, lv);
      bool near_rim = false;
      for (const CurveNet* rn : rim_nets) {
        for (const Vec3& rp : rn->points)
          if (dist2(rp, pos) < zeta * zeta) { near_rim = true; break; }
        if (near_rim) break;
      }
      if (!near_rim) out.push_back(p.at(lu, lv));
    }
}

inline void quarter_cylinder_interior(const Patch& p, double zeta, std::vector<SurfacePoint>& out) {
  int kh = static_cast<int>(std::floor(p.length / zeta));
  auto stations = arc_stations(1.0, p.span, zeta, false);
  for (std::size_t i = 1; i + 1 < stations.size(); ++i)
    for (int j = 1; j < kh; ++j)
      out.push_back(p.at(stations[i], p.length * j / kh));
}

inline void full_cylinder_interior(const Patch& p, double zeta, const CurveNet& end_circle,
                                   std::vector<SurfacePoint>& out) {
  int kh = static_cast<int>(std::floor(p.length / zeta));
  for (double th : end_circle.params)
    for (int j = 1; j < kh; ++j) out.push_back(p.at(th, p.length * j / kh));
}

inline void joint_interior(const Patch& p, double zeta, const CurveNet& base_circle,
                           std::vector<SurfacePoint>& out) {
  auto tstat = arc_stations(1.0, kPi / 2, zeta, false);  // meridian arc radius 1
  for (double th : base_circle.params)
    for (std::size_t i = 1; i + 1 < tstat.size(); ++i) out.push_back(p.at(th, tstat[i]));
}

/// Latitude-arc family through the net stations of the alpha boundary arc.
inline void sphere_interior(const Patch& p, double zeta, const CurveNet& alpha,
                            std::vector<SurfacePoint>& out) {
  std::vector<double> phis;
  for (const Vec3& q : alpha.points) {
    Vec3 l = p.frame.to_local(q);
    phis.push_back(std::asin(std::clamp(l.z, -1.0, 1.0)));
  }
  std::sort(phis.begin(), phis.end());
  for (std::size_t j = 1; j + 1 < phis.size(); ++j) {
    double rho = std::cos(phis[j]);
    if (rho < zeta) continue;
    auto stations = arc_stations(rho, kPi / 2, zeta, false);
    for (std::size_t i = 1; i + 1 < stations.size(); ++i) out.push_back(p.at(stations[i], phis[j]));
  }
}

}  // namespace detail_nets

// ---------------------------------------------------------------------------
// Whole-patchwork net (Lemma-4-style shared construction)
// ---------------------------------------------------------------------------

/// Computes a (zeta, 8*zeta)-net on a closed patchwork. Nets of adjacent
/// patches share their boundary-curve points exactly: each curve is netted
/// once and contributed once.
inline Net patchwork_net(const Patchwork& s, double zeta) {
  if (zeta > 0.125) throw ZetaTooLarge("nets", "zeta must be <= 1/8");
  Net net;
  net.a = zeta;
  net.b = 8 * zeta;
  net.zeta = zeta;

  // curve nets; derived circles wait for their base
  std::vector<CurveNet> cnets(s.curves.size());
  std::vector<char> done(s.curves.size(), 0);
  for (std::size_t c = 0; c < s.curves.size(); ++c)
    if (s.curves[c].derived_from < 0) {
      cnets[c] = detail_nets::curve_net(s.curves[c], zeta);
      done[c] = 1;
    }
  for (std::size_t c = 0; c < s.curves.size(); ++c)
    if (!done[c]) {
      int base = s.curves[c].derived_from;
      if (base < 0 || !done[base]) throw Error("nets", "derived circle without base net");
      cnets[c] = detail_nets::derived_circle_net(s.curves[c], cnets[base]);
    }

  // contribute curve points once, deduping exact duplicates (shared corners);
  // curves bound to no present patch (window subsets) contribute nothing
  std::unordered_set<Vec3BitKey, Vec3BitKeyHash> seen;
  for (std::size_t c = 0; c < s.curves.size(); ++c) {
    // attribute each curve point to the first patch bound to it
    int owner = -1;
    for (int pid = 0; pid < static_cast<int>(s.patches.size()) && owner < 0; ++pid)
      for (const auto& ref : s.boundaries[pid])
        if (ref.curve_id == static_cast<int>(c)) { owner = pid; break; }
    if (owner < 0) continue;
    for (const Vec3& q : cnets[c].points) {
      if (!seen.insert(Vec3BitKey(q)).second) continue;
      net.points.push_back(s.patches[owner].nearest(q));
    }
  }

  // per-patch interiors
  for (int pid = 0; pid < static_cast<int>(s.patches.size()); ++pid) {
    const Patch& p = s.patches[pid];
    switch (p.kind) {
      case PatchKind::Square: {
        std::vector<const CurveNet*> rims;
        for (const auto& ref : s.boundaries[pid])
          if (ref.role == CurveRole::SquareHoleRim) rims.push_back(&cnets[ref.curve_id]);
        detail_nets::square_interior(p, zeta, rims, net.points);
        break;
      }
      case PatchKind::QuarterCylinder:
        detail_nets::quarter_cylinder_interior(p, zeta, net.points);
        break;
      case PatchKind::Cylinder: {
        const CurveNet* end = nullptr;
        for (const auto& ref : s.boundaries[pid])
          if (ref.role == CurveRole::CylinderEndLow) end = &cnets[ref.curve_id];
        if (!end) throw Error("nets", "cylinder patch without end circle");
        detail_nets::full_cylinder_interior(p, zeta, *end, net.points);
        break;
      }
      case PatchKind::Joint: {
        const CurveNet* base = nullptr;
        for (const auto& ref : s.boundaries[pid])
          if (ref.role == CurveRole::JointBase) base = &cnets[ref.curve_id];
        if (!base) throw Error("nets", "joint patch without base circle");
        detail_nets::joint_interior(p, zeta, *base, net.points);
        break;
      }
      case PatchKind::SphericalTriangle: {
        const CurveNet* alpha = nullptr;
        for (const auto& ref : s.boundaries[pid])
          if (ref.role == CurveRole::SphereArcAlpha) alpha = &cnets[ref.curve_id];
        if (!alpha) throw Error("nets", "spherical triangle without alpha arc");
        detail_nets::sphere_interior(p, zeta, *alpha, net.points);
        break;
      }
    }
  }
  return net;
}

/// Net of a single free-standing patch (its own boundary curves included).
inline Net patch_net(const Patch& patch, double zeta) {
  if (zeta > 0.125) throw ZetaTooLarge("nets", "zeta must be <= 1/8");
  Net net;
  net.a = zeta;
  net.b = 8 * zeta;
  net.zeta = zeta;
  const Patch& p = patch;
  switch (p.kind) {
    case PatchKind::Square: {
      int k = static_cast<int>(std::floor(p.side / zeta));
      std::vector<CurveNet> rims;
      for (const Hole& h : p.holes) {
        BoundaryCurve rim;
        rim.kind = BoundaryCurve::Kind::Circle;
        rim.center = p.position(h.u, h.v);
        rim.axis_u = p.frame.u;
        rim.axis_v = p.frame.v;
        rim.radius = kHoleRadius;
        rims.push_back(detail_nets::circle_curve_net(rim, zeta));
      }
      std::vector<const CurveNet*> rimp;
      for (auto& r : rims) rimp.push_back(&r);
      for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
          if (i > 0 && i < k && j > 0 && j < k) continue;  // boundary ring only
          net.points.push_back(p.at(p.side * i / k, p.side * j / k));
        }
      detail_nets::square_interior(p, zeta, rimp, net.points);
      for (const auto& r : rims)
        for (const Vec3& q : r.points) net.points.push_back(p.nearest(q));
      break;
    }
    case PatchKind::QuarterCylinder: {
      int kh = static_cast<int>(std::floor(p.length / zeta));
      auto stations = arc_stations(1.0, p.span, zeta, false);
      for (double th : stations)
        for (int j = 0; j <= kh; ++j) net.points.push_back(p.at(th, p.length * j / kh));
      break;
    }
    case PatchKind::Cylinder: {
      BoundaryCurve c;
      c.kind = BoundaryCurve::Kind::Circle;
      c.center = p.frame.origin;
      c.axis_u = p.frame.u;
      c.axis_v = p.frame.v;
      c.radius = 1.0;
      CurveNet end = detail_nets::circle_curve_net(c, zeta);
      int kh = static_cast<int>(std::floor(p.length / zeta));
      for (double th : end.params)
        for (int j = 0; j <= kh; ++j) net.points.push_back(p.at(th, p.length * j / kh));
      break;
    }
    case PatchKind::Joint: {
      BoundaryCurve c;
      c.kind = BoundaryCurve::Kind::Circle;
      c.center = p.frame.origin;
      c.axis_u = p.frame.u;
      c.axis_v = p.frame.v;
      c.radius = 1.0;
      CurveNet base = detail_nets::circle_curve_net(c, zeta);
      auto tstat = arc_stations(1.0, kPi / 2, zeta, false);
      for (double th : base.params)
        for (double t : tstat) net.points.push_back(p.at(th, t));
      break;
    }
    case PatchKind::SphericalTriangle: {
      auto stations = arc_stations(1.0, kPi / 2, zeta, false);
      for (double phi : stations) {
        double rho = std::cos(phi);
        if (rho < zeta) {  // pole
          net.points.push_back(p.at(0.0, phi));
          continue;
        }
        auto th = arc_stations(rho, kPi / 2, zeta, false);
        for (double t : th) net.points.push_back(p.at(t, phi));
      }
      break;
    }
  }
  return net;
}

/// Slides every net point along its normal; a (zeta,8zeta)-net of S becomes
/// a (zeta/2, 12zeta)-net of S(delta).
inline Net offset_net(const Net& n, double delta) {
  OffsetSpec spec(delta);
  Net out;
  out.a = n.zeta / 2;
  out.b = 12 * n.zeta;
  out.zeta = n.zeta;
  out.points.reserve(n.points.size());
  for (const SurfacePoint& sp : n.points) {
    SurfacePoint q = sp;
    q.pos = offset_point(sp, spec);
    out.points.push_back(q);
  }
  return out;
}

/// Greedy first-fit partition into classes with pairwise distance >= t*zeta
/// inside each class. Point order = construction order; ties break to the
/// lowest class index, so results are reproducible.
inline ClassPartition partition_classes(const Net& n, double t) {
  if (!(t >= 1.0 && t < 1.0 / (4 * n.zeta)))
    throw PreconditionViolation("nets", "require 1 <= t < 1/(4 zeta)");
  const int bound = static_cast<int>(std::floor(35.0 * t * t + 1.0));
  const double r = t * n.zeta;
  ClassPartition part;
  part.t = t;
  part.zeta = n.zeta;
  part.class_of.assign(n.points.size(), -1);
  detail::PointGrid grid(r);
  std::vector<int> grid_to_point;
  for (std::size_t i = 0; i < n.points.size(); ++i) {
    const Vec3& q = n.points[i].pos;
    std::vector<char> used(part.classes.size() + 1, 0);
    grid.for_each_within(q, r, [&](int gid) {
      double d2 = dist2(grid.points()[gid], q);
      if (d2 < r * r) {
        int cls = part.class_of[grid_to_point[gid]];
        if (cls < static_cast<int>(used.size())) used[cls] = 1;
      }
    });
    int cls = 0;
    while (cls < static_cast<int>(used.size()) && used[cls]) ++cls;
    if (cls >= bound)
      throw TooManyClassesNeeded("greedy class assignment exceeded floor(35 t^2 + 1) = " +
                                 std::to_string(bound));
    if (cls == static_cast<int>(part.classes.size())) part.classes.emplace_back();
    part.classes[cls].push_back(static_cast<int>(i));
    part.class_of[i] = cls;
    grid_to_point.push_back(static_cast<int>(i));
    grid.insert(q);
  }
  return part;
}

struct NetReport {
  bool packing_ok = true;
  bool covering_ok = true;
  double min_pairwise = std::numeric_limits<double>::infinity();
  double max_covering = 0;
  std::vector<std::pair<int, int>> packing_violations;
  std::vector<Vec3> covering_violations;
  bool ok() const { return packing_ok && covering_ok; }
};

/// Exact all-pairs packing check plus sampled covering check.
inline NetReport verify_net(const std::vector<SurfacePoint>& points,
                            const std::vector<Vec3>& surface_samples, double a, double b) {
  NetReport rep;
  detail::PointGrid grid(std::max(a, b));
  for (const auto& sp : points) grid.insert(sp.pos);
  // packing
  for (std::size_t i = 0; i < points.size(); ++i) {
    grid.for_each_within(points[i].pos, a * (1 - 1e-12), [&](int j) {
      if (j <= static_cast<int>(i)) return;
      double d = dist(points[i].pos, points[j].pos);
      if (d < a * (1 - 1e-12)) {
        rep.packing_ok = false;
        if (rep.packing_violations.size() < 32)
          rep.packing_violations.emplace_back(static_cast<int>(i), j);
      }
      rep.min_pairwise = std::min(rep.min_pairwise, d);
    });
  }
  if (rep.min_pairwise == std::numeric_limits<double>::infinity()) {
    // grid radius may not have caught any pair; recompute min over neighbors loosely
    rep.min_pairwise = a;  // no pair closer than a found
  }
  // covering
  for (const Vec3& s : surface_samples) {
    double d2 = grid.nearest_dist2(s);
    double d = std::sqrt(d2);
    rep.max_covering = std::max(rep.max_covering, d);
    if (d > b * (1 + 1e-12)) {
      rep.covering_ok = false;
      if (rep.covering_violations.size() < 32) rep.covering_violations.push_back(s);
    }
  }
  return rep;
}

/// Convenience: covering samples for a patchwork at resolution a/4, offset to
/// S(delta) when delta != 0.
inline std::vector<Vec3> covering_samples(const Patchwork& s, double a, double delta = 0.0) {
  auto pts = s.sample_surface(a / 4);
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const auto& sp : pts) out.push_back(delta == 0.0 ? sp.pos : offset_point(sp, delta));
  return out;
}

}  // namespace realm
