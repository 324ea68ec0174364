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
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "patch.hpp"
#include "vec3.hpp"

namespace realm {

/// A shared boundary curve between two patches. Endpoint coordinates are
/// constructed once by the builder so that adjacent patches refer to
/// bit-identical anchor points.
struct BoundaryCurve {
  enum class Kind { Segment, Arc, Circle };
  Kind kind = Kind::Segment;
  Vec3 a, b;            // segment / arc endpoints (exact anchors)
  Vec3 center;          // arc or circle center
  Vec3 axis_u, axis_v;  // plane basis of the arc/circle (unit)
  double radius = 0;
  double angle0 = 0, angle1 = 0;  // arc range in the (axis_u, axis_v) basis
  int derived_from = -1;  // circle whose net stations this circle copies
  int id = -1;

  double length() const {
    switch (kind) {
      case Kind::Segment: return dist(a, b);
      case Kind::Arc: return radius * (angle1 - angle0);
      case Kind::Circle: return 2 * kPi * radius;
    }
    return 0;
  }

  Vec3 point_at_angle(double theta) const {
    return center + axis_u * (radius * std::cos(theta)) + axis_v * (radius * std::sin(theta));
  }
};

/// Declares that `curve_id` is the shared boundary between two patches.
struct AdjacencyRecord {
  int patch_a = -1, patch_b = -1;
  int curve_id = -1;
};

/// Roles a curve plays on a patch, used by the net construction to identify
/// which boundary provides which product direction.
enum class CurveRole : std::uint8_t {
  SquareSide,       // one of 4 sides, order: v=0, u=side, v=side, u=0
  SquareHoleRim,    // rim circle of holes[i]
  CylinderEndLow,   // circle or arc at h = 0
  CylinderEndHigh,  // circle or arc at h = length
  CylinderSideLow,  // segment at theta = 0 (quarter only)
  CylinderSideHigh, // segment at theta = span
  JointBase,        // radius-1 circle at t = 0
  JointRim,         // radius-2 circle at t = pi/2
  SphereArcGamma,   // arc in local w = 0 plane
  SphereArcAlpha,   // arc in local v = 0 plane
  SphereArcBeta,    // arc in local u = 0 plane
};

struct PatchBoundaryRef {
  int curve_id = -1;
  CurveRole role{};
  int index = 0;  // side index / hole index
};

struct SignedOffsetResult {
  enum class Kind { OnShell, Inside, Outside } classification = Kind::Outside;
  double delta = 0;        // defined when classification == OnShell
  SurfacePoint nearest;    // foot point, defined when OnShell
  double euclid = 0;       // distance to the surface (always)
};

struct TouchabilityViolation {
  SurfacePoint at;
  Vec3 ball_center;
  Vec3 witness;  // sampled surface point strictly inside the tangent ball
  double depth;
};

struct TouchabilityReport {
  int samples = 0;
  double radius = 0;
  std::vector<TouchabilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// A closed differentiable surface assembled from patches. Adjacency is
/// declared by the builder; validate() confirms the geometry agrees.
class Patchwork {
 public:
  std::vector<Patch> patches;
  std::vector<BoundaryCurve> curves;
  std::vector<AdjacencyRecord> adjacency;
  // per patch: boundary refs (indexed same as patches)
  std::vector<std::vector<PatchBoundaryRef>> boundaries;

  int add_patch(Patch p) {
    p.id = static_cast<int>(patches.size());
    patches.push_back(std::move(p));
    boundaries.emplace_back();
    return patches.back().id;
  }

  int add_curve(BoundaryCurve c) {
    c.id = static_cast<int>(curves.size());
    curves.push_back(std::move(c));
    return curves.back().id;
  }

  void bind(int patch_id, int curve_id, CurveRole role, int index = 0) {
    boundaries[patch_id].push_back({curve_id, role, index});
  }

  void declare_adjacent(int pa, int pb, int curve_id) { adjacency.push_back({pa, pb, curve_id}); }

  /// Sub-patchwork holding the selected patches (ids remapped) and all
  /// curves (ids preserved). Not closed; used to restrict wall construction
  /// to a window of patches.
  Patchwork subset(const std::vector<int>& patch_ids) const {
    Patchwork out;
    out.curves = curves;
    for (int pid : patch_ids) {
      int nid = out.add_patch(patches[pid]);
      out.boundaries[nid] = boundaries[pid];
    }
    return out;
  }

  double area() const {
    double a = 0;
    for (const auto& p : patches) a += p.area();
    return a;
  }

  /// Nearest surface point over all patches (exact per-kind projections,
  /// bounding boxes prune).
  SurfacePoint nearest(const Vec3& q) const {
    SurfacePoint best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const auto& p : patches) {
      Vec3 lo, hi;
      p.bbox(lo, hi);
      double d2 = 0;
      for (int k = 0; k < 3; ++k) {
        double c = std::clamp(q[k], lo[k], hi[k]) - q[k];
        d2 += c * c;
      }
      if (d2 >= best_d2) continue;
      SurfacePoint sp = p.nearest(q);
      double d = dist2(sp.pos, q);
      if (d < best_d2) {
        best_d2 = d;
        best = sp;
      }
    }
    return best;
  }

  /// Parity test: true if q is inside the closed surface. Retries with fresh
  /// ray directions whenever a patch reports an ambiguous crossing.
  bool inside(const Vec3& q, std::uint64_t salt = 0) const {
    std::mt19937_64 rng(0x9d2c5680cafe1234ull ^ salt);
    std::normal_distribution<double> gauss;
    for (int attempt = 0; attempt < 64; ++attempt) {
      Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
      double n = norm(d);
      if (n < 1e-9) continue;
      d = d / n;
      bool ambiguous = false;
      std::size_t crossings = 0;
      std::vector<double> hits;
      for (const auto& p : patches) {
        hits.clear();
        p.ray_hits(q, d, hits, ambiguous, 1e-9 * (1.0 + norm(q)));
        if (ambiguous) break;
        crossings += hits.size();
      }
      if (!ambiguous) return (crossings % 2) == 1;
    }
    throw Error("patchwork", "parity test failed to find an unambiguous ray");
  }

  /// Signed offset of q relative to the surface: the delta with q on
  /// S(delta) when q is within 1/2 of the surface, else just inside/outside.
  SignedOffsetResult signed_offset_of(const Vec3& q) const {
    SignedOffsetResult r;
    SurfacePoint sp = nearest(q);
    double d = dist(sp.pos, q);
    r.euclid = d;
    if (d <= 0.5) {
      r.classification = SignedOffsetResult::Kind::OnShell;
      double sgn = dot(q - sp.pos, sp.normal) >= 0 ? 1.0 : -1.0;
      r.delta = sgn * d;
      r.nearest = sp;
      return r;
    }
    r.classification = inside(q) ? SignedOffsetResult::Kind::Inside
                                 : SignedOffsetResult::Kind::Outside;
    return r;
  }

  /// Quasi-uniform surface samples at roughly the requested spacing,
  /// area-stratified per patch. Deterministic.
  std::vector<SurfacePoint> sample_surface(double spacing) const {
    std::vector<SurfacePoint> out;
    for (const auto& p : patches) sample_patch(p, spacing, out);
    return out;
  }

  static void sample_patch(const Patch& p, double spacing, std::vector<SurfacePoint>& out) {
    auto rows = [&](double len) { return std::max(1, static_cast<int>(std::ceil(len / spacing))); };
    switch (p.kind) {
      case PatchKind::Square: {
        int k = rows(p.side);
        for (int i = 0; i <= k; ++i)
          for (int j = 0; j <= k; ++j) {
            double lu = p.side * i / k, lv = p.side * j / k;
            if (!p.in_hole(lu, lv)) out.push_back(p.at(lu, lv));
          }
        return;
      }
      case PatchKind::SphericalTriangle: {
        int k = rows(kPi / 2);
        for (int j = 0; j <= k; ++j) {
          double phi = (kPi / 2) * j / k;
          int m = std::max(1, static_cast<int>(std::ceil((kPi / 2) * std::cos(phi) / spacing)));
          for (int i = 0; i <= m; ++i) out.push_back(p.at((kPi / 2) * i / m, phi));
        }
        return;
      }
      case PatchKind::Cylinder:
      case PatchKind::QuarterCylinder: {
        int k = rows(p.length), m = rows(p.span);
        bool full = p.is_full_cylinder();
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i < (full ? m : m + 1); ++i)
            out.push_back(p.at(p.span * i / m, p.length * j / k));
        return;
      }
      case PatchKind::Joint: {
        int k = rows(kPi / 2);
        for (int j = 0; j <= k; ++j) {
          double t = (kPi / 2) * j / k;
          double ring = 2 * kPi * (2 - std::cos(t));
          int m = std::max(3, static_cast<int>(std::ceil(ring / spacing)));
          for (int i = 0; i < m; ++i) out.push_back(p.at(2 * kPi * i / m, t));
        }
        return;
      }
    }
  }

  /// Statistical touchability check: both radius-r tangent balls at each
  /// sampled point must contain no other sampled point strictly inside
  /// (tolerance 1e-9).
  TouchabilityReport touchability_check(double r, int samples) const {
    TouchabilityReport rep;
    rep.radius = r;
    double sp_target = std::sqrt(area() / std::max(1, samples));
    auto pts = sample_surface(sp_target);
    rep.samples = static_cast<int>(pts.size());
    const double tol = 1e-9;
    for (const auto& s : pts) {
      for (double side : {1.0, -1.0}) {
        Vec3 c = s.pos + s.normal * (side * r);
        for (const auto& o : pts) {
          double d = dist(o.pos, c);
          if (d < r - tol && dist2(o.pos, s.pos) > tol * tol) {
            rep.violations.push_back({s, c, o.pos, r - d});
            break;
          }
        }
      }
      if (rep.violations.size() > 50) return rep;  // enough evidence
    }
    return rep;
  }

  /// Structural + geometric validation: every bound curve is shared by
  /// exactly two patches, normals agree along shared curves, and normals
  /// point toward the unbounded component.
  void validate() const {
    std::map<int, std::vector<int>> users;  // curve -> patches
    for (int pid = 0; pid < static_cast<int>(patches.size()); ++pid)
      for (const auto& ref : boundaries[pid]) users[ref.curve_id].push_back(pid);
    for (const auto& [cid, ps] : users)
      if (ps.size() != 2)
        throw Error("patchwork", "boundary curve " + std::to_string(cid) + " is shared by " +
                                     std::to_string(ps.size()) + " patches, expected 2");
    for (const auto& adj : adjacency) {
      const auto& ps = users.at(adj.curve_id);
      bool ok = (ps[0] == adj.patch_a && ps[1] == adj.patch_b) ||
                (ps[0] == adj.patch_b && ps[1] == adj.patch_a);
      if (!ok) throw Error("patchwork", "adjacency record disagrees with curve bindings");
    }
    // differentiability across shared curves, sampled
    const double tol = 1e-9;
    for (const auto& [cid, ps] : users) {
      const BoundaryCurve& c = curves[cid];
      for (int k = 0; k < 16; ++k) {
        Vec3 x;
        if (c.kind == BoundaryCurve::Kind::Segment) {
          x = c.a + (c.b - c.a) * ((k + 0.37) / 16.0);
        } else {
          double t0 = c.kind == BoundaryCurve::Kind::Circle ? 0 : c.angle0;
          double t1 = c.kind == BoundaryCurve::Kind::Circle ? 2 * kPi : c.angle1;
          x = c.point_at_angle(t0 + (t1 - t0) * ((k + 0.37) / 16.0));
        }
        SurfacePoint a = patches[ps[0]].nearest(x);
        SurfacePoint b = patches[ps[1]].nearest(x);
        if (dist(a.pos, x) > 1e-7 || dist(b.pos, x) > 1e-7)
          throw Error("patchwork",
                      "curve " + std::to_string(cid) + " does not lie on both bound patches");
        if (dist(a.normal, b.normal) > tol)
          throw Error("patchwork", "normals disagree across curve " + std::to_string(cid));
      }
    }
    // outward orientation via parity from one sample
    const Patch& p0 = patches.front();
    SurfacePoint s = p0.kind == PatchKind::Square ? p0.at(p0.side / 2, p0.side / 2)
                                                  : p0.at(0.3, 0.4);
    if (inside(s.pos + s.normal * 1e-4))
      throw Error("patchwork", "normals point toward the bounded component");
    if (!inside(s.pos - s.normal * 1e-4))
      throw Error("patchwork", "surface does not separate space at sample point");
  }
};

/// Lemma-style sandwich check: q in the tangent plane at sp (on S(delta)),
/// |sp q| <= eps, must lie between S(delta - 2 eps^2) and S(delta + 2 eps^2).
inline bool between_offsets_bound(const Patchwork& s, const SurfacePoint& sp, double delta,
                                  const Vec3& q, double eps) {
  if (!(std::abs(delta) < 0.5 - 2 * eps * eps))
    throw PreconditionViolation("patchwork", "|delta| must be < 1/2 - 2 eps^2");
  Vec3 p_delta = sp.pos + sp.normal * delta;
  if (dist(q, p_delta) > eps * (1 + 1e-12))
    throw PreconditionViolation("patchwork", "|pq| exceeds eps");
  if (std::abs(dot(q - p_delta, sp.normal)) > 1e-9 * (1 + std::abs(delta)))
    throw PreconditionViolation("patchwork", "q is not in the tangent plane");
  SignedOffsetResult r = s.signed_offset_of(q);
  if (r.classification != SignedOffsetResult::Kind::OnShell) return false;
  double band = 2 * eps * eps + 1e-12;
  return r.delta >= delta - band && r.delta <= delta + band;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Patch ids of one rounded cube within a patchwork. Faces are indexed
/// axis*2 + (sign>0): -x,+x,-y,+y,-z,+z.
struct RoundedCubeRefs {
  int face[6];
  Vec3 center;
  double size = 0;

  /// Face id for the outward direction (axis 0..2, sign -1/+1).
  int face_id(int axis, int sgn) const { return face[axis * 2 + (sgn > 0 ? 1 : 0)]; }
};

/// Appends the boundary of cube(side = size-2) (+) unit ball: 6 square faces,
/// 12 quarter-cylinder edges, 8 spherical-triangle corners. `size` is the
/// bounding box side and must be >= 3 so faces have side >= 1. `face_holes`
/// is indexed like RoundedCubeRefs::face; rims and joints for the holes are
/// attached separately by the tube builder.
inline RoundedCubeRefs append_rounded_cube(Patchwork& pw, const Vec3& center, double size,
                                           const std::vector<std::vector<Hole>>& face_holes = {}) {
  if (size < 3.0) throw PreconditionViolation("patchwork", "rounded cube size must be >= 3");
  const double h = size / 2.0 - 1.0;  // inner cube half-side
  const double side = size - 2.0;
  RoundedCubeRefs refs;
  refs.center = center;
  refs.size = size;

  // faces: axis a, sign s -> square patch in the plane coordinate a = c[a] + s*(h+1)
  // frame: u = next axis, v = next-next axis (positive), w = outward normal
  auto face_id = [](int axis, int sgn) { return axis * 2 + (sgn > 0 ? 1 : 0); };
  int* fid = refs.face;
  for (int axis = 0; axis < 3; ++axis)
    for (int sgn : {-1, 1}) {
      int ua = (axis + 1) % 3, va = (axis + 2) % 3;
      Patch f;
      f.kind = PatchKind::Square;
      f.side = side;
      f.frame.u = axis_dir(ua);
      f.frame.v = axis_dir(va);
      f.frame.w = axis_dir(axis, sgn);
      f.frame.origin = center + axis_dir(axis, sgn) * (h + 1.0) - f.frame.u * h - f.frame.v * h;
      int idx = face_id(axis, sgn);
      if (static_cast<int>(face_holes.size()) > idx) f.holes = face_holes[idx];
      fid[idx] = pw.add_patch(f);
    }

  // inner cube corners, built once so all patches share exact coordinates
  Vec3 corner[2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        corner[i][j][k] = center + Vec3{(i ? h : -h), (j ? h : -h), (k ? h : -h)};

  // corner octants
  int oct_id[2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Patch o;
        o.kind = PatchKind::SphericalTriangle;
        o.frame.origin = corner[i][j][k];
        o.frame.u = axis_dir(0, i ? 1 : -1);
        o.frame.v = axis_dir(1, j ? 1 : -1);
        o.frame.w = axis_dir(2, k ? 1 : -1);
        oct_id[i][j][k] = pw.add_patch(o);
      }

  // octant anchor points (exact): corner + unit axis
  auto anchor = [&](int i, int j, int k, int axis) {
    int sgn = axis == 0 ? (i ? 1 : -1) : axis == 1 ? (j ? 1 : -1) : (k ? 1 : -1);
    return corner[i][j][k] + axis_dir(axis, sgn);
  };

  // edges: 12, along axis `ea`, at fixed signs of the other two axes.
  // Quarter-cylinder frame: w along +ea from the low corner, u/v the two
  // outward face normals (so theta spans [0, pi/2] between the faces).
  for (int ea = 0; ea < 3; ++ea) {
    int ua = (ea + 1) % 3, va = (ea + 2) % 3;
    for (int su : {-1, 1})
      for (int sv : {-1, 1}) {
        Patch q;
        q.kind = PatchKind::QuarterCylinder;
        q.length = side;
        q.span = kPi / 2;
        q.frame.u = axis_dir(ua, su);
        q.frame.v = axis_dir(va, sv);
        q.frame.w = axis_dir(ea);
        // low corner of this edge
        int ijk[3];
        ijk[ea] = 0;
        ijk[ua] = su > 0 ? 1 : 0;
        ijk[va] = sv > 0 ? 1 : 0;
        Vec3 c_lo = corner[ijk[0]][ijk[1]][ijk[2]];
        q.frame.origin = c_lo;
        int qid = pw.add_patch(q);

        int ijk_hi[3] = {ijk[0], ijk[1], ijk[2]};
        ijk_hi[ea] = 1;
        Vec3 c_hi = corner[ijk_hi[0]][ijk_hi[1]][ijk_hi[2]];

        // side segments shared with the two faces
        for (int which = 0; which < 2; ++which) {
          int faxis = which == 0 ? ua : va;
          int fsgn = which == 0 ? su : sv;
          Vec3 off = axis_dir(faxis, fsgn);
          BoundaryCurve seg;
          seg.kind = BoundaryCurve::Kind::Segment;
          seg.a = c_lo + off;
          seg.b = c_hi + off;
          int cid = pw.add_curve(seg);
          pw.bind(qid, cid, which == 0 ? CurveRole::CylinderSideLow : CurveRole::CylinderSideHigh);
          int f = fid[face_id(faxis, fsgn)];
          pw.bind(f, cid, CurveRole::SquareSide, -1);
          pw.declare_adjacent(qid, f, cid);
        }

        // end arcs shared with octants
        for (int end = 0; end < 2; ++end) {
          const int* c = end == 0 ? ijk : ijk_hi;
          BoundaryCurve arc;
          arc.kind = BoundaryCurve::Kind::Arc;
          arc.center = corner[c[0]][c[1]][c[2]];
          arc.axis_u = q.frame.u;
          arc.axis_v = q.frame.v;
          arc.radius = 1.0;
          arc.angle0 = 0;
          arc.angle1 = kPi / 2;
          arc.a = anchor(c[0], c[1], c[2], ua);
          arc.b = anchor(c[0], c[1], c[2], va);
          int cid = pw.add_curve(arc);
          pw.bind(qid, cid, end == 0 ? CurveRole::CylinderEndLow : CurveRole::CylinderEndHigh);
          int oid = oct_id[c[0]][c[1]][c[2]];
          // the arc lies in the plane where the edge-axis coordinate vanishes;
          // octant local axes map 0->u, 1->v, 2->w
          CurveRole role = ea == 0 ? CurveRole::SphereArcBeta
                                   : (ea == 1 ? CurveRole::SphereArcAlpha
                                              : CurveRole::SphereArcGamma);
          pw.bind(oid, cid, role);
          pw.declare_adjacent(qid, oid, cid);
        }
      }
  }
  return refs;
}

inline Patchwork rounded_cube(const Vec3& center, double size,
                              const std::vector<std::vector<Hole>>& face_holes = {}) {
  Patchwork pw;
  append_rounded_cube(pw, center, size, face_holes);
  return pw;
}

}  // namespace realm
