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
#include <optional>
#include <vector>

#include "detail/polyroots.hpp"
#include "errors.hpp"
#include "vec3.hpp"

namespace realm {

inline constexpr double kHoleRadius = 2.0;  // all circular holes have radius 2

enum class PatchKind { Square, SphericalTriangle, Cylinder, QuarterCylinder, Joint };

/// In-plane hole center on a square patch, in the patch's (u,v) coordinates.
struct Hole {
  double u = 0, v = 0;
};

/// A point on a patch: local parameters, world position, outward unit normal.
struct SurfacePoint {
  int patch_id = -1;
  double lu = 0, lv = 0;
  Vec3 pos;
  Vec3 normal;
};

/// One parametric surface patch. All placements are axis-aligned frames.
///
/// Local parameterizations (frame axes u, v, w):
///   Square          (lu,lv) in [0,side]^2     P = o + lu*u + lv*v, normal +w
///   SphericalTri    (theta,phi) in [0,pi/2]^2 P = o + cos(phi)cos(theta)*u
///                                                 + cos(phi)sin(theta)*v + sin(phi)*w
///   Cylinder        (theta,h), theta in [0,span], h in [0,length]
///                                             P = o + cos*u + sin*v + h*w, radius 1
///   Joint           (theta,t), t in [0,pi/2]  P = o + (2-cos t)*rho(theta) + sin(t)*w
///                                             rho(theta) = cos*u + sin*v
///
/// The joint is the inner quarter of a torus (ring radius 2, tube radius 1):
/// t = 0 is the radius-1 circle where a cylinder attaches, t = pi/2 is the
/// radius-2 rim lying in the plane of a square patch's hole. Its outward
/// normal points toward the meridian circle center, so offsetting by delta
/// shrinks the meridian radius to 1 - delta.
struct Patch {
  PatchKind kind = PatchKind::Square;
  AxisFrame frame;
  double side = 0;     // Square
  double length = 0;   // Cylinder axis length
  double span = 0;     // Cylinder angular span (pi/2 or 2*pi)
  std::vector<Hole> holes;
  int id = -1;

  bool is_full_cylinder() const { return kind == PatchKind::Cylinder; }

  Vec3 position(double lu, double lv) const {
    switch (kind) {
      case PatchKind::Square:
        return frame.to_world({lu, lv, 0});
      case PatchKind::SphericalTriangle: {
        double cp = std::cos(lv);
        return frame.to_world({cp * std::cos(lu), cp * std::sin(lu), std::sin(lv)});
      }
      case PatchKind::Cylinder:
      case PatchKind::QuarterCylinder:
        return frame.to_world({std::cos(lu), std::sin(lu), lv});
      case PatchKind::Joint: {
        double r = 2.0 - std::cos(lv);
        return frame.to_world({r * std::cos(lu), r * std::sin(lu), std::sin(lv)});
      }
    }
    return {};
  }

  Vec3 normal(double lu, double lv) const {
    switch (kind) {
      case PatchKind::Square:
        return frame.w;
      case PatchKind::SphericalTriangle: {
        double cp = std::cos(lv);
        return frame.dir_to_world({cp * std::cos(lu), cp * std::sin(lu), std::sin(lv)});
      }
      case PatchKind::Cylinder:
      case PatchKind::QuarterCylinder:
        return frame.dir_to_world({std::cos(lu), std::sin(lu), 0});
      case PatchKind::Joint:
        return frame.dir_to_world(
            {std::cos(lv) * std::cos(lu), std::cos(lv) * std::sin(lu), -std::sin(lv)});
    }
    return {};
  }

  SurfacePoint at(double lu, double lv) const {
    return SurfacePoint{id, lu, lv, position(lu, lv), normal(lu, lv)};
  }

  double area() const {
    switch (kind) {
      case PatchKind::Square:
        return side * side - static_cast<double>(holes.size()) * kPi * kHoleRadius * kHoleRadius;
      case PatchKind::SphericalTriangle:
        return kPi / 2.0;
      case PatchKind::Cylinder:
      case PatchKind::QuarterCylinder:
        return span * length;
      case PatchKind::Joint:
        return 2.0 * kPi * (kPi - 1.0);
    }
    return 0;
  }

  /// True if the in-plane point is strictly inside one of the square's holes.
  bool in_hole(double lu, double lv, double shrink = 0.0) const {
    for (const Hole& h : holes) {
      double du = lu - h.u, dv = lv - h.v;
      double r = kHoleRadius - shrink;
      if (du * du + dv * dv < r * r) return true;
    }
    return false;
  }

  /// Exact nearest point on the patch (domain-clamped, holes respected).
  SurfacePoint nearest(const Vec3& q) const {
    Vec3 l = frame.to_local(q);
    switch (kind) {
      case PatchKind::Square: {
        double pu = std::clamp(l.x, 0.0, side);
        double pv = std::clamp(l.y, 0.0, side);
        for (const Hole& h : holes) {
          double du = pu - h.u, dv = pv - h.v;
          double d = std::sqrt(du * du + dv * dv);
          if (d < kHoleRadius) {
            if (d < 1e-300) { du = 1; dv = 0; d = 1; }
            pu = h.u + du / d * kHoleRadius;
            pv = h.v + dv / d * kHoleRadius;
            break;  // holes are disjoint, only one can contain the point
          }
        }
        return at(pu, pv);
      }
      case PatchKind::SphericalTriangle: {
        Vec3 w{std::max(l.x, 0.0), std::max(l.y, 0.0), std::max(l.z, 0.0)};
        double n = norm(w);
        if (n < 1e-300) {
          int best = l.x >= l.y && l.x >= l.z ? 0 : (l.y >= l.z ? 1 : 2);
          w = Vec3{}; w[best] = 1.0; n = 1.0;
        }
        w = w / n;
        double phi = std::asin(std::clamp(w.z, -1.0, 1.0));
        double theta = std::atan2(w.y, w.x);
        if (theta < 0) theta = 0;
        return at(theta, phi);
      }
      case PatchKind::Cylinder:
      case PatchKind::QuarterCylinder: {
        double h = std::clamp(l.z, 0.0, length);
        double rho = std::hypot(l.x, l.y);
        double theta = rho < 1e-300 ? 0.0 : std::atan2(l.y, l.x);
        if (kind == PatchKind::Cylinder) {
          if (theta < 0) theta += 2 * kPi;
          return at(theta, h);
        }
        if (theta >= 0 && theta <= span) return at(theta, h);
        // outside the angular range: nearer of the two boundary angles
        SurfacePoint a = at(0.0, h), b = at(span, h);
        return dist2(a.pos, q) <= dist2(b.pos, q) ? a : b;
      }
      case PatchKind::Joint: {
        double rho = std::hypot(l.x, l.y);
        double theta = rho < 1e-300 ? 0.0 : std::atan2(l.y, l.x);
        if (theta < 0) theta += 2 * kPi;
        double dx = rho - 2.0, dy = l.z;
        double t;
        if (std::abs(dx) < 1e-300 && std::abs(dy) < 1e-300) t = kPi / 4;
        else t = std::atan2(dy, -dx);
        t = std::clamp(t, 0.0, kPi / 2);
        return at(theta, t);
      }
    }
    return {};
  }

  /// Axis-aligned bounding box (for pruning nearest/ray queries).
  void bbox(Vec3& lo, Vec3& hi) const {
    auto expand = [&](const Vec3& p) {
      lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
      hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    };
    lo = Vec3{1e300, 1e300, 1e300};
    hi = Vec3{-1e300, -1e300, -1e300};
    switch (kind) {
      case PatchKind::Square:
        expand(frame.to_world({0, 0, 0}));
        expand(frame.to_world({side, side, 0}));
        break;
      case PatchKind::SphericalTriangle:
        expand(frame.origin);
        expand(frame.to_world({1, 1, 1}));
        break;
      case PatchKind::Cylinder:
      case PatchKind::QuarterCylinder:
        expand(frame.to_world({1, 1, 0}));
        expand(frame.to_world({-1, -1, 0}));
        expand(frame.to_world({1, 1, length}));
        expand(frame.to_world({-1, -1, length}));
        break;
      case PatchKind::Joint:
        expand(frame.to_world({2, 2, 0}));
        expand(frame.to_world({-2, -2, 1}));
        break;
    }
  }

  /// All transversal intersections of the ray o + s*d (s > s_min) with the
  /// patch. Sets `ambiguous` when a hit is too close to the patch boundary or
  /// to tangency for the parity count to be trusted.
  void ray_hits(const Vec3& o, const Vec3& d, std::vector<double>& out, bool& ambiguous,
                double tol = 1e-9) const {
    Vec3 lo = frame.to_local(o);
    Vec3 ld = frame.dir_to_local(d);
    auto near_edge = [&](double x, double a, double b) {
      return std::abs(x - a) < tol || std::abs(x - b) < tol;
    };
    switch (kind) {
      case PatchKind::Square: {
        if (std::abs(ld.z) < tol) {
          if (std::abs(lo.z) < tol) ambiguous = true;  // coplanar ray
          return;
        }
        double s = -lo.z / ld.z;
        if (s <= 0) return;
        double pu = lo.x + s * ld.x, pv = lo.y + s * ld.y;
        if (near_edge(pu, 0, side) || near_edge(pv, 0, side)) { ambiguous = true; return; }
        if (pu < 0 || pu > side || pv < 0 || pv > side) return;
        for (const Hole& h : holes) {
          double r = std::hypot(pu - h.u, pv - h.v);
          if (std::abs(r - kHoleRadius) < tol) { ambiguous = true; return; }
          if (r < kHoleRadius) return;
        }
        out.push_back(s);
        return;
      }
      case PatchKind::SphericalTriangle: {
        double a = norm2(ld), b = 2 * dot(lo, ld), c = norm2(lo) - 1.0;
        double disc = b * b - 4 * a * c;
        if (disc < tol * tol) { if (disc > -tol * tol) ambiguous = true; return; }
        double sq = std::sqrt(disc);
        for (double s : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
          if (s <= 0) continue;
          Vec3 p = lo + ld * s;
          if (std::abs(p.x) < tol || std::abs(p.y) < tol || std::abs(p.z) < tol) {
            ambiguous = true;
            return;
          }
          if (p.x > 0 && p.y > 0 && p.z > 0) out.push_back(s);
        }
        return;
      }
      case PatchKind::Cylinder:
      case PatchKind::QuarterCylinder: {
        double a = ld.x * ld.x + ld.y * ld.y;
        if (a < tol * tol) {
          if (std::abs(lo.x * lo.x + lo.y * lo.y - 1.0) < tol) ambiguous = true;
          return;
        }
        double b = 2 * (lo.x * ld.x + lo.y * ld.y);
        double c = lo.x * lo.x + lo.y * lo.y - 1.0;
        double disc = b * b - 4 * a * c;
        if (disc < tol * tol) { if (disc > -tol * tol) ambiguous = true; return; }
        double sq = std::sqrt(disc);
        for (double s : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
          if (s <= 0) continue;
          Vec3 p = lo + ld * s;
          if (near_edge(p.z, 0, length)) { ambiguous = true; return; }
          if (p.z < 0 || p.z > length) continue;
          if (kind == PatchKind::QuarterCylinder) {
            double theta = std::atan2(p.y, p.x);
            if (std::abs(theta) < tol || std::abs(theta - span) < tol) {
              ambiguous = true;
              return;
            }
            if (theta < 0 || theta > span) continue;
          }
          out.push_back(s);
        }
        return;
      }
      case PatchKind::Joint: {
        // torus (rho - 2)^2 + z^2 = 1 about the local w axis
        const double R2 = 4.0, r2 = 1.0;
        double dd = norm2(ld), od = dot(lo, ld), oo = norm2(lo);
        double k = oo + R2 - r2;
        std::array<double, 5> poly{};
        poly[4] = dd * dd;
        poly[3] = 4 * dd * od;
        poly[2] = 2 * dd * k + 4 * od * od - 4 * R2 * (ld.x * ld.x + ld.y * ld.y);
        poly[1] = 4 * od * k - 8 * R2 * (lo.x * ld.x + lo.y * ld.y);
        poly[0] = k * k - 4 * R2 * (lo.x * lo.x + lo.y * lo.y);
        std::vector<double> roots;
        // conservative parameter window from the bounding sphere of the torus
        double far = (norm(lo) + 4.0) / std::max(std::sqrt(dd), 1e-300) + 1.0;
        detail::quartic_roots_in(poly, 0.0, far, roots);
        for (std::size_t i = 0; i < roots.size(); ++i) {
          double s = roots[i];
          if (s <= 0) continue;
          if (i + 1 < roots.size() && roots[i + 1] - s < tol) { ambiguous = true; return; }
          Vec3 p = lo + ld * s;
          double rho = std::hypot(p.x, p.y);
          // quarter selection: cos(t) >= 0 means rho <= 2, sin(t) >= 0 means z >= 0
          if (std::abs(rho - 2.0) < tol || std::abs(p.z) < tol) { ambiguous = true; return; }
          if (rho < 2.0 && p.z > 0) out.push_back(s);
        }
        return;
      }
    }
  }
};

/// The shape a patch takes on the offset surface S(delta).
struct OffsetPatchInfo {
  PatchKind kind;
  double radius;       // sphere/cylinder radius or joint meridian radius
  bool unchanged;      // square patches translate rigidly
};

/// Offset taxonomy: squares are unchanged, spheres and cylinders grow to
/// radius 1+delta, joint meridians shrink to radius 1-delta.
inline OffsetPatchInfo classify_offset_patch(const Patch& p, double delta) {
  if (!(std::abs(delta) < 0.5))
    throw OffsetOutOfRange("offset |delta| must be < 1/2");
  switch (p.kind) {
    case PatchKind::Square:
      return {p.kind, 0.0, true};
    case PatchKind::SphericalTriangle:
    case PatchKind::Cylinder:
    case PatchKind::QuarterCylinder:
      return {p.kind, 1.0 + delta, false};
    case PatchKind::Joint:
      return {p.kind, 1.0 - delta, false};
  }
  return {p.kind, 0.0, true};
}

struct OffsetSpec {
  double delta = 0;
  explicit OffsetSpec(double d) : delta(d) {
    if (!(std::abs(d) < 0.5)) throw OffsetOutOfRange("offset |delta| must be < 1/2");
  }
};

inline Vec3 offset_point(const SurfacePoint& sp, const OffsetSpec& spec) {
  return sp.pos + sp.normal * spec.delta;
}

inline Vec3 offset_point(const SurfacePoint& sp, double delta) {
  return offset_point(sp, OffsetSpec(delta));
}

}  // namespace realm
