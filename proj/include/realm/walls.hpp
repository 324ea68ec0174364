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

#include <cmath>
#include <string>
#include <vector>

#include "nets.hpp"
#include "obstacles.hpp"

namespace realm {

using BigCount = boost::multiprecision::cpp_int;

/// Wall construction parameters.
///
/// Fidelity mode uses the proof constants (t = 48(1+sqrt 3), b = floor(35t^2+1),
/// nu = 4b+1, triangle side 48*sqrt(3)*zeta) for analytic counting; those
/// constants put any materialization far beyond reach, so building walls in
/// fidelity mode only succeeds for dry-run counts.
///
/// Relaxed mode materializes walls with user constants. The offset step
/// between class sub-layers must exceed 4 * circumradius^2 so the tangent-
/// plane sandwich keeps neighboring sub-layers disjoint.
struct WallConfig {
  enum class Mode { Fidelity, Relaxed };
  Mode mode = Mode::Relaxed;
  double t = 8.0;
  double side_factor = 4.0;   // triangle side = side_factor * zeta
  int layers_per_band = 16;   // b: class sub-layers materialized per band
  double band_step = 0;       // offset increment per class; 0 = derived default
  int bands = 3;
  double zeta = 1.0 / 64;
  std::size_t cap = 10'000'000;  // materialized-obstacle cap

  static WallConfig fidelity() {
    WallConfig c;
    c.mode = Mode::Fidelity;
    c.t = 48.0 * (1.0 + std::sqrt(3.0));
    c.side_factor = 48.0 * std::sqrt(3.0);
    c.layers_per_band = static_cast<int>(std::floor(35.0 * c.t * c.t + 1.0));
    c.band_step = 0;  // 4 zeta^2, derived once zeta is known
    return c;
  }

  static WallConfig relaxed(double zeta, double t, double side_factor, int layers_per_band,
                            int bands, double band_step = 0) {
    WallConfig c;
    c.mode = Mode::Relaxed;
    c.zeta = zeta;
    c.t = t;
    c.side_factor = side_factor;
    c.layers_per_band = layers_per_band;
    c.bands = bands;
    c.band_step = band_step;
    return c;
  }

  double nu() const { return 4.0 * std::floor(35.0 * t * t + 1.0) + 1.0; }
  double circumradius(double z) const { return side_factor * z / std::sqrt(3.0); }

  /// Offset increment between consecutive class sub-layers.
  double step(double z) const {
    if (mode == Mode::Fidelity) return 4.0 * z * z;
    if (band_step > 0) return band_step;
    double r = circumradius(z);
    return 6.0 * r * r;  // default: 1.5x the 4r^2 disjointness threshold
  }

  /// Declared span of one band: sub-layer offsets plus the sandwich margin.
  double band_span(double z) const {
    if (mode == Mode::Fidelity) return nu() * z * z;
    return (layers_per_band + 1) * step(z);
  }

  void validate(double z) const {
    if (mode == Mode::Relaxed) {
      if (!(z <= 0.125)) throw ZetaTooLarge("walls", "zeta must be <= 1/8");
      if (!(z < 1.0 / (4.0 * t))) throw ZetaTooLarge("walls", "zeta must be < 1/(4t)");
      double r = circumradius(z);
      if (!(t * z > 2.0 * r))
        throw InfeasibleConfig("same-class triangles overlap: need t*zeta > 2*circumradius");
      if (!(step(z) > 4.0 * r * r))
        throw InfeasibleConfig("band_step must exceed 4*circumradius^2 for sub-layer disjointness");
    }
  }
};

// ---------------------------------------------------------------------------
// Flat wall
// ---------------------------------------------------------------------------

/// Four staggered layers of side-0.99 squares over the integer grid. Any
/// vertical crossing lands within ell_inf distance 0.25 of some square's
/// center, forcing a detour of at least 0.245.
inline ObstacleSet flat_wall(int extent, const std::array<double, 4>& heights = {0.01, 0.02, 0.03,
                                                                                 0.04}) {
  if (extent < 1) throw PreconditionViolation("walls", "extent must be >= 1");
  static const double shift_x[4] = {0.0, 0.5, 0.5, 0.0};
  static const double shift_y[4] = {0.0, 0.0, 0.5, 0.5};
  ObstacleSet set;
  set.provenance.mode = "flat_wall";
  const double half = 0.99 / 2;
  for (int layer = 0; layer < 4; ++layer)
    for (int a = -extent; a <= extent; ++a)
      for (int b = -extent; b <= extent; ++b) {
        double cx = a + shift_x[layer], cy = b + shift_y[layer], z = heights[layer];
        Obstacle o;
        o.kind = ObstacleKind::Square;
        o.vertices = {{cx - half, cy - half, z},
                      {cx + half, cy - half, z},
                      {cx + half, cy + half, z},
                      {cx - half, cy + half, z}};
        o.meta.layer = layer;
        o.meta.delta = z;
        set.obstacles.push_back(std::move(o));
      }
  return set;
}

// ---------------------------------------------------------------------------
// Triangle layers between offsets
// ---------------------------------------------------------------------------

namespace detail_walls {

/// In-plane orientation rule: first edge direction is the normalized
/// projection of the global x-axis onto the tangent plane (y-axis fallback).
inline Vec3 tangent_reference(const Vec3& n) {
  Vec3 e = axis_dir(0) - n * n.x;
  if (norm2(e) < 1e-18) e = axis_dir(1) - n * n.y;
  return normalized(e);
}

inline Obstacle tangent_triangle(const SurfacePoint& sp, double delta_c, double side, int layer,
                                 std::int64_t tangency_id) {
  Vec3 center = sp.pos + sp.normal * delta_c;
  Vec3 e1 = tangent_reference(sp.normal);
  Vec3 e2 = cross(sp.normal, e1);  // unit: n and e1 are orthonormal
  double r = side / std::sqrt(3.0);
  Obstacle o;
  o.kind = ObstacleKind::Triangle;
  for (int k = 0; k < 3; ++k) {
    double ang = 2.0 * kPi * k / 3.0;
    o.vertices.push_back(center + e1 * (r * std::cos(ang)) + e2 * (r * std::sin(ang)));
  }
  // winding: cross(v1-v0, v2-v0) points along +n (tetrahedralization needs it)
  if (dot(cross(o.vertices[1] - o.vertices[0], o.vertices[2] - o.vertices[0]), sp.normal) < 0)
    std::swap(o.vertices[1], o.vertices[2]);
  o.meta.layer = layer;
  o.meta.delta = delta_c;
  o.meta.tangency_id = tangency_id;
  return o;
}

/// One band: partition the offset net at the band's base offset, then emit
/// one triangle per net point in classes 1..layers_per_band, class c tangent
/// to S(delta + c*step).
inline void emit_band(const Net& base_net, double delta, const WallConfig& cfg, double zeta,
                      ObstacleSet& out, int& classes_used) {
  Net at_delta = offset_net(base_net, delta);
  ClassPartition part = partition_classes(at_delta, cfg.t);
  classes_used = static_cast<int>(part.classes.size());
  const double step = cfg.step(zeta);
  const double side = cfg.side_factor * zeta;
  int emit_classes = std::min(classes_used, cfg.layers_per_band);
  for (int c = 0; c < emit_classes; ++c) {
    double delta_c = delta + (c + 1) * step;
    for (int idx : part.classes[c]) {
      const SurfacePoint& sp = base_net.points[idx];
      out.obstacles.push_back(tangent_triangle(sp, delta_c, side, c + 1, idx));
    }
  }
}

}  // namespace detail_walls

/// Lemma-7-style band of tangent triangles between S(delta) and
/// S(delta + band span).
inline ObstacleSet layer_triangles(const Patchwork& s, double delta, double zeta,
                                   const WallConfig& cfg) {
  cfg.validate(zeta);
  if (cfg.mode == WallConfig::Mode::Fidelity) {
    double nu = cfg.nu();
    if (!(zeta < 1.0 / (2.0 * nu))) throw ZetaTooLarge("walls", "fidelity needs zeta < 1/(2 nu)");
    if (!(-0.5 < delta && delta < 0.5 - nu * zeta * zeta))
      throw OffsetBandOutOfRange("fidelity band must satisfy -1/2 < delta < 1/2 - nu zeta^2");
  } else {
    double span = cfg.band_span(zeta);
    double r = cfg.circumradius(zeta);
    if (!(delta > -0.5 && delta + span + 2 * r * r < 0.5))
      throw OffsetBandOutOfRange("band [delta, delta+span] leaves the offset shell");
  }
  double est = s.area() / (zeta * zeta);  // net-size scale, before class truncation
  if (est > static_cast<double>(cfg.cap))
    throw InfeasibleConfig("band would materialize ~" + std::to_string(est) +
                           " triangles; raise the cap, use count_separator, or relax");
  Net net = patchwork_net(s, zeta);
  ObstacleSet out;
  out.provenance.mode = cfg.mode == WallConfig::Mode::Fidelity ? "fidelity" : "relaxed";
  out.provenance.zeta = zeta;
  out.provenance.t = cfg.t;
  out.provenance.nu = cfg.nu();
  out.provenance.side_factor = cfg.side_factor;
  out.provenance.band_step = cfg.step(zeta);
  out.provenance.declared_band_span = cfg.band_span(zeta);
  int classes = 0;
  detail_walls::emit_band(net, delta, cfg, zeta, out, classes);
  out.provenance.band_schedule.push_back({delta, classes});
  return out;
}

// ---------------------------------------------------------------------------
// Separator (stacked bands)
// ---------------------------------------------------------------------------

namespace detail_walls {

inline BigCount big_from_double(double x) {
  // exact conversion of the integral double value
  return BigCount(boost::multiprecision::cpp_int(x));
}

struct FidelitySchedule {
  double sigma0 = 0;
  double zeta = 0;
  BigCount bands;
  BigCount per_layer;  // model net size: ceil(area / zeta^2)
  BigCount total;
};

inline FidelitySchedule fidelity_schedule(double area, double sigma, const WallConfig& cfg) {
  FidelitySchedule f;
  double nu = cfg.nu();
  f.sigma0 = 0.5 * nu * sigma;
  f.zeta = 1.0 / (2.0 * nu * f.sigma0);
  f.bands = big_from_double(std::ceil(f.sigma0 * f.sigma0));
  f.per_layer = big_from_double(std::ceil(area / (f.zeta * f.zeta)));
  f.total = f.bands * f.per_layer;
  return f;
}

}  // namespace detail_walls

/// Analytic obstacle count for a separator, with no materialization. The
/// model counts one triangle per net point per band, with net size
/// ceil(area/zeta^2); fidelity dry runs in build_separator use the same
/// formula, so the two agree exactly.
inline BigCount count_separator(double area, double sigma, const WallConfig& cfg) {
  if (!(sigma > 1)) throw PreconditionViolation("walls", "sigma must be > 1");
  if (cfg.mode == WallConfig::Mode::Fidelity)
    return detail_walls::fidelity_schedule(area, sigma, cfg).total;
  return detail_walls::big_from_double(static_cast<double>(cfg.bands)) *
         detail_walls::big_from_double(std::ceil(area / (cfg.zeta * cfg.zeta)));
}

/// Stacked triangle bands strictly between S(-1/2) and S(1/2).
///
/// Fidelity mode follows the proof schedule (sigma0^2 bands at
/// delta_i = -1/2 + 2 i nu zeta^2) and therefore only ever reports counts:
/// materialization always exceeds any realistic cap. Relaxed mode stacks
/// cfg.bands bands centered around offset 0 with user constants; the result
/// is geometrically valid (disjoint, band-contained) but makes no separation
/// claim (provenance.separation_claim = 0).
inline ObstacleSet build_separator(const Patchwork& s, double sigma, const WallConfig& cfg) {
  if (!(sigma > 1)) throw PreconditionViolation("walls", "sigma must be > 1");
  if (cfg.mode == WallConfig::Mode::Fidelity) {
    auto f = detail_walls::fidelity_schedule(s.area(), sigma, cfg);
    throw InfeasibleConfig("fidelity separator would materialize " + f.total.str() +
                           " triangles (zeta = " + std::to_string(f.zeta) +
                           "); use count_separator or relaxed mode");
  }
  cfg.validate(cfg.zeta);
  const double zeta = cfg.zeta;
  double est = s.area() / (zeta * zeta) * cfg.bands;  // net-size scale
  if (est > static_cast<double>(cfg.cap))
    throw InfeasibleConfig("separator would materialize ~" + std::to_string(est) +
                           " triangles; raise the cap or coarsen zeta");
  const double span = cfg.band_span(zeta);
  const double r = cfg.circumradius(zeta);
  const double pitch = span + cfg.step(zeta);
  const double total = cfg.bands * pitch;
  if (!(total + 4 * r * r < 1.0))
    throw OffsetBandOutOfRange("band stack of span " + std::to_string(total) +
                               " does not fit strictly inside (-1/2, 1/2)");
  ObstacleSet out;
  out.provenance.mode = "relaxed";
  out.provenance.zeta = zeta;
  out.provenance.sigma = sigma;
  out.provenance.t = cfg.t;
  out.provenance.nu = cfg.nu();
  out.provenance.side_factor = cfg.side_factor;
  out.provenance.band_step = cfg.step(zeta);
  out.provenance.declared_band_span = span;
  out.provenance.separation_claim = 0.0;  // relaxed constants prove nothing

  Net net = patchwork_net(s, zeta);
  for (int j = 0; j < cfg.bands; ++j) {
    double base = -0.5 * total + j * pitch;
    int classes = 0;
    detail_walls::emit_band(net, base, cfg, zeta, out, classes);
    out.provenance.band_schedule.push_back({base, classes});
    if (out.size() > cfg.cap)
      throw InfeasibleConfig("separator exceeded the materialization cap");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wall verification
// ---------------------------------------------------------------------------

struct BandContainmentReport {
  bool ok = true;
  std::size_t vertices_checked = 0;
  std::size_t violations = 0;
  double worst_excess = 0;
};

/// Every triangle vertex must lie within its band's declared offset range
/// [base, base + span] as measured by signed_offset_of.
inline BandContainmentReport verify_band_containment(const ObstacleSet& set, const Patchwork& s) {
  BandContainmentReport rep;
  const double span = set.provenance.declared_band_span;
  const double tol = 1e-9;
  for (const Obstacle& o : set.obstacles) {
    if (o.meta.tangency_id < 0) continue;
    // find the band whose range contains this obstacle's tangency offset
    double base = 0;
    bool found = false;
    for (const auto& [b, classes] : set.provenance.band_schedule)
      if (o.meta.delta > b - tol && o.meta.delta < b + span + tol) {
        base = b;
        found = true;
        break;
      }
    if (!found) {
      rep.ok = false;
      ++rep.violations;
      continue;
    }
    for (const Vec3& v : o.vertices) {
      ++rep.vertices_checked;
      auto r = s.signed_offset_of(v);
      if (r.classification != SignedOffsetResult::Kind::OnShell) {
        rep.ok = false;
        ++rep.violations;
        continue;
      }
      double lo = base - tol, hi = base + span + tol;
      if (r.delta < lo || r.delta > hi) {
        rep.ok = false;
        ++rep.violations;
        rep.worst_excess = std::max(rep.worst_excess, std::max(lo - r.delta, r.delta - hi));
      }
    }
  }
  return rep;
}

struct CongruenceReport {
  bool ok = true;
  double min_side = 0, max_side = 0;
};

/// Side lengths must agree to 1e-12 relative, plus the representation noise
/// of vertex coordinates (an obstacle at coordinate magnitude M carries
/// ~M * 2^-52 of rounding in each stored vertex, which measured side lengths
/// inherit regardless of how carefully they were constructed).
inline CongruenceReport verify_congruence(const ObstacleSet& set) {
  CongruenceReport rep;
  if (set.empty()) return rep;
  rep.min_side = rep.max_side = set.obstacles.front().edge_length();
  double coord = 0;
  for (const Obstacle& o : set.obstacles) {
    o.for_each_edge([&](const Vec3& a, const Vec3& b) {
      double d = dist(a, b);
      rep.min_side = std::min(rep.min_side, d);
      rep.max_side = std::max(rep.max_side, d);
    });
    for (const Vec3& v : o.vertices)
      coord = std::max({coord, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    if (!o.well_formed()) rep.ok = false;
  }
  double tol = 1e-12 * rep.max_side + 16.0 * std::numeric_limits<double>::epsilon() * coord;
  if (rep.max_side - rep.min_side > tol) rep.ok = false;
  return rep;
}

}  // namespace realm
