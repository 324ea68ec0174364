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
#include <string>
#include <vector>

#include "metric.hpp"
#include "walls.hpp"

namespace realm {

/// The embedding f: labels to points in construction coordinates, plus the
/// factor the input metric was scaled by (so outputs can be mapped back).
struct Embedding {
  std::vector<std::string> labels;
  std::vector<Vec3> points;  // f(x_i), indexed 0-based; formulas use i = 1..n
  double scale_factor = 1.0;
  double epsilon = 0;
};

/// Tube bookkeeping for one pair i < j (1-based indices as in the layout
/// formulas).
struct PairPlan {
  int i = 0, j = 0;
  Vec3 hole_i, hole_j;      // hole centers on the top faces of the big cubes
  double ell_hor = 0;       // 40 n^2 (j - i)
  double ell_vert = 0;      // vertical cylinder length
  Vec3 cube_ij, cube_ji;    // connector cube centers
};

struct TubePlan {
  int n = 0;
  std::vector<PairPlan> pairs;

  const PairPlan& pair(int i, int j) const {
    for (const auto& p : pairs)
      if (p.i == i && p.j == j) return p;
    throw PreconditionViolation("realization", "pair not in plan (need i < j)");
  }
};

/// ell_vert from the 1-hop identity: the designed tube length satisfies
/// 2*ell_vert + ell_hor + 6 + 4*sqrt(2) = dist exactly.
inline double vert_length(double distance, double ell_hor) {
  double v = 0.5 * (distance - ell_hor) - 3.0 - 2.0 * std::sqrt(2.0);
  if (v < 1.0 - 1e-12)
    throw VertLengthNonpositive("ell_vert = " + std::to_string(v) +
                                " < 1: rescale the metric (min distance 41 n^3 / eps)");
  return v;
}

struct Layout {
  Patchwork surface;
  Embedding embedding;
  TubePlan plan;
  std::vector<std::vector<double>> scaled_dist;  // rescaled metric matrix
  std::vector<RoundedCubeRefs> big_cubes;
  std::vector<int> connector_patch_ids;  // connector cubes + their joints, per pair order
  std::vector<std::pair<int, int>> connector_pair_of;  // parallel: which pair each id serves
};

namespace detail_layout {

/// Perpendicular axes for a tube along coordinate axis `a` (deterministic).
inline void tube_basis(int axis, Vec3& u, Vec3& v) {
  u = axis_dir((axis + 1) % 3);
  v = axis_dir((axis + 2) % 3);
}

/// Connects hole A on face_a to hole B on face_b with joint + cylinder +
/// joint. The faces must face each other along a coordinate axis. Returns
/// the ids of the two joint patches.
inline std::pair<int, int> attach_tube(Patchwork& pw, int face_a, int hole_a_idx, int face_b,
                                       int hole_b_idx) {
  const Patch& fa = pw.patches[face_a];
  const Patch& fb = pw.patches[face_b];
  Vec3 A = fa.position(fa.holes[hole_a_idx].u, fa.holes[hole_a_idx].v);
  Vec3 B = fb.position(fb.holes[hole_b_idx].u, fb.holes[hole_b_idx].v);
  Vec3 n_a = fa.frame.w;
  int axis = std::abs(n_a.x) > 0.5 ? 0 : (std::abs(n_a.y) > 0.5 ? 1 : 2);
  Vec3 u, v;
  tube_basis(axis, u, v);

  Vec3 O_a = A + n_a;
  Vec3 O_b = B + fb.frame.w;
  double cyl_len = dist(O_a, O_b);
  if (cyl_len < 1.0 - 1e-9)
    throw PreconditionViolation("realization", "tube cylinder shorter than 1");

  Patch joint_a;
  joint_a.kind = PatchKind::Joint;
  joint_a.frame = {O_a, u, v, -n_a};
  int ja = pw.add_patch(joint_a);

  Patch cyl;
  cyl.kind = PatchKind::Cylinder;
  cyl.frame = {O_a, u, v, n_a};
  cyl.length = cyl_len;
  cyl.span = 2 * kPi;
  int cy = pw.add_patch(cyl);

  Patch joint_b;
  joint_b.kind = PatchKind::Joint;
  joint_b.frame = {O_b, u, v, -fb.frame.w};
  int jb = pw.add_patch(joint_b);

  BoundaryCurve base_a;
  base_a.kind = BoundaryCurve::Kind::Circle;
  base_a.center = O_a;
  base_a.axis_u = u;
  base_a.axis_v = v;
  base_a.radius = 1.0;
  int cba = pw.add_curve(base_a);
  pw.bind(ja, cba, CurveRole::JointBase);
  pw.bind(cy, cba, CurveRole::CylinderEndLow);
  pw.declare_adjacent(ja, cy, cba);

  BoundaryCurve base_b = base_a;
  base_b.center = O_b;
  int cbb = pw.add_curve(base_b);
  pw.bind(cy, cbb, CurveRole::CylinderEndHigh);
  pw.bind(jb, cbb, CurveRole::JointBase);
  pw.declare_adjacent(cy, jb, cbb);

  BoundaryCurve rim_a;
  rim_a.kind = BoundaryCurve::Kind::Circle;
  rim_a.center = A;
  rim_a.axis_u = u;
  rim_a.axis_v = v;
  rim_a.radius = kHoleRadius;
  rim_a.derived_from = cba;
  int cra = pw.add_curve(rim_a);
  pw.bind(ja, cra, CurveRole::JointRim);
  pw.bind(face_a, cra, CurveRole::SquareHoleRim, hole_a_idx);
  pw.declare_adjacent(ja, face_a, cra);

  BoundaryCurve rim_b = rim_a;
  rim_b.center = B;
  rim_b.derived_from = cbb;
  int crb = pw.add_curve(rim_b);
  pw.bind(jb, crb, CurveRole::JointRim);
  pw.bind(face_b, crb, CurveRole::SquareHoleRim, hole_b_idx);
  pw.declare_adjacent(jb, face_b, crb);

  return {ja, jb};
}

}  // namespace detail_layout

/// Builds the embedding surface: n rounded cubes of size 20 n^2 at
/// f(x_i) = (40 n^2 i, 0, -10 n^2), and for each pair i < j a tube of two
/// vertical cylinder-joints, two size-10 connector cubes and one horizontal
/// cylinder-joint whose designed length realizes the (rescaled) distance.
///
/// The metric is rescaled internally so the minimum distance is 41 n^3 / eps.
inline Layout layout_surface(const FiniteMetric& m, double eps) {
  const int n = m.size();
  auto [scaled, factor] = rescale_to_min(m, n, eps);
  Layout L;
  L.scaled_dist = scaled.matrix();
  L.embedding.labels = m.labels();
  L.embedding.scale_factor = factor;
  L.embedding.epsilon = eps;
  L.plan.n = n;

  const double n2 = static_cast<double>(n) * n;
  const double big = 20.0 * n2;

  for (int i = 1; i <= n; ++i)
    L.embedding.points.push_back({40.0 * n2 * i, 0.0, -10.0 * n2});

  // hole positions per big-cube top face, in creation (pair-lexicographic) order
  std::vector<std::vector<Hole>> top_holes(n);       // local face coords
  std::vector<std::vector<std::pair<int, int>>> top_hole_pair(n);
  const double h_big = 10.0 * n2 - 1.0;
  auto hole_y = [&](int i, int j) { return -10.0 * n2 + 10.0 * (n - 1.0) * i + 10.0 * j - 10.0; };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      double y = hole_y(i, j);
      top_holes[i - 1].push_back({h_big, y + h_big});
      top_hole_pair[i - 1].push_back({i, j});
      top_holes[j - 1].push_back({h_big, y + h_big});
      top_hole_pair[j - 1].push_back({i, j});
    }

  for (int i = 1; i <= n; ++i) {
    std::vector<std::vector<Hole>> holes(6);
    holes[5] = top_holes[i - 1];  // face index 5 = +z
    L.big_cubes.push_back(append_rounded_cube(L.surface, L.embedding.points[i - 1], big, holes));
  }

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      PairPlan p;
      p.i = i;
      p.j = j;
      double y = hole_y(i, j);
      p.hole_i = {40.0 * n2 * i, y, 0.0};
      p.hole_j = {40.0 * n2 * j, y, 0.0};
      p.ell_hor = 40.0 * n2 * (j - i);
      p.ell_vert = vert_length(L.scaled_dist[i - 1][j - 1], p.ell_hor);
      p.cube_ij = {p.hole_i.x, y, p.ell_vert + 7.0};
      p.cube_ji = {p.hole_j.x, y, p.ell_vert + 7.0};

      // connector cubes: hole in the bottom face and in the face looking at
      // the partner cube (+x on the i side, -x on the j side)
      std::vector<std::vector<Hole>> holes_ij(6), holes_ji(6);
      holes_ij[4] = {{4.0, 4.0}};  // -z face
      holes_ij[1] = {{4.0, 4.0}};  // +x face
      holes_ji[4] = {{4.0, 4.0}};
      holes_ji[0] = {{4.0, 4.0}};  // -x face
      RoundedCubeRefs c_ij = append_rounded_cube(L.surface, p.cube_ij, 10.0, holes_ij);
      RoundedCubeRefs c_ji = append_rounded_cube(L.surface, p.cube_ji, 10.0, holes_ji);

      // locate this pair's hole index on each big top face
      auto hole_index = [&](int cube, int a, int b) {
        const auto& pairs = top_hole_pair[cube - 1];
        for (std::size_t k = 0; k < pairs.size(); ++k)
          if (pairs[k] == std::make_pair(a, b)) return static_cast<int>(k);
        throw Error("realization", "hole bookkeeping out of sync");
      };

      int top_i = L.big_cubes[i - 1].face_id(2, +1);
      int top_j = L.big_cubes[j - 1].face_id(2, +1);
      auto [ja1, ja2] = detail_layout::attach_tube(L.surface, top_i, hole_index(i, i, j),
                                                   c_ij.face_id(2, -1), 0);
      auto [jb1, jb2] = detail_layout::attach_tube(L.surface, top_j, hole_index(j, i, j),
                                                   c_ji.face_id(2, -1), 0);
      auto [jh1, jh2] = detail_layout::attach_tube(L.surface, c_ij.face_id(0, +1), 0,
                                                   c_ji.face_id(0, -1), 0);

      auto add_window = [&](int pid) {
        L.connector_patch_ids.push_back(pid);
        L.connector_pair_of.push_back({i, j});
      };
      for (int f = 0; f < 6; ++f) {
        add_window(c_ij.face[f]);
        add_window(c_ji.face[f]);
      }
      // the cubes' edge cylinders and corner octants follow the faces in
      // creation order: 6 faces, 8 octants, 12 edges per cube
      for (int k = 0; k < 20; ++k) {
        add_window(c_ij.face[5] + 1 + k);
        add_window(c_ji.face[5] + 1 + k);
      }
      add_window(ja2);  // connector-side joints
      add_window(jb2);
      add_window(jh1);
      add_window(jh2);

      L.plan.pairs.push_back(p);
    }
  return L;
}

/// The explicit 5-segment tube path f(x_i) -> H_ij -> C_ij -> C_ji -> H_ji
/// -> f(x_j). Stays strictly inside the surface, so it is feasible for any
/// wall placed near the offset shells.
struct WitnessPath {
  std::vector<Vec3> polyline;
  double length = 0;
};

inline WitnessPath witness_path(const TubePlan& plan, const Embedding& emb, int i, int j) {
  if (!(i < j)) throw PreconditionViolation("realization", "witness_path needs i < j");
  const PairPlan& p = plan.pair(i, j);
  WitnessPath w;
  w.polyline = {emb.points[i - 1], p.hole_i, p.cube_ij, p.cube_ji, p.hole_j, emb.points[j - 1]};
  for (std::size_t k = 0; k + 1 < w.polyline.size(); ++k)
    w.length += dist(w.polyline[k], w.polyline[k + 1]);
  return w;
}

/// Designed witness length in closed form:
/// 2 ell(i,j) + 2 (ell_vert + 7) + ell_hor with
/// ell(i,j) = sqrt((10 n^2)^2 + y_ij^2). The size-10 connector cubes make
/// the additive constant 14 here (the size-8 bookkeeping constant is 22
/// when ell_hor counts the horizontal cylinder instead of the center gap).
inline double witness_length_closed_form(const TubePlan& plan, int n, int i, int j) {
  const PairPlan& p = plan.pair(i, j);
  double n2 = static_cast<double>(n) * n;
  double ell = std::sqrt(100.0 * n2 * n2 + p.hole_i.y * p.hole_i.y);
  return 2.0 * ell + 2.0 * (p.ell_vert + 7.0) + p.ell_hor;
}

// ---------------------------------------------------------------------------
// Full realization
// ---------------------------------------------------------------------------

/// Which patches receive wall obstacles. Full-surface walls need
/// ~64 area/zeta^2 >= 10^7 triangles even at the coarsest legal zeta, so the
/// default materializes a verification window: the connector cubes and
/// joints of the pair with the largest distance.
enum class WallWindow { None, ExtremePair, AllConnectors, FullSurface };

struct RealizeResult {
  Layout layout;
  ObstacleSet obstacles;
  BigCount fidelity_count;  // analytic count at the proof constants
  double sigma = 0;
  /// Lower-bound slack per pair (i<j, lexicographic): the walls enforce
  /// dist_T >= min(dist, euclid + 2 * separation_claim); slack is the part
  /// of `dist` the materialized walls do not certify.
  std::vector<double> slack;
};

inline std::vector<int> wall_window_patches(const Layout& L, WallWindow window) {
  std::vector<int> ids;
  switch (window) {
    case WallWindow::None:
      break;
    case WallWindow::ExtremePair: {
      int n = L.plan.n;
      double best = -1;
      std::pair<int, int> arg{1, 2};
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          if (L.scaled_dist[i - 1][j - 1] > best) {
            best = L.scaled_dist[i - 1][j - 1];
            arg = {i, j};
          }
      for (std::size_t k = 0; k < L.connector_patch_ids.size(); ++k)
        if (L.connector_pair_of[k] == arg) ids.push_back(L.connector_patch_ids[k]);
      break;
    }
    case WallWindow::AllConnectors:
      ids = L.connector_patch_ids;
      break;
    case WallWindow::FullSurface:
      for (const auto& p : L.surface.patches) ids.push_back(p.id);
      break;
  }
  return ids;
}

/// Wall parameters suited to connector-cube windows: the coarsest legal net
/// (zeta = 1/8, hence t < 2), small triangles, two sub-layers, two bands.
inline WallConfig default_window_config() { return WallConfig::relaxed(0.125, 1.9, 1.5, 2, 2); }

inline RealizeResult realize(const FiniteMetric& m, double eps, WallConfig cfg,
                             WallWindow window = WallWindow::ExtremePair) {
  if (!(eps > 0 && eps < 1)) throw PreconditionViolation("realization", "eps must be in (0,1)");
  RealizeResult r;
  r.layout = layout_surface(m, eps);
  double sigma = 0;
  for (const auto& row : r.layout.scaled_dist)
    for (double d : row) sigma = std::max(sigma, d);
  r.sigma = sigma;
  r.fidelity_count = count_separator(r.layout.surface.area(), sigma, WallConfig::fidelity());

  WallConfig used = cfg.mode == WallConfig::Mode::Fidelity ? default_window_config() : cfg;
  auto ids = wall_window_patches(r.layout, window);
  if (!ids.empty()) {
    Patchwork sub = r.layout.surface.subset(ids);
    r.obstacles = build_separator(sub, sigma, used);
  } else {
    r.obstacles.provenance.mode = "relaxed";
  }
  r.obstacles.provenance.sigma = sigma;

  const int n = r.layout.plan.n;
  double claim = r.obstacles.provenance.separation_claim;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      double d = r.layout.scaled_dist[i - 1][j - 1];
      double euclid = dist(r.layout.embedding.points[i - 1], r.layout.embedding.points[j - 1]);
      double enforced = std::min(d, euclid + 2.0 * claim);
      r.slack.push_back(d - enforced);
    }
  return r;
}

/// Raises each tangency triangle to a regular tetrahedron whose apex points
/// along the stored outward normal (the vertex winding encodes it), leaving
/// the inside of the surface free.
inline ObstacleSet tetrahedralize(const ObstacleSet& triangles) {
  ObstacleSet out;
  out.provenance = triangles.provenance;
  out.provenance.mode += "+tetrahedra";
  for (const Obstacle& o : triangles.obstacles) {
    if (o.kind != ObstacleKind::Triangle || o.meta.tangency_id < 0)
      throw MissingTangencyMetadata("tetrahedralize needs tangency triangles with normals");
    Vec3 n = normalized(cross(o.vertices[1] - o.vertices[0], o.vertices[2] - o.vertices[0]));
    double side = o.edge_length();
    Obstacle t;
    t.kind = ObstacleKind::Tetrahedron;
    t.vertices = o.vertices;
    t.vertices.push_back(o.centroid() + n * (side * std::sqrt(2.0 / 3.0)));
    t.meta = o.meta;
    out.obstacles.push_back(std::move(t));
  }
  return out;
}

/// Fatness alpha = inradius / circumradius of an obstacle.
inline double fatness(const Obstacle& o) {
  switch (o.kind) {
    case ObstacleKind::Triangle:
      return 0.0;  // flat: inscribed ball radius is zero
    case ObstacleKind::Square:
      return 0.0;
    case ObstacleKind::Tetrahedron: {
      // regular tetrahedron: r_in / r_circ = 1/3
      double side = o.edge_length();
      double r_circ = side * std::sqrt(3.0 / 8.0);
      double r_in = side / std::sqrt(24.0);
      return r_in / r_circ;
    }
  }
  return 0.0;
}

}  // namespace realm
