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
#include <random>
#include <vector>

#include "geodesy.hpp"
#include "metric.hpp"
#include "realization.hpp"

namespace realm {

struct Tour {
  std::vector<int> order;  // permutation of site indices
  double length = 0;
  enum class Method { ExactDP, Heuristic } method = Method::ExactDP;
};

inline double tour_length(const std::vector<std::vector<double>>& d, const std::vector<int>& order) {
  double len = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    len += d[order[k]][order[(k + 1) % order.size()]];
  return len;
}

namespace detail_tsp {

/// Canonical form: start at 0, lower neighbor first.
inline void canonicalize(std::vector<int>& order) {
  auto it = std::find(order.begin(), order.end(), 0);
  std::rotate(order.begin(), it, order.end());
  if (order.size() > 2 && order[1] > order.back())
    std::reverse(order.begin() + 1, order.end());
}

}  // namespace detail_tsp

/// Held-Karp dynamic program; optimal for n <= 18. Ties break toward the
/// lexicographically smaller reconstruction.
inline Tour tsp_exact(const FiniteMetric& m) {
  const int n = m.size();
  if (n > 18) throw TooLarge("tsp_exact handles n <= 18 (got " + std::to_string(n) + ")");
  const auto& d = m.matrix();
  Tour t;
  t.method = Tour::Method::ExactDP;
  if (n == 2) {
    t.order = {0, 1};
    t.length = tour_length(d, t.order);
    return t;
  }
  const int k = n - 1;  // cities 1..n-1; city 0 is the fixed start
  const std::size_t full = std::size_t{1} << k;
  std::vector<std::vector<double>> dp(full, std::vector<double>(k, std::numeric_limits<double>::infinity()));
  std::vector<std::vector<std::int8_t>> par(full, std::vector<std::int8_t>(k, -1));
  for (int j = 0; j < k; ++j) dp[std::size_t{1} << j][j] = d[0][j + 1];
  for (std::size_t mask = 1; mask < full; ++mask)
    for (int j = 0; j < k; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      double base = dp[mask][j];
      if (!std::isfinite(base)) continue;
      for (int x = 0; x < k; ++x) {
        if (mask & (std::size_t{1} << x)) continue;
        std::size_t nm = mask | (std::size_t{1} << x);
        double cand = base + d[j + 1][x + 1];
        if (cand < dp[nm][x] || (cand == dp[nm][x] && j < par[nm][x])) {
          dp[nm][x] = cand;
          par[nm][x] = static_cast<std::int8_t>(j);
        }
      }
    }
  double best = std::numeric_limits<double>::infinity();
  int last = 0;
  for (int j = 0; j < k; ++j) {
    double cand = dp[full - 1][j] + d[j + 1][0];
    if (cand < best || (cand == best && j < last)) {
      best = cand;
      last = j;
    }
  }
  std::vector<int> rev;
  std::size_t mask = full - 1;
  int j = last;
  while (j >= 0) {
    rev.push_back(j + 1);
    int pj = par[mask][j];
    mask &= ~(std::size_t{1} << j);
    j = pj;
  }
  t.order = {0};
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) t.order.push_back(*it);
  detail_tsp::canonicalize(t.order);
  t.length = tour_length(d, t.order);
  return t;
}

/// Nearest-neighbor starts plus 2-opt descent, seeded restarts. The result
/// never exceeds the plain nearest-neighbor baseline.
inline Tour tsp_heuristic(const FiniteMetric& m, std::uint64_t seed = 0, int restarts = 8) {
  const int n = m.size();
  if (n < 3) {
    Tour t;
    t.method = Tour::Method::Heuristic;
    t.order.resize(n);
    for (int i = 0; i < n; ++i) t.order[i] = i;
    t.length = tour_length(m.matrix(), t.order);
    return t;
  }
  const auto& d = m.matrix();
  std::mt19937_64 rng(seed);
  auto nearest_neighbor = [&](int start) {
    std::vector<int> order{start};
    std::vector<char> used(n, 0);
    used[start] = 1;
    for (int step = 1; step < n; ++step) {
      int cur = order.back(), best = -1;
      for (int j = 0; j < n; ++j)
        if (!used[j] && (best < 0 || d[cur][j] < d[cur][best])) best = j;
      used[best] = 1;
      order.push_back(best);
    }
    return order;
  };
  auto two_opt = [&](std::vector<int>& order) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < n - 1; ++a)
        for (int b = a + 1; b < n; ++b) {
          int a0 = order[a], a1 = order[(a + 1) % n];
          int b0 = order[b], b1 = order[(b + 1) % n];
          if (a0 == b1 || a1 == b0) continue;
          double delta = d[a0][b0] + d[a1][b1] - d[a0][a1] - d[b0][b1];
          if (delta < -1e-12 * (1 + d[a0][a1])) {
            std::reverse(order.begin() + a + 1, order.begin() + b + 1);
            improved = true;
          }
        }
    }
  };
  Tour best;
  best.method = Tour::Method::Heuristic;
  best.length = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    int start = r == 0 ? 0 : static_cast<int>(rng() % n);
    auto order = nearest_neighbor(start);
    double nn_len = tour_length(d, order);
    two_opt(order);
    double len = tour_length(d, order);
    len = std::min(len, nn_len);  // 2-opt only improves; keep the guarantee explicit
    if (len < best.length) {
      best.order = order;
      best.length = len;
    }
  }
  detail_tsp::canonicalize(best.order);
  best.length = tour_length(d, best.order);
  return best;
}

// ---------------------------------------------------------------------------
// TSP with obstacles
// ---------------------------------------------------------------------------

struct ObstacleTourCertificate {
  double h = 0;
  std::size_t graph_nodes = 0;
  std::vector<std::vector<double>> apsp_matrix;
};

struct ObstacleTour {
  Tour tour;
  ObstacleTourCertificate certificate;
};

/// Pipeline: geodesic APSP over the sites, then exact DP (n <= 18) or the
/// heuristic. The tour length is a certified upper bound: every APSP entry
/// comes from a feasible polyline.
inline ObstacleTour tsp_with_obstacles(const std::vector<Vec3>& sites, const ObstacleSet& obs,
                                       double h, std::uint64_t seed = 0,
                                       std::size_t node_budget = 2'000'000) {
  ObstacleTour out;
  out.certificate.h = h;
  auto matrix = apsp(sites, obs, h, node_budget);
  out.certificate.apsp_matrix = matrix;
  {
    GeodesicGraph g(obs, h, node_budget);
    out.certificate.graph_nodes = g.size() + sites.size();
  }
  auto metric = validate_metric(matrix);
  out.tour = static_cast<int>(sites.size()) <= 18 ? tsp_exact(metric)
                                                  : tsp_heuristic(metric, seed);
  return out;
}

// ---------------------------------------------------------------------------
// Reduction harness
// ---------------------------------------------------------------------------

struct ReductionReport {
  double spread = 0;
  double epsilon = 0;
  double opt_original = 0;     // DP optimum of the input metric
  double certified_tour = 0;   // DP optimum over witness tube-path lengths
  double oracle_tour = 0;      // DP optimum over the geodesic oracle's APSP
  double eta = 0;              // witness slack: certified <= (1+eps)(1+eta) opt
  bool sandwich_ok = false;    // certified in [opt, (1+eps)(1+eta) opt]
  std::vector<std::vector<double>> witness_matrix;
  std::vector<std::vector<double>> oracle_matrix;
  std::size_t obstacle_count = 0;
  double wall_separation_claim = 0;
};

/// Embeds a metric-TSP instance among obstacles and compares tours.
///
/// The certified side uses witness tube paths: they are feasible (they stay
/// inside the surface), bounded by (1+eps) * dist per pair, and never
/// shorter than dist, so the certified tour is sandwiched around the input
/// optimum. The oracle side reports what the geodesic oracle finds among the
/// materialized (windowed) walls; at desk scale those walls make no
/// separation claim, so the oracle may legitimately undercut the input
/// metric. Both matrices are reported.
inline ReductionReport reduction_harness(const FiniteMetric& m, double eps,
                                         WallConfig cfg = default_window_config(),
                                         WallWindow window = WallWindow::ExtremePair,
                                         double oracle_h = 0 /* 0: skip the oracle side */) {
  ReductionReport rep;
  rep.epsilon = eps;
  rep.spread = spread(m).spread;
  if (rep.spread > 1e6)
    throw SpreadTooLarge("reduction harness requires polynomial spread (cap 1e6, got " +
                         std::to_string(rep.spread) + ")");

  rep.opt_original = tsp_exact(m).length;

  RealizeResult real = realize(m, eps, cfg, window);
  rep.obstacle_count = real.obstacles.size();
  rep.wall_separation_claim = real.obstacles.provenance.separation_claim;

  const int n = m.size();
  rep.witness_matrix.assign(n, std::vector<double>(n, 0.0));
  double max_ratio = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      WitnessPath w = witness_path(real.layout.plan, real.layout.embedding, i, j);
      rep.witness_matrix[i - 1][j - 1] = rep.witness_matrix[j - 1][i - 1] = w.length;
      max_ratio = std::max(max_ratio, w.length / real.layout.scaled_dist[i - 1][j - 1]);
    }
  // scale the witness matrix back to input units
  double f = real.layout.embedding.scale_factor;
  for (auto& row : rep.witness_matrix)
    for (double& x : row) x /= f;

  rep.certified_tour = tsp_exact(validate_metric(rep.witness_matrix, m.labels())).length;
  rep.eta = std::max(0.0, max_ratio / (1.0 + eps) - 1.0);
  double lo = rep.opt_original * (1 - 1e-9);
  double hi = rep.opt_original * (1 + eps) * (1 + rep.eta) * (1 + 1e-9);
  rep.sandwich_ok = rep.certified_tour >= lo && rep.certified_tour <= hi;

  if (oracle_h > 0) {
    GeodesicGraph graph(real.obstacles, oracle_h);
    std::vector<int> ids;
    for (const Vec3& p : real.layout.embedding.points) ids.push_back(graph.add_node(p));
    rep.oracle_matrix.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto r = graph.astar(ids[i], ids[j]);
        rep.oracle_matrix[i][j] = rep.oracle_matrix[j][i] =
            r.reachable ? r.length / f : std::numeric_limits<double>::infinity();
      }
    rep.oracle_tour = tsp_exact(validate_metric(rep.oracle_matrix, m.labels())).length;
  }
  return rep;
}

}  // namespace realm
