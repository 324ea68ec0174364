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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "realm/tsp.hpp"

using namespace realm;

namespace {

FiniteMetric random_metric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<Vec3> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d[i][j] = dist(pts[i], pts[j]);
  return validate_metric(d);
}

/// Exhaustive tour enumeration: the independent optimum oracle.
double brute_force_optimum(const FiniteMetric& m) {
  int n = m.size();
  std::vector<int> perm;
  for (int i = 1; i < n; ++i) perm.push_back(i);
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = m(0, perm.front());
    for (std::size_t k = 0; k + 1 < perm.size(); ++k) len += m(perm[k], perm[k + 1]);
    len += m(perm.back(), 0);
    best = std::min(best, len);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("tsp_exact on the unit square corners") {
  std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  std::vector<std::vector<double>> d(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) d[i][j] = dist(pts[i], pts[j]);
  Tour t = tsp_exact(validate_metric(d));
  CHECK(t.length == Catch::Approx(4.0));
  CHECK(t.order.size() == 4);
  CHECK(t.order[0] == 0);
}

TEST_CASE("tsp_exact matches exhaustive enumeration (n <= 8)") {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    FiniteMetric m = random_metric(n, rng);
    Tour t = tsp_exact(m);
    CHECK(t.length == Catch::Approx(brute_force_optimum(m)).epsilon(1e-12));
    // tour validity: a permutation whose recomputed length matches
    std::vector<int> sorted = t.order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) CHECK(sorted[i] == i);
    CHECK(tour_length(m.matrix(), t.order) == Catch::Approx(t.length).epsilon(1e-12));
  }
}

TEST_CASE("tsp_exact on the uniform metric gives n") {
  std::vector<std::vector<double>> d(6, std::vector<double>(6, 1.0));
  for (int i = 0; i < 6; ++i) d[i][i] = 0;
  CHECK(tsp_exact(validate_metric(d)).length == Catch::Approx(6.0));
}

TEST_CASE("tsp_exact rejects oversized instances") {
  std::mt19937_64 rng(4);
  CHECK_THROWS_AS(tsp_exact(random_metric(19, rng)), TooLarge);
}

TEST_CASE("tsp_heuristic: deterministic, bounded by nearest neighbor, near-optimal") {
  std::mt19937_64 rng(31);
  double worst_ratio = 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 5 + static_cast<int>(rng() % 6);
    FiniteMetric m = random_metric(n, rng);
    Tour h1 = tsp_heuristic(m, 42);
    Tour h2 = tsp_heuristic(m, 42);
    CHECK(h1.order == h2.order);  // same seed, same tour
    Tour ex = tsp_exact(m);
    CHECK(h1.length >= ex.length - 1e-12);
    worst_ratio = std::max(worst_ratio, h1.length / ex.length);
    // nearest-neighbor baseline from the fixed start
    std::vector<int> order{0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    for (int s = 1; s < n; ++s) {
      int cur = order.back(), best = -1;
      for (int j = 0; j < n; ++j)
        if (!used[j] && (best < 0 || m(cur, j) < m(cur, best))) best = j;
      used[best] = 1;
      order.push_back(best);
    }
    CHECK(h1.length <= tour_length(m.matrix(), order) + 1e-12);
  }
  INFO("worst heuristic/exact ratio " << worst_ratio);
  CHECK(worst_ratio <= 1.5);
}

TEST_CASE("unit-square corners: 2-opt untangles any crossing") {
  std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  std::vector<std::vector<double>> d(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) d[i][j] = dist(pts[i], pts[j]);
  for (std::uint64_t seed : {0ull, 1ull, 7ull})
    CHECK(tsp_heuristic(validate_metric(d), seed).length == Catch::Approx(4.0));
}

TEST_CASE("tsp_with_obstacles: free space and one square") {
  SECTION("two sites, no obstacles") {
    ObstacleSet empty;
    std::vector<Vec3> sites{{0, 0, 0}, {3, 4, 0}};
    auto r = tsp_with_obstacles(sites, empty, 0.5);
    CHECK(r.tour.length == Catch::Approx(10.0));
    CHECK(r.certificate.apsp_matrix[0][1] == Catch::Approx(5.0));
  }
  SECTION("two sites across a unit square") {
    ObstacleSet set;
    Obstacle o;
    o.kind = ObstacleKind::Square;
    o.vertices = {{-0.5, -0.5, 0}, {0.5, -0.5, 0}, {0.5, 0.5, 0}, {-0.5, 0.5, 0}};
    set.obstacles.push_back(o);
    std::vector<Vec3> sites{{0, 0, -1}, {0, 0, 1}};
    auto r = tsp_with_obstacles(sites, set, 0.005);
    CHECK(r.tour.length >= 2 * 2.2360679);
    CHECK(r.tour.length <= 2 * 2.2360679 * 1.01);
    CHECK(r.certificate.graph_nodes > 100);
  }
}

TEST_CASE("reduction harness: certified sandwich on small metrics") {
  std::mt19937_64 rng(9);
  SECTION("3-point metric") {
    FiniteMetric m = random_metric(3, rng);
    auto rep = reduction_harness(m, 0.2);
    CHECK(rep.sandwich_ok);
    CHECK(rep.certified_tour >= rep.opt_original * (1 - 1e-9));
    CHECK(rep.certified_tour <= rep.opt_original * (1 + 0.2) * (1 + rep.eta) * (1 + 1e-9));
    CHECK(rep.eta >= 0.0);
    CHECK(rep.obstacle_count > 0);
    CHECK(rep.wall_separation_claim == 0.0);
  }
  SECTION("degenerate n = 2: tour is twice the distance") {
    auto m = validate_metric({{0, 3}, {3, 0}});
    auto rep = reduction_harness(m, 0.3);
    CHECK(rep.opt_original == Catch::Approx(6.0));
    CHECK(rep.sandwich_ok);
    CHECK(rep.certified_tour >= 6.0 - 1e-9);
    CHECK(rep.certified_tour <= 6.0 * 1.3 * (1 + rep.eta) + 1e-9);
  }
  SECTION("excessive spread is rejected") {
    auto m = validate_metric({{0, 1, 2e6}, {1, 0, 2e6}, {2e6, 2e6, 0}});
    CHECK_THROWS_AS(reduction_harness(m, 0.2), SpreadTooLarge);
  }
}

TEST_CASE("uniform metric harness: ratio within 1 + eps + eta") {
  std::vector<std::vector<double>> d(4, std::vector<double>(4, 1.0));
  for (int i = 0; i < 4; ++i) d[i][i] = 0;
  auto m = validate_metric(d);
  auto rep = reduction_harness(m, 0.25);
  CHECK(rep.sandwich_ok);
  CHECK(rep.certified_tour / rep.opt_original <= (1 + 0.25) * (1 + rep.eta) + 1e-9);
}
