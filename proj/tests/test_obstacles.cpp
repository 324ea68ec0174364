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

#include "realm/io.hpp"
#include "realm/obstacles.hpp"

using namespace realm;

namespace {

Obstacle equilateral(const Vec3& center, double side, const Vec3& e1, const Vec3& e2) {
  Obstacle o;
  o.kind = ObstacleKind::Triangle;
  double r = side / std::sqrt(3.0);
  for (int k = 0; k < 3; ++k) {
    double a = 2 * kPi * k / 3;
    o.vertices.push_back(center + e1 * (r * std::cos(a)) + e2 * (r * std::sin(a)));
  }
  return o;
}

Obstacle regular_tetra(const Vec3& base_center, double side) {
  Obstacle t = equilateral(base_center, side, {1, 0, 0}, {0, 1, 0});
  t.kind = ObstacleKind::Tetrahedron;
  t.vertices.push_back(base_center + Vec3{0, 0, side * std::sqrt(2.0 / 3.0)});
  t.meta.tangency_id = 0;
  return t;
}

}  // namespace

TEST_CASE("well_formed checks shapes at 1e-9 relative") {
  CHECK(equilateral({0, 0, 0}, 1.0, {1, 0, 0}, {0, 1, 0}).well_formed());
  Obstacle bad = equilateral({0, 0, 0}, 1.0, {1, 0, 0}, {0, 1, 0});
  bad.vertices[0] += Vec3{0.01, 0, 0};
  CHECK_FALSE(bad.well_formed());
  CHECK(regular_tetra({0, 0, 0}, 1.0).well_formed());

  Obstacle sq;
  sq.kind = ObstacleKind::Square;
  sq.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  CHECK(sq.well_formed());
}

TEST_CASE("obstacle_distance matches hand geometry") {
  Obstacle a = equilateral({0, 0, 0}, 1.0, {1, 0, 0}, {0, 1, 0});
  Obstacle b = equilateral({0, 0, 2}, 1.0, {1, 0, 0}, {0, 1, 0});
  CHECK(obstacle_distance(a, b) == Catch::Approx(2.0));
  Obstacle c = equilateral({0, 0, 0}, 1.0, {1, 0, 0}, {0, 1, 0});
  CHECK(obstacle_distance(a, c) == Catch::Approx(0.0).margin(1e-15));
  // solid containment: a tiny triangle deep inside a big tetrahedron
  Obstacle big = regular_tetra({0, 0, 0}, 10.0);
  Obstacle small = equilateral(big.centroid(), 0.01, {1, 0, 0}, {0, 1, 0});
  CHECK(obstacle_distance(big, small) == 0.0);
}

TEST_CASE("segment/triangle crossing convention") {
  Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  SECTION("through the interior blocks") {
    CHECK(segment_crosses_triangle({0.2, 0.2, -1}, {0.2, 0.2, 1}, a, b, c));
  }
  SECTION("grazing an edge exactly does not block") {
    // crossing point (0.5, 0, 0) lies on edge ab
    CHECK_FALSE(segment_crosses_triangle({0.5, -1, -1}, {0.5, 1, 1}, a, b, c));
    // crossing point exactly at a vertex
    CHECK_FALSE(segment_crosses_triangle({0, -1, -1}, {0, 1, 1}, a, b, c));
  }
  SECTION("endpoint on the plane does not block") {
    CHECK_FALSE(segment_crosses_triangle({0.2, 0.2, 0}, {0.2, 0.2, 1}, a, b, c));
  }
  SECTION("coplanar chords do not block") {
    CHECK_FALSE(segment_crosses_triangle({-1, 0.2, 0}, {1, 0.2, 0}, a, b, c));
  }
  SECTION("missing the triangle entirely") {
    CHECK_FALSE(segment_crosses_triangle({2, 2, -1}, {2, 2, 1}, a, b, c));
  }
}

TEST_CASE("square crossing treats the full polygon interior as blocking") {
  Obstacle sq;
  sq.kind = ObstacleKind::Square;
  sq.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  // a point on the diagonal would be boundary if the square were two
  // triangles; the polygon test must block it
  CHECK(segment_crosses_obstacle({0.5, 0.5, -1}, {0.5, 0.5, 1}, sq));
  CHECK_FALSE(segment_crosses_obstacle({0.5, 0.0, -1}, {0.5, 0.0, 1}, sq));  // edge graze
}

TEST_CASE("segment/tetrahedron crossing") {
  Obstacle t = regular_tetra({0, 0, 0}, 2.0);
  Vec3 inside = t.centroid();
  CHECK(inside_tetrahedron(t, inside));
  CHECK_FALSE(inside_tetrahedron(t, inside + Vec3{10, 0, 0}));
  CHECK(segment_crosses_obstacle(inside - Vec3{5, 0, 0}, inside + Vec3{5, 0, 0}, t));
  // sliding along the base plane from outside does not enter the interior
  CHECK_FALSE(segment_crosses_obstacle({-5, -5, 0}, {5, -5, 0}, t));
}

TEST_CASE("BVH candidates agree with brute force on crossing counts") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-5, 5);
  ObstacleSet set;
  for (int i = 0; i < 120; ++i) {
    Vec3 c{u(rng), u(rng), u(rng)};
    Vec3 e1 = normalized(Vec3{u(rng), u(rng), u(rng)});
    Vec3 e2p = Vec3{u(rng), u(rng), u(rng)};
    Vec3 e2 = normalized(e2p - e1 * dot(e2p, e1));
    set.obstacles.push_back(equilateral(c, 0.7, e1, e2));
  }
  ObstacleBVH bvh(set);
  for (int trial = 0; trial < 300; ++trial) {
    Vec3 p{u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng)};
    int brute = 0;
    for (const auto& o : set.obstacles) brute += segment_crosses_obstacle(p, q, o);
    int via_bvh = 0;
    bvh.for_each_segment_candidate(
        p, q, [&](std::size_t i) { via_bvh += segment_crosses_obstacle(p, q, set.obstacles[i]); });
    CHECK(via_bvh == brute);
  }
}

TEST_CASE("verify_disjoint flags overlaps and accepts separated sets") {
  ObstacleSet ok;
  for (int i = 0; i < 40; ++i)
    ok.obstacles.push_back(equilateral({i * 2.0, 0, 0}, 1.0, {1, 0, 0}, {0, 1, 0}));
  auto rep = verify_disjoint(ok);
  CHECK(rep.ok);
  // vertex (circumradius ahead) faces the next triangle's flat edge (inradius)
  CHECK(rep.min_pair_distance == Catch::Approx(2.0 - std::sqrt(3.0) / 2.0));

  ObstacleSet bad = ok;
  bad.obstacles.push_back(equilateral({0.1, 0.1, 0}, 1.0, {1, 0, 0}, {0, 1, 0}));
  auto rep2 = verify_disjoint(bad);
  CHECK_FALSE(rep2.ok);
  CHECK_FALSE(rep2.intersecting_pairs.empty());
}

TEST_CASE("OBJ round trip preserves coordinates bit-exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  ObstacleSet set;
  set.provenance.mode = "relaxed";
  set.provenance.zeta = 0.125;
  for (int i = 0; i < 10; ++i) {
    Vec3 c{u(rng) * 1000, u(rng), u(rng) * 1e-3};
    set.obstacles.push_back(equilateral(c, 0.25, {1, 0, 0}, {0, 1, 0}));
    set.obstacles.back().meta.layer = i % 3;
    set.obstacles.back().meta.delta = u(rng);
    set.obstacles.back().meta.tangency_id = i;
  }
  set.obstacles.push_back(regular_tetra({5, 5, 5}, 0.5));
  std::string dir = "obj_roundtrip_test";
  std::string path = dir + ".obj";
  save_obstacles(path, set);
  ObstacleSet back = load_obstacles(path);
  REQUIRE(back.size() == set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    REQUIRE(back.obstacles[i].kind == set.obstacles[i].kind);
    REQUIRE(back.obstacles[i].vertices.size() == set.obstacles[i].vertices.size());
    for (std::size_t v = 0; v < set.obstacles[i].vertices.size(); ++v)
      CHECK(back.obstacles[i].vertices[v] == set.obstacles[i].vertices[v]);
    CHECK(back.obstacles[i].meta.layer == set.obstacles[i].meta.layer);
    CHECK(back.obstacles[i].meta.tangency_id == set.obstacles[i].meta.tangency_id);
  }
  CHECK(back.provenance.zeta == set.provenance.zeta);
  std::remove(path.c_str());
  std::remove((path + ".provenance.json").c_str());
}

TEST_CASE("deterministic exports: identical sets produce identical bytes") {
  ObstacleSet a, b;
  for (int i = 0; i < 5; ++i) {
    a.obstacles.push_back(equilateral({i * 1.0, 0.5, -2}, 0.3, {0, 1, 0}, {0, 0, 1}));
    b.obstacles.push_back(equilateral({i * 1.0, 0.5, -2}, 0.3, {0, 1, 0}, {0, 0, 1}));
  }
  CHECK(obstacles_to_obj(a) == obstacles_to_obj(b));
  CHECK(provenance_to_json(a) == provenance_to_json(b));
}
