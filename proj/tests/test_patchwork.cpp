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

#include "realm/patchwork.hpp"

using namespace realm;

namespace {

/// Area-weighted random surface point with random local parameters.
SurfacePoint random_surface_point(const Patchwork& pw, std::mt19937_64& rng) {
  std::vector<double> acc;
  double total = 0;
  for (const auto& p : pw.patches) acc.push_back(total += p.area());
  std::uniform_real_distribution<double> u(0, total);
  double x = u(rng);
  std::size_t pi = std::lower_bound(acc.begin(), acc.end(), x) - acc.begin();
  const Patch& p = pw.patches[pi];
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  switch (p.kind) {
    case PatchKind::Square: {
      double lu, lv;
      do {
        lu = p.side * uu(rng);
        lv = p.side * uu(rng);
      } while (p.in_hole(lu, lv));
      return p.at(lu, lv);
    }
    case PatchKind::SphericalTriangle:
      return p.at(uu(rng) * kPi / 2, std::asin(uu(rng)));
    case PatchKind::Cylinder:
    case PatchKind::QuarterCylinder:
      return p.at(uu(rng) * p.span, uu(rng) * p.length);
    case PatchKind::Joint:
      return p.at(uu(rng) * 2 * kPi, uu(rng) * kPi / 2);
  }
  return {};
}

Vec3 random_tangent_dir(const SurfacePoint& sp, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Vec3 d{g(rng), g(rng), g(rng)};
    d = d - sp.normal * dot(d, sp.normal);
    double n = norm(d);
    if (n > 1e-6) return d / n;
  }
}

}  // namespace

TEST_CASE("offset_point moves along the outward normal") {
  SurfacePoint sp;
  sp.pos = {1, 0, 0};
  sp.normal = {1, 0, 0};
  // sphere-octant point, delta = 0.25 -> radial offset
  Vec3 q = offset_point(sp, 0.25);
  CHECK(q == Vec3{1.25, 0, 0});
  // delta = 0 -> identity
  CHECK(offset_point(sp, 0.0) == sp.pos);
  CHECK_THROWS_AS(offset_point(sp, 0.5), OffsetOutOfRange);
}

TEST_CASE("offset_point on a cylinder moves radially") {
  Patch cyl;
  cyl.kind = PatchKind::Cylinder;
  cyl.length = 2;
  cyl.span = 2 * kPi;  // axis = z through origin
  SurfacePoint sp = cyl.at(0.0, 0.0);  // (1,0,0), normal (1,0,0)
  CHECK(dist(sp.pos, {1, 0, 0}) < 1e-15);
  CHECK(dist(offset_point(sp, -0.25), {0.75, 0, 0}) < 1e-15);
}

TEST_CASE("classify_offset_patch follows the delta-patch taxonomy") {
  Patch cyl;
  cyl.kind = PatchKind::Cylinder;
  auto c = classify_offset_patch(cyl, 0.25);
  CHECK(c.radius == Catch::Approx(1.25));

  Patch joint;
  joint.kind = PatchKind::Joint;
  auto j = classify_offset_patch(joint, 0.25);
  CHECK(j.radius == Catch::Approx(0.75));

  Patch sq;
  sq.kind = PatchKind::Square;
  sq.side = 3;
  auto s = classify_offset_patch(sq, 0.3);
  CHECK(s.unchanged);

  CHECK_THROWS_AS(classify_offset_patch(cyl, 0.7), OffsetOutOfRange);
}

TEST_CASE("rounded cube assembles into a valid closed patchwork") {
  Patchwork pw = rounded_cube({0, 0, 0}, 6.0);
  REQUIRE(pw.patches.size() == 6 + 12 + 8);
  CHECK_NOTHROW(pw.validate());
  CHECK(pw.area() == Catch::Approx(6 * 16 + 12 * (kPi / 2) * 4 + 8 * (kPi / 2)));
}

TEST_CASE("signed_offset_of recovers construction offsets") {
  Patchwork pw = rounded_cube({0, 0, 0}, 6.0);
  std::mt19937_64 rng(11);
  SECTION("points on the surface have offset zero") {
    for (int i = 0; i < 50; ++i) {
      SurfacePoint sp = random_surface_point(pw, rng);
      auto r = pw.signed_offset_of(sp.pos);
      REQUIRE(r.classification == SignedOffsetResult::Kind::OnShell);
      CHECK(std::abs(r.delta) < 1e-9);
    }
  }
  SECTION("q = p + 0.1 n(p) has offset 0.1 with foot point p") {
    for (int i = 0; i < 50; ++i) {
      SurfacePoint sp = random_surface_point(pw, rng);
      auto r = pw.signed_offset_of(sp.pos + sp.normal * 0.1);
      REQUIRE(r.classification == SignedOffsetResult::Kind::OnShell);
      CHECK(r.delta == Catch::Approx(0.1).margin(1e-9));
      CHECK(dist(r.nearest.pos, sp.pos) < 1e-9);
    }
  }
  SECTION("offset consistency across the documented delta grid") {
    for (double delta : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
      for (int i = 0; i < 40; ++i) {
        SurfacePoint sp = random_surface_point(pw, rng);
        auto r = pw.signed_offset_of(offset_point(sp, delta));
        REQUIRE(r.classification == SignedOffsetResult::Kind::OnShell);
        CHECK(r.delta == Catch::Approx(delta).margin(1e-9));
      }
    }
  }
}

TEST_CASE("center of a size-20 rounded cube classifies as Inside") {
  Patchwork pw = rounded_cube({3, -2, 5}, 20.0);
  auto r = pw.signed_offset_of({3, -2, 5});
  CHECK(r.classification == SignedOffsetResult::Kind::Inside);
  auto far = pw.signed_offset_of({3, -2, 5 + 40});
  CHECK(far.classification == SignedOffsetResult::Kind::Outside);
}

TEST_CASE("ray parity is independent of the ray direction") {
  Patchwork pw = rounded_cube({0, 0, 0}, 8.0);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-8, 8);
  int n_inside = 0;
  for (int i = 0; i < 1000; ++i) {
    Vec3 q{u(rng), u(rng), u(rng)};
    if (pw.signed_offset_of(q).euclid < 1e-3) continue;  // skip near-surface points
    bool first = pw.inside(q, 0);
    n_inside += first;
    for (std::uint64_t salt = 1; salt < 10; ++salt) CHECK(pw.inside(q, salt) == first);
  }
  CHECK(n_inside > 50);  // sanity: the cube occupies a decent fraction of the box
}

TEST_CASE("touchability: rounded cube is 1-touchable but not 3-touchable") {
  Patchwork pw = rounded_cube({0, 0, 0}, 6.0);
  auto ok = pw.touchability_check(1.0, 2000);
  CHECK(ok.ok());
  auto bad = pw.touchability_check(3.0, 2000);
  CHECK_FALSE(bad.ok());  // corner spheres have curvature radius 1
}

TEST_CASE("touchability: a flat square patch passes at any radius") {
  Patchwork pw;
  Patch sq;
  sq.kind = PatchKind::Square;
  sq.side = 4;
  pw.add_patch(sq);
  for (double r : {0.5, 1.0, 3.0, 10.0}) CHECK(pw.touchability_check(r, 500).ok());
}

TEST_CASE("between_offsets_bound: sandwich holds on a rounded cube") {
  Patchwork pw = rounded_cube({0, 0, 0}, 6.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    SurfacePoint sp = random_surface_point(pw, rng);
    double eps = 0.02 + 0.08 * u(rng);
    double dmax = 0.5 - 2 * eps * eps - 1e-6;
    double delta = -dmax + 2 * dmax * u(rng);
    Vec3 q = sp.pos + sp.normal * delta + random_tangent_dir(sp, rng) * (eps * u(rng));
    CHECK(between_offsets_bound(pw, sp, delta, q, eps));
  }
}

TEST_CASE("between_offsets_bound: flat square has zero deviation") {
  Patchwork pw;
  Patch sq;
  sq.kind = PatchKind::Square;
  sq.side = 10;
  int id = pw.add_patch(sq);
  const Patch& p = pw.patches[id];
  SurfacePoint sp = p.at(5, 5);
  Vec3 q = sp.pos + Vec3{0.09, 0.03, 0};
  CHECK(between_offsets_bound(pw, sp, 0.2, q + sp.normal * 0.2, 0.1));
  auto r = pw.signed_offset_of(q + sp.normal * 0.2);
  CHECK(r.delta == Catch::Approx(0.2).margin(1e-12));
}

namespace {

/// Signed distance from the surface, valid slightly beyond the |delta| < 1/2
/// shell (uses the euclid distance with the inside/outside sign).
double extended_delta(const Patchwork& pw, const Vec3& x) {
  auto r = pw.signed_offset_of(x);
  if (r.classification == SignedOffsetResult::Kind::OnShell) return r.delta;
  return r.classification == SignedOffsetResult::Kind::Inside ? -r.euclid : r.euclid;
}

/// Where the normal line through q pierces S(target_delta), as a signed
/// travel distance along n. This is the gap the sandwich proof bounds by
/// 2 eps^2: for a sphere of radius R it equals R - sqrt(R^2 - |pq|^2).
double normal_line_gap(const Patchwork& pw, const Vec3& q, const Vec3& n, double target_delta) {
  double lo = -0.05, hi = 0.05;
  auto f = [&](double t) { return extended_delta(pw, q + n * t) - target_delta; };
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm <= 0) == (flo <= 0)) { lo = mid; flo = fm; } else { hi = mid; }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("worst-case sandwich deviation matches the sphere sagitta") {
  // the inner offset of a corner octant approaches a sphere of radius 1/2;
  // at |pq| = 0.1 the normal-line gap is 1/2 - sqrt(1/4 - 0.01) = 0.0101020514...
  Patchwork pw = rounded_cube({0, 0, 0}, 6.0);
  const Patch* oct = nullptr;
  for (const auto& p : pw.patches)
    if (p.kind == PatchKind::SphericalTriangle) { oct = &p; break; }
  REQUIRE(oct != nullptr);
  SurfacePoint sp = oct->at(0.7, 0.6);
  double delta = -0.5 + 1e-9;
  Vec3 p_delta = sp.pos + sp.normal * delta;
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int i = 0; i < 32; ++i) {
    Vec3 q = p_delta + random_tangent_dir(sp, rng) * 0.1;
    auto r = pw.signed_offset_of(q);
    REQUIRE(r.classification == SignedOffsetResult::Kind::OnShell);
    CHECK(std::abs(r.delta - delta) <= 2 * 0.1 * 0.1);  // sandwich bound
    worst = std::max(worst, std::abs(normal_line_gap(pw, q, sp.normal, delta)));
  }
  double expect = 0.5 - std::sqrt(0.25 - 0.01);
  CHECK(worst == Catch::Approx(expect).margin(1e-6));
}

TEST_CASE("cylinder sagitta at |pq| = 0.05 stays below 2 eps^2") {
  Patchwork pw = rounded_cube({0, 0, 0}, 6.0);
  const Patch* cyl = nullptr;
  for (const auto& p : pw.patches)
    if (p.kind == PatchKind::QuarterCylinder) { cyl = &p; break; }
  REQUIRE(cyl != nullptr);
  SurfacePoint sp = cyl->at(kPi / 4, cyl->length / 2);
  // move along the circular direction in the tangent plane
  Vec3 circ = normalized(cross(cyl->frame.w, sp.normal));
  Vec3 q = sp.pos + circ * 0.05;
  double dev = std::abs(normal_line_gap(pw, q, sp.normal, 0.0));
  double exact = 1.0 - std::sqrt(1.0 - 0.05 * 0.05);
  CHECK(dev == Catch::Approx(exact).margin(1e-9));
  CHECK(dev <= 2 * 0.05 * 0.05);
  CHECK(std::abs(pw.signed_offset_of(q).delta) <= 2 * 0.05 * 0.05);
}
