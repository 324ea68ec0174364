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

#include <cstdio>
#include <sstream>

#include "realm/cli.hpp"

using namespace realm;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string run_capture(const RunConfig& cfg, int expect_status = 0) {
  std::ostringstream out, err;
  int status = run(cfg, out, err);
  INFO(err.str());
  REQUIRE(status == expect_status);
  return out.str();
}

}  // namespace

TEST_CASE("realize round trip: OBJ + embedding reload into the geodesic oracle") {
  TempFile metric("cli_metric.json");
  TempFile obj("cli_obstacles.obj");
  TempFile sidecar("cli_obstacles.obj.provenance.json");
  TempFile emb("cli_embedding.json");
  save_metric(metric.path, validate_metric({{0, 1}, {1, 0}}, {"a", "b"}));

  RunConfig cfg;
  cfg.command = RunConfig::Command::Realize;
  cfg.metric_path = metric.path;
  cfg.epsilon = 0.5;
  cfg.out_path = obj.path;
  cfg.embedding_path = emb.path;
  std::string summary = run_capture(cfg);
  Json j = Json::parse(summary);
  CHECK(j["obstacles"].get<std::size_t>() > 100);
  CHECK(j["separation_claim"] == 0.0);

  // the exported artifacts reload losslessly
  ObstacleSet obs = load_obstacles(obj.path);
  CHECK(obs.size() == j["obstacles"].get<std::size_t>());
  Embedding e = embedding_from_json(detail_io::read_file(emb.path));
  REQUIRE(e.points.size() == 2);
  CHECK(e.labels == std::vector<std::string>{"a", "b"});

  // and feed the geodesic command
  RunConfig g;
  g.command = RunConfig::Command::Geodesic;
  g.obstacles_path = obj.path;
  g.from = e.points[0];
  g.to = e.points[1];
  g.have_from = g.have_to = true;
  g.h = 1.0;
  Json gj = Json::parse(run_capture(g));
  CHECK(gj["reachable"].get<bool>());
  // walls are far from the straight line between the embedded points
  CHECK(gj["length"].get<double>() ==
        Catch::Approx(dist(e.points[0], e.points[1])).epsilon(1e-9));
}

TEST_CASE("determinism: identical configs produce byte-identical artifacts") {
  TempFile metric("cli_det_metric.json");
  save_metric(metric.path, validate_metric({{0, 2, 3}, {2, 0, 2}, {3, 2, 0}}));
  auto run_once = [&](const std::string& obj_path) {
    RunConfig cfg;
    cfg.command = RunConfig::Command::Realize;
    cfg.metric_path = metric.path;
    cfg.epsilon = 0.4;
    cfg.out_path = obj_path;
    run_capture(cfg);
    return detail_io::read_file(obj_path);
  };
  TempFile a("cli_det_a.obj"), a2("cli_det_a.obj.provenance.json");
  TempFile b("cli_det_b.obj"), b2("cli_det_b.obj.provenance.json");
  CHECK(run_once(a.path) == run_once(b.path));
  CHECK(detail_io::read_file(a2.path) == detail_io::read_file(b2.path));
}

TEST_CASE("separate + verify: wall suite passes on a built separator") {
  TempFile obj("cli_sep.obj");
  TempFile sidecar("cli_sep.obj.provenance.json");
  RunConfig cfg;
  cfg.command = RunConfig::Command::Separate;
  cfg.cube_size = 3.0;
  cfg.zeta = 1.0 / 16;
  cfg.t = 3.9;
  cfg.side_factor = 2.0;
  cfg.layers_per_band = 4;
  cfg.bands = 2;
  cfg.out_path = obj.path;
  Json j = Json::parse(run_capture(cfg));
  CHECK(j["obstacles"].get<std::size_t>() > 100);
  CHECK(j["bands"].get<int>() == 2);

  RunConfig v;
  v.command = RunConfig::Command::Verify;
  v.obstacles_path = obj.path;
  v.suite = "walls";
  v.cube_size = 3.0;
  Json vj = Json::parse(run_capture(v));
  CHECK(vj["ok"].get<bool>());
  CHECK(vj["disjoint"].get<bool>());
  CHECK(vj["band_containment"].get<bool>());
}

TEST_CASE("verify exits nonzero on a violated suite") {
  TempFile obj("cli_bad.obj");
  TempFile sidecar("cli_bad.obj.provenance.json");
  ObstacleSet bad;
  for (int k = 0; k < 2; ++k) {
    Obstacle o;
    o.kind = ObstacleKind::Triangle;
    o.vertices = {{0, 0, 0.0 + k * 1e-15}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}};
    bad.obstacles.push_back(o);
  }
  save_obstacles(obj.path, bad);
  RunConfig v;
  v.command = RunConfig::Command::Verify;
  v.obstacles_path = obj.path;
  v.suite = "disjoint";
  std::ostringstream out, err;
  CHECK(run(v, out, err) == 2);
}

TEST_CASE("count: fidelity dry run reports without materializing") {
  TempFile metric("cli_count_metric.json");
  save_metric(metric.path, validate_metric({{0, 1}, {1, 0}}));
  RunConfig cfg;
  cfg.command = RunConfig::Command::Count;
  cfg.metric_path = metric.path;
  cfg.epsilon = 0.1;
  cfg.mode = "fidelity";
  Json j = Json::parse(run_capture(cfg));
  // the count is astronomically large; it arrives as a decimal string
  CHECK(j["count"].get<std::string>().size() > 20);
  CHECK(j["surface_area"].get<double>() > 1000.0);
}

TEST_CASE("apsp output reloads as a metric for tsp") {
  TempFile obj("cli_apsp.obj");
  TempFile sidecar("cli_apsp.obj.provenance.json");
  TempFile sites("cli_sites.json");
  TempFile metric_out("cli_apsp_metric.json");
  ObstacleSet set;
  Obstacle o;
  o.kind = ObstacleKind::Square;
  o.vertices = {{-0.5, -0.5, 0}, {0.5, -0.5, 0}, {0.5, 0.5, 0}, {-0.5, 0.5, 0}};
  set.obstacles.push_back(o);
  save_obstacles(obj.path, set);
  Sites s;
  s.points = {{0, 0, -1}, {0, 0, 1}, {2, 0, 0}};
  s.labels = {"p", "q", "r"};
  detail_io::write_file(sites.path, sites_to_json(s));

  RunConfig a;
  a.command = RunConfig::Command::Apsp;
  a.obstacles_path = obj.path;
  a.sites_path = sites.path;
  a.h = 0.02;
  a.out_path = metric_out.path;
  Json aj = Json::parse(run_capture(a));
  CHECK(aj["sites"].get<int>() == 3);

  RunConfig t;
  t.command = RunConfig::Command::Tsp;
  t.metric_path = metric_out.path;
  Json tj = Json::parse(run_capture(t));
  CHECK(tj["method"] == "exact_dp");
  CHECK(tj["length"].get<double>() > 0);
}

TEST_CASE("patchwork JSON round trip reproduces nets bit-exactly") {
  auto m = validate_metric({{0, 1}, {1, 0}});
  Layout L = layout_surface(m, 0.5);
  std::string text = patchwork_to_json(L.surface);
  Patchwork back = patchwork_from_json(text);
  REQUIRE(back.patches.size() == L.surface.patches.size());
  REQUIRE(back.curves.size() == L.surface.curves.size());
  // restrict to the connector window so the nets stay small
  auto ids = wall_window_patches(L, WallWindow::ExtremePair);
  Net a = patchwork_net(L.surface.subset(ids), 0.125);
  Net b = patchwork_net(back.subset(ids), 0.125);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); i += 7) CHECK(a.points[i].pos == b.points[i].pos);
}

TEST_CASE("realize exports a reloadable surface") {
  TempFile metric("cli_srf_metric.json");
  TempFile srf("cli_srf.json");
  save_metric(metric.path, validate_metric({{0, 1}, {1, 0}}));
  RunConfig cfg;
  cfg.command = RunConfig::Command::Realize;
  cfg.metric_path = metric.path;
  cfg.epsilon = 0.5;
  cfg.window = "none";
  cfg.surface_path = srf.path;
  run_capture(cfg);
  Patchwork back = patchwork_from_json(detail_io::read_file(srf.path));
  CHECK(back.patches.size() == 2 * 26 + 2 * 26 + 9);
  CHECK_NOTHROW(back.validate());
}

TEST_CASE("structured errors surface the module name") {
  RunConfig cfg;
  cfg.command = RunConfig::Command::Realize;  // no metric given
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 1);
  Json j = Json::parse(err.str());
  CHECK(j["error"]["module"] == "cli");
}
