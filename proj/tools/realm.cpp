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

#include <CLI11.hpp>

#include "realm/cli.hpp"

namespace {

realm::Vec3 parse_vec(const std::string& s) {
  realm::Vec3 v;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3)
    throw CLI::ValidationError("expected x,y,z");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric realization with obstacles: surfaces, nets, walls, geodesics, tours"};
  app.require_subcommand(1);
  // --h is the sample-spacing flag, so help stays long-form only
  app.set_help_flag("--help", "print help");

  realm::RunConfig cfg;
  std::string from_str, to_str;

  app.add_option("--seed", cfg.seed, "random seed for seeded operations");
  app.add_option("--threads", cfg.threads, "worker threads for parallel verification");

  auto add_wall_flags = [&](CLI::App* c) {
    c->add_option("--mode", cfg.mode, "fidelity|relaxed");
    c->add_option("--sigma", cfg.sigma, "target separation");
    c->add_option("--zeta", cfg.zeta, "net scale (<= 1/8)");
    c->add_option("--t", cfg.t, "class separation multiplier");
    c->add_option("--side-factor", cfg.side_factor, "triangle side = side_factor * zeta");
    c->add_option("--bands", cfg.bands, "number of offset bands");
    c->add_option("--layers-per-band", cfg.layers_per_band, "class sub-layers per band");
    c->add_option("--band-step", cfg.band_step, "offset increment per class sub-layer");
    c->add_option("--cap", cfg.cap, "materialized obstacle cap");
  };

  auto* realize = app.add_subcommand("realize", "embed a metric as obstacles in R^3");
  realize->set_help_flag("--help", "print help");
  realize->add_option("--metric", cfg.metric_path, "metric JSON")->required();
  realize->add_option("--epsilon", cfg.epsilon, "distortion budget in (0,1)");
  realize->add_option("--out", cfg.out_path, "obstacle OBJ output");
  realize->add_option("--embedding", cfg.embedding_path, "embedding JSON output");
  realize->add_option("--surface-out", cfg.surface_path, "patchwork JSON output");
  realize->add_option("--window", cfg.window,
                      "wall window: none|extreme-pair|all-connectors|full-surface");
  realize->add_flag("--tetrahedra", cfg.tetrahedra, "emit regular tetrahedra instead of triangles");
  add_wall_flags(realize);

  auto* separate = app.add_subcommand("separate", "build a triangle separator on a surface");
  separate->set_help_flag("--help", "print help");
  separate->add_option("--cube", cfg.cube_size, "builtin rounded cube of this size");
  separate->add_option("--patchwork", cfg.patchwork_path, "patchwork JSON");
  separate->add_option("--out", cfg.out_path, "obstacle OBJ output");
  add_wall_flags(separate);

  auto* net = app.add_subcommand("net", "construct a surface net");
  net->set_help_flag("--help", "print help");
  net->add_option("--cube", cfg.cube_size, "builtin rounded cube of this size");
  net->add_option("--patchwork", cfg.patchwork_path, "patchwork JSON");
  net->add_option("--zeta", cfg.zeta, "net scale (<= 1/8)");
  net->add_option("--t", cfg.t, "partition classes at separation t*zeta");
  auto* dopt = net->add_option("--delta", cfg.delta, "offset the net to S(delta)");
  net->add_option("--out", cfg.out_path, "net JSON output");
  net->callback([&, dopt] { cfg.offset_requested = dopt->count() > 0; });

  auto* geodesic = app.add_subcommand("geodesic", "approximate geodesic between two points");
  geodesic->set_help_flag("--help", "print help");
  geodesic->add_option("--obstacles", cfg.obstacles_path, "obstacle OBJ")->required();
  geodesic->add_option("--from", from_str, "x,y,z")->required();
  geodesic->add_option("--to", to_str, "x,y,z")->required();
  geodesic->add_option("--h", cfg.h, "edge sample spacing");

  auto* apsp_cmd = app.add_subcommand("apsp", "all-pairs geodesic distances over sites");
  apsp_cmd->set_help_flag("--help", "print help");
  apsp_cmd->add_option("--obstacles", cfg.obstacles_path, "obstacle OBJ")->required();
  apsp_cmd->add_option("--sites", cfg.sites_path, "sites JSON")->required();
  apsp_cmd->add_option("--h", cfg.h, "edge sample spacing");
  apsp_cmd->add_option("--out", cfg.out_path, "metric JSON output (reloadable)");

  auto* tsp_cmd = app.add_subcommand("tsp", "tours over metrics or obstacle instances");
  tsp_cmd->set_help_flag("--help", "print help");
  tsp_cmd->add_option("--metric", cfg.metric_path, "metric JSON");
  tsp_cmd->add_option("--sites", cfg.sites_path, "sites JSON");
  tsp_cmd->add_option("--obstacles", cfg.obstacles_path, "obstacle OBJ");
  tsp_cmd->add_option("--h", cfg.h, "edge sample spacing");
  tsp_cmd->add_option("--epsilon", cfg.epsilon, "accuracy parameter (recorded)");

  auto* verify = app.add_subcommand("verify", "run verification suites on an obstacle set");
  verify->set_help_flag("--help", "print help");
  verify->add_option("--obstacles", cfg.obstacles_path, "obstacle OBJ")->required();
  verify->add_option("--suite", cfg.suite, "walls|disjoint");
  verify->add_option("--cube", cfg.cube_size, "surface for band containment");
  verify->add_option("--patchwork", cfg.patchwork_path, "surface for band containment");

  auto* count = app.add_subcommand("count", "dry-run separator count for a metric");
  count->set_help_flag("--help", "print help");
  count->add_option("--metric", cfg.metric_path, "metric JSON")->required();
  count->add_option("--epsilon", cfg.epsilon, "distortion budget in (0,1)");
  add_wall_flags(count);

  CLI11_PARSE(app, argc, argv);

  if (realize->parsed()) cfg.command = realm::RunConfig::Command::Realize;
  if (separate->parsed()) cfg.command = realm::RunConfig::Command::Separate;
  if (net->parsed()) cfg.command = realm::RunConfig::Command::Net;
  if (geodesic->parsed()) {
    cfg.command = realm::RunConfig::Command::Geodesic;
    cfg.from = parse_vec(from_str);
    cfg.to = parse_vec(to_str);
    cfg.have_from = cfg.have_to = true;
  }
  if (apsp_cmd->parsed()) cfg.command = realm::RunConfig::Command::Apsp;
  if (tsp_cmd->parsed()) cfg.command = realm::RunConfig::Command::Tsp;
  if (verify->parsed()) cfg.command = realm::RunConfig::Command::Verify;
  if (count->parsed()) cfg.command = realm::RunConfig::Command::Count;

  return realm::run(cfg);
}
