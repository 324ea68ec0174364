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

#include <iostream>
#include <optional>
#include <string>

#include "detail/parallel.hpp"
#include "io.hpp"
#include "tsp.hpp"

namespace realm {

/// One parsed CLI invocation. Numeric parameters are validated against the
/// owning module's preconditions before dispatch.
struct RunConfig {
  enum class Command { Realize, Separate, Net, Geodesic, Apsp, Tsp, Verify, Count };
  Command command = Command::Realize;

  // inputs
  std::string metric_path;
  std::string obstacles_path;
  std::string sites_path;
  std::string patchwork_path;
  double cube_size = 0;  // builtin rounded-cube surface when > 0
  Vec3 from, to;
  bool have_from = false, have_to = false;

  // parameters
  double epsilon = 0.1;
  double h = 0.01;
  double sigma = 0;
  double zeta = 0;
  double delta = 0;
  bool offset_requested = false;
  std::string mode = "relaxed";
  std::string window = "extreme-pair";
  std::string suite = "walls";
  double t = 0, side_factor = 0, band_step = 0;
  int bands = 0, layers_per_band = 0;
  std::size_t cap = 10'000'000;
  bool tetrahedra = false;
  std::uint64_t seed = 0;
  int threads = 1;

  // outputs
  std::string out_path;
  std::string embedding_path;
  std::string surface_path;
};

namespace detail_cli {

inline WallConfig wall_config_from(const RunConfig& cfg) {
  if (cfg.mode == "fidelity") {
    WallConfig w = WallConfig::fidelity();
    w.cap = cfg.cap;
    return w;
  }
  if (cfg.mode != "relaxed") throw ConfigError("--mode must be fidelity or relaxed");
  WallConfig w = default_window_config();
  if (cfg.zeta > 0) w.zeta = cfg.zeta;
  if (cfg.t > 0) w.t = cfg.t;
  if (cfg.side_factor > 0) w.side_factor = cfg.side_factor;
  if (cfg.bands > 0) w.bands = cfg.bands;
  if (cfg.layers_per_band > 0) w.layers_per_band = cfg.layers_per_band;
  if (cfg.band_step > 0) w.band_step = cfg.band_step;
  w.cap = cfg.cap;
  return w;
}

inline WallWindow window_from(const std::string& name) {
  if (name == "none") return WallWindow::None;
  if (name == "extreme-pair") return WallWindow::ExtremePair;
  if (name == "all-connectors") return WallWindow::AllConnectors;
  if (name == "full-surface") return WallWindow::FullSurface;
  throw ConfigError("--window must be none|extreme-pair|all-connectors|full-surface");
}

inline Patchwork load_surface(const RunConfig& cfg) {
  if (cfg.cube_size > 0) return rounded_cube({0, 0, 0}, cfg.cube_size);
  if (!cfg.patchwork_path.empty())
    return patchwork_from_json(detail_io::read_file(cfg.patchwork_path));
  throw ConfigError("need --cube SIZE or --patchwork FILE");
}

inline Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

}  // namespace detail_cli

/// Dispatches one command. Writes declared artifacts, prints a JSON summary
/// to stdout, returns the process exit status.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  try {
    detail::set_thread_count(cfg.threads);
    Json summary;
    switch (cfg.command) {
      case RunConfig::Command::Realize: {
        if (cfg.metric_path.empty()) throw ConfigError("realize needs --metric");
        FiniteMetric m = load_metric(cfg.metric_path);
        WallConfig wall = detail_cli::wall_config_from(cfg);
        RealizeResult r = realize(m, cfg.epsilon, wall, detail_cli::window_from(cfg.window));
        ObstacleSet final_set =
            cfg.tetrahedra ? tetrahedralize(r.obstacles) : std::move(r.obstacles);
        final_set.provenance.sigma = r.sigma;
        if (!cfg.out_path.empty()) save_obstacles(cfg.out_path, final_set);
        if (!cfg.embedding_path.empty())
          detail_io::write_file(cfg.embedding_path, embedding_to_json(r.layout.embedding));
        if (!cfg.surface_path.empty())
          detail_io::write_file(cfg.surface_path, patchwork_to_json(r.layout.surface));
        summary["command"] = "realize";
        summary["n"] = m.size();
        summary["epsilon"] = cfg.epsilon;
        summary["obstacles"] = final_set.size();
        summary["sigma"] = r.sigma;
        summary["surface_area"] = r.layout.surface.area();
        summary["fidelity_count"] = r.fidelity_count.str();
        summary["scale_factor"] = r.layout.embedding.scale_factor;
        Json slack = Json::array();
        for (double s : r.slack) slack.push_back(s);
        summary["lower_bound_slack"] = slack;
        summary["separation_claim"] = final_set.provenance.separation_claim;
        break;
      }
      case RunConfig::Command::Separate: {
        Patchwork s = detail_cli::load_surface(cfg);
        WallConfig wall = detail_cli::wall_config_from(cfg);
        double sigma = cfg.sigma > 1 ? cfg.sigma : 2.0;
        ObstacleSet set = build_separator(s, sigma, wall);
        if (!cfg.out_path.empty()) save_obstacles(cfg.out_path, set);
        summary["command"] = "separate";
        summary["obstacles"] = set.size();
        summary["bands"] = set.provenance.band_schedule.size();
        summary["zeta"] = set.provenance.zeta;
        break;
      }
      case RunConfig::Command::Net: {
        Patchwork s = detail_cli::load_surface(cfg);
        double zeta = cfg.zeta > 0 ? cfg.zeta : 0.125;
        Net n = patchwork_net(s, zeta);
        std::optional<ClassPartition> part;
        if (cfg.t > 0) part = partition_classes(n, cfg.t);
        if (cfg.offset_requested) n = offset_net(n, cfg.delta);
        if (!cfg.out_path.empty())
          detail_io::write_file(cfg.out_path, net_to_json(n, part ? &*part : nullptr));
        summary["command"] = "net";
        summary["points"] = n.points.size();
        summary["a"] = n.a;
        summary["b"] = n.b;
        if (part) summary["classes"] = part->classes.size();
        break;
      }
      case RunConfig::Command::Geodesic: {
        if (cfg.obstacles_path.empty() || !cfg.have_from || !cfg.have_to)
          throw ConfigError("geodesic needs --obstacles, --from and --to");
        ObstacleSet obs = load_obstacles(cfg.obstacles_path);
        GeodesicResult r = approx_geodesic(cfg.from, cfg.to, obs, cfg.h);
        summary["command"] = "geodesic";
        summary["reachable"] = r.reachable;
        summary["length"] = r.length;
        summary["graph_nodes"] = r.graph_nodes;
        summary["h"] = r.h;
        Json line = Json::array();
        for (const Vec3& v : r.polyline) line.push_back(detail_cli::vec_json(v));
        summary["polyline"] = line;
        break;
      }
      case RunConfig::Command::Apsp: {
        if (cfg.obstacles_path.empty() || cfg.sites_path.empty())
          throw ConfigError("apsp needs --obstacles and --sites");
        ObstacleSet obs = load_obstacles(cfg.obstacles_path);
        Sites sites = sites_from_json(detail_io::read_file(cfg.sites_path));
        auto matrix = apsp(sites.points, obs, cfg.h);
        FiniteMetric m = validate_metric(matrix, sites.labels);
        if (!cfg.out_path.empty()) save_metric(cfg.out_path, m);
        summary["command"] = "apsp";
        summary["sites"] = sites.points.size();
        summary["h"] = cfg.h;
        summary["dist"] = matrix;
        break;
      }
      case RunConfig::Command::Tsp: {
        if (!cfg.metric_path.empty()) {
          FiniteMetric m = load_metric(cfg.metric_path);
          Tour t = m.size() <= 18 ? tsp_exact(m) : tsp_heuristic(m, cfg.seed);
          summary["command"] = "tsp";
          summary["order"] = t.order;
          summary["length"] = t.length;
          summary["method"] = t.method == Tour::Method::ExactDP ? "exact_dp" : "heuristic";
        } else if (!cfg.sites_path.empty() && !cfg.obstacles_path.empty()) {
          ObstacleSet obs = load_obstacles(cfg.obstacles_path);
          Sites sites = sites_from_json(detail_io::read_file(cfg.sites_path));
          ObstacleTour r = tsp_with_obstacles(sites.points, obs, cfg.h, cfg.seed);
          summary["command"] = "tsp";
          summary["order"] = r.tour.order;
          summary["length"] = r.tour.length;
          summary["method"] = r.tour.method == Tour::Method::ExactDP ? "exact_dp" : "heuristic";
          Json cert;
          cert["h"] = r.certificate.h;
          cert["graph_nodes"] = r.certificate.graph_nodes;
          cert["apsp"] = r.certificate.apsp_matrix;
          summary["certificate"] = cert;
        } else {
          throw ConfigError("tsp needs --metric, or --sites with --obstacles");
        }
        break;
      }
      case RunConfig::Command::Verify: {
        if (cfg.obstacles_path.empty()) throw ConfigError("verify needs --obstacles");
        ObstacleSet obs = load_obstacles(cfg.obstacles_path);
        summary["command"] = "verify";
        summary["suite"] = cfg.suite;
        bool ok = true;
        if (cfg.suite == "walls" || cfg.suite == "disjoint") {
          auto dis = verify_disjoint(obs);
          summary["disjoint"] = dis.ok;
          summary["pairs_tested"] = dis.pairs_tested;
          summary["min_pair_distance"] = dis.min_pair_distance;
          ok = ok && dis.ok;
          auto cong = verify_congruence(obs);
          summary["congruent"] = cong.ok;
          ok = ok && cong.ok;
        }
        if (cfg.suite == "walls" && (cfg.cube_size > 0 || !cfg.patchwork_path.empty())) {
          Patchwork s = detail_cli::load_surface(cfg);
          auto band = verify_band_containment(obs, s);
          summary["band_containment"] = band.ok;
          summary["band_vertices_checked"] = band.vertices_checked;
          ok = ok && band.ok;
        }
        summary["ok"] = ok;
        out << summary.dump(2) << std::endl;
        return ok ? 0 : 2;
      }
      case RunConfig::Command::Count: {
        if (cfg.metric_path.empty()) throw ConfigError("count needs --metric");
        FiniteMetric m = load_metric(cfg.metric_path);
        Layout L = layout_surface(m, cfg.epsilon);
        double sigma = 0;
        for (const auto& row : L.scaled_dist)
          for (double d : row) sigma = std::max(sigma, d);
        WallConfig wall = cfg.mode == "fidelity" ? WallConfig::fidelity()
                                                 : detail_cli::wall_config_from(cfg);
        BigCount c = count_separator(L.surface.area(), sigma, wall);
        summary["command"] = "count";
        summary["mode"] = cfg.mode;
        summary["surface_area"] = L.surface.area();
        summary["sigma"] = sigma;
        summary["count"] = c.str();
        break;
      }
    }
    out << summary.dump(2) << std::endl;
    return 0;
  } catch (const Error& e) {
    Json j;
    j["error"] = {{"module", e.module_name()}, {"message", e.what()}};
    err << j.dump(2) << std::endl;
    return 1;
  } catch (const std::exception& e) {
    Json j;
    j["error"] = {{"module", "unknown"}, {"message", e.what()}};
    err << j.dump(2) << std::endl;
    return 1;
  }
}

}  // namespace realm
