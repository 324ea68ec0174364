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

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "metric.hpp"
#include "nets.hpp"
#include "obstacles.hpp"
#include "realization.hpp"

namespace realm {

using Json = nlohmann::ordered_json;

namespace detail_io {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path);
  out << content;
}

/// 17 significant digits: enough for doubles to round-trip exactly.
inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

inline Vec3 vec_from(const Json& j) { return {j.at(0), j.at(1), j.at(2)}; }

}  // namespace detail_io

// ---------------------------------------------------------------------------
// Metrics and sites
// ---------------------------------------------------------------------------

inline std::string metric_to_json(const FiniteMetric& m) {
  Json j;
  j["labels"] = m.labels();
  j["dist"] = m.matrix();
  return j.dump(2) + "\n";
}

inline FiniteMetric metric_from_json(const std::string& text) {
  Json j = Json::parse(text);
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
  return validate_metric(dist, labels);
}

inline FiniteMetric load_metric(const std::string& path) {
  return metric_from_json(detail_io::read_file(path));
}

inline void save_metric(const std::string& path, const FiniteMetric& m) {
  detail_io::write_file(path, metric_to_json(m));
}

struct Sites {
  std::vector<std::string> labels;
  std::vector<Vec3> points;
};

inline Sites sites_from_json(const std::string& text) {
  Json j = Json::parse(text);
  Sites s;
  if (j.contains("labels")) s.labels = j["labels"].get<std::vector<std::string>>();
  for (const auto& p : j.at("points")) s.points.push_back(detail_io::vec_from(p));
  while (s.labels.size() < s.points.size())
    s.labels.push_back("s" + std::to_string(s.labels.size()));
  return s;
}

inline std::string sites_to_json(const Sites& s) {
  Json j;
  j["labels"] = s.labels;
  Json pts = Json::array();
  for (const Vec3& p : s.points) pts.push_back(detail_io::vec_json(p));
  j["points"] = pts;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Obstacles: OBJ plus provenance sidecar
// ---------------------------------------------------------------------------

/// OBJ with one polygon face per planar obstacle and four faces per
/// tetrahedron. Vertex coordinates carry 17 significant digits.
inline std::string obstacles_to_obj(const ObstacleSet& set) {
  std::ostringstream out;
  out << "# obstacle set (" << set.size() << " obstacles)\n";
  int vbase = 1;
  for (const Obstacle& o : set.obstacles) {
    for (const Vec3& v : o.vertices)
      out << "v " << detail_io::fmt(v.x) << " " << detail_io::fmt(v.y) << " "
          << detail_io::fmt(v.z) << "\n";
    switch (o.kind) {
      case ObstacleKind::Triangle:
        out << "f " << vbase << " " << vbase + 1 << " " << vbase + 2 << "\n";
        break;
      case ObstacleKind::Square:
        out << "f " << vbase << " " << vbase + 1 << " " << vbase + 2 << " " << vbase + 3 << "\n";
        break;
      case ObstacleKind::Tetrahedron:
        out << "f " << vbase << " " << vbase + 1 << " " << vbase + 2 << "\n";
        out << "f " << vbase << " " << vbase + 1 << " " << vbase + 3 << "\n";
        out << "f " << vbase << " " << vbase + 2 << " " << vbase + 3 << "\n";
        out << "f " << vbase + 1 << " " << vbase + 2 << " " << vbase + 3 << "\n";
        break;
    }
    vbase += o.vertex_count();
  }
  return out.str();
}

inline std::string provenance_to_json(const ObstacleSet& set) {
  Json j;
  j["mode"] = set.provenance.mode;
  j["zeta"] = set.provenance.zeta;
  j["sigma"] = set.provenance.sigma;
  j["t"] = set.provenance.t;
  j["nu"] = set.provenance.nu;
  j["side_factor"] = set.provenance.side_factor;
  j["band_step"] = set.provenance.band_step;
  j["declared_band_span"] = set.provenance.declared_band_span;
  j["separation_claim"] = set.provenance.separation_claim;
  Json sched = Json::array();
  for (auto [base, classes] : set.provenance.band_schedule)
    sched.push_back(Json{{"base", base}, {"classes", classes}});
  j["band_schedule"] = sched;
  Json obs = Json::array();
  for (const Obstacle& o : set.obstacles) {
    Json e;
    e["kind"] = o.kind == ObstacleKind::Triangle ? "triangle"
                : o.kind == ObstacleKind::Square ? "square"
                                                 : "tetrahedron";
    e["vertices"] = o.vertex_count();
    e["layer"] = o.meta.layer;
    e["delta"] = o.meta.delta;
    e["tangency"] = o.meta.tangency_id;
    obs.push_back(e);
  }
  j["obstacles"] = obs;
  return j.dump(2) + "\n";
}

inline void save_obstacles(const std::string& obj_path, const ObstacleSet& set) {
  detail_io::write_file(obj_path, obstacles_to_obj(set));
  detail_io::write_file(obj_path + ".provenance.json", provenance_to_json(set));
}

/// Loads OBJ (+ sidecar when present). Without a sidecar, each 3-vertex face
/// becomes a triangle and each 4-vertex face a square; tetrahedron grouping
/// needs the sidecar.
inline ObstacleSet load_obstacles(const std::string& obj_path) {
  std::istringstream in(detail_io::read_file(obj_path));
  std::vector<Vec3> verts;
  std::vector<std::vector<int>> faces;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      Vec3 v;
      ls >> v.x >> v.y >> v.z;
      verts.push_back(v);
    } else if (line.rfind("f ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      std::vector<int> f;
      std::string tok;
      while (ls >> tok) f.push_back(std::stoi(tok) - 1);
      faces.push_back(std::move(f));
    }
  }
  ObstacleSet set;
  std::string sidecar_path = obj_path + ".provenance.json";
  std::ifstream sidecar(sidecar_path);
  Json meta;
  bool have_meta = false;
  if (sidecar) {
    meta = Json::parse(detail_io::read_file(sidecar_path));
    have_meta = true;
    set.provenance.mode = meta.value("mode", "");
    set.provenance.zeta = meta.value("zeta", 0.0);
    set.provenance.sigma = meta.value("sigma", 0.0);
    set.provenance.t = meta.value("t", 0.0);
    set.provenance.nu = meta.value("nu", 0.0);
    set.provenance.side_factor = meta.value("side_factor", 0.0);
    set.provenance.band_step = meta.value("band_step", 0.0);
    set.provenance.declared_band_span = meta.value("declared_band_span", 0.0);
    set.provenance.separation_claim = meta.value("separation_claim", 0.0);
    if (meta.contains("band_schedule"))
      for (const auto& e : meta["band_schedule"])
        set.provenance.band_schedule.push_back({e.at("base"), e.at("classes")});
  }

  auto face_obstacle = [&](const std::vector<int>& f) {
    Obstacle o;
    o.kind = f.size() == 3 ? ObstacleKind::Triangle : ObstacleKind::Square;
    for (int vi : f) o.vertices.push_back(verts.at(vi));
    return o;
  };

  if (!have_meta || !meta.contains("obstacles")) {
    for (const auto& f : faces) set.obstacles.push_back(face_obstacle(f));
    return set;
  }
  std::size_t face_cursor = 0;
  for (const auto& e : meta["obstacles"]) {
    std::string kind = e.at("kind");
    Obstacle o;
    if (kind == "tetrahedron") {
      o.kind = ObstacleKind::Tetrahedron;
      // 4 triangular faces over 4 unique vertices, in first-seen order
      std::vector<int> uniq;
      for (int k = 0; k < 4; ++k)
        for (int vi : faces.at(face_cursor + k))
          if (std::find(uniq.begin(), uniq.end(), vi) == uniq.end()) uniq.push_back(vi);
      for (int vi : uniq) o.vertices.push_back(verts.at(vi));
      face_cursor += 4;
    } else {
      o = face_obstacle(faces.at(face_cursor));
      o.kind = kind == "square" ? ObstacleKind::Square : ObstacleKind::Triangle;
      face_cursor += 1;
    }
    o.meta.layer = e.value("layer", -1);
    o.meta.delta = e.value("delta", 0.0);
    o.meta.tangency_id = e.value("tangency", std::int64_t{-1});
    set.obstacles.push_back(std::move(o));
  }
  return set;
}

// ---------------------------------------------------------------------------
// Embeddings and nets
// ---------------------------------------------------------------------------

inline std::string embedding_to_json(const Embedding& e) {
  Json j;
  j["labels"] = e.labels;
  Json pts = Json::array();
  for (const Vec3& p : e.points) pts.push_back(detail_io::vec_json(p));
  j["points"] = pts;
  j["scale_factor"] = e.scale_factor;
  j["epsilon"] = e.epsilon;
  return j.dump(2) + "\n";
}

inline Embedding embedding_from_json(const std::string& text) {
  Json j = Json::parse(text);
  Embedding e;
  e.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& p : j.at("points")) e.points.push_back(detail_io::vec_from(p));
  e.scale_factor = j.at("scale_factor");
  e.epsilon = j.at("epsilon");
  return e;
}

inline std::string net_to_json(const Net& n, const ClassPartition* part = nullptr) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < n.points.size(); ++i) {
    const SurfacePoint& sp = n.points[i];
    Json e;
    e["patch_id"] = sp.patch_id;
    e["local"] = Json::array({sp.lu, sp.lv});
    e["pos"] = detail_io::vec_json(sp.pos);
    e["normal"] = detail_io::vec_json(sp.normal);
    e["class"] = part ? part->class_of[i] : -1;
    arr.push_back(e);
  }
  Json j;
  j["a"] = n.a;
  j["b"] = n.b;
  j["zeta"] = n.zeta;
  j["points"] = arr;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Patchwork serialization
// ---------------------------------------------------------------------------

inline std::string patchwork_to_json(const Patchwork& pw) {
  Json patches = Json::array();
  for (const Patch& p : pw.patches) {
    Json e;
    switch (p.kind) {
      case PatchKind::Square: e["kind"] = "square"; break;
      case PatchKind::SphericalTriangle: e["kind"] = "spherical_triangle"; break;
      case PatchKind::Cylinder: e["kind"] = "cylinder"; break;
      case PatchKind::QuarterCylinder: e["kind"] = "quarter_cylinder"; break;
      case PatchKind::Joint: e["kind"] = "joint"; break;
    }
    e["origin"] = detail_io::vec_json(p.frame.origin);
    e["u"] = detail_io::vec_json(p.frame.u);
    e["v"] = detail_io::vec_json(p.frame.v);
    e["w"] = detail_io::vec_json(p.frame.w);
    e["side"] = p.side;
    e["length"] = p.length;
    e["span"] = p.span;
    Json holes = Json::array();
    for (const Hole& h : p.holes) holes.push_back(Json::array({h.u, h.v}));
    e["holes"] = holes;
    patches.push_back(e);
  }
  Json curves = Json::array();
  for (const BoundaryCurve& c : pw.curves) {
    Json e;
    e["kind"] = c.kind == BoundaryCurve::Kind::Segment ? "segment"
                : c.kind == BoundaryCurve::Kind::Arc ? "arc"
                                                     : "circle";
    e["a"] = detail_io::vec_json(c.a);
    e["b"] = detail_io::vec_json(c.b);
    e["center"] = detail_io::vec_json(c.center);
    e["axis_u"] = detail_io::vec_json(c.axis_u);
    e["axis_v"] = detail_io::vec_json(c.axis_v);
    e["radius"] = c.radius;
    e["angle0"] = c.angle0;
    e["angle1"] = c.angle1;
    e["derived_from"] = c.derived_from;
    curves.push_back(e);
  }
  Json bounds = Json::array();
  for (const auto& refs : pw.boundaries) {
    Json list = Json::array();
    for (const auto& r : refs)
      list.push_back(Json{{"curve", r.curve_id},
                          {"role", static_cast<int>(r.role)},
                          {"index", r.index}});
    bounds.push_back(list);
  }
  Json adj = Json::array();
  for (const auto& a : pw.adjacency)
    adj.push_back(Json{{"patch_a", a.patch_a}, {"patch_b", a.patch_b}, {"curve", a.curve_id}});
  Json j;
  j["patches"] = patches;
  j["curves"] = curves;
  j["boundaries"] = bounds;
  j["adjacency"] = adj;
  return j.dump(2) + "\n";
}

inline Patchwork patchwork_from_json(const std::string& text) {
  Json j = Json::parse(text);
  Patchwork pw;
  for (const auto& e : j.at("patches")) {
    Patch p;
    std::string kind = e.at("kind");
    p.kind = kind == "square" ? PatchKind::Square
             : kind == "spherical_triangle" ? PatchKind::SphericalTriangle
             : kind == "cylinder" ? PatchKind::Cylinder
             : kind == "quarter_cylinder" ? PatchKind::QuarterCylinder
                                          : PatchKind::Joint;
    p.frame.origin = detail_io::vec_from(e.at("origin"));
    p.frame.u = detail_io::vec_from(e.at("u"));
    p.frame.v = detail_io::vec_from(e.at("v"));
    p.frame.w = detail_io::vec_from(e.at("w"));
    p.side = e.at("side");
    p.length = e.at("length");
    p.span = e.at("span");
    for (const auto& h : e.at("holes")) p.holes.push_back({h.at(0), h.at(1)});
    pw.add_patch(p);
  }
  for (const auto& e : j.at("curves")) {
    BoundaryCurve c;
    std::string kind = e.at("kind");
    c.kind = kind == "segment" ? BoundaryCurve::Kind::Segment
             : kind == "arc" ? BoundaryCurve::Kind::Arc
                             : BoundaryCurve::Kind::Circle;
    c.a = detail_io::vec_from(e.at("a"));
    c.b = detail_io::vec_from(e.at("b"));
    c.center = detail_io::vec_from(e.at("center"));
    c.axis_u = detail_io::vec_from(e.at("axis_u"));
    c.axis_v = detail_io::vec_from(e.at("axis_v"));
    c.radius = e.at("radius");
    c.angle0 = e.at("angle0");
    c.angle1 = e.at("angle1");
    c.derived_from = e.at("derived_from");
    pw.add_curve(c);
  }
  int pid = 0;
  for (const auto& list : j.at("boundaries")) {
    for (const auto& r : list)
      pw.bind(pid, r.at("curve"), static_cast<CurveRole>(r.at("role").get<int>()), r.at("index"));
    ++pid;
  }
  for (const auto& a : j.at("adjacency"))
    pw.declare_adjacent(a.at("patch_a"), a.at("patch_b"), a.at("curve"));
  return pw;
}

}  // namespace realm
