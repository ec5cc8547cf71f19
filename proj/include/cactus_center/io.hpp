#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cactus_center/error.hpp"
#include "cactus_center/graph.hpp"
#include "cactus_center/model.hpp"

// JSON instance files:
//   { "vertices": 4,
//     "edges": [ {"u": 0, "v": 1, "len": 1.0}, ... ],
//     "uncertain": [ {"weight": 1, "constant": 0,
//                     "locations": [ {"vertex": 0, "prob": 0.5},
//                                    {"edge": [0, 1], "t": 0.25, "prob": 0.5} ]} ] }
// An edge may also be named by its index ("edge": 3). With [u, v] the
// offset t is measured from u.

namespace cactus_center {

using json = nlohmann::json;

namespace detail {

inline int find_edge(const CactusGraph& g, int u, int v) {
  if (u < 0 || u >= g.vertex_count()) return -1;
  for (int e : g.incident(u))
    if (g.other_end(e, u) == v) return e;
  return -1;
}

inline bool has_parallel(const CactusGraph& g, int e) {
  const Edge& ed = g.edge(e);
  for (int f : g.incident(ed.u))
    if (f != e && g.other_end(f, ed.u) == ed.v) return true;
  return false;
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw Error(Errc::ParseError, where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, where + ": bad \"" + key + "\": " + ex.what());
  }
}

}  // namespace detail

inline json point_to_json(const CactusGraph& g, const GraphPoint& x) {
  if (x.is_vertex()) return {{"vertex", x.vertex}};
  const Edge& ed = g.edge(x.edge);
  if (detail::has_parallel(g, x.edge)) return {{"edge", x.edge}, {"t", x.t}};
  return {{"edge", {ed.u, ed.v}}, {"t", x.t}};
}

inline GraphPoint point_from_json(const CactusGraph& g, const json& j, const std::string& where) {
  if (j.contains("vertex")) {
    const int v = detail::field<int>(j, "vertex", where);
    if (v < 0 || v >= g.vertex_count()) throw Error(Errc::BadVertexId, where + ": vertex " + std::to_string(v));
    return GraphPoint::at_vertex(v);
  }
  if (!j.contains("edge")) throw Error(Errc::ParseError, where + ": needs \"vertex\" or \"edge\"");
  const double t = detail::field<double>(j, "t", where);
  const json& e = j.at("edge");
  int id = -1;
  double off = t;
  if (e.is_number_integer()) {
    id = e.get<int>();
    if (id < 0 || id >= g.edge_count()) throw Error(Errc::IndexOutOfRange, where + ": edge " + std::to_string(id));
  } else if (e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer()) {
    const int u = e[0].get<int>(), v = e[1].get<int>();
    id = detail::find_edge(g, u, v);
    if (id < 0) throw Error(Errc::InvalidPoint, where + ": no edge between " + std::to_string(u) + " and " + std::to_string(v));
    if (g.edge(id).u != u) off = g.edge(id).length - t;
  } else {
    throw Error(Errc::ParseError, where + ": \"edge\" must be an index or a [u, v] pair");
  }
  // Offsets are kept as given so validation can flag off-graph locations.
  return GraphPoint{-1, id, off};
}

inline json instance_to_json(const Instance& inst) {
  const CactusGraph& g = inst.graph;
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"len", e.length}});
  json pts = json::array();
  for (const auto& p : inst.points) {
    json locs = json::array();
    for (const auto& l : p.locations) {
      json j = point_to_json(g, l.position);
      j["prob"] = l.prob;
      locs.push_back(std::move(j));
    }
    pts.push_back({{"weight", p.weight}, {"constant", p.constant}, {"locations", std::move(locs)}});
  }
  return {{"vertices", g.vertex_count()}, {"edges", std::move(edges)}, {"uncertain", std::move(pts)}};
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "instance must be a JSON object");
  const int n = detail::field<int>(j, "vertices", "instance");
  if (!j.contains("edges") || !j.at("edges").is_array()) throw Error(Errc::ParseError, "instance: \"edges\" must be a list");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < j.at("edges").size(); ++k) {
    const json& e = j.at("edges")[k];
    const std::string where = "edge " + std::to_string(k);
    edges.push_back({detail::field<int>(e, "u", where), detail::field<int>(e, "v", where),
                     detail::field<double>(e, "len", where)});
  }
  Instance inst;
  inst.graph = build_graph(n, edges);
  if (!j.contains("uncertain") || !j.at("uncertain").is_array())
    throw Error(Errc::ParseError, "instance: \"uncertain\" must be a list");
  for (std::size_t i = 0; i < j.at("uncertain").size(); ++i) {
    const json& p = j.at("uncertain")[i];
    const std::string where = "uncertain point " + std::to_string(i);
    UncertainPoint up;
    up.weight = p.contains("weight") ? detail::field<double>(p, "weight", where) : 1.0;
    up.constant = p.contains("constant") ? detail::field<double>(p, "constant", where) : 0.0;
    if (!p.contains("locations") || !p.at("locations").is_array())
      throw Error(Errc::ParseError, where + ": \"locations\" must be a list");
    for (std::size_t k = 0; k < p.at("locations").size(); ++k) {
      const json& l = p.at("locations")[k];
      const std::string lw = where + " location " + std::to_string(k);
      up.locations.push_back({point_from_json(inst.graph, l, lw), detail::field<double>(l, "prob", lw)});
    }
    inst.points.push_back(std::move(up));
  }
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
  return instance_from_json(j);
}

inline std::string serialize_instance(const Instance& inst, int indent = -1) {
  return instance_to_json(inst).dump(indent);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

inline json result_to_json(const CactusGraph& g, const CenterResult& r) {
  json j = point_to_json(g, r.point);
  j["objective"] = r.objective;
  return j;
}

}  // namespace cactus_center
