#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "stagwalk/circuit.hpp"
#include "stagwalk/errors.hpp"
#include "stagwalk/graph.hpp"
#include "stagwalk/search.hpp"
#include "stagwalk/tessellation.hpp"
#include "stagwalk/walk.hpp"

namespace stagwalk {

using json = nlohmann::json;

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(what + ": malformed JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Graph files
//
// {"n": int, "boundary": "open"|"periodic", "radius": float,
//  "positions": [[x,y],...], "edges": [[u,v],...]}
// with u < v and edges sorted lexicographically. "positions" may be omitted
// for abstract graphs; "geometric": true marks graphs whose edge set must
// equal the pairs closer than the radius.

inline json graph_to_json(const SpatialGraph& g) {
  json j;
  j["n"] = g.size();
  j["boundary"] = std::string(to_string(g.boundary()));
  j["radius"] = g.radius();
  if (g.positions()) {
    json pts = json::array();
    for (const auto& p : *g.positions()) pts.push_back({p.x, p.y});
    j["positions"] = std::move(pts);
  }
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (g.geometric()) j["geometric"] = true;
  return j;
}

inline SpatialGraph graph_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::int64_t>();
    if (n < 0) throw ValidationError("graph: n must be non-negative");
    const auto boundary = parse_boundary(j.value("boundary", std::string("open")));
    const double radius = j.value("radius", 0.0);
    if (!(radius >= 0.0)) throw ValidationError("graph: radius must be non-negative");

    std::optional<std::vector<Point2D>> positions;
    if (j.contains("positions") && !j.at("positions").is_null()) {
      std::vector<Point2D> pts;
      for (const auto& p : j.at("positions")) {
        if (!p.is_array() || p.size() != 2) throw ValidationError("graph: position must be [x, y]");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      positions = std::move(pts);
    }

    std::vector<Edge> edges;
    std::optional<Edge> prev;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("graph: edge must be [u, v]");
      const auto u = e[0].get<std::int64_t>();
      const auto v = e[1].get<std::int64_t>();
      if (u < 0 || v < 0 || u >= n || v >= n) throw ValidationError("graph: edge endpoint out of range");
      if (u >= v) throw ValidationError("graph: edge must satisfy u < v");
      Edge edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
      if (prev && !(*prev < edge)) throw ValidationError("graph: edges not strictly sorted");
      prev = edge;
      edges.push_back(edge);
    }
    const bool geometric = j.value("geometric", false);
    SpatialGraph g(static_cast<std::size_t>(n), std::move(edges), std::move(positions), boundary,
                   radius, geometric);
    if (geometric) {
      const auto expected = geometric_edges(*g.positions(), radius, boundary);
      if (expected != g.edges())
        throw ValidationError("graph: edge set does not match positions and radius");
    }
    return g;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("graph: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("graph: ") + e.what());
  }
}

inline SpatialGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(parse_json(read_text_file(path), path.string()));
}

inline void save_graph(const std::filesystem::path& path, const SpatialGraph& g) {
  write_text_file(path, graph_to_json(g).dump() + "\n");
}

// ---------------------------------------------------------------------------
// Cover files
//
// {"T": int, "edges": [[u, v, [colors...]], ...], "cliques": [[[v,...],...] per color]}
// An extra "n" records the vertex count.

inline json cover_to_json(const TessellationCover& cover) {
  json j;
  j["T"] = cover.t_count();
  j["n"] = cover.vertex_count();
  json edges = json::array();
  for (const auto& ce : cover.edge_colors()) edges.push_back({ce.edge.u, ce.edge.v, ce.colors});
  j["edges"] = std::move(edges);
  j["cliques"] = cover.all_cliques();
  return j;
}

inline TessellationCover cover_from_json(const json& j, std::size_t n) {
  try {
    const auto t = j.at("T").get<std::int64_t>();
    if (t < 0) throw ValidationError("cover: T must be non-negative");
    if (j.contains("n") && j.at("n").get<std::size_t>() != n)
      throw ValidationError("cover: vertex count does not match the graph");
    std::vector<TessellationCover::ColoredEdge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ValidationError("cover: edge must be [u, v, [colors]]");
      const auto u = e[0].get<std::int64_t>();
      const auto v = e[1].get<std::int64_t>();
      if (u < 0 || v < 0 || u >= static_cast<std::int64_t>(n) || v >= static_cast<std::int64_t>(n) || u >= v)
        throw ValidationError("cover: bad edge endpoints");
      auto colors = e[2].get<std::vector<Color>>();
      if (colors.empty()) throw ValidationError("cover: edge with empty color set");
      edges.push_back({Edge(static_cast<Vertex>(u), static_cast<Vertex>(v)), std::move(colors)});
    }
    auto cliques = j.at("cliques").get<std::vector<std::vector<std::vector<Vertex>>>>();
    return TessellationCover::from_parts(n, static_cast<std::size_t>(t), std::move(edges), std::move(cliques));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("cover: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("cover: ") + e.what());
  }
}

inline TessellationCover load_cover(const std::filesystem::path& path, std::size_t n) {
  return cover_from_json(parse_json(read_text_file(path), path.string()), n);
}

inline void save_cover(const std::filesystem::path& path, const TessellationCover& cover) {
  write_text_file(path, cover_to_json(cover).dump() + "\n");
}

// ---------------------------------------------------------------------------
// Schedules, one JSON record per line:
//   {"kind": "...", "qubits": [...], "angle": float}   (angle only when used)
//   {"marker": "layer", "tessellation": t, "qubits": [...]}   opens a block
//   {"marker": "barrier", "tessellation": t}
//   {"global_phase": float}                              trailing record

inline std::string schedule_to_jsonl(const GateSchedule& sched) {
  std::string out;
  auto emit = [&out](const json& j) {
    out += j.dump();
    out += '\n';
  };
  std::size_t bi = 0, ri = 0;
  for (std::size_t i = 0; i <= sched.gates.size(); ++i) {
    while (ri < sched.barriers.size() && sched.barriers[ri].position == i) {
      emit({{"marker", "barrier"}, {"tessellation", sched.barriers[ri].tessellation}});
      ++ri;
    }
    while (bi < sched.blocks.size() && sched.blocks[bi].begin == i) {
      emit({{"marker", "layer"}, {"tessellation", sched.blocks[bi].tessellation}, {"qubits", sched.blocks[bi].qubits}});
      ++bi;
    }
    if (i == sched.gates.size()) break;
    const auto& g = sched.gates[i];
    json j{{"kind", std::string(to_string(g.kind))}, {"qubits", g.qubits}};
    if (g.has_angle()) j["angle"] = g.angle;
    emit(j);
  }
  emit({{"global_phase", sched.global_phase}});
  return out;
}

inline GateSchedule schedule_from_jsonl(const std::string& text) {
  GateSchedule sched;
  std::istringstream in(text);
  std::string line;
  bool have_phase = false;
  std::size_t lineno = 0;
  auto close_block = [&sched] {
    if (!sched.blocks.empty() && sched.blocks.back().end == 0 && sched.blocks.back().begin <= sched.gates.size())
      sched.blocks.back().end = sched.gates.size();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "schedule line " + std::to_string(lineno);
    if (have_phase) throw ValidationError(where + ": record after global_phase");
    const json j = parse_json(line, where);
    try {
      if (j.contains("global_phase")) {
        close_block();
        sched.global_phase = j.at("global_phase").get<double>();
        have_phase = true;
      } else if (j.contains("marker")) {
        const auto kind = j.at("marker").get<std::string>();
        const auto t = j.at("tessellation").get<Color>();
        close_block();
        if (kind == "layer") {
          sched.blocks.push_back({t, j.value("qubits", std::vector<Vertex>{}), sched.gates.size(), 0});
        } else if (kind == "barrier") {
          sched.barriers.push_back({t, sched.gates.size()});
        } else {
          throw ValidationError(where + ": unknown marker " + kind);
        }
      } else {
        Gate g;
        g.kind = parse_gate_kind(j.at("kind").get<std::string>());
        g.qubits = j.at("qubits").get<std::vector<Vertex>>();
        if (g.has_angle()) g.angle = j.at("angle").get<double>();
        sched.gates.push_back(std::move(g));
      }
    } catch (const json::exception& e) {
      throw ValidationError(where + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (!have_phase) throw ValidationError("schedule: missing trailing global_phase record");
  return sched;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return ss.str();
}

/// Columns: vertex, re, im, probability.
inline std::string state_to_csv(const WalkState& state) {
  std::string out = "vertex,re,im,probability\n";
  for (std::size_t v = 0; v < state.size(); ++v) {
    out += std::to_string(v) + "," + format_double(state[v].real()) + "," +
           format_double(state[v].imag()) + "," + format_double(std::norm(state[v])) + "\n";
  }
  return out;
}

}  // namespace stagwalk
