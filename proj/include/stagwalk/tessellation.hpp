#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stagwalk/errors.hpp"
#include "stagwalk/graph.hpp"

namespace stagwalk {

/// Tessellation index. Colors are contiguous 0..T-1.
using Color = std::uint32_t;

/// Strict adds the pairwise check between the two cliques being merged, which
/// guarantees every color class stays a disjoint union of cliques. Verbatim
/// runs only the two neighbour-adjacency checks and may produce invalid covers.
enum class TessellationMode { Strict, Verbatim };

inline std::string_view to_string(TessellationMode m) {
  return m == TessellationMode::Strict ? "strict" : "verbatim";
}

inline TessellationMode parse_mode(std::string_view s) {
  if (s == "strict") return TessellationMode::Strict;
  if (s == "verbatim") return TessellationMode::Verbatim;
  throw std::invalid_argument("unknown tessellation mode: " + std::string(s));
}

struct ColoringCounters {
  std::uint64_t colorability_calls = 0;
  /// Adjacency lookups performed inside is_colorable.
  std::uint64_t basic_checks = 0;
  /// Colors added to edges.
  std::uint64_t edge_writes = 0;
  /// Verbatim only: merge pairs that are not graph edges and were left uncolored.
  std::uint64_t skipped_non_edges = 0;
};

namespace detail {

inline std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Union-find used to recover color classes as connected components.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// A set of tessellations covering the edges of a graph.
///
/// `edge_colors` lists every colored edge with its (sorted, non-empty) color
/// set. `cliques[c]` holds the cliques of color c, each sorted, ordered by
/// smallest member. `clique_of[c][v]` is the clique index of v in color c, or
/// -1 when v is in no c-clique (only possible before complete_cover).
class TessellationCover {
 public:
  struct ColoredEdge {
    Edge edge;
    std::vector<Color> colors;
    friend bool operator==(const ColoredEdge&, const ColoredEdge&) = default;
  };

  TessellationCover() = default;

  /// Builds cliques as the connected components of each color class.
  /// No validity checking is done here; see validate_cover.
  static TessellationCover from_edge_colors(std::size_t n, std::size_t t_count,
                                            std::vector<ColoredEdge> edge_colors) {
    TessellationCover cover;
    cover.n_ = n;
    cover.t_count_ = t_count;
    std::sort(edge_colors.begin(), edge_colors.end(),
              [](const auto& a, const auto& b) { return a.edge < b.edge; });
    for (auto& ec : edge_colors) {
      std::sort(ec.colors.begin(), ec.colors.end());
      ec.colors.erase(std::unique(ec.colors.begin(), ec.colors.end()), ec.colors.end());
      for (Color c : ec.colors)
        if (c >= t_count) throw std::invalid_argument("edge color out of range");
      if (ec.edge.v >= n) throw std::invalid_argument("edge endpoint out of range");
    }
    cover.edge_colors_ = std::move(edge_colors);

    cover.cliques_.assign(t_count, {});
    for (Color c = 0; c < t_count; ++c) {
      detail::DisjointSets ds(n);
      std::vector<char> touched(n, 0);
      for (const auto& ec : cover.edge_colors_) {
        if (std::binary_search(ec.colors.begin(), ec.colors.end(), c)) {
          ds.unite(ec.edge.u, ec.edge.v);
          touched[ec.edge.u] = touched[ec.edge.v] = 1;
        }
      }
      std::unordered_map<std::size_t, std::size_t> root_to_index;
      auto& out = cover.cliques_[c];
      for (Vertex v = 0; v < n; ++v) {
        if (!touched[v]) continue;
        const std::size_t r = ds.find(v);
        auto [it, inserted] = root_to_index.try_emplace(r, out.size());
        if (inserted) out.emplace_back();
        out[it->second].push_back(v);
      }
    }
    cover.rebuild_lookup();
    return cover;
  }

  /// Builds a cover from explicit cliques (e.g. a loaded file). Does not
  /// check clique disjointness; the lookup keeps the last assignment and
  /// validate_cover reports the inconsistency.
  static TessellationCover from_parts(std::size_t n, std::size_t t_count,
                                      std::vector<ColoredEdge> edge_colors,
                                      std::vector<std::vector<std::vector<Vertex>>> cliques) {
    if (cliques.size() != t_count)
      throw std::invalid_argument("clique list count does not match T");
    TessellationCover cover;
    cover.n_ = n;
    cover.t_count_ = t_count;
    std::sort(edge_colors.begin(), edge_colors.end(),
              [](const auto& a, const auto& b) { return a.edge < b.edge; });
    for (auto& ec : edge_colors) {
      std::sort(ec.colors.begin(), ec.colors.end());
      for (Color c : ec.colors)
        if (c >= t_count) throw std::invalid_argument("edge color out of range");
      if (ec.edge.v >= n) throw std::invalid_argument("edge endpoint out of range");
    }
    for (const auto& per_color : cliques)
      for (const auto& k : per_color)
        for (Vertex v : k)
          if (v >= n) throw std::invalid_argument("clique vertex out of range");
    cover.edge_colors_ = std::move(edge_colors);
    cover.cliques_ = std::move(cliques);
    cover.rebuild_lookup();
    return cover;
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t t_count() const { return t_count_; }
  const std::vector<ColoredEdge>& edge_colors() const { return edge_colors_; }
  const std::vector<std::vector<Vertex>>& cliques(Color c) const { return cliques_[c]; }
  const std::vector<std::vector<std::vector<Vertex>>>& all_cliques() const { return cliques_; }

  /// Color set of an edge; empty if the edge is uncolored.
  std::span<const Color> colors(Edge e) const {
    auto it = std::lower_bound(edge_colors_.begin(), edge_colors_.end(), e,
                               [](const ColoredEdge& ce, const Edge& k) { return ce.edge < k; });
    if (it == edge_colors_.end() || !(it->edge == e)) return {};
    return it->colors;
  }

  std::optional<std::size_t> clique_of(Color c, Vertex v) const {
    const auto idx = clique_of_[c][v];
    if (idx < 0) return std::nullopt;
    return static_cast<std::size_t>(idx);
  }

  /// Raw lookup table (per color, per vertex, -1 for none).
  const std::vector<std::vector<std::int64_t>>& lookup() const { return clique_of_; }

  /// True when every color partitions all vertices.
  bool is_complete() const {
    for (const auto& per_color : clique_of_)
      for (auto idx : per_color)
        if (idx < 0) return false;
    return true;
  }

  friend bool operator==(const TessellationCover& a, const TessellationCover& b) {
    return a.n_ == b.n_ && a.t_count_ == b.t_count_ && a.edge_colors_ == b.edge_colors_ &&
           a.cliques_ == b.cliques_;
  }

 private:
  friend TessellationCover complete_cover(const SpatialGraph&, const TessellationCover&);

  void rebuild_lookup() {
    clique_of_.assign(t_count_, std::vector<std::int64_t>(n_, -1));
    for (Color c = 0; c < t_count_; ++c)
      for (std::size_t k = 0; k < cliques_[c].size(); ++k)
        for (Vertex v : cliques_[c][k]) clique_of_[c][v] = static_cast<std::int64_t>(k);
  }

  std::size_t n_ = 0;
  std::size_t t_count_ = 0;
  std::vector<ColoredEdge> edge_colors_;
  std::vector<std::vector<std::vector<Vertex>>> cliques_;
  std::vector<std::vector<std::int64_t>> clique_of_;
};

/// Working state of the incremental edge-coloring procedure.
///
/// Edges carry color *sets*: merging two cliques only ever adds a color to an
/// edge. For each vertex the state keeps, per color, the sorted list of
/// neighbours reachable over an edge of that color (its "c-neighbours").
class ColoringState {
 public:
  ColoringState(const SpatialGraph& g, TessellationMode mode)
      : g_(&g), mode_(mode), by_color_(g.size()) {}

  TessellationMode mode() const { return mode_; }
  std::size_t t_count() const { return t_count_; }
  const ColoringCounters& counters() const { return counters_; }

  std::span<const Color> edge_colors(Vertex a, Vertex b) const {
    auto it = edge_colors_.find(detail::edge_key(a, b));
    if (it == edge_colors_.end()) return {};
    return it->second;
  }

  bool has_color(Vertex a, Vertex b, Color c) const {
    auto cs = edge_colors(a, b);
    return std::binary_search(cs.begin(), cs.end(), c);
  }

  /// Neighbours of v over edges carrying color c.
  std::span<const Vertex> color_neighbors(Vertex v, Color c) const {
    const auto& lists = by_color_[v];
    auto it = std::lower_bound(lists.begin(), lists.end(), c,
                               [](const ColorList& l, Color k) { return l.color < k; });
    if (it == lists.end() || it->color != c) return {};
    return it->members;
  }

  Color next_color() { return static_cast<Color>(t_count_++); }

  /// Whether (u,v) can join color c by merging the c-cliques of u and v.
  bool is_colorable(Vertex u, Vertex v, Color c) {
    ++counters_.colorability_calls;
    const auto xs = color_neighbors(v, c);
    const auto ys = color_neighbors(u, c);
    for (Vertex x : xs) {
      ++counters_.basic_checks;
      if (x != u && !g_->has_edge(u, x)) return false;
    }
    for (Vertex y : ys) {
      ++counters_.basic_checks;
      if (y != v && !g_->has_edge(v, y)) return false;
    }
    if (mode_ == TessellationMode::Strict) {
      for (Vertex x : xs) {
        for (Vertex y : ys) {
          ++counters_.basic_checks;
          if (x != y && !g_->has_edge(x, y)) return false;
        }
      }
    }
    return true;
  }

  /// Adds c to (u,v), to (u,x) and (v,y) for c-neighbours x of v and y of u,
  /// and to every (x,y): the two c-cliques become one.
  void color_edges(Vertex u, Vertex v, Color c) {
    const std::vector<Vertex> xs(color_neighbors(v, c).begin(), color_neighbors(v, c).end());
    const std::vector<Vertex> ys(color_neighbors(u, c).begin(), color_neighbors(u, c).end());
    add_color(u, v, c);
    for (Vertex x : xs) add_color(u, x, c);
    for (Vertex y : ys) add_color(v, y, c);
    for (Vertex x : xs) {
      for (Vertex y : ys) {
        if (x == y) continue;
        if (!g_->has_edge(x, y)) {
          if (mode_ == TessellationMode::Strict)
            throw InternalError("color_edges: merged cliques are not fully adjacent");
          ++counters_.skipped_non_edges;
          continue;
        }
        add_color(x, y, c);
      }
    }
  }

  /// Processes a newly inserted vertex against its already-inserted
  /// (lower-index) neighbours, trying colors in ascending order.
  void insert_vertex(Vertex u) {
    for (Vertex v : g_->neighbors(u)) {
      if (v >= u) break;
      if (!edge_colors(u, v).empty()) continue;
      bool placed = false;
      for (Color c = 0; c < t_count_; ++c) {
        if (is_colorable(u, v, c)) {
          color_edges(u, v, c);
          placed = true;
          break;
        }
      }
      if (!placed) color_edges(u, v, next_color());
    }
  }

  TessellationCover to_cover() const {
    std::vector<TessellationCover::ColoredEdge> out;
    out.reserve(edge_colors_.size());
    for (const auto& [key, colors] : edge_colors_) {
      out.push_back({Edge(static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffU)),
                     colors});
    }
    return TessellationCover::from_edge_colors(g_->size(), t_count_, std::move(out));
  }

 private:
  struct ColorList {
    Color color;
    std::vector<Vertex> members;
  };

  static void insert_sorted(std::vector<Vertex>& xs, Vertex v) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
  }

  void link(Vertex a, Vertex b, Color c) {
    auto& lists = by_color_[a];
    auto it = std::lower_bound(lists.begin(), lists.end(), c,
                               [](const ColorList& l, Color k) { return l.color < k; });
    if (it == lists.end() || it->color != c) it = lists.insert(it, ColorList{c, {}});
    insert_sorted(it->members, b);
  }

  void add_color(Vertex a, Vertex b, Color c) {
    auto& cs = edge_colors_[detail::edge_key(a, b)];
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it != cs.end() && *it == c) return;
    cs.insert(it, c);
    ++counters_.edge_writes;
    link(a, b, c);
    link(b, a, c);
  }

  const SpatialGraph* g_;
  TessellationMode mode_;
  std::size_t t_count_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Color>> edge_colors_;
  std::vector<std::vector<ColorList>> by_color_;
  ColoringCounters counters_;
};

struct TessellationResult {
  TessellationCover cover;
  ColoringCounters counters;
};

/// Inserts vertices in index order and colors each new vertex's edges.
inline TessellationResult tessellate_with_counters(const SpatialGraph& g,
                                                   TessellationMode mode = TessellationMode::Strict) {
  ColoringState state(g, mode);
  for (Vertex u = 0; u < g.size(); ++u) state.insert_vertex(u);
  return {state.to_cover(), state.counters()};
}

inline TessellationCover tessellate(const SpatialGraph& g,
                                    TessellationMode mode = TessellationMode::Strict) {
  return tessellate_with_counters(g, mode).cover;
}

/// Adds a singleton clique for every vertex missing from a color, so that
/// each color is a partition of all vertices.
inline TessellationCover complete_cover(const SpatialGraph& g, const TessellationCover& cover) {
  if (cover.vertex_count() != g.size())
    throw std::invalid_argument("complete_cover: cover and graph sizes differ");
  TessellationCover out = cover;
  for (Color c = 0; c < out.t_count_; ++c) {
    auto& ks = out.cliques_[c];
    for (Vertex v = 0; v < g.size(); ++v)
      if (out.clique_of_[c][v] < 0) ks.push_back({v});
    std::sort(ks.begin(), ks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }
  out.rebuild_lookup();
  return out;
}

struct CliqueViolation {
  Color color;
  std::vector<Vertex> members;
  /// First offending pair (not a graph edge, or an edge missing this color).
  Edge missing;
};

struct LookupMismatch {
  Color color;
  Vertex vertex;
};

struct ValidationReport {
  std::vector<Edge> uncovered_edges;
  /// Colored pairs that are not edges of the graph.
  std::vector<Edge> spurious_edges;
  std::vector<CliqueViolation> clique_violations;
  std::vector<LookupMismatch> lookup_mismatches;

  bool ok() const {
    return uncovered_edges.empty() && spurious_edges.empty() && clique_violations.empty() &&
           lookup_mismatches.empty();
  }
};

/// Checks coverage, the per-color disjoint-clique property, and the
/// vertex-to-clique lookup. Reports rather than throws.
inline ValidationReport validate_cover(const SpatialGraph& g, const TessellationCover& cover) {
  ValidationReport report;
  if (cover.vertex_count() != g.size())
    throw std::invalid_argument("validate_cover: cover and graph sizes differ");

  for (const auto& e : g.edges())
    if (cover.colors(e).empty()) report.uncovered_edges.push_back(e);
  for (const auto& ce : cover.edge_colors())
    if (!ce.colors.empty() && !g.has_edge(ce.edge.u, ce.edge.v))
      report.spurious_edges.push_back(ce.edge);

  const std::size_t n = g.size();
  // Components of each color class must be cliques whose pairs all carry c.
  const auto derived = TessellationCover::from_edge_colors(n, cover.t_count(), cover.edge_colors());
  for (Color c = 0; c < cover.t_count(); ++c) {
    for (const auto& comp : derived.cliques(c)) {
      bool bad = false;
      for (std::size_t i = 0; i < comp.size() && !bad; ++i) {
        for (std::size_t j = i + 1; j < comp.size(); ++j) {
          const Edge e(comp[i], comp[j]);
          const auto cs = cover.colors(e);
          if (!g.has_edge(e.u, e.v) || !std::binary_search(cs.begin(), cs.end(), c)) {
            report.clique_violations.push_back({c, comp, e});
            bad = true;
            break;
          }
        }
      }
    }

    // Listed cliques must be disjoint, fully c-adjacent, and contain every
    // c-colored edge.
    std::vector<int> owner(n, -1);
    const auto& listed = cover.cliques(c);
    for (std::size_t k = 0; k < listed.size(); ++k) {
      const auto& members = listed[k];
      bool bad = false;
      for (Vertex v : members) {
        if (owner[v] >= 0) {
          report.clique_violations.push_back({c, members, Edge(v, v)});
          bad = true;
          break;
        }
        owner[v] = static_cast<int>(k);
      }
      for (std::size_t i = 0; i < members.size() && !bad; ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const Edge e(members[i], members[j]);
          const auto cs = cover.colors(e);
          if (!g.has_edge(e.u, e.v) || !std::binary_search(cs.begin(), cs.end(), c)) {
            report.clique_violations.push_back({c, members, e});
            bad = true;
            break;
          }
        }
      }
    }
    for (const auto& ce : cover.edge_colors()) {
      if (!std::binary_search(ce.colors.begin(), ce.colors.end(), c)) continue;
      const int a = owner[ce.edge.u];
      if (a < 0 || a != owner[ce.edge.v])
        report.clique_violations.push_back({c, {ce.edge.u, ce.edge.v}, ce.edge});
    }

    for (Vertex v = 0; v < n; ++v) {
      const auto looked = cover.lookup()[c][v];
      if (looked != owner[v]) report.lookup_mismatches.push_back({c, v});
    }
  }
  return report;
}

struct CoverStats {
  /// Mean number of tessellations (exact T for a single cover).
  double t_mean = 0.0;
  /// Standard error of the mean, sigma / sqrt(realizations).
  double t_stderr = 0.0;
  std::size_t max_clique_size = 0;
  /// histogram[c][s] = number of color-c cliques of size s (summed over
  /// realizations when aggregated).
  std::vector<std::vector<std::size_t>> clique_size_histogram;
  std::size_t realizations = 1;
};

inline CoverStats cover_stats(const TessellationCover& cover) {
  CoverStats s;
  s.t_mean = static_cast<double>(cover.t_count());
  s.clique_size_histogram.resize(cover.t_count());
  for (Color c = 0; c < cover.t_count(); ++c) {
    auto& h = s.clique_size_histogram[c];
    for (const auto& k : cover.cliques(c)) {
      if (h.size() <= k.size()) h.resize(k.size() + 1, 0);
      ++h[k.size()];
      s.max_clique_size = std::max(s.max_clique_size, k.size());
    }
  }
  return s;
}

/// Mean and standard error of T, one entry per realization (population sigma).
inline CoverStats aggregate_stats(std::span<const CoverStats> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate_stats: no realizations");
  CoverStats out;
  double sum = 0.0;
  for (const auto& r : runs) {
    sum += r.t_mean;
    out.max_clique_size = std::max(out.max_clique_size, r.max_clique_size);
    if (out.clique_size_histogram.size() < r.clique_size_histogram.size())
      out.clique_size_histogram.resize(r.clique_size_histogram.size());
    for (std::size_t c = 0; c < r.clique_size_histogram.size(); ++c) {
      auto& dst = out.clique_size_histogram[c];
      const auto& src = r.clique_size_histogram[c];
      if (dst.size() < src.size()) dst.resize(src.size(), 0);
      for (std::size_t s = 0; s < src.size(); ++s) dst[s] += src[s];
    }
  }
  const auto count = static_cast<double>(runs.size());
  out.t_mean = sum / count;
  double var = 0.0;
  for (const auto& r : runs) var += (r.t_mean - out.t_mean) * (r.t_mean - out.t_mean);
  var /= count;
  out.t_stderr = std::sqrt(var / count);
  out.realizations = runs.size();
  return out;
}

}  // namespace stagwalk
