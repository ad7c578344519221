#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stagwalk/rng.hpp"

namespace stagwalk {

using Vertex = std::uint32_t;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

enum class BoundaryMode { Open, Periodic };

inline std::string_view to_string(BoundaryMode b) {
  return b == BoundaryMode::Open ? "open" : "periodic";
}

inline BoundaryMode parse_boundary(std::string_view s) {
  if (s == "open") return BoundaryMode::Open;
  if (s == "periodic") return BoundaryMode::Periodic;
  throw std::invalid_argument("unknown boundary mode: " + std::string(s));
}

/// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Connectivity threshold of RGG(n, r) in the unit square:
/// sqrt(ln n / (pi n)).
inline double critical_radius(std::size_t n) {
  if (n < 2) throw std::invalid_argument("critical_radius: n must be >= 2");
  const double nd = static_cast<double>(n);
  return std::sqrt(std::log(nd) / (std::numbers::pi * nd));
}

/// Euclidean distance, or minimum-image distance on the unit torus.
inline double distance(Point2D p, Point2D q, BoundaryMode boundary) {
  double dx = std::abs(p.x - q.x);
  double dy = std::abs(p.y - q.y);
  if (boundary == BoundaryMode::Periodic) {
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
  }
  return std::hypot(dx, dy);
}

/// Immutable undirected simple graph with optional planar embedding.
///
/// Edges are kept sorted lexicographically and each vertex's neighbour list
/// is sorted ascending; algorithms downstream rely on both orders.
class SpatialGraph {
 public:
  SpatialGraph() = default;

  /// Validates and builds; throws std::invalid_argument on self-loops,
  /// duplicate edges, out-of-range endpoints or off-square positions.
  SpatialGraph(std::size_t n, std::vector<Edge> edges,
               std::optional<std::vector<Point2D>> positions = std::nullopt,
               BoundaryMode boundary = BoundaryMode::Open, double radius = 0.0,
               bool geometric = false)
      : n_(n),
        positions_(std::move(positions)),
        edges_(std::move(edges)),
        boundary_(boundary),
        radius_(radius),
        geometric_(geometric) {
    if (positions_ && positions_->size() != n_)
      throw std::invalid_argument("positions length does not match vertex count");
    if (positions_) {
      for (const auto& p : *positions_) {
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
          throw std::invalid_argument("position outside the unit square");
      }
    }
    if (geometric_ && !positions_)
      throw std::invalid_argument("geometric graph requires positions");
    for (const auto& e : edges_) {
      if (e.u == e.v) throw std::invalid_argument("self-loop");
      if (e.u > e.v) throw std::invalid_argument("edge endpoints not ordered u < v");
      if (e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw std::invalid_argument("duplicate edge");
    adjacency_.assign(n_, {});
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  }

  /// Convenience builder for abstract graphs from (u, v) pairs in any order.
  static SpatialGraph from_pairs(std::size_t n,
                                 std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) edges.emplace_back(a, b);
    return SpatialGraph(n, std::move(edges));
  }

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  const std::optional<std::vector<Point2D>>& positions() const { return positions_; }
  BoundaryMode boundary() const { return boundary_; }
  double radius() const { return radius_; }
  /// True when the edge set is defined by positions and radius.
  bool geometric() const { return geometric_; }

  bool has_edge(Vertex a, Vertex b) const {
    if (a == b || a >= n_ || b >= n_) return false;
    const auto& nb = adjacency_[a].size() <= adjacency_[b].size() ? adjacency_[a] : adjacency_[b];
    const Vertex other = adjacency_[a].size() <= adjacency_[b].size() ? b : a;
    return std::binary_search(nb.begin(), nb.end(), other);
  }

  friend bool operator==(const SpatialGraph& a, const SpatialGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.positions_ == b.positions_ &&
           a.boundary_ == b.boundary_ && a.radius_ == b.radius_;
  }

 private:
  std::size_t n_ = 0;
  std::optional<std::vector<Point2D>> positions_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  BoundaryMode boundary_ = BoundaryMode::Open;
  double radius_ = 0.0;
  bool geometric_ = false;
};

/// All pairs closer than `radius` under `boundary`, sorted.
///
/// Uses a uniform cell grid when there are at least three cells per axis;
/// otherwise all pairs are tested. Both paths apply the same strict
/// comparison, so the result is independent of the path taken.
inline std::vector<Edge> geometric_edges(std::span<const Point2D> pts, double radius,
                                         BoundaryMode boundary) {
  std::vector<Edge> edges;
  const std::size_t n = pts.size();
  if (radius <= 0.0 || n < 2) return edges;

  const auto cells = static_cast<std::size_t>(std::min(1.0 / radius, 4096.0));
  if (cells < 3) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (distance(pts[i], pts[j], boundary) < radius)
          edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    std::sort(edges.begin(), edges.end());
    return edges;
  }

  auto cell_of = [cells](double c) {
    return std::min(static_cast<std::size_t>(c * static_cast<double>(cells)), cells - 1);
  };
  std::vector<std::vector<Vertex>> grid(cells * cells);
  for (std::size_t i = 0; i < n; ++i)
    grid[cell_of(pts[i].y) * cells + cell_of(pts[i].x)].push_back(static_cast<Vertex>(i));

  const auto c = static_cast<std::ptrdiff_t>(cells);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cx = static_cast<std::ptrdiff_t>(cell_of(pts[i].x));
    const auto cy = static_cast<std::ptrdiff_t>(cell_of(pts[i].y));
    for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
      for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
        std::ptrdiff_t gx = cx + dx;
        std::ptrdiff_t gy = cy + dy;
        if (boundary == BoundaryMode::Periodic) {
          gx = (gx + c) % c;
          gy = (gy + c) % c;
        } else if (gx < 0 || gy < 0 || gx >= c || gy >= c) {
          continue;
        }
        for (Vertex j : grid[static_cast<std::size_t>(gy * c + gx)]) {
          if (j <= i) continue;
          if (distance(pts[i], pts[j], boundary) < radius)
            edges.emplace_back(static_cast<Vertex>(i), j);
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// Random geometric graph: n uniform points in [0,1]^2, radius rho * r_c(n).
/// The result is a pure function of (n, rho, boundary, seed).
inline SpatialGraph generate_rgg(std::size_t n, double rho, BoundaryMode boundary,
                                 std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_rgg: n must be >= 2");
  if (!(rho > 0.0)) throw std::invalid_argument("generate_rgg: rho must be positive");
  Rng rng(seed);
  std::vector<Point2D> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  const double radius = rho * critical_radius(n);
  auto edges = geometric_edges(pts, radius, boundary);
  return SpatialGraph(n, std::move(edges), std::move(pts), boundary, radius, true);
}

/// Graph with explicit positions and radius (edges derived from geometry).
inline SpatialGraph geometric_graph(std::vector<Point2D> pts, double radius,
                                    BoundaryMode boundary) {
  auto edges = geometric_edges(pts, radius, boundary);
  const std::size_t n = pts.size();
  return SpatialGraph(n, std::move(edges), std::move(pts), boundary, radius, true);
}

inline SpatialGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return SpatialGraph(n, std::move(edges));
}

inline SpatialGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return SpatialGraph(n, std::move(edges));
}

inline SpatialGraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return SpatialGraph(n, std::move(edges));
}

inline bool is_connected(const SpatialGraph& g) {
  const std::size_t n = g.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

struct DegreeStats {
  double mean_degree = 0.0;
  std::size_t max_degree = 0;
  std::size_t edge_count = 0;
};

inline DegreeStats degree_stats(const SpatialGraph& g) {
  DegreeStats s;
  s.edge_count = g.edge_count();
  for (Vertex v = 0; v < g.size(); ++v) s.max_degree = std::max(s.max_degree, g.degree(v));
  if (g.size() > 0)
    s.mean_degree = 2.0 * static_cast<double>(s.edge_count) / static_cast<double>(g.size());
  return s;
}

}  // namespace stagwalk
