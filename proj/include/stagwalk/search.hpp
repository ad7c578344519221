#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stagwalk/graph.hpp"
#include "stagwalk/parallel.hpp"
#include "stagwalk/rng.hpp"
#include "stagwalk/stats.hpp"
#include "stagwalk/tessellation.hpp"
#include "stagwalk/walk.hpp"

namespace stagwalk {

/// Phase flip of the marked vertex, R = 1 - 2|m><m|.
inline WalkState oracle_apply(WalkState state, Vertex marked) {
  if (marked >= state.size()) throw std::out_of_range("oracle_apply: marked vertex out of range");
  state[marked] = -state[marked];
  return state;
}

struct InitialState {
  enum class Kind { Uniform, Vertex };
  Kind kind = Kind::Uniform;
  stagwalk::Vertex vertex = 0;

  static InitialState uniform() { return {}; }
  static InitialState at(stagwalk::Vertex v) { return {Kind::Vertex, v}; }

  WalkState make(std::size_t n) const {
    return kind == Kind::Uniform ? WalkState::uniform(n) : WalkState::basis(n, vertex);
  }
};

/// `steps` evenly spaced angles in (0, pi/2]: k * (pi/2) / steps, k = 1..steps.
inline std::vector<double> default_theta_grid(std::size_t steps = 63) {
  std::vector<double> grid(steps);
  for (std::size_t k = 1; k <= steps; ++k)
    grid[k - 1] = static_cast<double>(k) * (std::numbers::pi / 2.0) / static_cast<double>(steps);
  return grid;
}

/// ceil(4 sqrt(n)) + 8 steps.
inline std::size_t default_horizon(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(static_cast<double>(n)))) + 8;
}

struct SearchConfig {
  Vertex marked = 0;
  std::vector<double> theta_grid = default_theta_grid();
  std::size_t horizon = 1;
  InitialState initial;

  void validate(std::size_t n) const {
    if (marked >= n) throw std::out_of_range("SearchConfig: marked vertex out of range");
    if (theta_grid.empty()) throw std::invalid_argument("SearchConfig: empty theta grid");
    for (double t : theta_grid)
      if (!(t > 0.0 && t <= std::numbers::pi / 2.0 + 1e-12))
        throw std::invalid_argument("SearchConfig: theta grid values must lie in (0, pi/2]");
    if (horizon < 1) throw std::invalid_argument("SearchConfig: horizon must be >= 1");
    if (initial.kind == InitialState::Kind::Vertex && initial.vertex >= n)
      throw std::out_of_range("SearchConfig: initial vertex out of range");
  }
};

/// p[t] = probability of the marked vertex after t (oracle, walk step) rounds.
struct ProbabilityTrace {
  std::vector<double> p;

  std::size_t horizon() const { return p.empty() ? 0 : p.size() - 1; }
  double max() const { return *std::max_element(p.begin(), p.end()); }
};

inline ProbabilityTrace search_run(const CliqueProjectorSet& projectors, const SearchConfig& config,
                                   double theta) {
  const std::size_t n = projectors.n;
  if (config.marked >= n) throw std::out_of_range("search_run: marked vertex out of range");
  WalkState state = config.initial.make(n);
  ProbabilityTrace trace;
  trace.p.reserve(config.horizon + 1);
  trace.p.push_back(state.probability(config.marked));
  for (std::size_t t = 1; t <= config.horizon; ++t) {
    state = oracle_apply(std::move(state), config.marked);
    state = walk_step(std::move(state), projectors, theta);
    trace.p.push_back(state.probability(config.marked));
  }
  return trace;
}

/// Requires a completed cover of g.
inline ProbabilityTrace search_run(const SpatialGraph& g, const TessellationCover& cover,
                                   const SearchConfig& config, double theta) {
  return search_run(clique_states(cover, g.size()), config, theta);
}

struct SearchTime {
  std::size_t steps = 0;
  /// False when no interior maximum exists and the global maximum sits at
  /// the horizon (the probability may still be rising).
  bool saturated = true;
};

/// First t >= 1 with p[t] >= p[t-1] and p[t] >= p[t+1]. Without such an
/// interior point, the index of the global maximum.
inline SearchTime search_time(const ProbabilityTrace& trace) {
  const auto& p = trace.p;
  if (p.size() < 2) throw std::invalid_argument("search_time: trace needs at least two entries");
  for (std::size_t t = 1; t + 1 < p.size(); ++t)
    if (p[t] >= p[t - 1] && p[t] >= p[t + 1]) return {t, true};
  const auto best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  return {best, best + 1 != p.size()};
}

struct ThetaScan {
  double theta_op = 0.0;
  std::vector<double> thetas;
  /// max_t p[t] for each grid angle
  std::vector<double> p_max;
};

/// Ties resolve to the smaller angle.
inline ThetaScan theta_scan(const CliqueProjectorSet& projectors, const SearchConfig& config) {
  config.validate(projectors.n);
  ThetaScan scan;
  scan.thetas = config.theta_grid;
  scan.p_max.resize(scan.thetas.size());
  for (std::size_t i = 0; i < scan.thetas.size(); ++i)
    scan.p_max[i] = search_run(projectors, config, scan.thetas[i]).max();
  std::size_t best = 0;
  for (std::size_t i = 1; i < scan.thetas.size(); ++i) {
    const bool higher = scan.p_max[i] > scan.p_max[best];
    const bool tie_smaller = scan.p_max[i] == scan.p_max[best] && scan.thetas[i] < scan.thetas[best];
    if (higher || tie_smaller) best = i;
  }
  scan.theta_op = scan.thetas[best];
  return scan;
}

inline ThetaScan theta_scan(const SpatialGraph& g, const TessellationCover& cover,
                            const SearchConfig& config) {
  return theta_scan(clique_states(cover, g.size()), config);
}

struct SearchResult {
  double theta_op = 0.0;
  std::size_t search_time = 0;
  double p_max = 0.0;
  /// p_max * n
  double amplification = 0.0;
  bool saturated = true;
  std::size_t horizon = 0;
};

/// Scan theta, then run at theta_op and extract the first-maximum time.
/// An unsaturated trace is rerun with a doubled horizon (up to
/// `max_extensions` times).
inline SearchResult search_at_optimum(const CliqueProjectorSet& projectors, SearchConfig config,
                                      std::size_t max_extensions = 3) {
  const auto scan = theta_scan(projectors, config);
  SearchResult r;
  r.theta_op = scan.theta_op;
  for (std::size_t attempt = 0;; ++attempt) {
    const auto trace = search_run(projectors, config, r.theta_op);
    const auto st = search_time(trace);
    r.search_time = st.steps;
    r.saturated = st.saturated;
    r.p_max = trace.p[st.steps];
    r.horizon = config.horizon;
    if (st.saturated || attempt >= max_extensions) break;
    config.horizon *= 2;
  }
  r.amplification = r.p_max * static_cast<double>(projectors.n);
  return r;
}

/// One realization of the search-scaling ensemble.
struct SearchRow {
  std::size_t n = 0;
  std::size_t realization = 0;
  std::uint64_t seed = 0;
  /// Graph draws needed to obtain a connected graph.
  std::size_t attempts = 1;
  std::size_t t_count = 0;
  Vertex marked = 0;
  SearchResult result;

  /// Walk cost in tessellation applications, T * search_time.
  std::size_t tessellation_steps() const { return t_count * result.search_time; }
};

struct ScalingFit {
  std::vector<double> sizes;
  std::vector<double> mean_search_time;
  std::vector<double> stderr_search_time;
  std::vector<double> mean_t;
  std::vector<double> mean_tessellation_steps;
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct ScalingOptions {
  double rho = 2.0;
  BoundaryMode boundary = BoundaryMode::Periodic;
  /// Realizations per size are ceil(realization_budget / N) ...
  double realization_budget = 1e4;
  /// ... capped at this count (0 = uncapped).
  std::size_t max_realizations = 0;
  std::uint64_t seed = 0;
  std::vector<double> theta_grid = default_theta_grid();
  std::size_t threads = 1;
  std::size_t max_attempts = 1000;
  TessellationMode mode = TessellationMode::Strict;
};

inline std::size_t realizations_for(std::size_t n, double budget, std::size_t cap) {
  auto r = static_cast<std::size_t>(std::ceil(budget / static_cast<double>(n)));
  r = std::max<std::size_t>(r, 1);
  if (cap > 0) r = std::min(r, cap);
  return r;
}

/// Marked vertex for a realization, drawn from a stream derived from its seed.
inline Vertex marked_vertex_for(std::uint64_t seed, std::size_t n) {
  Rng rng(splitmix64(seed));
  return static_cast<Vertex>(rng.uniform_index(n));
}

/// First connected RGG in the realization's seed stream.
inline std::pair<SpatialGraph, std::pair<std::uint64_t, std::size_t>> connected_rgg(
    std::size_t n, double rho, BoundaryMode boundary, std::uint64_t seed, std::size_t index,
    std::size_t max_attempts) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    const auto s = derive_seed(seed, index, attempt);
    auto g = generate_rgg(n, rho, boundary, s);
    if (is_connected(g)) return {std::move(g), {s, attempt + 1}};
  }
  throw std::runtime_error("connected_rgg: no connected realization within the attempt limit");
}

/// Full pipeline for one seeded graph: tessellate, complete, scan, search.
inline SearchRow search_realization(const SpatialGraph& g, std::uint64_t seed,
                                    const std::vector<double>& grid, TessellationMode mode) {
  SearchRow row;
  row.n = g.size();
  row.seed = seed;
  const auto cover = complete_cover(g, tessellate(g, mode));
  row.t_count = cover.t_count();
  row.marked = marked_vertex_for(seed, g.size());
  SearchConfig cfg;
  cfg.marked = row.marked;
  cfg.theta_grid = grid;
  cfg.horizon = default_horizon(g.size());
  row.result = search_at_optimum(clique_states(cover, g.size()), cfg);
  return row;
}

/// Mean search time per size and the log-log fit of mean time against N.
inline ScalingFit fit_search_scaling(std::span<const SearchRow> rows) {
  ScalingFit fit;
  std::vector<std::size_t> sizes;
  for (const auto& r : rows) sizes.push_back(r.n);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 2) throw std::invalid_argument("fit_search_scaling: need at least two sizes");
  for (std::size_t n : sizes) {
    std::vector<double> times, ts, steps;
    for (const auto& r : rows) {
      if (r.n != n) continue;
      times.push_back(static_cast<double>(r.result.search_time));
      ts.push_back(static_cast<double>(r.t_count));
      steps.push_back(static_cast<double>(r.tessellation_steps()));
    }
    const auto ms = mean_stderr(times);
    fit.sizes.push_back(static_cast<double>(n));
    fit.mean_search_time.push_back(ms.mean);
    fit.stderr_search_time.push_back(ms.stderr_);
    fit.mean_t.push_back(mean_stderr(ts).mean);
    fit.mean_tessellation_steps.push_back(mean_stderr(steps).mean);
  }
  const auto lf = loglog_fit(fit.sizes, fit.mean_search_time);
  fit.exponent = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  return fit;
}

struct ScalingResult {
  std::vector<SearchRow> rows;
  ScalingFit fit;
};

/// Search-time scaling over seeded RGG ensembles (connected realizations only).
inline ScalingResult scaling_experiment(std::span<const std::size_t> sizes, const ScalingOptions& opt) {
  if (sizes.size() < 3) throw std::invalid_argument("scaling_experiment: need at least three sizes");
  struct Job {
    std::size_t n;
    std::size_t index;
  };
  std::vector<Job> jobs;
  for (std::size_t n : sizes)
    for (std::size_t i = 0; i < realizations_for(n, opt.realization_budget, opt.max_realizations); ++i)
      jobs.push_back({n, i});

  ScalingResult out;
  out.rows.resize(jobs.size());
  parallel_for(jobs.size(), opt.threads, [&](std::size_t j) {
    const auto [n, index] = jobs[j];
    auto [g, drawn] = connected_rgg(n, opt.rho, opt.boundary, opt.seed, index, opt.max_attempts);
    SearchRow row = search_realization(g, drawn.first, opt.theta_grid, opt.mode);
    row.realization = index;
    row.attempts = drawn.second;
    out.rows[j] = std::move(row);
  });
  out.fit = fit_search_scaling(out.rows);
  return out;
}

/// Same pipeline on complete graphs with the single-clique cover, where the
/// walk step at theta = pi/2 reduces to Grover's diffusion.
inline ScalingResult complete_graph_scaling(std::span<const std::size_t> sizes,
                                            const std::vector<double>& grid) {
  if (sizes.size() < 3) throw std::invalid_argument("complete_graph_scaling: need at least three sizes");
  ScalingResult out;
  for (std::size_t n : sizes) {
    const auto g = complete_graph(n);
    SearchRow row;
    row.n = n;
    const auto cover = complete_cover(g, tessellate(g));
    row.t_count = cover.t_count();
    SearchConfig cfg;
    cfg.marked = 0;
    cfg.theta_grid = grid;
    cfg.horizon = default_horizon(n);
    row.marked = 0;
    row.result = search_at_optimum(clique_states(cover, n), cfg);
    out.rows.push_back(row);
  }
  out.fit = fit_search_scaling(out.rows);
  return out;
}

}  // namespace stagwalk
