#pragma once

#include <chrono>
#include <concepts>
#include <numeric>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "stagwalk/circuit.hpp"
#include "stagwalk/ctqw.hpp"
#include "stagwalk/io.hpp"
#include "stagwalk/parallel.hpp"
#include "stagwalk/search.hpp"
#include "stagwalk/stats.hpp"
#include "stagwalk/tessellation.hpp"

#ifndef STAGWALK_VERSION
#define STAGWALK_VERSION "unknown"
#endif

namespace stagwalk {

inline constexpr const char* kVersion = STAGWALK_VERSION;

enum class ExperimentKind { TessellationScaling, SearchScaling, CompileVerify, TrotterScaling };

inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::TessellationScaling: return "tessellation";
    case ExperimentKind::SearchScaling: return "search";
    case ExperimentKind::CompileVerify: return "compile";
    case ExperimentKind::TrotterScaling: return "trotter";
  }
  return "?";
}

inline ExperimentKind parse_experiment_kind(std::string_view s) {
  if (s == "tessellation") return ExperimentKind::TessellationScaling;
  if (s == "search") return ExperimentKind::SearchScaling;
  if (s == "compile") return ExperimentKind::CompileVerify;
  if (s == "trotter") return ExperimentKind::TrotterScaling;
  throw std::invalid_argument("unknown experiment kind: " + std::string(s));
}

/// Plain table with a fixed header; every experiment output goes through it.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw InternalError("Table: row width does not match header");
    rows.push_back(std::move(row));
  }

  std::string to_csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }

  /// Array of objects; numeric-looking cells are emitted as numbers.
  json to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) {
        const auto& cell = r[i];
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (!cell.empty() && end == cell.c_str() + cell.size() && std::isfinite(v))
          obj[header[i]] = v;
        else
          obj[header[i]] = cell;
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

enum class OutputFormat { Csv, Json };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format: " + std::string(s));
}

/// Writes `<dir>/<stem>.csv` or `<dir>/<stem>.json`.
inline std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                         const Table& table, OutputFormat format) {
  const auto path = dir / (stem + (format == OutputFormat::Csv ? ".csv" : ".json"));
  write_text_file(path, format == OutputFormat::Csv ? table.to_csv() : table.to_json().dump(2) + "\n");
  return path;
}

inline std::string cell(double x) { return format_double(x); }
template <std::integral I>
std::string cell(I x) {
  return std::to_string(x);
}

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::TessellationScaling;
  std::vector<std::size_t> sizes;
  std::vector<double> rhos{1.0};
  BoundaryMode boundary = BoundaryMode::Open;
  /// Realizations per size: ceil(realization_budget / N), capped at
  /// max_realizations when that is nonzero.
  double realization_budget = 6000.0;
  std::size_t max_realizations = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  TessellationMode mode = TessellationMode::Strict;
  /// Tessellation scaling only: redraw disconnected graphs from the derived
  /// seed stream. Off by default since at rho = 1 with open boundaries almost
  /// no realization is connected. Search scaling always redraws.
  bool connected_only = false;
  std::size_t max_attempts = 1000;
  std::size_t theta_steps = 63;
  // compile
  std::size_t max_s = 8;
  std::size_t thetas_per_size = 20;
  double tolerance = 1e-9;
  // trotter
  std::vector<std::size_t> trotter_steps{32, 64, 128, 256};
  double gamma = 1.0;
  double time = 1.0;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::filesystem::path> out_dir;

  void validate() const {
    const bool needs_sizes =
        kind == ExperimentKind::TessellationScaling || kind == ExperimentKind::SearchScaling;
    if (needs_sizes && sizes.empty()) throw ValidationError("experiment: sizes must not be empty");
    if (!std::is_sorted(sizes.begin(), sizes.end()) ||
        std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end())
      throw ValidationError("experiment: sizes must be strictly ascending");
    for (std::size_t n : sizes)
      if (n < 2) throw ValidationError("experiment: sizes must be >= 2");
    if (needs_sizes && rhos.empty()) throw ValidationError("experiment: rho list must not be empty");
    for (double r : rhos)
      if (!(r > 0.0)) throw ValidationError("experiment: rho must be positive");
    if (!(realization_budget > 0.0)) throw ValidationError("experiment: realization budget must be positive");
    if (kind == ExperimentKind::SearchScaling && sizes.size() < 3)
      throw ValidationError("experiment: search scaling needs at least three sizes");
    if (theta_steps < 1) throw ValidationError("experiment: theta grid needs at least one angle");
    if (max_s < 1) throw ValidationError("experiment: max_s must be >= 1");
    if (trotter_steps.empty()) throw ValidationError("experiment: trotter step list must not be empty");
    if (!(gamma > 0.0) || !(time > 0.0)) throw ValidationError("experiment: gamma and t must be positive");
    if (out_dir) {
      std::error_code ec;
      std::filesystem::create_directories(*out_dir, ec);
      if (ec || !std::filesystem::is_directory(*out_dir))
        throw IoError("experiment: cannot create output directory " + out_dir->string());
    }
  }
};

inline json spec_to_json(const ExperimentSpec& s) {
  json j;
  j["kind"] = std::string(to_string(s.kind));
  j["sizes"] = s.sizes;
  j["rho"] = s.rhos;
  j["boundary"] = std::string(to_string(s.boundary));
  j["realization_budget"] = s.realization_budget;
  j["max_realizations"] = s.max_realizations;
  j["seed"] = s.seed;
  j["threads"] = s.threads;
  j["mode"] = std::string(to_string(s.mode));
  j["connected_only"] = s.connected_only;
  j["max_attempts"] = s.max_attempts;
  j["theta_steps"] = s.theta_steps;
  j["max_s"] = s.max_s;
  j["thetas_per_size"] = s.thetas_per_size;
  j["tolerance"] = s.tolerance;
  j["trotter_steps"] = s.trotter_steps;
  j["gamma"] = s.gamma;
  j["t"] = s.time;
  j["format"] = s.format == OutputFormat::Csv ? "csv" : "json";
  if (s.out_dir) j["out"] = s.out_dir->string();
  return j;
}

/// Missing keys keep per-kind defaults: tessellation runs N = 32..2048
/// (doubling) at rho 1, 2, 3; search runs N = 64..512 at rho 2, periodic.
inline ExperimentSpec spec_from_json(const json& j) {
  try {
    ExperimentSpec s;
    s.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    if (s.kind == ExperimentKind::TessellationScaling) {
      s.sizes = {32, 64, 128, 256, 512, 1024, 2048};
      s.rhos = {1.0, 2.0, 3.0};
    } else if (s.kind == ExperimentKind::SearchScaling) {
      s.sizes = {64, 128, 256, 512};
      s.rhos = {2.0};
      s.boundary = BoundaryMode::Periodic;
      s.realization_budget = 1e4;
    }
    s.sizes = j.value("sizes", s.sizes);
    s.rhos = j.value("rho", s.rhos);
    if (j.contains("boundary")) s.boundary = parse_boundary(j.at("boundary").get<std::string>());
    s.realization_budget = j.value("realization_budget", s.realization_budget);
    s.max_realizations = j.value("max_realizations", s.max_realizations);
    s.seed = j.value("seed", s.seed);
    s.threads = j.value("threads", s.threads);
    if (j.contains("mode")) s.mode = parse_mode(j.at("mode").get<std::string>());
    s.connected_only = j.value("connected_only", s.connected_only);
    s.max_attempts = j.value("max_attempts", s.max_attempts);
    s.theta_steps = j.value("theta_steps", s.theta_steps);
    s.max_s = j.value("max_s", s.max_s);
    s.thetas_per_size = j.value("thetas_per_size", s.thetas_per_size);
    s.tolerance = j.value("tolerance", s.tolerance);
    s.trotter_steps = j.value("trotter_steps", s.trotter_steps);
    s.gamma = j.value("gamma", s.gamma);
    s.time = j.value("t", s.time);
    if (j.contains("format")) s.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("out")) s.out_dir = j.at("out").get<std::string>();
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("experiment spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("experiment spec: ") + e.what());
  }
}

/// Everything needed to replay a run: the spec, every realization seed, plus
/// timing and counters for the record.
struct RunManifest {
  std::string version = kVersion;
  ExperimentSpec spec;
  json realizations = json::array();
  double seconds = 0.0;
  json counters = json::object();
  json fits = json::array();

  json to_json() const {
    return {{"version", version}, {"spec", spec_to_json(spec)}, {"realizations", realizations},
            {"seconds", seconds},  {"counters", counters},         {"fits", fits}};
  }
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline void write_manifest(const ExperimentSpec& spec, const RunManifest& m) {
  if (spec.out_dir) write_text_file(*spec.out_dir / "manifest.json", m.to_json().dump(2) + "\n");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tessellation scaling

struct TessellationRow {
  std::size_t n = 0;
  double rho = 0.0;
  std::size_t realization = 0;
  std::uint64_t seed = 0;
  std::size_t attempts = 1;
  std::size_t edges = 0;
  std::size_t t_count = 0;
  std::size_t max_clique = 0;
  ColoringCounters counters;
};

struct TessellationSummary {
  std::size_t n = 0;
  double rho = 0.0;
  std::size_t realizations = 0;
  double mean_t = 0.0;
  double stderr_t = 0.0;
  double mean_checks = 0.0;
};

/// Mean T against ln N for one rho.
struct TessellationFit {
  double rho = 0.0;
  LinearFit fit;
};

struct TessellationScalingResult {
  std::vector<TessellationRow> rows;
  std::vector<TessellationSummary> summary;
  std::vector<TessellationFit> fits;
  RunManifest manifest;
};

/// One realization: a seeded RGG, redrawn while disconnected if requested.
inline TessellationRow tessellation_realization(std::size_t n, double rho, BoundaryMode boundary,
                                                std::uint64_t seed, std::size_t index, bool connected_only,
                                                std::size_t max_attempts, TessellationMode mode) {
  TessellationRow row;
  row.n = n;
  row.rho = rho;
  row.realization = index;
  std::optional<SpatialGraph> g;
  if (connected_only) {
    auto [graph, drawn] = connected_rgg(n, rho, boundary, seed, index, max_attempts);
    g = std::move(graph);
    row.seed = drawn.first;
    row.attempts = drawn.second;
  } else {
    row.seed = derive_seed(seed, index);
    g = generate_rgg(n, rho, boundary, row.seed);
  }
  const auto res = tessellate_with_counters(*g, mode);
  row.edges = g->edge_count();
  row.t_count = res.cover.t_count();
  row.max_clique = cover_stats(res.cover).max_clique_size;
  row.counters = res.counters;
  return row;
}

inline Table tessellation_rows_table(const std::vector<TessellationRow>& rows) {
  Table t{{"N", "rho", "realization", "seed", "attempts", "edges", "T", "max_clique", "colorability_calls",
           "basic_checks", "edge_writes"},
          {}};
  for (const auto& r : rows)
    t.add({cell(r.n), cell(r.rho), cell(r.realization), cell(r.seed), cell(r.attempts), cell(r.edges),
           cell(r.t_count), cell(r.max_clique), cell(r.counters.colorability_calls),
           cell(r.counters.basic_checks), cell(r.counters.edge_writes)});
  return t;
}

inline Table tessellation_summary_table(const std::vector<TessellationSummary>& rows) {
  Table t{{"N", "lnN", "rho", "realizations", "mean_T", "stderr_T", "mean_basic_checks"}, {}};
  for (const auto& r : rows)
    t.add({cell(r.n), cell(std::log(static_cast<double>(r.n))), cell(r.rho), cell(r.realizations), cell(r.mean_t),
           cell(r.stderr_t), cell(r.mean_checks)});
  return t;
}

inline TessellationScalingResult run_tessellation_scaling(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::TessellationScaling)
    throw ValidationError("run_tessellation_scaling: wrong experiment kind");
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  struct Job {
    std::size_t n;
    double rho;
    std::size_t index;
  };
  std::vector<Job> jobs;
  for (double rho : spec.rhos)
    for (std::size_t n : spec.sizes)
      for (std::size_t i = 0; i < realizations_for(n, spec.realization_budget, spec.max_realizations); ++i)
        jobs.push_back({n, rho, i});

  TessellationScalingResult out;
  out.rows.resize(jobs.size());
  parallel_for(jobs.size(), spec.threads, [&](std::size_t j) {
    const auto& job = jobs[j];
    out.rows[j] = tessellation_realization(job.n, job.rho, spec.boundary, spec.seed, job.index, spec.connected_only,
                                           spec.max_attempts, spec.mode);
  });

  std::uint64_t redraws = 0, checks = 0;
  for (double rho : spec.rhos) {
    std::vector<double> ln_n, mean_t;
    for (std::size_t n : spec.sizes) {
      std::vector<double> ts, cs;
      for (const auto& r : out.rows)
        if (r.n == n && r.rho == rho) {
          ts.push_back(static_cast<double>(r.t_count));
          cs.push_back(static_cast<double>(r.counters.basic_checks));
        }
      const auto ms = mean_stderr(ts);
      out.summary.push_back({n, rho, ts.size(), ms.mean, ms.stderr_, mean_stderr(cs).mean});
      ln_n.push_back(std::log(static_cast<double>(n)));
      mean_t.push_back(ms.mean);
    }
    if (spec.sizes.size() >= 2) out.fits.push_back({rho, linear_fit(ln_n, mean_t)});
  }

  auto& m = out.manifest;
  m.spec = spec;
  for (const auto& r : out.rows) {
    m.realizations.push_back({{"N", r.n}, {"rho", r.rho}, {"realization", r.realization}, {"seed", r.seed},
                              {"attempts", r.attempts}});
    redraws += r.attempts - 1;
    checks += r.counters.basic_checks;
  }
  for (const auto& f : out.fits)
    m.fits.push_back({{"rho", f.rho}, {"slope", f.fit.slope}, {"intercept", f.fit.intercept},
                      {"r_squared", f.fit.r_squared}});
  m.counters = {{"realizations", out.rows.size()}, {"disconnected_redraws", redraws}, {"basic_checks", checks}};
  m.seconds = detail::seconds_since(start);

  if (spec.out_dir) {
    write_table(*spec.out_dir, "tessellation_rows", tessellation_rows_table(out.rows), spec.format);
    write_table(*spec.out_dir, "tessellation_summary", tessellation_summary_table(out.summary), spec.format);
    detail::write_manifest(spec, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search scaling

struct SearchScalingResult {
  ScalingResult scaling;
  RunManifest manifest;
};

inline ScalingOptions scaling_options(const ExperimentSpec& spec) {
  ScalingOptions opt;
  opt.rho = spec.rhos.front();
  opt.boundary = spec.boundary;
  opt.realization_budget = spec.realization_budget;
  opt.max_realizations = spec.max_realizations;
  opt.seed = spec.seed;
  opt.theta_grid = default_theta_grid(spec.theta_steps);
  opt.threads = spec.threads;
  opt.max_attempts = spec.max_attempts;
  opt.mode = spec.mode;
  return opt;
}

/// Recomputes one row from its recorded graph seed.
inline SearchRow replay_search_row(const ExperimentSpec& spec, std::size_t n, std::uint64_t graph_seed) {
  const auto g = generate_rgg(n, spec.rhos.front(), spec.boundary, graph_seed);
  return search_realization(g, graph_seed, default_theta_grid(spec.theta_steps), spec.mode);
}

/// Oracle calls equal the search time; the tessellation_steps column counts
/// T applications per oracle call.
inline Table search_rows_table(const std::vector<SearchRow>& rows) {
  Table t{{"N", "realization", "seed", "attempts", "marked", "T", "theta_op", "search_time", "p_max",
           "amplification", "saturated", "horizon", "oracle_calls", "tessellation_steps"},
          {}};
  for (const auto& r : rows)
    t.add({cell(r.n), cell(r.realization), cell(r.seed), cell(r.attempts), cell(r.marked),
           cell(r.t_count), cell(r.result.theta_op), cell(r.result.search_time), cell(r.result.p_max),
           cell(r.result.amplification), r.result.saturated ? "1" : "0", cell(r.result.horizon),
           cell(r.result.search_time), cell(r.tessellation_steps())});
  return t;
}

inline Table search_summary_table(const ScalingFit& fit) {
  Table t{{"N", "mean_search_time", "stderr_search_time", "mean_T", "mean_tessellation_steps"}, {}};
  for (std::size_t i = 0; i < fit.sizes.size(); ++i)
    t.add({cell(fit.sizes[i]), cell(fit.mean_search_time[i]), cell(fit.stderr_search_time[i]), cell(fit.mean_t[i]),
           cell(fit.mean_tessellation_steps[i])});
  return t;
}

inline SearchScalingResult run_search_scaling(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::SearchScaling) throw ValidationError("run_search_scaling: wrong experiment kind");
  spec.validate();
  if (spec.rhos.size() != 1) throw ValidationError("run_search_scaling: exactly one rho is supported per run");
  const auto start = std::chrono::steady_clock::now();

  SearchScalingResult out;
  out.scaling = scaling_experiment(spec.sizes, scaling_options(spec));

  auto& m = out.manifest;
  m.spec = spec;
  std::uint64_t redraws = 0, unsaturated = 0;
  for (const auto& r : out.scaling.rows) {
    m.realizations.push_back(
        {{"N", r.n}, {"realization", r.realization}, {"seed", r.seed}, {"attempts", r.attempts}, {"marked", r.marked}});
    redraws += r.attempts - 1;
    unsaturated += r.result.saturated ? 0 : 1;
  }
  const auto& f = out.scaling.fit;
  m.fits.push_back({{"exponent", f.exponent}, {"intercept", f.intercept}, {"r_squared", f.r_squared}});
  m.counters = {{"realizations", out.scaling.rows.size()},
                {"disconnected_redraws", redraws},
                {"unsaturated_traces", unsaturated}};
  m.seconds = detail::seconds_since(start);

  if (spec.out_dir) {
    write_table(*spec.out_dir, "search_rows", search_rows_table(out.scaling.rows), spec.format);
    write_table(*spec.out_dir, "search_summary", search_summary_table(out.scaling.fit), spec.format);
    detail::write_manifest(spec, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compile and verify

struct CompileVerifyRow {
  std::size_t s = 0;
  double theta = 0.0;
  std::size_t gates = 0;
  std::size_t two_qubit_gates = 0;
  EquivalenceReport report;
};

struct CompileVerifyResult {
  std::vector<CompileVerifyRow> rows;
  /// (s, theta) of every failed check
  std::vector<std::pair<std::size_t, double>> failures;
  double max_deviation = 0.0;
  RunManifest manifest;
  bool ok() const { return failures.empty(); }
};

inline Table compile_rows_table(const std::vector<CompileVerifyRow>& rows) {
  Table t{{"s", "theta", "gates", "two_qubit_gates", "full_deviation", "subspace_deviation", "ok"}, {}};
  for (const auto& r : rows)
    t.add({cell(r.s), cell(r.theta), cell(r.gates), cell(r.two_qubit_gates), cell(r.report.full_deviation),
           cell(r.report.subspace_deviation), r.report.ok ? "1" : "0"});
  return t;
}

/// Angles are drawn uniformly from (0, pi]. Clique sizes past the dense
/// limit raise ResourceError.
inline CompileVerifyResult run_compile_verify(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::CompileVerify) throw ValidationError("run_compile_verify: wrong experiment kind");
  spec.validate();
  if (spec.max_s > kDenseQubitLimit)
    throw ResourceError("run_compile_verify: clique size " + std::to_string(kDenseQubitLimit + 1) +
                        " exceeds the dense limit of " + std::to_string(kDenseQubitLimit));
  const auto start = std::chrono::steady_clock::now();
  CompileVerifyResult out;
  Rng rng(spec.seed);
  for (std::size_t s = 1; s <= spec.max_s; ++s) {
    for (std::size_t k = 0; k < spec.thetas_per_size; ++k) {
      CompileVerifyRow row;
      row.s = s;
      row.theta = std::numbers::pi * (1.0 - rng.uniform01());
      row.report = verify_clique_equivalence(s, row.theta, spec.tolerance);
      std::vector<Vertex> q(s);
      std::iota(q.begin(), q.end(), Vertex{0});
      const auto sched = compile_clique(q, row.theta);
      row.gates = sched.gates.size();
      row.two_qubit_gates = sched.two_qubit_count();
      out.max_deviation = std::max(out.max_deviation, row.report.max_deviation());
      if (!row.report.ok) out.failures.emplace_back(s, row.theta);
      out.rows.push_back(row);
    }
  }
  auto& m = out.manifest;
  m.spec = spec;
  m.counters = {{"checks", out.rows.size()}, {"failures", out.failures.size()}, {"max_deviation", out.max_deviation}};
  m.seconds = detail::seconds_since(start);
  if (spec.out_dir) {
    write_table(*spec.out_dir, "compile_verify", compile_rows_table(out.rows), spec.format);
    detail::write_manifest(spec, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trotter scaling

struct TrotterRow {
  std::string graph;
  std::size_t steps = 0;
  double t = 0.0;
  double error = 0.0;
  /// error(K) / error(K/2) for consecutive doublings; absent for the first K
  std::optional<double> ratio;
};

struct TrotterScalingResult {
  std::vector<TrotterRow> rows;
  RunManifest manifest;
};

/// Fixed graph set: path-3, a connected RGG(16), and a perfect matching on
/// 6 vertices, each started from |0>. Every graph is swept at t/2, t and 2t.
inline std::vector<std::pair<std::string, SpatialGraph>> trotter_graphs(std::uint64_t seed) {
  std::vector<std::pair<std::string, SpatialGraph>> out;
  out.emplace_back("path3", path_graph(3));
  out.emplace_back("rgg16", connected_rgg(16, 2.0, BoundaryMode::Open, seed, 0, 1000).first);
  out.emplace_back("matching6", SpatialGraph::from_pairs(6, {{0, 1}, {2, 3}, {4, 5}}));
  return out;
}

inline Table trotter_rows_table(const std::vector<TrotterRow>& rows) {
  Table t{{"graph", "K", "t", "error", "ratio"}, {}};
  for (const auto& r : rows)
    t.add({r.graph, cell(r.steps), cell(r.t), cell(r.error), r.ratio ? cell(*r.ratio) : std::string()});
  return t;
}

inline TrotterScalingResult run_trotter_scaling(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::TrotterScaling) throw ValidationError("run_trotter_scaling: wrong experiment kind");
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  TrotterScalingResult out;
  for (const auto& [name, g] : trotter_graphs(spec.seed)) {
    const auto psi = WalkState::basis(g.size(), 0);
    for (double t : {0.5 * spec.time, spec.time, 2.0 * spec.time}) {
      std::optional<double> prev;
      for (std::size_t k : spec.trotter_steps) {
        TrotterRow row{name, k, t, trotter_error(g, {spec.gamma, t, k}, psi), std::nullopt};
        if (prev && *prev > 0.0) row.ratio = row.error / *prev;
        prev = row.error;
        out.rows.push_back(std::move(row));
      }
    }
  }
  auto& m = out.manifest;
  m.spec = spec;
  m.counters = {{"rows", out.rows.size()}};
  m.seconds = detail::seconds_since(start);
  if (spec.out_dir) {
    write_table(*spec.out_dir, "trotter", trotter_rows_table(out.rows), spec.format);
    detail::write_manifest(spec, m);
  }
  return out;
}

}  // namespace stagwalk
