// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any gating criterion fails. Criterion 9 is informational only.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "stagwalk/stagwalk.hpp"

using namespace stagwalk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << x;
  return ss.str();
}

std::size_t worker_count() { return std::max(1U, std::thread::hardware_concurrency()); }

// 1. Strict covers are valid on seeded RGGs of both boundary kinds.
Outcome cover_validity() {
  std::size_t graphs = 0, failures = 0;
  const std::size_t sizes[] = {16, 32, 64, 128, 256};
  for (auto b : {BoundaryMode::Open, BoundaryMode::Periodic})
    for (double rho : {1.0, 2.0, 3.0})
      for (std::uint64_t seed = 0; seed < 35; ++seed) {
        const std::size_t n = sizes[seed % 5];
        const auto g = generate_rgg(n, rho, b, 1000 + seed);
        const auto cover = tessellate(g, TessellationMode::Strict);
        bool ok = validate_cover(g, cover).ok();
        for (const auto& e : g.edges()) ok = ok && !cover.colors(e).empty();
        if (n <= 64) ok = ok && oracle::cover_is_valid(g, cover);
        ++graphs;
        failures += ok ? 0 : 1;
      }
  return {failures == 0, std::to_string(graphs) + " graphs, " + std::to_string(failures) + " invalid"};
}

// 2. Mean T grows linearly in ln N and proportionally to rho.
Outcome tessellation_scaling() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::TessellationScaling;
  spec.sizes = {32, 64, 128, 256, 512, 1024};
  spec.rhos = {1.0, 2.0};
  spec.realization_budget = 6000.0;
  spec.seed = 2024;
  spec.threads = worker_count();
  const auto r = run_tessellation_scaling(spec);
  bool ok = true;
  std::string detail;
  for (const auto& f : r.fits) {
    ok = ok && f.fit.r_squared >= 0.9;
    detail += "rho=" + fmt(f.rho) + " slope=" + fmt(f.fit.slope) + " R2=" + fmt(f.fit.r_squared) + "; ";
  }
  double t1 = 0, t2 = 0;
  for (const auto& s : r.summary)
    if (s.n == 1024) (s.rho == 1.0 ? t1 : t2) = s.mean_t;
  const double ratio = t2 / t1;
  ok = ok && ratio >= 1.4 && ratio <= 2.6;
  detail += "T(rho=2)/T(rho=1) at N=1024 = " + fmt(ratio);
  return {ok, detail};
}

// 3. Search time on RGGs scales as sqrt(N).
Outcome search_scaling() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::SearchScaling;
  spec.sizes = {64, 128, 256, 512};
  spec.rhos = {2.0};
  spec.boundary = BoundaryMode::Periodic;
  spec.realization_budget = 1e4;
  spec.max_realizations = 50;
  spec.seed = 1;
  spec.threads = worker_count();
  const auto r = run_search_scaling(spec);
  const auto& f = r.scaling.fit;
  std::string means;
  for (double m : f.mean_search_time) means += fmt(m) + " ";
  const bool ok = f.exponent >= 0.4 && f.exponent <= 0.6 && f.r_squared >= 0.9;
  return {ok, "exponent=" + fmt(f.exponent) + " R2=" + fmt(f.r_squared) + " mean times: " + means};
}

// 4. Single-clique cover at theta = pi/2 is Grover search.
Outcome grover() {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {16, 64, 256}) {
    const auto g = complete_graph(n);
    const auto cover = complete_cover(g, tessellate(g));
    SearchConfig cfg;
    cfg.marked = 0;
    cfg.horizon = default_horizon(n);
    const auto trace = search_run(clique_states(cover, n), cfg, std::numbers::pi / 2);
    const auto st = search_time(trace);
    const double ideal = std::round(std::numbers::pi / 4 * std::sqrt(static_cast<double>(n)));
    const bool this_ok = cover.t_count() == 1 &&
                         std::abs(static_cast<double>(st.steps) - ideal) <= 1.0 && trace.p[st.steps] > 0.9;
    ok = ok && this_ok;
    detail += "N=" + std::to_string(n) + " t=" + std::to_string(st.steps) + " p=" + fmt(trace.p[st.steps], 6) + "; ";
  }
  return {ok, detail};
}

// 5. Compiled clique circuits equal exp(-i theta W) on both spaces.
Outcome circuit_equivalence() {
  Rng rng(55);
  double worst = 0.0;
  std::size_t checks = 0, failures = 0;
  for (std::size_t s = 1; s <= 8; ++s)
    for (int k = 0; k < 20; ++k) {
      const double theta = std::numbers::pi * (1.0 - rng.uniform01());
      const auto r = verify_clique_equivalence(s, theta, 1e-9);
      worst = std::max(worst, r.max_deviation());
      ++checks;
      failures += r.ok ? 0 : 1;
    }
  return {failures == 0, std::to_string(checks) + " checks, max deviation " + fmt(worst, 3)};
}

// 6. Norm conservation and involutions.
Outcome unitarity() {
  Rng rng(66);
  double drift = 0.0, w2 = 0.0, r2 = 0.0;
  std::size_t states = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate_rgg(64, 2.0, seed % 2 ? BoundaryMode::Periodic : BoundaryMode::Open, 600 + seed);
    const auto p = clique_states(complete_cover(g, tessellate(g)), g.size());
    for (int k = 0; k < 100; ++k, ++states) {
      auto s = oracle::random_state(g.size(), rng);
      for (const auto& color : p.colors)
        w2 = std::max(w2, state_distance(apply_reflection(apply_reflection(s, color), color), s));
      const auto m = static_cast<Vertex>(rng.uniform_index(g.size()));
      r2 = std::max(r2, state_distance(oracle_apply(oracle_apply(s, m), m), s));
      const double theta = rng.uniform01() * std::numbers::pi;
      for (int t = 0; t < 100; ++t) s = walk_step(std::move(s), p, theta);
      drift = std::max(drift, std::abs(s.norm() - 1.0));
    }
  }
  const bool ok = drift < 1e-10 && w2 < 1e-12 && r2 < 1e-12;
  return {ok, std::to_string(states) + " states: drift/100 steps " + fmt(drift, 3) + ", |W^2 - I| " + fmt(w2, 3) +
                  ", |R^2 - I| " + fmt(r2, 3)};
}

// 7. First-order product formula error halves with K.
Outcome trotter() {
  bool ok = true;
  std::string detail;
  const auto path3 = path_graph(3);
  const auto rgg = connected_rgg(16, 2.0, BoundaryMode::Open, 77, 0, 1000).first;
  for (const auto* g : {&path3, &rgg}) {
    const auto psi = WalkState::basis(g->size(), 0);
    for (std::size_t k : {32, 64, 128}) {
      const double r = trotter_error(*g, {1.0, 1.0, 2 * k}, psi) / trotter_error(*g, {1.0, 1.0, k}, psi);
      ok = ok && r >= 0.375 && r <= 0.625;
      detail += fmt(r) + " ";
    }
    detail += "| ";
  }
  const auto matching = SpatialGraph::from_pairs(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) worst = std::max(worst, trotter_error(matching, {1.0, 1.0, 1}, oracle::random_state(8, rng)));
  ok = ok && worst < 1e-12;
  return {ok, "ratios " + detail + "disjoint-edge error " + fmt(worst, 3)};
}

// 8. Fast kernels against explicit dense matrices.
Outcome dense_equivalence() {
  Rng rng(88);
  double worst = 0.0;
  std::size_t states = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      const auto g = generate_rgg(n, 3.0, seed ? BoundaryMode::Periodic : BoundaryMode::Open, 800 + n * 10 + seed);
      const auto p = clique_states(complete_cover(g, tessellate(g)), n);
      for (int k = 0; k < 8 && states < 100; ++k, ++states) {
        const auto s = oracle::random_state(n, rng);
        const auto v = oracle::to_vec(s);
        const double theta = rng.uniform01() * std::numbers::pi;
        for (const auto& color : p.colors) {
          const Eigen::MatrixXcd w = oracle::reflection_matrix(color, n);
          worst = std::max(worst, oracle::max_abs_diff(apply_reflection(s, color), w * v));
          worst = std::max(worst, oracle::max_abs_diff(apply_generalized(s, color, theta),
                                                       oracle::expm_minus_i(w, theta) * v));
        }
        worst = std::max(worst, oracle::max_abs_diff(walk_step(s, p, theta), oracle::walk_matrix(p, theta) * v));
        const Eigen::MatrixXcd half = oracle::walk_matrix(p, std::numbers::pi / 2);
        const Eigen::VectorXcd expected = half * v * std::pow(std::complex<double>(0, 1), static_cast<double>(p.t_count()));
        worst = std::max(worst, oracle::max_abs_diff(staggered_step(s, p), expected));
      }
    }
  }
  return {states >= 100 && worst < 1e-12, std::to_string(states) + " states, max deviation " + fmt(worst, 3)};
}

// 9. Tessellation work grows near-linearly in N.
Outcome complexity() {
  std::vector<double> ns, ops;
  for (std::size_t n : {256, 512, 1024, 2048}) {
    double total = 0.0;
    const int reps = 20;
    for (int i = 0; i < reps; ++i) {
      const auto g = generate_rgg(n, 1.0, BoundaryMode::Open, derive_seed(900, i));
      const auto c = tessellate_with_counters(g).counters;
      total += static_cast<double>(c.colorability_calls + c.basic_checks + c.edge_writes);
    }
    ns.push_back(static_cast<double>(n));
    ops.push_back(total / reps);
  }
  const auto f = loglog_fit(ns, ops);
  return {f.slope <= 1.3, "operation-count exponent " + fmt(f.slope) + " (R2 " + fmt(f.r_squared) + ")"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool gating;
  };
  const Criterion criteria[] = {
      {1, "cover validity", cover_validity, true},
      {2, "tessellation count scaling", tessellation_scaling, true},
      {3, "search time scaling", search_scaling, true},
      {4, "Grover limit", grover, true},
      {5, "circuit equivalence", circuit_equivalence, true},
      {6, "unitarity and involutions", unitarity, true},
      {7, "product-formula order", trotter, true},
      {8, "dense-matrix equivalence", dense_equivalence, true},
      {9, "tessellation complexity (informational)", complexity, false},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass && c.gating) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
