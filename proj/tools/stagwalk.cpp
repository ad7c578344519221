// Command-line front end for the stagwalk library.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O error, 3 resource limit.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include "stagwalk/stagwalk.hpp"

namespace sw = stagwalk;
using sw::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out;
  std::string format = "csv";
};

sw::OutputFormat format_of(const Globals& g) { return sw::parse_format(g.format); }

void emit_text(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    sw::write_text_file(g.out, text);
}

void emit_table(const Globals& g, const sw::Table& t) {
  emit_text(g, format_of(g) == sw::OutputFormat::Csv ? t.to_csv() : t.to_json().dump(2) + "\n");
}

sw::InitialState parse_start(const std::string& s) {
  if (s == "uniform") return sw::InitialState::uniform();
  if (s.rfind("vertex:", 0) == 0) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(s.substr(7), &used);
      if (used == s.size() - 7) return sw::InitialState::at(static_cast<sw::Vertex>(v));
    } catch (const std::exception&) {
    }
  }
  throw sw::ValidationError("--start must be 'uniform' or 'vertex:<k>'");
}

sw::TessellationCover cover_for(const sw::SpatialGraph& g, const std::string& cover_path, const std::string& mode) {
  if (cover_path.empty()) return sw::complete_cover(g, sw::tessellate(g, sw::parse_mode(mode)));
  auto cover = sw::load_cover(cover_path, g.size());
  const auto report = sw::validate_cover(g, cover);
  if (!report.uncovered_edges.empty() || !report.clique_violations.empty() || !report.spurious_edges.empty())
    throw sw::ValidationError("cover file is not a valid cover of the graph");
  return cover.is_complete() ? cover : sw::complete_cover(g, cover);
}

std::vector<double> theta_grid(std::size_t steps) {
  if (steps < 1) throw sw::ValidationError("--theta-grid must be >= 1");
  return sw::default_theta_grid(steps);
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi)) throw sw::ValidationError("--theta must lie in (0, pi]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered quantum walks on spatial networks"};
  app.set_version_flag("--version", std::string(sw::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals glob;
  app.add_option("--seed", glob.seed, "Base seed");
  app.add_option("--threads", glob.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", glob.out, "Output file (directory for experiment and search scale)");
  app.add_option("--format", glob.format, "Table format")->check(CLI::IsMember({"csv", "json"}));

  // rgg
  std::size_t rgg_n = 0;
  double rgg_rho = 1.0;
  std::string rgg_boundary = "open";
  auto* rgg = app.add_subcommand("rgg", "Generate a random geometric graph (JSON)");
  rgg->add_option("-n,--n", rgg_n, "Vertex count")->required();
  rgg->add_option("--rho", rgg_rho, "Radius in units of the critical radius");
  rgg->add_option("--boundary", rgg_boundary)->check(CLI::IsMember({"open", "periodic"}));

  // tessellate
  std::string graph_path, cover_path, mode = "strict";
  bool tess_stats = false, no_complete = false;
  auto* tess = app.add_subcommand("tessellate", "Edge-color a graph into a tessellation cover (JSON)");
  tess->add_option("--graph", graph_path)->required();
  tess->add_option("--mode", mode)->check(CLI::IsMember({"strict", "verbatim"}));
  tess->add_flag("--stats", tess_stats, "Print T, clique sizes and counters to stderr");
  tess->add_flag("--no-complete", no_complete, "Skip adding singleton cliques");

  // walk
  double theta = std::numbers::pi / 2;
  std::size_t steps = 1;
  std::string start = "uniform";
  bool trace = false;
  auto* walk = app.add_subcommand("walk", "Evolve a state under the generalized staggered walk");
  walk->add_option("--graph", graph_path)->required();
  walk->add_option("--cover", cover_path);
  walk->add_option("--mode", mode)->check(CLI::IsMember({"strict", "verbatim"}));
  walk->add_option("--theta", theta);
  walk->add_option("--steps", steps);
  walk->add_option("--start", start, "uniform | vertex:<k>");
  walk->add_flag("--trace", trace, "Emit probabilities after every step");

  // compile
  std::size_t verify_max_s = 0;
  auto* comp = app.add_subcommand("compile", "Compile one walk step to a gate schedule (JSONL)");
  comp->add_option("--graph", graph_path)->required();
  comp->add_option("--cover", cover_path);
  comp->add_option("--mode", mode)->check(CLI::IsMember({"strict", "verbatim"}));
  comp->add_option("--theta", theta);
  comp->add_option("--verify-max-s", verify_max_s, "Densely verify cliques up to this size");

  // ctqw
  double gamma = 1.0, time = 1.0;
  std::size_t trotter_k = 32;
  auto* ctqw = app.add_subcommand("ctqw", "Continuous-time walk: exact and product-formula evolution");
  ctqw->add_option("--graph", graph_path)->required();
  ctqw->add_option("--gamma", gamma);
  ctqw->add_option("--t", time);
  ctqw->add_option("--trotter-steps", trotter_k);
  ctqw->add_option("--start", start, "uniform | vertex:<k>");

  // search
  std::optional<std::size_t> marked;
  std::optional<std::size_t> horizon;
  std::size_t grid_steps = 63;
  std::vector<std::size_t> sizes;
  double rho = 2.0;
  std::string boundary = "periodic";
  std::size_t per_size = 0;
  double budget = 1e4;
  auto* search = app.add_subcommand("search", "Spatial search");
  search->require_subcommand(1);
  auto* scan = search->add_subcommand("scan", "Scan theta and report the optimum");
  auto* run = search->add_subcommand("run", "Success probability trace at one theta");
  for (auto* sub : {scan, run}) {
    sub->add_option("--graph", graph_path)->required();
    sub->add_option("--cover", cover_path);
    sub->add_option("--mode", mode)->check(CLI::IsMember({"strict", "verbatim"}));
    sub->add_option("--marked", marked, "Marked vertex (default: drawn from --seed)");
    sub->add_option("--horizon", horizon, "Steps to simulate (default ceil(4 sqrt N) + 8)");
  }
  scan->add_option("--theta-grid", grid_steps, "Number of grid angles in (0, pi/2]");
  run->add_option("--theta", theta);
  auto* scale = search->add_subcommand("scale", "Search-time scaling over RGG ensembles");
  scale->add_option("--sizes", sizes)->required()->delimiter(',');
  scale->add_option("--rho", rho);
  scale->add_option("--boundary", boundary)->check(CLI::IsMember({"open", "periodic"}));
  scale->add_option("--realizations-per-size", per_size, "Cap on realizations per size (0 = none)");
  scale->add_option("--budget", budget, "Realizations per size are ceil(budget / N)");
  scale->add_option("--theta-grid", grid_steps);
  scale->add_option("--mode", mode)->check(CLI::IsMember({"strict", "verbatim"}));

  // experiment
  std::string kind, config;
  std::vector<double> rhos;
  std::optional<std::size_t> max_s;
  auto* expt = app.add_subcommand("experiment", "Run an experiment driver (tables + manifest.json)");
  expt->add_option("kind", kind)->required()->check(CLI::IsMember({"tessellation", "search", "compile", "trotter"}));
  expt->add_option("--config", config, "JSON experiment spec; flags given here override it");
  expt->add_option("--sizes", sizes)->delimiter(',');
  expt->add_option("--rho", rhos)->delimiter(',');
  expt->add_option("--boundary", boundary)->check(CLI::IsMember({"open", "periodic"}));
  expt->add_option("--realizations-per-size", per_size);
  expt->add_option("--budget", budget);
  expt->add_option("--max-s", max_s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rgg) {
      if (rgg_n < 2) throw sw::ValidationError("--n must be >= 2");
      if (!(rgg_rho > 0.0)) throw sw::ValidationError("--rho must be positive");
      const auto g = sw::generate_rgg(rgg_n, rgg_rho, sw::parse_boundary(rgg_boundary), glob.seed);
      emit_text(glob, sw::graph_to_json(g).dump() + "\n");
    } else if (*tess) {
      const auto g = sw::load_graph(graph_path);
      const auto res = sw::tessellate_with_counters(g, sw::parse_mode(mode));
      const auto cover = no_complete ? res.cover : sw::complete_cover(g, res.cover);
      emit_text(glob, sw::cover_to_json(cover).dump() + "\n");
      if (tess_stats) {
        const auto s = sw::cover_stats(res.cover);
        const auto report = sw::validate_cover(g, res.cover);
        std::cerr << "T=" << cover.t_count() << " max_clique=" << s.max_clique_size
                  << " colorability_calls=" << res.counters.colorability_calls
                  << " basic_checks=" << res.counters.basic_checks << " edge_writes=" << res.counters.edge_writes
                  << " skipped_non_edges=" << res.counters.skipped_non_edges << " valid=" << report.ok() << "\n";
      }
    } else if (*walk) {
      check_theta(theta);
      const auto g = sw::load_graph(graph_path);
      const auto p = sw::clique_states(cover_for(g, cover_path, mode), g.size());
      const auto init = parse_start(start);
      if (init.kind == sw::InitialState::Kind::Vertex && init.vertex >= g.size())
        throw sw::ValidationError("--start vertex out of range");
      auto state = init.make(g.size());
      if (trace) {
        sw::Table t{{"step", "vertex", "probability"}, {}};
        auto record = [&](std::size_t step) {
          for (std::size_t v = 0; v < state.size(); ++v)
            t.add({sw::cell(step), sw::cell(v), sw::cell(state.probability(static_cast<sw::Vertex>(v)))});
        };
        record(0);
        for (std::size_t s = 1; s <= steps; ++s) {
          state = sw::walk_step(std::move(state), p, theta);
          record(s);
        }
        emit_table(glob, t);
      } else {
        for (std::size_t s = 0; s < steps; ++s) state = sw::walk_step(std::move(state), p, theta);
        sw::Table t{{"vertex", "re", "im", "probability"}, {}};
        for (std::size_t v = 0; v < state.size(); ++v)
          t.add({sw::cell(v), sw::cell(state[v].real()), sw::cell(state[v].imag()),
                 sw::cell(state.probability(static_cast<sw::Vertex>(v)))});
        emit_table(glob, t);
      }
    } else if (*comp) {
      check_theta(theta);
      const auto g = sw::load_graph(graph_path);
      const auto cover = cover_for(g, cover_path, mode);
      const auto sched = sw::compile_walk(cover, theta);
      const auto layout = sw::check_schedule_layout(sched);
      if (!layout.empty()) throw sw::InternalError("schedule layout check failed: " + layout.front());
      emit_text(glob, sw::schedule_to_jsonl(sched));
      if (verify_max_s > 0) {
        std::map<std::size_t, double> worst;
        for (sw::Color c = 0; c < cover.t_count(); ++c)
          for (const auto& k : cover.cliques(c))
            if (k.size() <= verify_max_s && !worst.count(k.size()))
              worst[k.size()] = sw::verify_clique_equivalence(k.size(), theta, 1e-9).max_deviation();
        bool ok = true;
        for (const auto& [s, dev] : worst) {
          std::cerr << "s=" << s << " max_deviation=" << dev << (dev < 1e-9 ? " ok" : " FAIL") << "\n";
          ok = ok && dev < 1e-9;
        }
        std::cerr << "gates=" << sched.gates.size() << " two_qubit=" << sched.two_qubit_count()
                  << " layers=" << cover.t_count() << "\n";
        if (!ok) throw sw::ValidationError("compiled cliques failed dense verification");
      }
    } else if (*ctqw) {
      const auto g = sw::load_graph(graph_path);
      const sw::CtqwParams params{gamma, time, trotter_k};
      try {
        params.validate();
      } catch (const std::invalid_argument& e) {
        throw sw::ValidationError(e.what());
      }
      const auto init = parse_start(start);
      if (init.kind == sw::InitialState::Kind::Vertex && init.vertex >= g.size())
        throw sw::ValidationError("--start vertex out of range");
      const auto psi = init.make(g.size());
      const auto exact = sw::ctqw_exact(g, params, psi);
      const auto trot = sw::ctqw_trotter(g, params, psi);
      sw::Table t{{"vertex", "p_exact", "p_trotter"}, {}};
      for (std::size_t v = 0; v < g.size(); ++v)
        t.add({sw::cell(v), sw::cell(exact.probability(static_cast<sw::Vertex>(v))),
               sw::cell(trot.probability(static_cast<sw::Vertex>(v)))});
      emit_table(glob, t);
      std::cerr << "trotter_error=" << sw::format_double(sw::state_distance(trot, exact))
                << " factors=" << sw::trotter_factor_count(g, params) << "\n";
    } else if (*scan || *run) {
      const auto g = sw::load_graph(graph_path);
      const auto p = sw::clique_states(cover_for(g, cover_path, mode), g.size());
      sw::SearchConfig cfg;
      cfg.marked = marked ? static_cast<sw::Vertex>(*marked) : sw::marked_vertex_for(glob.seed, g.size());
      if (cfg.marked >= g.size()) throw sw::ValidationError("--marked out of range");
      cfg.horizon = horizon ? *horizon : sw::default_horizon(g.size());
      if (*scan) {
        cfg.theta_grid = theta_grid(grid_steps);
        const auto res = sw::theta_scan(p, cfg);
        sw::Table t{{"theta", "p_max"}, {}};
        for (std::size_t i = 0; i < res.thetas.size(); ++i) t.add({sw::cell(res.thetas[i]), sw::cell(res.p_max[i])});
        emit_table(glob, t);
        std::cerr << "marked=" << cfg.marked << " theta_op=" << sw::format_double(res.theta_op) << "\n";
      } else {
        if (!(theta > 0.0 && theta <= std::numbers::pi / 2)) throw sw::ValidationError("--theta must lie in (0, pi/2]");
        const auto tr = sw::search_run(p, cfg, theta);
        sw::Table t{{"t", "p"}, {}};
        for (std::size_t i = 0; i < tr.p.size(); ++i) t.add({sw::cell(i), sw::cell(tr.p[i])});
        emit_table(glob, t);
        if (tr.p.size() >= 2) {
          const auto st = sw::search_time(tr);
          std::cerr << "marked=" << cfg.marked << " search_time=" << st.steps << " p=" << sw::format_double(tr.p[st.steps])
                    << " saturated=" << st.saturated << "\n";
        }
      }
    } else if (*scale || *expt) {
      sw::ExperimentSpec spec;
      if (*scale) {
        spec.kind = sw::ExperimentKind::SearchScaling;
        spec.rhos = {rho};
        spec.boundary = sw::parse_boundary(boundary);
        spec.realization_budget = budget;
        spec.theta_steps = grid_steps;
        spec.mode = sw::parse_mode(mode);
      } else {
        json j = config.empty() ? json{{"kind", kind}} : sw::parse_json(sw::read_text_file(config), config);
        j["kind"] = kind;
        spec = sw::spec_from_json(j);
        if (!rhos.empty()) spec.rhos = rhos;
        if (expt->count("--boundary")) spec.boundary = sw::parse_boundary(boundary);
        if (expt->count("--budget")) spec.realization_budget = budget;
        if (max_s) spec.max_s = *max_s;
      }
      if (!sizes.empty()) spec.sizes = sizes;
      if (app.count("--seed") || *scale) spec.seed = glob.seed;
      if (app.count("--threads") || *scale) spec.threads = glob.threads;
      if (app.count("--format") || *scale) spec.format = format_of(glob);
      if (per_size > 0) spec.max_realizations = per_size;
      if (!glob.out.empty()) spec.out_dir = glob.out;

      json summary;
      switch (spec.kind) {
        case sw::ExperimentKind::TessellationScaling: {
          const auto r = sw::run_tessellation_scaling(spec);
          if (!spec.out_dir) std::cout << sw::tessellation_summary_table(r.summary).to_csv();
          summary = r.manifest.fits;
          break;
        }
        case sw::ExperimentKind::SearchScaling: {
          const auto r = sw::run_search_scaling(spec);
          if (!spec.out_dir) std::cout << sw::search_summary_table(r.scaling.fit).to_csv();
          summary = r.manifest.fits;
          break;
        }
        case sw::ExperimentKind::CompileVerify: {
          const auto r = sw::run_compile_verify(spec);
          if (!spec.out_dir) std::cout << sw::compile_rows_table(r.rows).to_csv();
          summary = r.manifest.counters;
          if (!r.ok()) {
            for (const auto& [s, th] : r.failures) std::cerr << "failed: s=" << s << " theta=" << th << "\n";
            throw sw::ValidationError("compile verification failed");
          }
          break;
        }
        case sw::ExperimentKind::TrotterScaling: {
          const auto r = sw::run_trotter_scaling(spec);
          if (!spec.out_dir) std::cout << sw::trotter_rows_table(r.rows).to_csv();
          summary = r.manifest.counters;
          break;
        }
      }
      std::cerr << summary.dump() << "\n";
    }
  } catch (const sw::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const sw::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
