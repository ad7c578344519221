#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "stagwalk/search.hpp"

using namespace stagwalk;

namespace {

const double kPi = std::numbers::pi;

CliqueProjectorSet projectors_of(const SpatialGraph& g) {
  return clique_states(complete_cover(g, tessellate(g)), g.size());
}

}  // namespace

TEST(Oracle, FlipsOnlyMarked) {
  const auto s = WalkState::uniform(4);
  const auto out = oracle_apply(s, 2);
  EXPECT_DOUBLE_EQ(out[2].real(), -0.5);
  EXPECT_DOUBLE_EQ(out[1].real(), 0.5);
  const auto twice = oracle_apply(out, 2);
  EXPECT_LT(state_distance(twice, s), 1e-15);
  EXPECT_THROW(oracle_apply(s, 4), std::out_of_range);
}

TEST(DefaultGrid, EndpointsAndSize) {
  const auto grid = default_theta_grid();
  ASSERT_EQ(grid.size(), 63U);
  EXPECT_NEAR(grid.front(), kPi / 126, 1e-15);
  EXPECT_NEAR(grid.back(), kPi / 2, 1e-15);
  EXPECT_EQ(default_horizon(16), 24U);
  EXPECT_EQ(default_horizon(17), 25U);
}

TEST(SearchRun, CompleteGraphIsGrover) {
  for (std::size_t n : {16, 64, 256}) {
    const auto p = projectors_of(complete_graph(n));
    SearchConfig cfg;
    cfg.marked = 3;
    cfg.horizon = default_horizon(n);
    const auto trace = search_run(p, cfg, kPi / 2);
    for (std::size_t t = 0; t <= cfg.horizon; ++t) EXPECT_NEAR(trace.p[t], oracle::grover_probability(n, t), 1e-10);
  }
  const auto p16 = projectors_of(complete_graph(16));
  SearchConfig cfg;
  cfg.horizon = 24;
  const auto st = search_time(search_run(p16, cfg, kPi / 2));
  EXPECT_EQ(st.steps, 3U);
  EXPECT_TRUE(st.saturated);
}

TEST(SearchRun, HorizonZeroAndSmallTheta) {
  const auto p = projectors_of(complete_graph(8));
  SearchConfig cfg;
  cfg.horizon = 0;
  const auto trace = search_run(p, cfg, 1.0);
  ASSERT_EQ(trace.p.size(), 1U);
  EXPECT_DOUBLE_EQ(trace.p[0], 1.0 / 8);
  EXPECT_THROW(search_time(trace), std::invalid_argument);

  cfg.horizon = 10;
  const auto slow = search_run(p, cfg, 1e-6);
  for (double x : slow.p) EXPECT_NEAR(x, 1.0 / 8, 1e-4);
}

TEST(SearchRun, ProbabilitiesStayInUnitInterval) {
  const auto g = generate_rgg(64, 2.0, BoundaryMode::Periodic, 3);
  const auto p = projectors_of(g);
  SearchConfig cfg;
  cfg.marked = 10;
  cfg.horizon = 100;
  for (double theta : {0.3, 0.9, kPi / 2})
    for (double x : search_run(p, cfg, theta).p) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0 + 1e-12);
    }
}

TEST(SearchTime, FirstMaximumRule) {
  EXPECT_EQ(search_time({{0.1, 0.3, 0.2, 0.5, 0.1}}).steps, 1U);
  EXPECT_EQ(search_time({{0.1, 0.3, 0.3, 0.1}}).steps, 1U);
  const auto rising = search_time({{0.1, 0.2, 0.3}});
  EXPECT_EQ(rising.steps, 2U);
  EXPECT_FALSE(rising.saturated);
  const auto falling = search_time({{0.5, 0.2, 0.1}});
  EXPECT_EQ(falling.steps, 0U);
  EXPECT_TRUE(falling.saturated);
}

TEST(ThetaScan, PicksHalfPiOnCompleteGraph) {
  const auto p = projectors_of(complete_graph(16));
  SearchConfig cfg;
  cfg.horizon = 24;
  cfg.theta_grid = {kPi / 4, kPi / 2};
  const auto scan = theta_scan(p, cfg);
  EXPECT_DOUBLE_EQ(scan.theta_op, kPi / 2);
  EXPECT_GT(scan.p_max[1], scan.p_max[0]);
}

TEST(ThetaScan, TiesGoToSmallerAngle) {
  const auto p = projectors_of(complete_graph(8));
  SearchConfig cfg;
  cfg.horizon = 10;
  cfg.theta_grid = {0.8, 0.8 - 1e-18, 0.8};
  EXPECT_DOUBLE_EQ(theta_scan(p, cfg).theta_op, 0.8);
}

TEST(SearchConfig, Validation) {
  SearchConfig cfg;
  cfg.horizon = 5;
  EXPECT_NO_THROW(cfg.validate(4));
  cfg.marked = 4;
  EXPECT_THROW(cfg.validate(4), std::out_of_range);
  cfg.marked = 0;
  cfg.theta_grid = {2.0};
  EXPECT_THROW(cfg.validate(4), std::invalid_argument);
  cfg.theta_grid = {};
  EXPECT_THROW(cfg.validate(4), std::invalid_argument);
}

TEST(SearchAtOptimum, AmplifiesOnRgg) {
  const auto g = generate_rgg(128, 2.0, BoundaryMode::Periodic, 1);
  ASSERT_TRUE(is_connected(g));
  SearchConfig cfg;
  cfg.marked = 7;
  cfg.horizon = default_horizon(g.size());
  const auto r = search_at_optimum(projectors_of(g), cfg);
  EXPECT_GT(r.amplification, 5.0);
  EXPECT_GE(r.search_time, 1U);
  EXPECT_DOUBLE_EQ(r.amplification, r.p_max * 128);
}

TEST(Scaling, CompleteGraphExponentIsHalf) {
  const std::vector<std::size_t> sizes{16, 64, 256, 1024};
  const auto res = complete_graph_scaling(sizes, default_theta_grid());
  EXPECT_NEAR(res.fit.exponent, 0.5, 0.05);
  for (const auto& row : res.rows) {
    const double n = static_cast<double>(row.n);
    const double ideal = std::round(kPi / 4 * std::sqrt(n));
    EXPECT_LE(std::abs(static_cast<double>(row.result.search_time) - ideal), 1.0) << row.n;
    EXPECT_GT(row.result.p_max, 0.9);
  }
}

TEST(Scaling, NeedsEnoughSizes) {
  const std::vector<std::size_t> one{64};
  EXPECT_THROW(scaling_experiment(one, {}), std::invalid_argument);
  std::vector<SearchRow> rows(2);
  rows[0].n = rows[1].n = 64;
  EXPECT_THROW(fit_search_scaling(rows), std::invalid_argument);
}

TEST(Scaling, DeterministicAcrossThreadCounts) {
  const std::vector<std::size_t> sizes{16, 32, 64};
  ScalingOptions opt;
  opt.max_realizations = 3;
  opt.seed = 99;
  opt.theta_grid = default_theta_grid(15);
  const auto a = scaling_experiment(sizes, opt);
  opt.threads = 3;
  const auto b = scaling_experiment(sizes, opt);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
    EXPECT_EQ(a.rows[i].marked, b.rows[i].marked);
    EXPECT_EQ(a.rows[i].result.search_time, b.rows[i].result.search_time);
    EXPECT_EQ(a.rows[i].result.theta_op, b.rows[i].result.theta_op);
  }
  EXPECT_EQ(a.fit.exponent, b.fit.exponent);
}

TEST(Scaling, RealizationCounts) {
  EXPECT_EQ(realizations_for(64, 1e4, 0), 157U);
  EXPECT_EQ(realizations_for(64, 1e4, 50), 50U);
  EXPECT_EQ(realizations_for(1 << 20, 1e4, 0), 1U);
}

TEST(Scaling, ConnectedRggIsConnected) {
  for (std::size_t i = 0; i < 20; ++i) {
    const auto [g, drawn] = connected_rgg(64, 1.5, BoundaryMode::Open, 5, i, 1000);
    EXPECT_TRUE(is_connected(g));
    EXPECT_GE(drawn.second, 1U);
    if (drawn.second == 1) EXPECT_EQ(drawn.first, 5 + i);
  }
}
