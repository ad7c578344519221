#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "stagwalk/ctqw.hpp"

using namespace stagwalk;

TEST(CtqwExact, SingleEdgeHalfPeriod) {
  const auto g = path_graph(2);
  const auto out = ctqw_exact(g, {1.0, std::numbers::pi / 2, 1}, WalkState::basis(2, 0));
  EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[1] - Amplitude(0.0, -1.0)), 0.0, 1e-12);
}

TEST(CtqwExact, ZeroTimeAndEmptyGraph) {
  Rng rng(1);
  const auto s = oracle::random_state(6, rng);
  EXPECT_LT(state_distance(ctqw_exact(path_graph(6), {1.0, 0.0, 1}, s), s), 1e-12);
  EXPECT_LT(state_distance(ctqw_exact(SpatialGraph(6, {}), {1.0, 3.0, 1}, s), s), 1e-12);
}

TEST(CtqwExact, MatchesMatrixExponential) {
  Rng rng(2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate_rgg(20, 2.0, BoundaryMode::Open, seed);
    const auto s = oracle::random_state(20, rng);
    const auto out = ctqw_exact(g, {0.7, 1.3, 1}, s);
    EXPECT_LT(oracle::max_abs_diff(out, oracle::ctqw(g, 0.7, 1.3, oracle::to_vec(s))), 1e-10);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
  }
}

TEST(CtqwExact, RejectsLargeGraphs) {
  const SpatialGraph g(kCtqwDenseLimit + 1, {});
  EXPECT_THROW(ctqw_exact(g, {1.0, 1.0, 1}, WalkState::basis(g.size(), 0)), ResourceError);
}

TEST(CtqwParams, Validation) {
  EXPECT_THROW((CtqwParams{0.0, 1.0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((CtqwParams{1.0, -1.0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((CtqwParams{1.0, 1.0, 0}.validate()), std::invalid_argument);
}

TEST(CtqwTrotter, MatchesExplicitTwoBodyProduct) {
  Rng rng(3);
  const auto g = generate_rgg(12, 2.0, BoundaryMode::Periodic, 4);
  const auto s = oracle::random_state(12, rng);
  const auto out = ctqw_trotter(g, {1.0, 1.0, 7}, s);
  EXPECT_LT(oracle::max_abs_diff(out, oracle::trotter(g, 1.0, 1.0, 7, oracle::to_vec(s))), 1e-12);
  EXPECT_EQ(trotter_factor_count(g, {1.0, 1.0, 7}), 7 * g.edge_count());
}

TEST(CtqwTrotter, DisjointEdgesAreExact) {
  const auto g = SpatialGraph::from_pairs(6, {{0, 1}, {2, 3}, {4, 5}});
  Rng rng(5);
  const auto s = oracle::random_state(6, rng);
  EXPECT_LT(trotter_error(g, {1.0, 2.0, 1}, s), 1e-12);
}

TEST(CtqwTrotter, PathThreeErrorsHalveWithK) {
  const auto g = path_graph(3);
  const auto s = WalkState::basis(3, 0);
  const double expected[] = {0.0127185, 0.0063673, 0.0031857, 0.0015934};
  std::size_t i = 0;
  for (std::size_t k : {32, 64, 128, 256}) {
    EXPECT_NEAR(trotter_error(g, {1.0, 1.0, k}, s), expected[i++], 5e-7);
  }
  for (std::size_t k : {32, 64, 128}) {
    const double r = trotter_error(g, {1.0, 1.0, 2 * k}, s) / trotter_error(g, {1.0, 1.0, k}, s);
    EXPECT_GT(r, 0.45);
    EXPECT_LT(r, 0.55);
  }
}

TEST(CtqwTrotter, ErrorGrowsQuadraticallyAtShortTimes) {
  const auto g = path_graph(3);
  const auto s = WalkState::basis(3, 0);
  auto err = [&](double t) { return trotter_error(g, {1.0, t, 64}, s); };
  const double short_ratio = err(1.0) / err(0.5);
  EXPECT_GT(short_ratio, 3.0);
  EXPECT_LT(short_ratio, 5.0);
  // Past t ~ 1/|H| the commutator term oscillates and growth slows.
  EXPECT_NEAR(err(2.0) / err(1.0), 2.444975, 1e-4);
}

TEST(CtqwExact, CycleReflectionSymmetry) {
  const auto g = cycle_graph(8);
  const auto out = ctqw_exact(g, {1.0, 2.1, 1}, WalkState::basis(8, 0));
  for (Vertex v = 1; v < 8; ++v) EXPECT_NEAR(std::abs(out[v] - out[8 - v]), 0.0, 1e-12);
}
