#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "stagwalk/errors.hpp"
#include "stagwalk/graph.hpp"
#include "stagwalk/walk.hpp"

namespace stagwalk {

/// Continuous-time walk with H = gamma * A (A the adjacency matrix).
/// Trotter steps use dt = t / K.
struct CtqwParams {
  double gamma = 1.0;
  double t = 0.0;
  std::size_t steps = 1;

  void validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("CtqwParams: gamma must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("CtqwParams: t must be non-negative");
    if (steps < 1) throw std::invalid_argument("CtqwParams: K must be >= 1");
  }
};

/// Largest graph accepted by the dense spectral solver.
inline constexpr std::size_t kCtqwDenseLimit = 2000;

/// exp(-i gamma A t) applied to `start`, via eigendecomposition of A.
inline WalkState ctqw_exact(const SpatialGraph& g, const CtqwParams& params, const WalkState& start) {
  params.validate();
  const std::size_t n = g.size();
  if (start.size() != n) throw std::invalid_argument("ctqw_exact: state size mismatch");
  if (n > kCtqwDenseLimit)
    throw ResourceError("ctqw_exact: n exceeds the dense limit of " +
                        std::to_string(kCtqwDenseLimit));

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& e : g.edges()) {
    adj(e.u, e.v) = 1.0;
    adj(e.v, e.u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj);
  const Eigen::MatrixXcd vecs = solver.eigenvectors().cast<std::complex<double>>();

  Eigen::VectorXcd psi(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) psi(static_cast<Eigen::Index>(i)) = start[i];
  Eigen::VectorXcd coeffs = vecs.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    coeffs(k) *= std::polar(1.0, -params.gamma * solver.eigenvalues()(k) * params.t);
  const Eigen::VectorXcd out = vecs * coeffs;

  std::vector<Amplitude> amps(n);
  for (std::size_t i = 0; i < n; ++i) amps[i] = out(static_cast<Eigen::Index>(i));
  return WalkState(std::move(amps));
}

/// First-order product formula: K rounds of two-body factors
/// exp(-i gamma dt (|u><v| + |v><u|)) in lexicographic edge order.
inline WalkState ctqw_trotter(const SpatialGraph& g, const CtqwParams& params, WalkState state) {
  params.validate();
  if (state.size() != g.size()) throw std::invalid_argument("ctqw_trotter: state size mismatch");
  const double dt = params.t / static_cast<double>(params.steps);
  const double c = std::cos(params.gamma * dt);
  const Amplitude is(0.0, std::sin(params.gamma * dt));
  for (std::size_t k = 0; k < params.steps; ++k) {
    for (const auto& e : g.edges()) {
      const Amplitude a = state[e.u];
      const Amplitude b = state[e.v];
      state[e.u] = c * a - is * b;
      state[e.v] = c * b - is * a;
    }
  }
  return state;
}

/// Number of two-body factors applied by ctqw_trotter (K * m).
inline std::size_t trotter_factor_count(const SpatialGraph& g, const CtqwParams& params) {
  return params.steps * g.edge_count();
}

inline double trotter_error(const SpatialGraph& g, const CtqwParams& params, const WalkState& start) {
  return state_distance(ctqw_trotter(g, params, start), ctqw_exact(g, params, start));
}

}  // namespace stagwalk
