#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "stagwalk/graph.hpp"
#include "stagwalk/tessellation.hpp"

namespace stagwalk {

using Amplitude = std::complex<double>;

/// Walker state in the single-excitation basis: amplitude i belongs to the
/// configuration with vertex i excited and every other atom in |0>.
class WalkState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  WalkState() = default;

  /// Throws std::invalid_argument unless the vector has unit norm.
  explicit WalkState(std::vector<Amplitude> amplitudes) : amps_(std::move(amplitudes)) {
    if (std::abs(norm() - 1.0) > kNormTolerance)
      throw std::invalid_argument("WalkState: amplitudes are not normalized");
  }

  static WalkState normalized(std::vector<Amplitude> amplitudes) {
    double sq = 0.0;
    for (const auto& a : amplitudes) sq += std::norm(a);
    if (!(sq > 0.0)) throw std::invalid_argument("WalkState: zero vector");
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& a : amplitudes) a *= inv;
    return WalkState(std::move(amplitudes));
  }

  static WalkState basis(std::size_t n, Vertex k) {
    if (k >= n) throw std::out_of_range("WalkState::basis: vertex out of range");
    std::vector<Amplitude> a(n, 0.0);
    a[k] = 1.0;
    return WalkState(std::move(a));
  }

  static WalkState uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("WalkState::uniform: empty");
    return WalkState(std::vector<Amplitude>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  }

  std::size_t size() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude& operator[](std::size_t i) { return amps_[i]; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double sq = 0.0;
    for (const auto& a : amps_) sq += std::norm(a);
    return std::sqrt(sq);
  }

  double probability(Vertex v) const { return std::norm(amps_[v]); }

 private:
  std::vector<Amplitude> amps_;
};

/// l2 distance between two states of equal size.
inline double state_distance(const WalkState& a, const WalkState& b) {
  if (a.size() != b.size()) throw std::invalid_argument("state_distance: size mismatch");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += std::norm(a[i] - b[i]);
  return std::sqrt(sq);
}

using CliqueList = std::vector<std::vector<Vertex>>;

/// Per-color clique partitions. The clique state of clique k in color c is
/// the uniform superposition of its vertices with coefficient 1/sqrt(s).
struct CliqueProjectorSet {
  std::size_t n = 0;
  std::vector<CliqueList> colors;

  std::size_t t_count() const { return colors.size(); }

  static double coefficient(std::size_t clique_size) {
    return 1.0 / std::sqrt(static_cast<double>(clique_size));
  }

  /// Dense length-n vector of one clique state.
  std::vector<Amplitude> clique_state(std::size_t color, std::size_t k) const {
    std::vector<Amplitude> out(n, 0.0);
    const auto& clique = colors[color][k];
    for (Vertex v : clique) out[v] = coefficient(clique.size());
    return out;
  }
};

/// Requires a completed cover (every color partitions all vertices).
inline CliqueProjectorSet clique_states(const TessellationCover& cover, std::size_t n) {
  if (cover.vertex_count() != n) throw std::invalid_argument("clique_states: size mismatch");
  if (!cover.is_complete())
    throw std::invalid_argument("clique_states: cover is not complete; run complete_cover first");
  CliqueProjectorSet set;
  set.n = n;
  set.colors = cover.all_cliques();
  return set;
}

/// W = 1 - 2 sum_k |k><k| on every clique: a_v -= (2/s) * sum of the clique.
/// Vertices outside every clique are left unchanged.
inline WalkState apply_reflection(WalkState state, const CliqueList& cliques) {
  for (const auto& clique : cliques) {
    Amplitude sum = 0.0;
    for (Vertex v : clique) sum += state[v];
    const Amplitude shift = (2.0 / static_cast<double>(clique.size())) * sum;
    for (Vertex v : clique) state[v] -= shift;
  }
  return state;
}

/// exp(-i theta W) = cos(theta) I - i sin(theta) W, using W^2 = I.
inline WalkState apply_generalized(WalkState state, const CliqueList& cliques, double theta) {
  const Amplitude diag = std::polar(1.0, -theta);
  const Amplitude pull(0.0, std::sin(theta));
  std::vector<char> in_clique(state.size(), 0);
  for (const auto& clique : cliques) {
    Amplitude sum = 0.0;
    for (Vertex v : clique) sum += state[v];
    const Amplitude shift = pull * (2.0 / static_cast<double>(clique.size())) * sum;
    for (Vertex v : clique) {
      state[v] = diag * state[v] + shift;
      in_clique[v] = 1;
    }
  }
  for (std::size_t v = 0; v < state.size(); ++v)
    if (!in_clique[v]) state[v] *= diag;
  return state;
}

/// One step of the generalized walk, exp(-i theta W_0) ... exp(-i theta W_{T-1}).
/// The rightmost factor acts first, so colors are applied in descending order.
inline WalkState walk_step(WalkState state, const CliqueProjectorSet& projectors, double theta) {
  for (std::size_t c = projectors.t_count(); c-- > 0;)
    state = apply_generalized(std::move(state), projectors.colors[c], theta);
  return state;
}

/// Plain staggered step U = W_0 W_1 ... W_{T-1}.
inline WalkState staggered_step(WalkState state, const CliqueProjectorSet& projectors) {
  for (std::size_t c = projectors.t_count(); c-- > 0;)
    state = apply_reflection(std::move(state), projectors.colors[c]);
  return state;
}

}  // namespace stagwalk
