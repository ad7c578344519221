#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stagwalk/errors.hpp"
#include "stagwalk/graph.hpp"
#include "stagwalk/tessellation.hpp"

namespace stagwalk {

enum class GateKind { RotY, PauliX, CNOT, ControlledRotY, MultiControlledPhase };

inline std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::RotY: return "RotY";
    case GateKind::PauliX: return "PauliX";
    case GateKind::CNOT: return "CNOT";
    case GateKind::ControlledRotY: return "ControlledRotY";
    case GateKind::MultiControlledPhase: return "MultiControlledPhase";
  }
  return "?";
}

inline GateKind parse_gate_kind(std::string_view s) {
  if (s == "RotY") return GateKind::RotY;
  if (s == "PauliX") return GateKind::PauliX;
  if (s == "CNOT") return GateKind::CNOT;
  if (s == "ControlledRotY") return GateKind::ControlledRotY;
  if (s == "MultiControlledPhase") return GateKind::MultiControlledPhase;
  throw std::invalid_argument("unknown gate kind: " + std::string(s));
}

/// Abstract gate on graph-vertex qubits.
///
/// Qubit layout per kind: RotY/PauliX {q}; CNOT/ControlledRotY {control,
/// target}; MultiControlledPhase {controls..., target}, which multiplies the
/// all-ones configuration of its qubits by exp(i angle). RotY(a) is
/// [[cos a/2, -sin a/2], [sin a/2, cos a/2]].
struct Gate {
  GateKind kind = GateKind::PauliX;
  std::vector<Vertex> qubits;
  double angle = 0.0;

  static Gate roty(Vertex q, double a) { return {GateKind::RotY, {q}, a}; }
  static Gate x(Vertex q) { return {GateKind::PauliX, {q}, 0.0}; }
  static Gate cnot(Vertex c, Vertex t) { return {GateKind::CNOT, {c, t}, 0.0}; }
  static Gate cry(Vertex c, Vertex t, double a) { return {GateKind::ControlledRotY, {c, t}, a}; }
  static Gate mcphase(std::vector<Vertex> qubits, double phi) {
    return {GateKind::MultiControlledPhase, std::move(qubits), phi};
  }

  bool has_angle() const {
    return kind == GateKind::RotY || kind == GateKind::ControlledRotY ||
           kind == GateKind::MultiControlledPhase;
  }
  std::size_t arity() const { return qubits.size(); }

  Gate inverse() const {
    Gate g = *this;
    if (has_angle()) g.angle = -angle;
    return g;
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// A group of gates acting on one clique of one tessellation.
struct ScheduleBlock {
  Color tessellation = 0;
  std::vector<Vertex> qubits;
  std::size_t begin = 0;  // gate index range [begin, end)
  std::size_t end = 0;
  friend bool operator==(const ScheduleBlock&, const ScheduleBlock&) = default;
};

/// Atom rearrangement point after tessellation `tessellation` finishes.
struct ScheduleBarrier {
  Color tessellation = 0;
  std::size_t position = 0;  // number of gates preceding the barrier
  friend bool operator==(const ScheduleBarrier&, const ScheduleBarrier&) = default;
};

/// Ordered gate list (time order) plus block/barrier markers.
///
/// The realized operator is exp(i global_phase) times the gate product.
/// For a single-clique schedule that holds on the clique's full 2^s space.
/// For a compiled walk the phase is referenced to the single-excitation
/// subspace of the whole register, where idle cliques sit in |0...0> and
/// contribute no phase.
struct GateSchedule {
  std::vector<Gate> gates;
  std::vector<ScheduleBlock> blocks;
  std::vector<ScheduleBarrier> barriers;
  double global_phase = 0.0;

  void append(const GateSchedule& other) {
    for (const auto& g : other.gates) gates.push_back(g);
    global_phase += other.global_phase;
  }

  std::size_t two_qubit_count() const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.arity() == 2; }));
  }

  friend bool operator==(const GateSchedule&, const GateSchedule&) = default;
};

/// Rotation angles for preparing an s-site W state: cos(t1/2) = 1/sqrt(s),
/// sin(tm/2) = -1/sqrt(s+1-m) for m >= 2. Branches: t1 in [0, pi),
/// tm in [-pi, 0).
inline std::vector<double> wstate_angles(std::size_t s) {
  if (s == 0) throw std::invalid_argument("wstate_angles: clique size must be >= 1");
  std::vector<double> angles(s);
  angles[0] = 2.0 * std::acos(1.0 / std::sqrt(static_cast<double>(s)));
  for (std::size_t m = 2; m <= s; ++m)
    angles[m - 1] = -2.0 * std::asin(1.0 / std::sqrt(static_cast<double>(s + 1 - m)));
  return angles;
}

/// Circuit mapping |1...1> on the clique to its W state.
///
/// X on every qubit but the first gives |10...0>. The excitation is then
/// split down the chain. Stage 1 rotates a fresh |0> target with t1 and
/// keeps cos(t1/2) on the first qubit. Stage m >= 2 copies the reservoir
/// flag onto the next qubit, so the rotation tm acts on |1> and keeps
/// -sin(tm/2) in place. The final angle (sin = -1) leaves the whole
/// remainder on the last qubit and needs no gate. 4s - 5 gates for s >= 2.
inline GateSchedule compile_uprep(std::span<const Vertex> clique) {
  GateSchedule out;
  const std::size_t s = clique.size();
  if (s == 0) throw std::invalid_argument("compile_uprep: empty clique");
  if (s == 1) return out;
  const auto angles = wstate_angles(s);
  for (std::size_t j = 1; j < s; ++j) out.gates.push_back(Gate::x(clique[j]));
  out.gates.push_back(Gate::cry(clique[0], clique[1], angles[0]));
  out.gates.push_back(Gate::cnot(clique[1], clique[0]));
  for (std::size_t m = 2; m + 1 <= s; ++m) {
    const Vertex src = clique[m - 1];
    const Vertex dst = clique[m];
    out.gates.push_back(Gate::cnot(src, dst));
    out.gates.push_back(Gate::cry(src, dst, angles[m - 1]));
    out.gates.push_back(Gate::cnot(dst, src));
  }
  return out;
}

inline GateSchedule inverse(const GateSchedule& sched) {
  GateSchedule out;
  out.gates.reserve(sched.gates.size());
  for (auto it = sched.gates.rbegin(); it != sched.gates.rend(); ++it) out.gates.push_back(it->inverse());
  out.global_phase = -sched.global_phase;
  return out;
}

/// exp(-i theta W) on one clique: U_prep^dag, C^{s-1}Z_{2 theta}, U_prep
/// (time order), with global phase -theta. At theta = pi/2 the phase gate is
/// the plain multi-controlled Z.
inline GateSchedule compile_clique(std::span<const Vertex> clique, double theta) {
  if (clique.empty()) throw std::invalid_argument("compile_clique: empty clique");
  if (!(theta > 0.0 && theta <= std::numbers::pi))
    throw std::invalid_argument("compile_clique: theta must lie in (0, pi]");
  const GateSchedule prep = compile_uprep(clique);
  GateSchedule out = inverse(prep);
  out.gates.push_back(Gate::mcphase({clique.begin(), clique.end()}, 2.0 * theta));
  out.append(prep);
  out.global_phase = -theta;
  return out;
}

/// Compiles one generalized walk step. Layers run in the same order as
/// walk_step (tessellation T-1 first); cliques inside a layer are parallel
/// blocks; barriers separate consecutive layers.
inline GateSchedule compile_walk(const TessellationCover& cover, double theta) {
  if (!cover.is_complete())
    throw std::invalid_argument("compile_walk: cover is not complete; run complete_cover first");
  GateSchedule out;
  for (std::size_t c = cover.t_count(); c-- > 0;) {
    for (const auto& clique : cover.cliques(static_cast<Color>(c))) {
      ScheduleBlock block{static_cast<Color>(c), clique, out.gates.size(), 0};
      const auto part = compile_clique(clique, theta);
      for (const auto& g : part.gates) out.gates.push_back(g);
      block.end = out.gates.size();
      out.blocks.push_back(std::move(block));
    }
    out.global_phase -= theta;
    if (c > 0) out.barriers.push_back({static_cast<Color>(c), out.gates.size()});
  }
  return out;
}

/// Reports qubits used twice inside one tessellation layer, and gates that
/// touch qubits outside their block.
inline std::vector<std::string> check_schedule_layout(const GateSchedule& sched) {
  std::vector<std::string> problems;
  std::vector<std::pair<Color, Vertex>> seen;
  for (const auto& b : sched.blocks) {
    for (Vertex q : b.qubits) seen.emplace_back(b.tessellation, q);
    for (std::size_t i = b.begin; i < b.end; ++i)
      for (Vertex q : sched.gates[i].qubits)
        if (std::find(b.qubits.begin(), b.qubits.end(), q) == b.qubits.end())
          problems.push_back("gate " + std::to_string(i) + " leaves its block");
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i] == seen[i - 1])
      problems.push_back("qubit " + std::to_string(seen[i].second) + " reused in layer " +
                         std::to_string(seen[i].first));
  return problems;
}

inline constexpr std::size_t kDenseQubitLimit = 12;

namespace detail {

inline std::size_t local_index(std::span<const Vertex> qubits, Vertex q) {
  auto it = std::find(qubits.begin(), qubits.end(), q);
  if (it == qubits.end()) throw std::invalid_argument("gate acts on a qubit outside the register");
  return static_cast<std::size_t>(it - qubits.begin());
}

// Left-multiplies `m` by the gate, acting on row indices.
inline void apply_gate_rows(Eigen::MatrixXcd& m, const Gate& g, std::span<const Vertex> qubits) {
  const auto dim = static_cast<std::size_t>(m.rows());
  auto bit = [&](std::size_t k) { return std::size_t{1} << local_index(qubits, g.qubits[k]); };
  auto rotate = [&](std::size_t i0, std::size_t i1, double a) {
    const double c = std::cos(a / 2.0);
    const double s = std::sin(a / 2.0);
    const Eigen::RowVectorXcd r0 = m.row(static_cast<Eigen::Index>(i0));
    const Eigen::RowVectorXcd r1 = m.row(static_cast<Eigen::Index>(i1));
    m.row(static_cast<Eigen::Index>(i0)) = c * r0 - s * r1;
    m.row(static_cast<Eigen::Index>(i1)) = s * r0 + c * r1;
  };
  switch (g.kind) {
    case GateKind::RotY: {
      const std::size_t t = bit(0);
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & t)) rotate(i, i | t, g.angle);
      break;
    }
    case GateKind::PauliX: {
      const std::size_t t = bit(0);
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & t)) m.row(static_cast<Eigen::Index>(i)).swap(m.row(static_cast<Eigen::Index>(i | t)));
      break;
    }
    case GateKind::CNOT: {
      const std::size_t c = bit(0);
      const std::size_t t = bit(1);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & c) && !(i & t)) m.row(static_cast<Eigen::Index>(i)).swap(m.row(static_cast<Eigen::Index>(i | t)));
      break;
    }
    case GateKind::ControlledRotY: {
      const std::size_t c = bit(0);
      const std::size_t t = bit(1);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & c) && !(i & t)) rotate(i, i | t, g.angle);
      break;
    }
    case GateKind::MultiControlledPhase: {
      std::size_t mask = 0;
      for (std::size_t k = 0; k < g.qubits.size(); ++k) mask |= bit(k);
      const std::complex<double> ph = std::polar(1.0, g.angle);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & mask) == mask) m.row(static_cast<Eigen::Index>(i)) *= ph;
      break;
    }
  }
}

}  // namespace detail

/// Dense unitary of a schedule on the register `qubits` (qubit j of the
/// register is bit j of the basis index), including the global phase.
inline Eigen::MatrixXcd simulate_schedule_dense(const GateSchedule& sched, std::span<const Vertex> qubits) {
  if (qubits.size() > kDenseQubitLimit)
    throw ResourceError("simulate_schedule_dense: " + std::to_string(qubits.size()) +
                        " qubits exceeds the dense limit of " + std::to_string(kDenseQubitLimit));
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : sched.gates) detail::apply_gate_rows(u, g, qubits);
  return u * std::polar(1.0, sched.global_phase);
}

inline Eigen::MatrixXcd simulate_schedule_dense(const GateSchedule& sched, std::size_t s) {
  std::vector<Vertex> qubits(s);
  for (std::size_t j = 0; j < s; ++j) qubits[j] = static_cast<Vertex>(j);
  return simulate_schedule_dense(sched, qubits);
}

struct EquivalenceReport {
  bool ok = false;
  /// max |U - e^{-i theta}(I + (e^{2i theta} - 1)|a><a|)| over the 2^s space
  double full_deviation = 0.0;
  /// max |U_sub - (cos theta I - i sin theta W)| over the s single-excitation states
  double subspace_deviation = 0.0;
  double max_deviation() const { return std::max(full_deviation, subspace_deviation); }
};

/// Checks a clique schedule against both forms of the target operator.
inline EquivalenceReport verify_schedule_equivalence(const GateSchedule& sched,
                                                     std::span<const Vertex> clique, double theta,
                                                     double tol) {
  const std::size_t s = clique.size();
  if (s == 0) throw std::invalid_argument("verify: empty clique");
  const Eigen::MatrixXcd u = simulate_schedule_dense(sched, clique);
  const auto dim = u.rows();
  const std::complex<double> i1(0.0, 1.0);

  Eigen::VectorXcd w_state = Eigen::VectorXcd::Zero(dim);
  for (std::size_t j = 0; j < s; ++j)
    w_state(static_cast<Eigen::Index>(std::size_t{1} << j)) = 1.0 / std::sqrt(static_cast<double>(s));
  const Eigen::MatrixXcd full =
      std::exp(-i1 * theta) *
      (Eigen::MatrixXcd::Identity(dim, dim) + (std::exp(2.0 * i1 * theta) - 1.0) * w_state * w_state.adjoint());

  const auto ss = static_cast<Eigen::Index>(s);
  Eigen::MatrixXcd sub(ss, ss);
  for (Eigen::Index a = 0; a < ss; ++a)
    for (Eigen::Index b = 0; b < ss; ++b) sub(a, b) = u(Eigen::Index{1} << a, Eigen::Index{1} << b);
  const Eigen::MatrixXd w =
      Eigen::MatrixXd::Identity(ss, ss) - (2.0 / static_cast<double>(s)) * Eigen::MatrixXd::Ones(ss, ss);
  const Eigen::MatrixXcd target =
      std::cos(theta) * Eigen::MatrixXcd::Identity(ss, ss) - i1 * std::sin(theta) * w.cast<std::complex<double>>();

  EquivalenceReport r;
  r.full_deviation = (u - full).cwiseAbs().maxCoeff();
  r.subspace_deviation = (sub - target).cwiseAbs().maxCoeff();
  r.ok = r.max_deviation() < tol;
  return r;
}

inline EquivalenceReport verify_clique_equivalence(std::span<const Vertex> clique, double theta,
                                                   double tol) {
  if (clique.size() > kDenseQubitLimit)
    throw ResourceError("verify_clique_equivalence: clique size " + std::to_string(clique.size()) +
                        " exceeds the dense limit of " + std::to_string(kDenseQubitLimit));
  return verify_schedule_equivalence(compile_clique(clique, theta), clique, theta, tol);
}

inline EquivalenceReport verify_clique_equivalence(std::size_t s, double theta, double tol) {
  std::vector<Vertex> clique(s);
  for (std::size_t j = 0; j < s; ++j) clique[j] = static_cast<Vertex>(j);
  return verify_clique_equivalence(std::span<const Vertex>(clique), theta, tol);
}

/// Operator realized by a compiled walk on the n-dimensional single-excitation
/// subspace, assembled block by block from dense 2^s simulations.
/// `leakage` receives the largest amplitude that leaves the subspace.
inline Eigen::MatrixXcd excitation_operator(const GateSchedule& sched, std::size_t n,
                                            double* leakage = nullptr) {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(nn, nn);
  double leak = 0.0;

  std::size_t bi = 0;
  while (bi < sched.blocks.size()) {
    const Color layer = sched.blocks[bi].tessellation;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(nn, nn);
    std::vector<std::pair<std::size_t, Eigen::MatrixXcd>> sims;
    std::vector<std::complex<double>> vacuum;
    std::size_t bj = bi;
    for (; bj < sched.blocks.size() && sched.blocks[bj].tessellation == layer; ++bj) {
      const auto& b = sched.blocks[bj];
      GateSchedule part;
      part.gates.assign(sched.gates.begin() + static_cast<std::ptrdiff_t>(b.begin),
                        sched.gates.begin() + static_cast<std::ptrdiff_t>(b.end));
      auto u = simulate_schedule_dense(part, b.qubits);
      vacuum.push_back(u(0, 0));
      leak = std::max(leak, (u.col(0).cwiseAbs().sum() - std::abs(u(0, 0))));
      sims.emplace_back(bj, std::move(u));
    }
    for (std::size_t k = 0; k < sims.size(); ++k) {
      const auto& b = sched.blocks[sims[k].first];
      const auto& u = sims[k].second;
      std::complex<double> others = 1.0;
      for (std::size_t j = 0; j < vacuum.size(); ++j)
        if (j != k) others *= vacuum[j];
      const std::size_t s = b.qubits.size();
      for (std::size_t a = 0; a < s; ++a) {
        const auto col = static_cast<Eigen::Index>(std::size_t{1} << a);
        for (std::size_t r = 0; r < s; ++r) {
          const auto row = static_cast<Eigen::Index>(std::size_t{1} << r);
          op(b.qubits[r], b.qubits[a]) = u(row, col) * others;
        }
        double outside = 0.0;
        for (Eigen::Index row = 0; row < u.rows(); ++row)
          if (row == 0 || (row & (row - 1)) != 0) outside += std::norm(u(row, col));
        leak = std::max(leak, std::sqrt(outside));
      }
    }
    total = op * total;
    bi = bj;
  }
  if (leakage) *leakage = leak;
  return total * std::polar(1.0, sched.global_phase);
}

}  // namespace stagwalk
