#include "singletlab/protocols_qubit.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "singletlab/circuit.hpp"
#include "singletlab/discrimination.hpp"
#include "singletlab/errors.hpp"
#include "singletlab/rng.hpp"
#include "singletlab/singlet.hpp"

namespace singletlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEigenTol = 1e-8;
constexpr double kNegligible = 1e-12;

// For each wire of a branch: which eigenvector (index into the fixture's
// eigensystem) it is claimed to carry. nullopt means no claim.
using Claim = std::optional<std::vector<std::size_t>>;
using ClaimFn = std::function<Claim(std::size_t outcome)>;

EigenSystem checked_eigensystem(const UnitaryMatrix& u) {
  if (u.dim() != 2) throw PreconditionError("gate must act on a single qubit (2x2)");
  return eigendecompose_2x2_unitary(u);
}

// order[k] = index of the eigenvector whose phase matches expected[k].
std::array<std::size_t, 2> match_phases(const EigenSystem& es, double expected0, double expected1,
                                        const std::string& what) {
  auto near = [](double a, double b) { return phase_distance(a, b) <= kEigenTol; };
  if (!es.degenerate()) {
    if (near(es.phase(0), expected0) && near(es.phase(1), expected1)) return {0, 1};
    if (near(es.phase(1), expected0) && near(es.phase(0), expected1)) return {1, 0};
  }
  throw PreconditionError("eigenvalue precondition violated: expected " + what + ", got phases " +
                          std::to_string(es.phase(0)) + " and " + std::to_string(es.phase(1)));
}

StateVector plus_x() { return phase_qubit(0.0); }

std::vector<double> wire_fidelities(const StateVector& residual, std::span<const std::size_t> wires,
                                    const std::vector<std::size_t>& eig, const EigenSystem& es) {
  std::vector<double> out;
  out.reserve(wires.size());
  for (std::size_t w = 0; w < wires.size(); ++w) {
    const StateVector wire = extract_subsystem(residual, wires[w]);
    out.push_back(fidelity(wire, StateVector::single(es.vector(eig[w]))));
  }
  return out;
}

std::vector<double> phases_of(const std::vector<std::size_t>& eig, const EigenSystem& es) {
  std::vector<double> out;
  for (std::size_t k : eig) out.push_back(es.phase(k));
  return out;
}

std::vector<ProtocolBranch> projective_branches(const StateVector& out,
                                                std::span<const std::size_t> measured,
                                                const MeasurementBasis& basis,
                                                std::span<const std::size_t> wires,
                                                const EigenSystem& es, const ClaimFn& claim) {
  std::vector<ProtocolBranch> branches;
  for (const Outcome& o : outcome_distribution(out, measured, basis)) {
    ProtocolBranch b;
    b.label = o.label;
    b.probability = o.probability;
    const Claim c = claim(o.index);
    b.conclusive = c.has_value();
    if (c) {
      b.assigned_eigenphases = phases_of(*c, es);
      if (o.probability > kNegligible) {
        const MeasurementRecord rec = collapse(out, measured, basis, o.index);
        b.eigenstate_fidelities = wire_fidelities(rec.residual, wires, *c, es);
      }
    }
    branches.push_back(std::move(b));
  }
  return branches;
}

ProtocolReport projective_shot(const StateVector& out, std::span<const std::size_t> measured,
                               const MeasurementBasis& basis, std::span<const std::size_t> wires,
                               const EigenSystem& es, const ClaimFn& claim, std::uint64_t seed,
                               std::uint64_t gate_uses) {
  Rng rng(seed);
  const MeasurementRecord rec = measure(out, measured, basis, rng);
  ProtocolReport r;
  r.outcome_label = rec.label;
  r.outcome_probability = rec.probability;
  r.seed = seed;
  r.gate_uses = gate_uses;
  const Claim c = claim(rec.outcome);
  r.conclusive = c.has_value();
  if (c) {
    r.assigned_eigenphases = phases_of(*c, es);
    r.eigenstate_fidelities = wire_fidelities(rec.residual, wires, *c, es);
  }
  return r;
}

// |+x>_a (x) singlet_bc followed by `uses` Controlled-U gates on (a, b).
StateVector pair_network(const UnitaryMatrix& u, std::uint64_t uses, GateCounter& gates) {
  const StateVector factors[] = {plus_x(), make_singlet(2).state};
  StateVector s = product_state(factors);
  for (std::uint64_t k = 0; k < uses; ++k) s = gates.apply(s, {0, 1, u, 1});
  return s;
}

constexpr std::size_t kWireA[] = {0};
constexpr std::size_t kWiresBC[] = {1, 2};
constexpr std::size_t kWiresAB[] = {0, 1};
constexpr std::size_t kWiresCD[] = {2, 3};

// +x: b carries the first eigenvector of the pair, c the second; -x swaps.
ClaimFn pm_claims(std::array<std::size_t, 2> order) {
  return [order](std::size_t outcome) -> Claim {
    if (outcome == 0) return std::vector<std::size_t>{order[0], order[1]};
    return std::vector<std::size_t>{order[1], order[0]};
  };
}

struct QuartetSetup {
  EigenSystem es;
  // quarter_turns[k]: eigenvalue of eigenvector k is i^quarter_turns[k].
  std::array<int, 2> quarter_turns;
};

QuartetSetup quartet_setup(const UnitaryMatrix& u) {
  EigenSystem es = checked_eigensystem(u);
  std::array<int, 2> turns{};
  for (std::size_t k = 0; k < 2; ++k) {
    const double q = es.phase(k) / (kPi / 2.0);
    const int nearest = static_cast<int>(std::lround(q)) % 4;
    if (phase_distance(es.phase(k), nearest * kPi / 2.0) > kEigenTol) {
      throw PreconditionError("eigenvalue precondition violated: eigenvalues must lie in {1, -1, i, -i}");
    }
    turns[k] = nearest;
  }
  if (es.degenerate() || turns[0] == turns[1]) {
    throw PreconditionError("eigenvalue precondition violated: eigenvalues must be distinct");
  }
  return {std::move(es), turns};
}

// eta basis order z = 1, -1, i, -i, i.e. quarter turns 0, 2, 1, 3.
constexpr int kEtaTurns[] = {0, 2, 1, 3};

ClaimFn quartet_claims(const QuartetSetup& q) {
  return [turns = q.quarter_turns](std::size_t outcome) -> Claim {
    const int z = kEtaTurns[outcome];
    if (z == turns[0]) return std::vector<std::size_t>{0, 1};
    if (z == turns[1]) return std::vector<std::size_t>{1, 0};
    return std::nullopt;
  };
}

StateVector quartet_network(const UnitaryMatrix& u, GateCounter& gates) {
  const StateVector factors[] = {plus_x(), plus_x(), make_singlet(2).state};
  StateVector s = product_state(factors);
  s = gates.apply(s, {1, 2, u, 1});
  s = gates.apply(s, {0, 2, u, 2});
  return s;
}

}  // namespace

TomographyEstimate tomography_baseline(const UnitaryMatrix& u, std::uint64_t shots_per_setting,
                                       std::size_t phase_grid_size, std::uint64_t seed) {
  if (u.dim() != 2) throw DimensionError("tomography baseline needs a 2x2 gate");
  if (phase_grid_size < 3) throw PreconditionError("phase grid needs at least 3 points");
  Rng rng(seed);
  const std::size_t control_target[] = {1};
  const RegisterLayout layout({2, 2});

  // Fraction of |0> readings on the target, or the exact value at 0 shots.
  auto read_target = [&](const StateVector& input) {
    const StateVector out = apply_controlled(input, {0, 1, u, 1});
    const std::vector<double> p = computational_probabilities(out, control_target);
    if (shots_per_setting == 0) return p[0];
    std::uint64_t zeros = 0;
    for (std::uint64_t s = 0; s < shots_per_setting; ++s) {
      if (rng.sample_index(p) == 0) ++zeros;
    }
    return static_cast<double>(zeros) / static_cast<double>(shots_per_setting);
  };

  TomographyEstimate est;
  est.shots_per_setting = shots_per_setting;
  const std::size_t one_zero[] = {1, 0};
  est.p00 = read_target(basis_state(layout, one_zero));
  est.p10 = 1.0 - est.p00;

  const StateVector control_one = StateVector::single(CVector{0.0, 1.0});
  double sum_cos = 0.0;
  double sum_sin = 0.0;
  for (std::size_t k = 0; k < phase_grid_size; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(phase_grid_size);
    const StateVector factors[] = {control_one, phase_qubit(theta)};
    const double p0 = read_target(product_state(factors));
    est.theta_grid.push_back(theta);
    est.p0_by_theta.push_back(p0);
    sum_cos += p0 * std::cos(theta);
    sum_sin += p0 * std::sin(theta);
  }
  // On a uniform grid of >= 3 points cos and sin are orthogonal with squared
  // norm N/2, so the least-squares coefficients decouple.
  const double n = static_cast<double>(phase_grid_size);
  const double b = 2.0 * sum_cos / n;
  const double c = 2.0 * sum_sin / n;
  // p0(theta) = 1/2 + r cos(theta + phi) with r e^{i phi} = conj(U00) U01.
  est.relative_phase = wrap_phase(std::atan2(-c, b));
  return est;
}

ExactProtocolResult pm1_exact(const UnitaryMatrix& u) {
  const EigenSystem es = checked_eigensystem(u);
  const auto order = match_phases(es, 0.0, kPi, "eigenvalues {1, -1}");
  GateCounter gates;
  StateVector out = pair_network(u, 1, gates);
  auto branches = projective_branches(out, kWireA, MeasurementBasis::plus_minus_x(), kWiresBC, es,
                                      pm_claims(order));
  return {std::move(out), std::move(branches), gates.uses()};
}

ProtocolReport protocol_pm1(const UnitaryMatrix& u, std::uint64_t seed) {
  const EigenSystem es = checked_eigensystem(u);
  const auto order = match_phases(es, 0.0, kPi, "eigenvalues {1, -1}");
  GateCounter gates;
  const StateVector out = pair_network(u, 1, gates);
  return projective_shot(out, kWireA, MeasurementBasis::plus_minus_x(), kWiresBC, es,
                         pm_claims(order), seed, gates.uses());
}

namespace {

struct KnownPhasesSetup {
  EigenSystem es;
  std::array<std::size_t, 2> order;
  Povm povm;
};

KnownPhasesSetup known_phases_setup(const UnitaryMatrix& u, double theta1, double theta2) {
  if (phase_distance(theta1, theta2) <= kEigenTol) {
    throw PreconditionError("theta1 equals theta2: the reference states cannot be discriminated");
  }
  EigenSystem es = checked_eigensystem(u);
  const auto order = match_phases(es, theta1, theta2, "eigenphases {theta1, theta2}");
  Povm povm = build_idp_povm(phase_qubit(theta1), phase_qubit(theta2));
  return {std::move(es), order, std::move(povm)};
}

// Conditions the register on a conclusive element c|e><e| acting on wire a.
StateVector condition_on_element(const StateVector& out, const ComplexMatrix& element) {
  const CVector e = rank_one_direction(element);
  const CVector e_perp{-std::conj(e[1]), std::conj(e[0])};
  const MeasurementBasis basis({e, e_perp});
  return collapse(out, kWireA, basis, 0).residual;
}

std::vector<std::size_t> known_phase_claim(std::size_t element, std::array<std::size_t, 2> order) {
  // "v1" -> b carries u1, c carries u2; "v2" the reverse.
  if (element == 0) return {order[0], order[1]};
  return {order[1], order[0]};
}

}  // namespace

ExactProtocolResult known_phases_exact(const UnitaryMatrix& u, double theta1, double theta2) {
  const KnownPhasesSetup setup = known_phases_setup(u, theta1, theta2);
  GateCounter gates;
  StateVector out = pair_network(u, 1, gates);
  const std::vector<double> probs = povm_probabilities(out, 0, setup.povm);
  std::vector<ProtocolBranch> branches;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    ProtocolBranch b;
    b.label = setup.povm.labels[k];
    b.probability = probs[k];
    b.conclusive = k < 2;
    if (b.conclusive) {
      const auto claim = known_phase_claim(k, setup.order);
      b.assigned_eigenphases = phases_of(claim, setup.es);
      if (probs[k] > kNegligible) {
        b.eigenstate_fidelities = wire_fidelities(condition_on_element(out, setup.povm.elements[k]),
                                                  kWiresBC, claim, setup.es);
      }
    }
    branches.push_back(std::move(b));
  }
  return {std::move(out), std::move(branches), gates.uses()};
}

ProtocolReport protocol_known_phases(const UnitaryMatrix& u, double theta1, double theta2,
                                     std::uint64_t seed) {
  const KnownPhasesSetup setup = known_phases_setup(u, theta1, theta2);
  GateCounter gates;
  const StateVector out = pair_network(u, 1, gates);
  const std::vector<double> probs = povm_probabilities(out, 0, setup.povm);
  Rng rng(seed);
  const std::size_t k = rng.sample_index(probs);
  ProtocolReport r;
  r.outcome_label = setup.povm.labels[k];
  r.outcome_probability = probs[k];
  r.seed = seed;
  r.gate_uses = gates.uses();
  r.conclusive = k < 2;
  if (r.conclusive) {
    const auto claim = known_phase_claim(k, setup.order);
    r.assigned_eigenphases = phases_of(claim, setup.es);
    r.eigenstate_fidelities = wire_fidelities(condition_on_element(out, setup.povm.elements[k]),
                                              kWiresBC, claim, setup.es);
  }
  return r;
}

ExactProtocolResult square_trick_exact(const UnitaryMatrix& u) {
  const EigenSystem es = checked_eigensystem(u);
  const auto order = match_phases(es, 0.0, kPi / 2.0, "eigenvalues {1, i}");
  GateCounter gates;
  StateVector out = pair_network(u, 2, gates);
  auto branches = projective_branches(out, kWireA, MeasurementBasis::plus_minus_x(), kWiresBC, es,
                                      pm_claims(order));
  return {std::move(out), std::move(branches), gates.uses()};
}

ProtocolReport protocol_square_trick(const UnitaryMatrix& u, std::uint64_t seed) {
  const EigenSystem es = checked_eigensystem(u);
  const auto order = match_phases(es, 0.0, kPi / 2.0, "eigenvalues {1, i}");
  GateCounter gates;
  const StateVector out = pair_network(u, 2, gates);
  return projective_shot(out, kWireA, MeasurementBasis::plus_minus_x(), kWiresBC, es,
                         pm_claims(order), seed, gates.uses());
}

StateVector eta_state(cplx z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) throw PreconditionError("eta(z) needs |z| = 1");
  const CVector amps{0.5, 0.5 * z, 0.5 * z * z, 0.5 * z * z * z};
  return StateVector(RegisterLayout({2, 2}), amps);
}

MeasurementBasis eta_basis() {
  const cplx zs[] = {1.0, -1.0, cplx(0.0, 1.0), cplx(0.0, -1.0)};
  std::vector<CVector> vectors;
  for (const cplx& z : zs) {
    const StateVector eta = eta_state(z);
    vectors.emplace_back(eta.amplitudes().begin(), eta.amplitudes().end());
  }
  return MeasurementBasis(std::move(vectors), {"eta(1)", "eta(-1)", "eta(i)", "eta(-i)"});
}

ExactProtocolResult quartet_exact(const UnitaryMatrix& u) {
  const QuartetSetup q = quartet_setup(u);
  GateCounter gates;
  StateVector out = quartet_network(u, gates);
  auto branches = projective_branches(out, kWiresAB, eta_basis(), kWiresCD, q.es, quartet_claims(q));
  // Only the eigenvalue read off the eta outcome is learned.
  for (ProtocolBranch& b : branches) {
    if (b.assigned_eigenphases.size() > 1) b.assigned_eigenphases.resize(1);
  }
  return {std::move(out), std::move(branches), gates.uses()};
}

ProtocolReport protocol_quartet(const UnitaryMatrix& u, std::uint64_t seed) {
  const QuartetSetup q = quartet_setup(u);
  GateCounter gates;
  const StateVector out = quartet_network(u, gates);
  ProtocolReport r = projective_shot(out, kWiresAB, eta_basis(), kWiresCD, q.es, quartet_claims(q),
                                     seed, gates.uses());
  if (r.assigned_eigenphases && r.assigned_eigenphases->size() > 1) r.assigned_eigenphases->resize(1);
  return r;
}

}  // namespace singletlab
