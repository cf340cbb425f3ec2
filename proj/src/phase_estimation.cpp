#include "singletlab/phase_estimation.hpp"

#include <cmath>
#include <numbers>

#include "singletlab/circuit.hpp"
#include "singletlab/discrimination.hpp"
#include "singletlab/errors.hpp"
#include "singletlab/rng.hpp"
#include "singletlab/singlet.hpp"

namespace singletlab {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - e^{i a}) written as -2i sin(a/2) e^{i a/2}, without the -2i factor,
// which cancels in the ratio. Stays accurate when a is tiny.
cplx half_chord(double a) { return std::polar(std::sin(0.5 * a), 0.5 * a); }

StateVector transform_register(const StateVector& state, std::span<const std::size_t> reg, int sign) {
  for (std::size_t s : reg) {
    if (s >= state.layout().size() || state.layout().dim(s) != 2) {
      throw DimensionError("Fourier transform registers must consist of qubits");
    }
  }
  const std::size_t dim = std::size_t{1} << reg.size();
  return apply_unitary(state, reg, UnitaryMatrix::fourier(dim, sign));
}

std::size_t control_a(unsigned n, unsigned j) { return n - j; }
std::size_t control_b(unsigned n, unsigned j) { return 2 * n - j; }

std::uint64_t circular_gap(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  const std::uint64_t d = a > b ? a - b : b - a;
  return std::min(d, modulus - d);
}

}  // namespace

PhaseGrid nearest_grid(double phi, unsigned n) {
  if (n == 0 || n > 62) throw PreconditionError("grid width must be between 1 and 62");
  const double x = wrap_phase(phi) / (2.0 * kPi);
  const double scale = std::ldexp(1.0, static_cast<int>(n));
  const double t = x * scale;
  const double fl = std::floor(t);
  const double rounded = (t - fl) > 0.5 ? fl + 1.0 : fl;
  const double delta = x - rounded / scale;
  auto xbar = static_cast<std::uint64_t>(rounded);
  const std::uint64_t modulus = std::uint64_t{1} << n;
  if (xbar >= modulus) xbar -= modulus;
  return {n, xbar, delta};
}

cplx g_amplitude(std::uint64_t z, const PhaseGrid& grid) {
  const std::uint64_t modulus = std::uint64_t{1} << grid.n;
  if (z >= modulus) throw DimensionError("reading out of range for the register width");
  const double scale = static_cast<double>(modulus);
  if (grid.delta == 0.0) return z == grid.xbar ? cplx(1.0) : cplx(0.0);
  const double offset =
      (static_cast<double>(grid.xbar) - static_cast<double>(z)) / scale + grid.delta;
  const cplx den = half_chord(2.0 * kPi * offset);
  // Every term of the geometric sum is 1 when the ratio is 1.
  if (std::abs(den) == 0.0) return 1.0;
  return half_chord(2.0 * kPi * grid.delta * scale) / (scale * den);
}

StateVector inverse_qft(const StateVector& state, std::span<const std::size_t> reg) {
  return transform_register(state, reg, -1);
}

StateVector qft(const StateVector& state, std::span<const std::size_t> reg) {
  return transform_register(state, reg, +1);
}

DoublePeNetwork double_pe_network(const UnitaryMatrix& u, unsigned n) {
  if (u.dim() != 2) throw PreconditionError("double phase estimation needs a 2x2 unitary");
  if (n < 1 || n > kMaxPeWidth) {
    throw PreconditionError("register width n must be between 1 and " + std::to_string(kMaxPeWidth));
  }
  const EigenSystem es = eigendecompose_2x2_unitary(u);
  if (es.degenerate() || phase_distance(es.phase(0), es.phase(1)) <= 1e-8) {
    throw PreconditionError("degenerate unitary: eigenphases must differ by more than 1e-8");
  }
  std::vector<StateVector> factors(2 * n, phase_qubit(0.0));
  factors.push_back(make_singlet(2).state);
  StateVector s = product_state(factors);

  const std::size_t target_a = 2 * n;
  const std::size_t target_b = 2 * n + 1;
  GateCounter gates;
  for (unsigned j = 1; j <= n; ++j) {
    s = gates.apply(s, {control_a(n, j), target_a, u, std::uint64_t{1} << (j - 1)});
  }
  for (unsigned j = 1; j <= n; ++j) {
    s = gates.apply(s, {control_b(n, j), target_b, u, std::uint64_t{1} << (j - 1)});
  }
  std::vector<std::size_t> reg_a(n);
  std::vector<std::size_t> reg_b(n);
  for (unsigned k = 0; k < n; ++k) {
    reg_a[k] = k;
    reg_b[k] = n + k;
  }
  s = inverse_qft(s, reg_a);
  s = inverse_qft(s, reg_b);
  return {n, std::move(s), gates.uses()};
}

PeReport run_double_pe(const UnitaryMatrix& u, unsigned n, std::uint64_t shots, std::uint64_t seed) {
  const DoublePeNetwork net = double_pe_network(u, n);
  const EigenSystem es = eigendecompose_2x2_unitary(u);
  const std::uint64_t modulus = std::uint64_t{1} << n;

  PeReport report;
  report.n = n;
  report.shots = shots;
  report.seed = seed;
  report.gate_uses = net.gate_uses;
  report.eigenphases = es.phases();
  report.grids = {nearest_grid(es.phase(0), n), nearest_grid(es.phase(1), n)};

  std::vector<std::size_t> readout(2 * n);
  for (std::size_t k = 0; k < readout.size(); ++k) readout[k] = k;
  report.exact_joint = computational_probabilities(net.state, readout);

  std::map<std::uint64_t, std::uint64_t> counts;
  if (shots == 0) {
    for (std::uint64_t i = 0; i < report.exact_joint.size(); ++i) {
      if (report.exact_joint[i] > 1e-12) counts[i] = 0;
    }
  } else {
    const DiscreteSampler sampler(report.exact_joint);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
      Rng rng = Rng::for_shot(seed, shot);
      ++counts[sampler(rng)];
    }
  }

  // Eigenvector index whose grid point is circularly nearest to a reading.
  auto nearest_eigen = [&](std::uint64_t z) -> std::size_t {
    return circular_gap(z, report.grids[1].xbar, modulus) < circular_gap(z, report.grids[0].xbar, modulus)
               ? 1
               : 0;
  };
  const std::size_t target_a = 2 * n;
  const std::size_t target_b = 2 * n + 1;
  for (const auto& [index, count] : counts) {
    const MeasurementRecord rec = collapse_computational(net.state, readout, index);
    PeOutcome o;
    o.z_a = index / modulus;
    o.z_b = index % modulus;
    o.probability = report.exact_joint[index];
    o.count = count;
    o.fidelity_a = subsystem_fidelity(rec.residual, target_a, es.vector(nearest_eigen(o.z_a)));
    o.fidelity_b = subsystem_fidelity(rec.residual, target_b, es.vector(nearest_eigen(o.z_b)));
    const double a_on_u1 = subsystem_fidelity(rec.residual, target_a, es.vector(0));
    const double a_on_u2 = subsystem_fidelity(rec.residual, target_a, es.vector(1));
    if (std::abs(a_on_u1 - a_on_u2) <= 1e-9) {
      o.assignment = "ambiguous";
    } else {
      o.assignment = a_on_u1 > a_on_u2 ? "A=u1,B=u2" : "A=u2,B=u1";
    }
    report.outcomes.push_back(std::move(o));
  }
  return report;
}

}  // namespace singletlab
