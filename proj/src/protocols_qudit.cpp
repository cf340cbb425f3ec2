#include "singletlab/protocols_qudit.hpp"

#include <cmath>

#include "singletlab/circuit.hpp"
#include "singletlab/discrimination.hpp"
#include "singletlab/errors.hpp"
#include "singletlab/rng.hpp"
#include "singletlab/singlet.hpp"

namespace singletlab {

namespace {

std::vector<std::size_t> control_indices(std::size_t d) {
  std::vector<std::size_t> c(d - 1);
  for (std::size_t k = 0; k + 1 < d; ++k) c[k] = k;
  return c;
}

MeasurementBasis control_basis(std::size_t d) {
  MeasurementBasis basis = MeasurementBasis::plus_minus_x();
  for (std::size_t k = 2; k < d; ++k) basis = basis.product(MeasurementBasis::plus_minus_x());
  return basis;
}

// Basis index bits, first control most significant; a set bit is -x.
std::vector<XSign> pattern_of(std::size_t outcome, std::size_t controls) {
  std::vector<XSign> p(controls);
  for (std::size_t k = 0; k < controls; ++k) {
    const std::size_t bit = (outcome >> (controls - 1 - k)) & 1U;
    p[k] = bit != 0 ? XSign::Minus : XSign::Plus;
  }
  return p;
}

QuditProtocolReport branch_report(const QuditNetwork& net, const CVector& v,
                                  const MeasurementRecord& rec) {
  QuditProtocolReport r;
  r.d = net.d;
  r.control_pattern = pattern_of(rec.outcome, net.d - 1);
  r.pattern_label = pattern_label(r.control_pattern);
  r.pattern_probability = rec.probability;
  r.gate_uses = net.gate_uses;
  r.located_wire = located_wire_for(r.control_pattern);
  if (r.located_wire) {
    const StateVector wire = extract_subsystem(rec.residual, net.d - 1 + *r.located_wire);
    r.fidelity = fidelity(wire, StateVector::single(v));
  }
  return r;
}

}  // namespace

std::string pattern_label(const std::vector<XSign>& pattern) {
  std::string s;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (k > 0) s += ',';
    s += pattern[k] == XSign::Minus ? "-x" : "+x";
  }
  return s;
}

CVector spectrum_check_minus_one(const UnitaryMatrix& u) {
  const std::size_t d = u.dim();
  const ComplexMatrix& m = u.matrix();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const double involution_gap = (m * m).max_abs_diff(id);
  const cplx trace = m.trace();
  if (involution_gap > 1e-9 || std::abs(trace - cplx(static_cast<double>(d) - 2.0)) > 1e-8) {
    throw PreconditionError(
        "spectrum mismatch: expected eigenvalue +1 with multiplicity D-1 and -1 once");
  }
  // (I - U)/2 projects onto the -1 eigenspace; its heaviest column is a
  // probe image with the largest overlap.
  ComplexMatrix proj = id - m;
  proj *= 0.5;
  std::size_t best = 0;
  for (std::size_t i = 1; i < d; ++i) {
    if (proj(i, i).real() > proj(best, best).real()) best = i;
  }
  CVector v = normalized(proj.column(best));
  for (const cplx& z : v) {
    if (std::abs(z) > 1e-9) {
      const cplx rot = std::conj(z) / std::abs(z);
      for (cplx& w : v) w *= rot;
      break;
    }
  }
  return v;
}

QuditNetwork qudit_network(const UnitaryMatrix& u) {
  const std::size_t d = u.dim();
  if (d < 2 || d > kMaxQuditDim) {
    throw PreconditionError("qudit dimension must be between 2 and " + std::to_string(kMaxQuditDim));
  }
  spectrum_check_minus_one(u);
  std::vector<StateVector> factors(d - 1, phase_qubit(0.0));
  factors.push_back(make_singlet(d).state);
  StateVector s = product_state(factors);
  GateCounter gates;
  for (std::size_t k = 0; k + 1 < d; ++k) s = gates.apply(s, {k, d - 1 + k, u, 1});
  return {d, std::move(s), gates.uses()};
}

std::optional<std::size_t> located_wire_for(const std::vector<XSign>& pattern) {
  std::optional<std::size_t> found;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (pattern[k] == XSign::Minus) {
      if (found) return std::nullopt;
      found = k;
    }
  }
  return found ? found : std::optional<std::size_t>(pattern.size());
}

std::vector<PatternProbability> exact_pattern_distribution(const UnitaryMatrix& u) {
  const QuditNetwork net = qudit_network(u);
  const std::vector<std::size_t> controls = control_indices(net.d);
  std::vector<PatternProbability> out;
  for (const Outcome& o : outcome_distribution(net.state, controls, control_basis(net.d))) {
    std::vector<XSign> p = pattern_of(o.index, controls.size());
    std::string label = pattern_label(p);
    out.push_back({std::move(p), std::move(label), o.probability});
  }
  return out;
}

std::vector<QuditProtocolReport> qudit_exact_branches(const UnitaryMatrix& u) {
  const CVector v = spectrum_check_minus_one(u);
  const QuditNetwork net = qudit_network(u);
  const std::vector<std::size_t> controls = control_indices(net.d);
  const MeasurementBasis basis = control_basis(net.d);
  std::vector<QuditProtocolReport> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (!located_wire_for(pattern_of(k, controls.size()))) continue;
    out.push_back(branch_report(net, v, collapse(net.state, controls, basis, k)));
  }
  return out;
}

QuditProtocolReport run_qudit_minus_one(const UnitaryMatrix& u, std::uint64_t seed) {
  const CVector v = spectrum_check_minus_one(u);
  const QuditNetwork net = qudit_network(u);
  Rng rng(seed);
  const std::vector<std::size_t> controls = control_indices(net.d);
  QuditProtocolReport r = branch_report(net, v, measure(net.state, controls, control_basis(net.d), rng));
  r.seed = seed;
  return r;
}

}  // namespace singletlab
