#include "singletlab/register.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "singletlab/errors.hpp"
#include "singletlab/kernels.hpp"
#include "singletlab/matrix_io.hpp"

namespace singletlab {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kBasisTol = 1e-10;

void check_subsystems(const RegisterLayout& layout, std::span<const std::size_t> subs) {
  if (subs.empty()) throw DimensionError("no subsystems given");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i] >= layout.size()) {
      throw DimensionError("subsystem index " + std::to_string(subs[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (subs[i] == subs[j]) throw DimensionError("duplicate subsystem index");
    }
  }
}

std::size_t group_dim(const RegisterLayout& layout, std::span<const std::size_t> subs) {
  std::size_t d = 1;
  for (std::size_t s : subs) d *= layout.dim(s);
  return d;
}

// Offsets of the local basis states of `subs` relative to a base index,
// mixed-radix with subs[0] most significant.
std::vector<std::size_t> local_offsets(const RegisterLayout& layout,
                                       std::span<const std::size_t> subs) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t s : subs) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * layout.dim(s));
    for (std::size_t o : offsets) {
      for (std::size_t d = 0; d < layout.dim(s); ++d) next.push_back(o + d * layout.stride(s));
    }
    offsets = std::move(next);
  }
  return offsets;
}

// Every index whose digits on `subs` are zero and whose digits on `fixed`
// take the given values.
std::vector<std::size_t> base_indices(
    const RegisterLayout& layout, std::span<const std::size_t> subs,
    std::span<const std::pair<std::size_t, std::size_t>> fixed = {}) {
  std::vector<bool> pinned(layout.size(), false);
  std::size_t start = 0;
  for (std::size_t s : subs) pinned[s] = true;
  for (const auto& [s, digit] : fixed) {
    pinned[s] = true;
    start += digit * layout.stride(s);
  }
  std::vector<std::size_t> free;
  std::size_t count = 1;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    if (!pinned[k]) {
      free.push_back(k);
      count *= layout.dim(k);
    }
  }
  std::vector<std::size_t> bases;
  bases.reserve(count);
  std::vector<std::size_t> digit(free.size(), 0);
  std::size_t index = start;
  for (std::size_t n = 0; n < count; ++n) {
    bases.push_back(index);
    // Odometer over the free subsystems, least significant last.
    for (std::size_t f = free.size(); f-- > 0;) {
      const std::size_t s = free[f];
      if (++digit[f] < layout.dim(s)) {
        index += layout.stride(s);
        break;
      }
      index -= (layout.dim(s) - 1) * layout.stride(s);
      digit[f] = 0;
    }
  }
  return bases;
}

void apply_in_place(CVector& amps, const RegisterLayout& layout, std::span<const std::size_t> subs,
                    const ComplexMatrix& m,
                    std::span<const std::pair<std::size_t, std::size_t>> fixed = {}) {
  const std::vector<std::size_t> offsets = local_offsets(layout, subs);
  const std::vector<std::size_t> bases = base_indices(layout, subs, fixed);
  CVector scratch(2 * offsets.size());
  kernels::active().apply_matrix(amps.data(), bases, offsets, m.data(), scratch.data());
}

// Rows are the conjugated basis vectors, so applying it maps |b_k> to |k>.
ComplexMatrix basis_change(const MeasurementBasis& basis) {
  const std::size_t n = basis.size();
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < n; ++c) m(k, c) = std::conj(basis.vector(k)[c]);
  }
  return m;
}

void check_basis_fits(const RegisterLayout& layout, std::span<const std::size_t> subs,
                      const MeasurementBasis& basis) {
  check_subsystems(layout, subs);
  if (group_dim(layout, subs) != basis.dim()) {
    throw DimensionError("basis dimension does not match the measured subsystems");
  }
}

StateVector rotated_to_basis(const StateVector& state, std::span<const std::size_t> subs,
                             const MeasurementBasis& basis) {
  CVector amps(state.amplitudes().begin(), state.amplitudes().end());
  apply_in_place(amps, state.layout(), subs, basis_change(basis));
  return StateVector(state.layout(), std::move(amps));
}

CVector canonical_phase(CVector v) {
  for (const cplx& z : v) {
    if (std::abs(z) > 1e-9) {
      const cplx rot = std::conj(z) / std::abs(z);
      for (cplx& w : v) w *= rot;
      break;
    }
  }
  return v;
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("layout needs at least one subsystem");
  strides_.assign(dims_.size(), 1);
  total_ = 1;
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] < 2) throw DimensionError("subsystem dimensions must be at least 2");
    strides_[k] = total_;
    total_ *= dims_[k];
  }
}

std::size_t RegisterLayout::index_of(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw DimensionError("digit count differs from layout size");
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (digits[k] >= dims_[k]) {
      throw DimensionError("digit " + std::to_string(digits[k]) + " out of range for dimension " +
                           std::to_string(dims_[k]));
    }
    index += digits[k] * strides_[k];
  }
  return index;
}

std::vector<std::size_t> RegisterLayout::digits_of(std::size_t index) const {
  if (index >= total_) throw DimensionError("index out of range");
  std::vector<std::size_t> digits(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    digits[k] = index / strides_[k];
    index %= strides_[k];
  }
  return digits;
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
  std::vector<std::size_t> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return RegisterLayout(std::move(dims));
}

StateVector::StateVector(RegisterLayout layout, CVector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.total_dim()) {
    throw DimensionError("state has " + std::to_string(amps_.size()) + " amplitudes, layout needs " +
                         std::to_string(layout_.total_dim()));
  }
  for (const cplx& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PreconditionError("state amplitude is not finite");
    }
  }
  const double n2 = kernels::active().norm_squared(amps_);
  if (std::abs(n2 - 1.0) > kNormTol) throw PreconditionError("state is not normalized within 1e-10");
}

StateVector StateVector::single(std::span<const cplx> amplitudes) {
  return StateVector(RegisterLayout({amplitudes.size()}), CVector(amplitudes.begin(), amplitudes.end()));
}

MeasurementBasis::MeasurementBasis(std::vector<CVector> vectors, std::vector<std::string> labels)
    : vectors_(std::move(vectors)), labels_(std::move(labels)) {
  const std::size_t n = vectors_.size();
  if (n == 0) throw PreconditionError("incomplete basis: no vectors");
  for (const CVector& v : vectors_) {
    if (v.size() != n) throw PreconditionError("incomplete basis: vector count differs from dimension");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner(vectors_[i], vectors_[j]) - expected) > kBasisTol) {
        throw PreconditionError("incomplete basis: vectors are not orthonormal within 1e-10");
      }
    }
  }
  if (labels_.empty()) {
    for (std::size_t k = 0; k < n; ++k) labels_.push_back(std::to_string(k));
  } else if (labels_.size() != n) {
    throw PreconditionError("basis label count differs from vector count");
  }
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim) {
  if (dim < 2) throw DimensionError("basis dimension must be at least 2");
  MeasurementBasis b;
  for (std::size_t k = 0; k < dim; ++k) {
    CVector v(dim);
    v[k] = 1.0;
    b.vectors_.push_back(std::move(v));
    b.labels_.push_back(std::to_string(k));
  }
  b.computational_ = true;
  return b;
}

MeasurementBasis MeasurementBasis::plus_minus_x() {
  const double r = std::numbers::sqrt2 / 2.0;
  return MeasurementBasis({CVector{r, r}, CVector{r, -r}}, {"+x", "-x"});
}

MeasurementBasis MeasurementBasis::product(const MeasurementBasis& other) const {
  MeasurementBasis b;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < other.size(); ++j) {
      CVector v;
      v.reserve(dim() * other.dim());
      for (const cplx& x : vectors_[i]) {
        for (const cplx& y : other.vectors_[j]) v.push_back(x * y);
      }
      b.vectors_.push_back(std::move(v));
      b.labels_.push_back(labels_[i] + "," + other.labels_[j]);
    }
  }
  b.computational_ = computational_ && other.computational_;
  return b;
}

StateVector basis_state(const RegisterLayout& layout, std::span<const std::size_t> digits) {
  CVector amps(layout.total_dim());
  amps[layout.index_of(digits)] = 1.0;
  return StateVector(layout, std::move(amps));
}

StateVector product_state(std::span<const StateVector> factors) {
  if (factors.empty()) throw DimensionError("product of zero factors");
  RegisterLayout layout = factors.front().layout();
  CVector amps(factors.front().amplitudes().begin(), factors.front().amplitudes().end());
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const auto rhs = factors[f].amplitudes();
    CVector next;
    next.reserve(amps.size() * rhs.size());
    for (const cplx& a : amps) {
      for (const cplx& b : rhs) next.push_back(a * b);
    }
    amps = std::move(next);
    layout = layout.concat(factors[f].layout());
  }
  return StateVector(std::move(layout), std::move(amps));
}

StateVector apply_unitary(const StateVector& state, std::span<const std::size_t> targets,
                          const UnitaryMatrix& u) {
  check_subsystems(state.layout(), targets);
  if (group_dim(state.layout(), targets) != u.dim()) {
    throw DimensionError("unitary dimension " + std::to_string(u.dim()) +
                         " does not match the target subsystems");
  }
  CVector amps(state.amplitudes().begin(), state.amplitudes().end());
  apply_in_place(amps, state.layout(), targets, u.matrix());
  return StateVector(state.layout(), std::move(amps));
}

StateVector apply_unitary(const StateVector& state, std::initializer_list<std::size_t> targets,
                          const UnitaryMatrix& u) {
  return apply_unitary(state, std::span<const std::size_t>(targets.begin(), targets.size()), u);
}

StateVector apply_controlled(const StateVector& state, const ControlledGateSpec& gate) {
  const RegisterLayout& layout = state.layout();
  if (gate.control == gate.target) throw DimensionError("control and target must differ");
  const std::size_t subs[] = {gate.control, gate.target};
  check_subsystems(layout, subs);
  if (layout.dim(gate.control) != 2) throw DimensionError("control subsystem must be a qubit");
  if (layout.dim(gate.target) != gate.unitary.dim()) {
    throw DimensionError("unitary dimension does not match the target subsystem");
  }
  const ComplexMatrix m = matrix_power(gate.unitary.matrix(), gate.power);
  const std::size_t target[] = {gate.target};
  const std::pair<std::size_t, std::size_t> control_one[] = {{gate.control, 1}};
  CVector amps(state.amplitudes().begin(), state.amplitudes().end());
  apply_in_place(amps, layout, target, m, control_one);
  return StateVector(layout, std::move(amps));
}

std::vector<double> computational_probabilities(const StateVector& state,
                                                std::span<const std::size_t> subsystems) {
  const RegisterLayout& layout = state.layout();
  check_subsystems(layout, subsystems);
  const std::vector<std::size_t> offsets = local_offsets(layout, subsystems);
  const std::vector<std::size_t> bases = base_indices(layout, subsystems);
  std::vector<double> probs(offsets.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    double p = 0.0;
    for (std::size_t b : bases) p += std::norm(amps[b + offsets[k]]);
    probs[k] = p;
  }
  return probs;
}

std::vector<Outcome> outcome_distribution(const StateVector& state,
                                          std::span<const std::size_t> subsystems,
                                          const MeasurementBasis& basis) {
  check_basis_fits(state.layout(), subsystems, basis);
  const std::vector<double> probs =
      basis.is_computational()
          ? computational_probabilities(state, subsystems)
          : computational_probabilities(rotated_to_basis(state, subsystems, basis), subsystems);
  std::vector<Outcome> out;
  out.reserve(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) out.push_back({k, basis.label(k), probs[k]});
  return out;
}

namespace {

// Keeps the amplitudes whose digits on `subsystems` spell `outcome`.
std::pair<CVector, double> project_digits(std::span<const cplx> amps, const RegisterLayout& layout,
                                          std::span<const std::size_t> subsystems,
                                          std::size_t outcome) {
  const std::vector<std::size_t> offsets = local_offsets(layout, subsystems);
  if (outcome >= offsets.size()) throw DimensionError("outcome index out of range");
  const std::vector<std::size_t> bases = base_indices(layout, subsystems);
  CVector kept(amps.size());
  double p = 0.0;
  for (std::size_t b : bases) {
    const std::size_t i = b + offsets[outcome];
    kept[i] = amps[i];
    p += std::norm(amps[i]);
  }
  if (p > 0.0) kernels::active().scale(kept, 1.0 / std::sqrt(p));
  return {std::move(kept), p};
}

}  // namespace

MeasurementRecord collapse_computational(const StateVector& state,
                                         std::span<const std::size_t> subsystems,
                                         std::size_t outcome) {
  check_subsystems(state.layout(), subsystems);
  auto [kept, p] = project_digits(state.amplitudes(), state.layout(), subsystems, outcome);
  if (p <= 0.0) throw PreconditionError("outcome " + std::to_string(outcome) + " has probability 0");
  return {outcome, std::to_string(outcome), p, StateVector(state.layout(), std::move(kept))};
}

MeasurementRecord collapse(const StateVector& state, std::span<const std::size_t> subsystems,
                           const MeasurementBasis& basis, std::size_t outcome) {
  check_basis_fits(state.layout(), subsystems, basis);
  if (outcome >= basis.size()) throw DimensionError("outcome index out of range");
  const RegisterLayout& layout = state.layout();
  CVector amps(state.amplitudes().begin(), state.amplitudes().end());
  if (!basis.is_computational()) apply_in_place(amps, layout, subsystems, basis_change(basis));
  auto [kept, p] = project_digits(amps, layout, subsystems, outcome);
  if (p <= 0.0) throw PreconditionError("outcome " + basis.label(outcome) + " has probability 0");
  if (!basis.is_computational()) {
    apply_in_place(kept, layout, subsystems, basis_change(basis).adjoint());
  }
  return {outcome, basis.label(outcome), p, StateVector(layout, std::move(kept))};
}

MeasurementRecord measure(const StateVector& state, std::span<const std::size_t> subsystems,
                          const MeasurementBasis& basis, Rng& rng) {
  const std::vector<Outcome> dist = outcome_distribution(state, subsystems, basis);
  std::vector<double> weights;
  weights.reserve(dist.size());
  for (const Outcome& o : dist) weights.push_back(o.probability);
  return collapse(state, subsystems, basis, rng.sample_index(weights));
}

ComplexMatrix reduced_density_matrix(const StateVector& state, std::size_t subsystem) {
  const RegisterLayout& layout = state.layout();
  const std::size_t subs[] = {subsystem};
  check_subsystems(layout, subs);
  const std::size_t d = layout.dim(subsystem);
  const std::vector<std::size_t> offsets = local_offsets(layout, subs);
  const std::vector<std::size_t> bases = base_indices(layout, subs);
  const auto amps = state.amplitudes();
  ComplexMatrix rho(d, d);
  for (std::size_t b : bases) {
    for (std::size_t i = 0; i < d; ++i) {
      const cplx ai = amps[b + offsets[i]];
      if (ai == cplx(0.0)) continue;
      for (std::size_t j = 0; j < d; ++j) rho(i, j) += ai * std::conj(amps[b + offsets[j]]);
    }
  }
  return rho;
}

StateVector extract_subsystem(const StateVector& state, std::size_t subsystem) {
  const ComplexMatrix rho = reduced_density_matrix(state, subsystem);
  const std::size_t d = rho.rows();
  std::size_t best = 0;
  for (std::size_t i = 1; i < d; ++i) {
    if (rho(i, i).real() > rho(best, best).real()) best = i;
  }
  // For a pure reduced state every nonzero column is proportional to the
  // state; two power steps polish it when the cut is nearly a product.
  CVector psi = normalized(rho.column(best));
  psi = normalized(rho.apply(psi));
  psi = normalized(rho.apply(psi));
  const double top = inner(psi, rho.apply(psi)).real();
  const double threshold = (1.0 - 1e-10) * (1.0 - 1e-10);
  if (top < threshold) {
    throw EntangledError("subsystem " + std::to_string(subsystem) +
                         " is entangled with the rest of the register");
  }
  return StateVector(RegisterLayout({d}), canonical_phase(std::move(psi)));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (!(a.layout() == b.layout())) throw DimensionError("fidelity needs matching layouts");
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}

double subsystem_fidelity(const StateVector& state, std::size_t subsystem,
                          std::span<const cplx> target) {
  const ComplexMatrix rho = reduced_density_matrix(state, subsystem);
  if (target.size() != rho.rows()) throw DimensionError("target vector has the wrong dimension");
  const CVector t = normalized(target);
  return inner(t, rho.apply(t)).real();
}

nlohmann::json state_to_json(const StateVector& state) {
  return {{"layout", state.layout().dims()},
          {"dim", state.size()},
          {"entries", complex_list_to_json(state.amplitudes())}};
}

}  // namespace singletlab
