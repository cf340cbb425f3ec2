#include "singletlab/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "singletlab/errors.hpp"

namespace singletlab {

namespace {

void require_qubit(const StateVector& s, const char* name) {
  if (s.layout().size() != 1 || s.layout().dim(0) != 2) {
    throw PreconditionError(std::string(name) + " must be a single-qubit state");
  }
}

CVector orthogonal_complement(std::span<const cplx> v) {
  return {-std::conj(v[1]), std::conj(v[0])};
}

}  // namespace

StateVector phase_qubit(double theta) {
  const double r = std::numbers::sqrt2 / 2.0;
  const CVector amps{r, std::polar(r, theta)};
  return StateVector::single(amps);
}

Povm build_idp_povm(const StateVector& v1, const StateVector& v2) {
  require_qubit(v1, "v1");
  require_qubit(v2, "v2");
  const double overlap = std::abs(inner(v1.amplitudes(), v2.amplitudes()));
  if (overlap >= 1.0 - 1e-12) {
    throw PreconditionError("states are identical up to phase; unambiguous discrimination impossible");
  }
  const double weight = 1.0 / (1.0 + overlap);
  const CVector v2_perp = orthogonal_complement(v2.amplitudes());
  const CVector v1_perp = orthogonal_complement(v1.amplitudes());
  ComplexMatrix e1 = weight * ComplexMatrix::outer(v2_perp, v2_perp);
  ComplexMatrix e2 = weight * ComplexMatrix::outer(v1_perp, v1_perp);
  ComplexMatrix fail = ComplexMatrix::identity(2) - e1 - e2;
  return {{std::move(e1), std::move(e2), std::move(fail)}, {"v1", "v2", "fail"}};
}

bool is_valid_povm(const Povm& povm) {
  if (povm.elements.empty() || povm.elements.size() != povm.labels.size()) return false;
  const std::size_t d = povm.elements.front().rows();
  ComplexMatrix sum(d, d);
  for (const ComplexMatrix& e : povm.elements) {
    if (e.rows() != d || !e.is_square()) return false;
    if (e.max_abs_diff(e.adjoint()) > 1e-12) return false;
    if (d == 2) {
      const double half_tr = 0.5 * (e(0, 0).real() + e(1, 1).real());
      const double h = 0.5 * (e(0, 0).real() - e(1, 1).real());
      const double lowest = half_tr - std::sqrt(h * h + std::norm(e(0, 1)));
      if (lowest < -1e-12) return false;
    }
    sum += e;
  }
  return sum.max_abs_diff(ComplexMatrix::identity(d)) <= 1e-10;
}

std::vector<double> povm_probabilities(const StateVector& state, std::size_t subsystem,
                                       const Povm& povm) {
  const ComplexMatrix rho = reduced_density_matrix(state, subsystem);
  std::vector<double> probs;
  probs.reserve(povm.elements.size());
  for (const ComplexMatrix& e : povm.elements) {
    if (e.rows() != rho.rows()) throw DimensionError("POVM acts on a different dimension");
    probs.push_back(std::max(0.0, (e * rho).trace().real()));
  }
  return probs;
}

std::string discriminate(const StateVector& state, const Povm& povm, Rng& rng) {
  require_qubit(state, "state");
  const std::vector<double> probs = povm_probabilities(state, 0, povm);
  return povm.labels[rng.sample_index(probs)];
}

CVector rank_one_direction(const ComplexMatrix& element) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < element.rows(); ++i) {
    if (element(i, i).real() > element(best, best).real()) best = i;
  }
  if (element(best, best).real() <= 0.0) throw PreconditionError("zero POVM element has no direction");
  return normalized(element.column(best));
}

double idp_success_probability(double theta1, double theta2) {
  const double c = std::max(0.0, 1.0 + std::cos(theta1 - theta2));
  return 1.0 - std::sqrt(c) / std::numbers::sqrt2;
}

}  // namespace singletlab
