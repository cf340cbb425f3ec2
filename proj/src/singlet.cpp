#include "singletlab/singlet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "singletlab/errors.hpp"

namespace singletlab {

int levi_civita(std::span<const std::size_t> indices) {
  std::vector<std::size_t> p(indices.begin(), indices.end());
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t smallest = i;
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[j] == p[i]) return 0;
      if (p[j] < p[smallest]) smallest = j;
    }
    if (smallest != i) {
      std::swap(p[i], p[smallest]);
      sign = -sign;
    }
  }
  return sign;
}

SingletState make_singlet(std::size_t d) {
  if (d < 2) throw DimensionError("singlet needs d >= 2");
  const RegisterLayout layout(std::vector<std::size_t>(d, d));
  CVector amps(layout.total_dim());
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double count = 0.0;
  do {
    amps[layout.index_of(perm)] = static_cast<double>(levi_civita(perm));
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double scale = 1.0 / std::sqrt(count);
  for (cplx& z : amps) z *= scale;
  return {d, StateVector(layout, std::move(amps))};
}

StateVector apply_to_every_subsystem(const StateVector& state, const UnitaryMatrix& v) {
  StateVector out = state;
  for (std::size_t k = 0; k < state.layout().size(); ++k) out = apply_unitary(out, {k}, v);
  return out;
}

InvarianceDefect transform_invariance_defect(std::size_t d, const UnitaryMatrix& v) {
  if (v.dim() != d) throw DimensionError("transform dimension differs from singlet dimension");
  const SingletState s = make_singlet(d);
  const StateVector moved = apply_to_every_subsystem(s.state, v);
  const cplx c = inner(s.state.amplitudes(), moved.amplitudes());
  CVector residual(moved.amplitudes().begin(), moved.amplitudes().end());
  const auto ref = s.state.amplitudes();
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= c * ref[i];
  return {c / std::abs(c), norm(residual)};
}

StateVector singlet_in_eigenbasis(std::size_t d, const EigenSystem& es) {
  if (es.dim() != d) throw DimensionError("eigensystem dimension differs from singlet dimension");
  const SingletState s = make_singlet(d);
  // sum eps |u_j1 ... u_jd> is V^{(x)d} applied to the computational singlet,
  // V having the eigenvectors as columns.
  const StateVector expanded = apply_to_every_subsystem(s.state, UnitaryMatrix(es.basis_matrix()));
  const cplx c = inner(s.state.amplitudes(), expanded.amplitudes());
  CVector amps(expanded.amplitudes().begin(), expanded.amplitudes().end());
  const cplx unphase = std::conj(c) / std::abs(c);
  for (cplx& z : amps) z *= unphase;
  return StateVector(expanded.layout(), std::move(amps));
}

}  // namespace singletlab
