#pragma once

#include <cstddef>
#include <span>

#include "singletlab/linalg.hpp"
#include "singletlab/register.hpp"

namespace singletlab {

// Totally antisymmetric state of d subsystems of dimension d: amplitude
// sign(perm)/sqrt(d!) on every permutation of (0, ..., d-1), zero elsewhere.
struct SingletState {
  std::size_t d;
  StateVector state;
};

// Levi-Civita symbol: 0 if any index repeats, otherwise the permutation's
// parity (counted with selection-sort swaps).
int levi_civita(std::span<const std::size_t> indices);

// DimensionError for d < 2.
SingletState make_singlet(std::size_t d);

// V applied to each subsystem in turn.
StateVector apply_to_every_subsystem(const StateVector& state, const UnitaryMatrix& v);

struct InvarianceDefect {
  cplx phase;     // best-fit global phase, unit modulus
  double defect;  // || V^{(x)d} |s> - c |s> || with c = <s| V^{(x)d} |s>
};

// The contract is phase == det(v) and defect <= 1e-9.
InvarianceDefect transform_invariance_defect(std::size_t d, const UnitaryMatrix& v);

// The singlet rewritten over the eigenbasis of `es` (eigenvector k standing
// in for |k> in every slot), divided by its overall phase relative to the
// computational singlet so the two coincide.
StateVector singlet_in_eigenbasis(std::size_t d, const EigenSystem& es);

}  // namespace singletlab
