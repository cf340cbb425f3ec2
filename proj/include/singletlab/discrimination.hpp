#pragma once

// Unambiguous discrimination of two known pure qubit states with equal
// priors: outcome "v1" never fires on v2, "v2" never fires on v1, and
// "fail" absorbs the remainder.

#include <string>
#include <vector>

#include "singletlab/linalg.hpp"
#include "singletlab/register.hpp"
#include "singletlab/rng.hpp"

namespace singletlab {

struct Povm {
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
};

// (|0> + e^{i theta}|1>) / sqrt(2)
StateVector phase_qubit(double theta);

// PreconditionError if either input is not a single qubit or the states are
// identical up to phase.
Povm build_idp_povm(const StateVector& v1, const StateVector& v2);

// Completeness within 1e-10 and element eigenvalues >= -1e-12.
bool is_valid_povm(const Povm& povm);

// Tr(E rho) for each element, rho being the reduced state of `subsystem`.
std::vector<double> povm_probabilities(const StateVector& state, std::size_t subsystem,
                                       const Povm& povm);

// Single-qubit state in, sampled label out.
std::string discriminate(const StateVector& state, const Povm& povm, Rng& rng);

// The unit vector e with element = c |e><e|, for rank-one elements.
CVector rank_one_direction(const ComplexMatrix& element);

// 1 - |<v1|v2>| for v_k = phase_qubit(theta_k).
double idp_success_probability(double theta1, double theta2);

}  // namespace singletlab
