#pragma once

// Networks that turn a singlet pair plus Controlled-U uses into qubits
// prepared in the eigenstates of an unknown single-qubit U, together with
// the measurement-based tomography they are compared against.
//
// Wire numbering follows the network diagrams: a, b, c(, d) are register
// subsystems 0, 1, 2(, 3).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singletlab/linalg.hpp"
#include "singletlab/register.hpp"

namespace singletlab {

// One measurement outcome of a network, evaluated exactly.
struct ProtocolBranch {
  std::string label;
  double probability = 0.0;
  bool conclusive = false;
  // Eigenphase the network assigns to each output wire (only the identified
  // eigenvalue for the quartet network); empty when inconclusive.
  std::vector<double> assigned_eigenphases;
  // Fidelity of each output wire with the eigenvector of U it is claimed to
  // carry; empty when inconclusive or when the branch has probability 0.
  std::vector<double> eigenstate_fidelities;
};

struct ExactProtocolResult {
  StateVector output_state;  // after all gates, before any measurement
  std::vector<ProtocolBranch> branches;
  std::uint64_t gate_uses = 0;
};

// A single sampled run.
struct ProtocolReport {
  std::string outcome_label;
  double outcome_probability = 0.0;
  bool conclusive = false;
  std::optional<std::vector<double>> assigned_eigenphases;
  std::vector<double> eigenstate_fidelities;
  std::uint64_t shots_used = 1;
  std::uint64_t seed = 0;
  std::uint64_t gate_uses = 0;
};

struct TomographyEstimate {
  double p00 = 0.0;             // |<0|U|0>|^2
  double p10 = 0.0;             // |<1|U|0>|^2
  double relative_phase = 0.0;  // arg<0|U|1> - arg<0|U|0>, in [0, 2*pi)
  std::uint64_t shots_per_setting = 0;
  std::vector<double> theta_grid;
  std::vector<double> p0_by_theta;  // observed probability of |0> per grid point
};

// Sends |1>_a|0>_b through one Controlled-U and reads b to estimate p00 and
// p10, then scans target inputs (|0> + e^{i theta}|1>)/sqrt(2) over a uniform
// grid on [0, 2*pi) and least-squares fits p0(theta) = A + B cos + C sin.
// shots_per_setting = 0 uses exact Born probabilities.
TomographyEstimate tomography_baseline(const UnitaryMatrix& u, std::uint64_t shots_per_setting,
                                       std::size_t phase_grid_size, std::uint64_t seed);

// |+x>_a (x) singlet_bc, one Controlled-U on (a, b), a read in the +-x
// basis. Requires eigenvalues {1, -1}.
ExactProtocolResult pm1_exact(const UnitaryMatrix& u);
ProtocolReport protocol_pm1(const UnitaryMatrix& u, std::uint64_t seed);

// Same network for eigenphases {theta1, theta2}; wire a goes through the
// unambiguous discrimination measurement against (|0> + e^{i theta_k}|1>)/sqrt(2).
ExactProtocolResult known_phases_exact(const UnitaryMatrix& u, double theta1, double theta2);
ProtocolReport protocol_known_phases(const UnitaryMatrix& u, double theta1, double theta2,
                                     std::uint64_t seed);

// Eigenvalues {1, i}: two Controlled-U uses make the pair behave like the
// +-1 case.
ExactProtocolResult square_trick_exact(const UnitaryMatrix& u);
ProtocolReport protocol_square_trick(const UnitaryMatrix& u, std::uint64_t seed);

// (|00> + z|01> + z^2|10> + z^3|11>) / 2
StateVector eta_state(cplx z);
// eta(1), eta(-1), eta(i), eta(-i), labelled "eta(1)", "eta(-1)", "eta(i)", "eta(-i)".
MeasurementBasis eta_basis();

// |+x>_a|+x>_b (x) singlet_cd, Controlled-U on (b, c) and Controlled-U^2 on
// (a, c), ab read in the eta basis. Requires two distinct eigenvalues from
// {1, -1, i, -i}.
ExactProtocolResult quartet_exact(const UnitaryMatrix& u);
ProtocolReport protocol_quartet(const UnitaryMatrix& u, std::uint64_t seed);

}  // namespace singletlab
