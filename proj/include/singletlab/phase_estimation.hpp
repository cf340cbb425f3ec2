#pragma once

// Two phase-estimation networks run side by side on the two halves of a
// singlet. Each network has an n-qubit control register whose qubit j
// (j = 1..n) drives Controlled-U^{2^{j-1}} on its target; both registers are
// then passed through the inverse Fourier transform and read out.
//
// Register layout used throughout: [A_n .. A_1, B_n .. B_1, A, B], i.e.
// subsystems 0..n-1 hold register A-bar most significant first, n..2n-1
// hold B-bar, 2n is target A and 2n+1 is target B. A joint reading is
// indexed z_A * 2^n + z_B.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "singletlab/linalg.hpp"
#include "singletlab/register.hpp"

namespace singletlab {

inline constexpr unsigned kMaxPeWidth = 10;

// phi / (2 pi) = xbar / 2^n + delta with |delta| <= 2^-(n+1).
struct PhaseGrid {
  unsigned n;
  std::uint64_t xbar;
  double delta;
};

// Nearest grid point, wrapping 2^n to 0; exact half-way ties go to the
// smaller integer.
PhaseGrid nearest_grid(double phi, unsigned n);

// Amplitude of reading z after the inverse transform of
// sum_y e^{2 pi i y (xbar / 2^n + delta)} |y> / 2^{n/2}, in closed form.
cplx g_amplitude(std::uint64_t z, const PhaseGrid& grid);

// |y> -> 2^{-n/2} sum_z e^{-2 pi i y z / 2^n} |z> on the listed qubits, the
// first listed being the most significant bit. DimensionError if any listed
// subsystem is not a qubit.
StateVector inverse_qft(const StateVector& state, std::span<const std::size_t> reg);
StateVector qft(const StateVector& state, std::span<const std::size_t> reg);

struct DoublePeNetwork {
  unsigned n;
  StateVector state;  // after both ladders and both inverse transforms
  std::uint64_t gate_uses;
};

// PreconditionError unless U is a non-degenerate 2x2 unitary and
// 1 <= n <= kMaxPeWidth.
DoublePeNetwork double_pe_network(const UnitaryMatrix& u, unsigned n);

struct PeOutcome {
  std::uint64_t z_a = 0;
  std::uint64_t z_b = 0;
  double probability = 0.0;
  std::uint64_t count = 0;  // sampled shots that produced this reading
  // Fidelity of each target with the eigenvector whose grid point is
  // nearest (on the circle) to that register's reading.
  double fidelity_a = 0.0;
  double fidelity_b = 0.0;
  // "A=u1,B=u2", "A=u2,B=u1" or "ambiguous", decided by which eigenvector
  // target A overlaps more.
  std::string assignment;
};

struct PeReport {
  unsigned n = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t gate_uses = 0;
  std::vector<double> eigenphases;  // fixture eigenphases u1, u2
  std::vector<PhaseGrid> grids;     // nearest_grid of each
  std::vector<double> exact_joint;  // 4^n entries, index z_A * 2^n + z_B
  // Readings with nonzero count when shots > 0; readings with probability
  // above 1e-12 when shots == 0.
  std::vector<PeOutcome> outcomes;
};

PeReport run_double_pe(const UnitaryMatrix& u, unsigned n, std::uint64_t shots, std::uint64_t seed);

}  // namespace singletlab
