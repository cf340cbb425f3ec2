#pragma once

// Locating the -1 eigenstate of a D-dimensional U whose spectrum is +1
// (D-1 fold) and -1, using D-1 control qubits, a D-party singlet and D-1
// Controlled-U gates (control qubit k drives qudit k).
//
// Layout: subsystems 0..D-2 are the control qubits, D-1..2D-2 the qudits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singletlab/linalg.hpp"
#include "singletlab/register.hpp"

namespace singletlab {

inline constexpr std::size_t kMaxQuditDim = 5;

enum class XSign { Plus, Minus };

// The -1 eigenvector of u, phase-normalized. PreconditionError("spectrum
// mismatch") unless ||u^2 - I|| <= 1e-9 and tr(u) = D - 2 within 1e-8.
CVector spectrum_check_minus_one(const UnitaryMatrix& u);

struct QuditNetwork {
  std::size_t d;
  StateVector state;  // before the control qubits are read
  std::uint64_t gate_uses;
};

QuditNetwork qudit_network(const UnitaryMatrix& u);

struct PatternProbability {
  std::vector<XSign> pattern;
  std::string label;  // e.g. "-x,+x"
  double probability;
};

// Born distribution over all 2^{D-1} control readings.
std::vector<PatternProbability> exact_pattern_distribution(const UnitaryMatrix& u);

struct QuditProtocolReport {
  std::size_t d = 0;
  std::vector<XSign> control_pattern;
  std::string pattern_label;
  // Qudit index (0-based among the D qudits) holding the -1 eigenstate;
  // empty for a forbidden pattern.
  std::optional<std::size_t> located_wire;
  double fidelity = 0.0;
  double pattern_probability = 0.0;
  std::uint64_t gate_uses = 0;
  std::uint64_t seed = 0;
};

// Qudit k when only control k reads -x, the last qudit when all read +x.
std::optional<std::size_t> located_wire_for(const std::vector<XSign>& pattern);

// One report per allowed pattern, evaluated exactly.
std::vector<QuditProtocolReport> qudit_exact_branches(const UnitaryMatrix& u);

QuditProtocolReport run_qudit_minus_one(const UnitaryMatrix& u, std::uint64_t seed);

std::string pattern_label(const std::vector<XSign>& pattern);

}  // namespace singletlab
