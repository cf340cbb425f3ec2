#pragma once

// Dense state vectors over an ordered list of subsystems of mixed
// dimension. Amplitude index convention: the first-listed subsystem is the
// most significant mixed-radix digit, so layout (2, 3) with digits (1, 2) is
// index 1*3 + 2 = 5.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "singletlab/linalg.hpp"
#include "singletlab/rng.hpp"

namespace singletlab {

class RegisterLayout {
 public:
  // DimensionError if empty or any dimension is below 2.
  explicit RegisterLayout(std::vector<std::size_t> dims);

  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t subsystem) const { return dims_.at(subsystem); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }
  std::size_t stride(std::size_t subsystem) const { return strides_.at(subsystem); }

  std::size_t index_of(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> digits_of(std::size_t index) const;

  RegisterLayout concat(const RegisterLayout& other) const;

  bool operator==(const RegisterLayout& other) const { return dims_ == other.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_;
};

class StateVector {
 public:
  // DimensionError on a length mismatch; PreconditionError unless the norm
  // is 1 within 1e-10.
  StateVector(RegisterLayout layout, CVector amplitudes);

  // One subsystem whose dimension is amplitudes.size().
  static StateVector single(std::span<const cplx> amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  const cplx& amplitude(std::size_t index) const { return amps_.at(index); }
  const cplx& amplitude(std::span<const std::size_t> digits) const {
    return amps_[layout_.index_of(digits)];
  }
  std::size_t size() const { return amps_.size(); }

 private:
  RegisterLayout layout_;
  CVector amps_;
};

struct ControlledGateSpec {
  std::size_t control;
  std::size_t target;
  UnitaryMatrix unitary;
  std::uint64_t power = 1;
};

// Orthonormal, complete basis on a group of subsystems. The computational
// basis is flagged so measurement can skip the basis rotation.
class MeasurementBasis {
 public:
  // PreconditionError("incomplete basis") unless the vectors form an
  // orthonormal basis of their space within 1e-10.
  MeasurementBasis(std::vector<CVector> vectors, std::vector<std::string> labels = {});

  static MeasurementBasis computational(std::size_t dim);
  // {|+x>, |-x>} labelled "+x", "-x".
  static MeasurementBasis plus_minus_x();
  // Tensor product of bases; labels joined with ','.
  MeasurementBasis product(const MeasurementBasis& other) const;

  std::size_t size() const { return vectors_.size(); }
  std::size_t dim() const { return vectors_.front().size(); }
  const CVector& vector(std::size_t k) const { return vectors_[k]; }
  const std::string& label(std::size_t k) const { return labels_[k]; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool is_computational() const { return computational_; }

 private:
  MeasurementBasis() = default;
  std::vector<CVector> vectors_;
  std::vector<std::string> labels_;
  bool computational_ = false;
};

struct Outcome {
  std::size_t index;
  std::string label;
  double probability;
};

struct MeasurementRecord {
  std::size_t outcome;
  std::string label;
  double probability;
  StateVector residual;  // post-collapse, renormalized
};

StateVector basis_state(const RegisterLayout& layout, std::span<const std::size_t> digits);
StateVector product_state(std::span<const StateVector> factors);

// u acts on the listed subsystems, the first listed being the most
// significant digit of u's index.
StateVector apply_unitary(const StateVector& state, std::span<const std::size_t> targets,
                          const UnitaryMatrix& u);
StateVector apply_unitary(const StateVector& state, std::initializer_list<std::size_t> targets,
                          const UnitaryMatrix& u);

// Applies unitary^power to the target on the control = |1> subspace.
StateVector apply_controlled(const StateVector& state, const ControlledGateSpec& gate);

// Born probabilities, one entry per basis vector.
std::vector<Outcome> outcome_distribution(const StateVector& state,
                                          std::span<const std::size_t> subsystems,
                                          const MeasurementBasis& basis);

// Marginal computational-basis distribution over the listed subsystems,
// indexed mixed-radix in listed order. No basis object is materialized.
std::vector<double> computational_probabilities(const StateVector& state,
                                                std::span<const std::size_t> subsystems);

// Projects onto one outcome. PreconditionError when its probability is 0.
MeasurementRecord collapse(const StateVector& state, std::span<const std::size_t> subsystems,
                           const MeasurementBasis& basis, std::size_t outcome);

// Computational-basis projection onto `outcome` (mixed-radix over the listed
// subsystems) without materializing the basis.
MeasurementRecord collapse_computational(const StateVector& state,
                                         std::span<const std::size_t> subsystems,
                                         std::size_t outcome);

MeasurementRecord measure(const StateVector& state, std::span<const std::size_t> subsystems,
                          const MeasurementBasis& basis, Rng& rng);

ComplexMatrix reduced_density_matrix(const StateVector& state, std::size_t subsystem);

// Pure state of one subsystem, with the first amplitude of magnitude
// > 1e-9 made real positive. EntangledError unless the largest Schmidt
// coefficient across the cut is at least 1 - 1e-10.
StateVector extract_subsystem(const StateVector& state, std::size_t subsystem);

// |<a|b>|^2; DimensionError on layout mismatch.
double fidelity(const StateVector& a, const StateVector& b);

// <t|rho|t> for the reduced state of one subsystem. Equals fidelity with
// the extracted subsystem when the cut is a product, and stays meaningful
// when it is not.
double subsystem_fidelity(const StateVector& state, std::size_t subsystem,
                          std::span<const cplx> target);

// {"layout": [...], "dim": N, "entries": [[re, im], ...]}
nlohmann::json state_to_json(const StateVector& state);

}  // namespace singletlab
