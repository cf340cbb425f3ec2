#pragma once

#include <cstdint>

#include "singletlab/register.hpp"

namespace singletlab {

// Applies controlled gates and tallies how many Controlled-U uses they cost.
// A Controlled-U^p costs p uses, as it would when built from p
// Controlled-U gates in sequence.
class GateCounter {
 public:
  StateVector apply(const StateVector& state, const ControlledGateSpec& gate) {
    uses_ += gate.power;
    return apply_controlled(state, gate);
  }
  std::uint64_t uses() const { return uses_; }

 private:
  std::uint64_t uses_ = 0;
};

}  // namespace singletlab
