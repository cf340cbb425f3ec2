#pragma once

// Batch front end: resolve a gate fixture, dispatch to a protocol, and
// produce a JSON report. Report top-level keys:
//   meta                 timestamp and tool info (the only nondeterministic part)
//   config               the resolved configuration
//   exact_distribution   outcome label -> Born probability
//   histogram            outcome label -> sampled count (shots > 0 only)
//   fidelities           per-outcome eigenstate fidelities
//   gate_uses            Controlled-U uses per run of the network
//   details              protocol-specific extras
//   errors               [{kind, message}] on failure
// The schema is published in docs/report.schema.json.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "singletlab/linalg.hpp"

namespace singletlab {

struct GateGenerator {
  std::size_t dim = 2;
  std::vector<double> phases;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::string protocol;
  // Empty: use the protocol's default fixture, generated from `seed`.
  std::variant<std::monostate, std::filesystem::path, GateGenerator> gate;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

const std::vector<std::string>& known_protocols();

// Parameter keys a protocol requires; FormatError("unknown protocol") for
// names outside known_protocols().
std::vector<std::string> required_params(const std::string& protocol);

// Accepts plain numbers and multiples of pi: "pi", "-pi/2", "3*pi/4", "0.5".
double parse_angle(const std::string& text);

// FormatError on malformed documents.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Eigenbasis drawn Haar-random from the seed, then unitary_from_eigensystem.
// PreconditionError when the phase count differs from the dimension.
UnitaryMatrix generate_gate(const GateGenerator& spec);

struct ExperimentOutcome {
  nlohmann::json report;
  int exit_code;  // 0 on success, 1 on a structured error
};

ExperimentOutcome run_experiment(const ExperimentConfig& config);

// Structural validation against the published report schema; returns the
// list of violations (empty when valid).
std::vector<std::string> validate_report(const nlohmann::json& report);

}  // namespace singletlab
