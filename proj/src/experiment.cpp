#include "singletlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <numbers>
#include <set>

#include "singletlab/errors.hpp"
#include "singletlab/kernels.hpp"
#include "singletlab/matrix_io.hpp"
#include "singletlab/phase_estimation.hpp"
#include "singletlab/protocols_qubit.hpp"
#include "singletlab/protocols_qudit.hpp"
#include "singletlab/rng.hpp"

namespace singletlab {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kTomographyGrid = 16;
constexpr const char* kVersion = "0.1.0";

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double angle_param(const json& params, const char* key) {
  const json& v = params.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw FormatError(std::string("parameter \"") + key + "\" must be a number or angle string");
}

std::uint64_t count_param(const json& params, const char* key) {
  const json& v = params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw FormatError(std::string("parameter \"") + key + "\" must be a positive integer");
  }
  return v.get<std::uint64_t>();
}

void check_params(const ExperimentConfig& config) {
  const std::vector<std::string> required = required_params(config.protocol);
  if (!config.params.is_object()) throw FormatError("\"params\" must be an object");
  for (const std::string& key : required) {
    if (!config.params.contains(key)) {
      throw FormatError("protocol " + config.protocol + " requires parameter \"" + key + "\"");
    }
  }
  for (const auto& [key, value] : config.params.items()) {
    if (std::find(required.begin(), required.end(), key) == required.end()) {
      throw FormatError("protocol " + config.protocol + " does not take parameter \"" + key + "\"");
    }
  }
}

GateGenerator default_generator(const ExperimentConfig& config) {
  GateGenerator g;
  g.seed = config.seed;
  const std::string& p = config.protocol;
  if (p == "known-phases") {
    g.phases = {angle_param(config.params, "theta1"), angle_param(config.params, "theta2")};
  } else if (p == "square-trick") {
    g.phases = {0.0, kPi / 2.0};
  } else if (p == "double-pe") {
    g.phases = {kPi / 4.0, 5.0 * kPi / 4.0};
  } else if (p == "qudit-minus-one") {
    g.dim = count_param(config.params, "d");
    g.phases.assign(g.dim, 0.0);
    g.phases.back() = kPi;
  } else {
    g.phases = {0.0, kPi};
  }
  return g;
}

json generator_json(const GateGenerator& g) {
  return {{"dim", g.dim}, {"phases", g.phases}, {"seed", g.seed}};
}

json branch_json(const ProtocolBranch& b) {
  return {{"outcome", b.label},
          {"probability", b.probability},
          {"conclusive", b.conclusive},
          {"assigned_eigenphases", b.assigned_eigenphases},
          {"wires", b.eigenstate_fidelities}};
}

std::uint64_t shot_seed(std::uint64_t master, std::uint64_t shot) {
  return Rng::for_shot(master, shot).next_u64();
}

struct Sections {
  json exact = json::object();
  json histogram;  // null unless sampled
  json fidelities = json::array();
  std::uint64_t gate_uses = 0;
  json details = json::object();
};

template <typename Exact, typename Shot>
Sections run_qubit_protocol(const ExperimentConfig& config, Exact exact, Shot shot) {
  Sections out;
  const ExactProtocolResult result = exact();
  for (const ProtocolBranch& b : result.branches) {
    out.exact[b.label] = b.probability;
    out.fidelities.push_back(branch_json(b));
  }
  out.gate_uses = result.gate_uses;
  if (config.shots > 0) {
    std::map<std::string, std::uint64_t> counts;
    for (const ProtocolBranch& b : result.branches) counts[b.label] = 0;
    double worst = 1.0;
    std::uint64_t conclusive = 0;
    for (std::uint64_t s = 0; s < config.shots; ++s) {
      const ProtocolReport r = shot(shot_seed(config.seed, s));
      ++counts[r.outcome_label];
      if (r.conclusive) {
        ++conclusive;
        for (double f : r.eigenstate_fidelities) worst = std::min(worst, f);
      }
    }
    out.histogram = counts;
    out.details["sampled_conclusive"] = conclusive;
    if (conclusive > 0) out.details["sampled_min_fidelity"] = worst;
  }
  return out;
}

Sections run_tomography(const ExperimentConfig& config, const UnitaryMatrix& u) {
  Sections out;
  out.exact["b=0"] = std::norm(u(0, 0));
  out.exact["b=1"] = std::norm(u(1, 0));
  const TomographyEstimate est = tomography_baseline(u, config.shots, kTomographyGrid, config.seed);
  out.details = {{"p00", est.p00},
                 {"p10", est.p10},
                 {"relative_phase", est.relative_phase},
                 {"shots_per_setting", est.shots_per_setting},
                 {"theta_grid", est.theta_grid},
                 {"p0_by_theta", est.p0_by_theta},
                 {"true_relative_phase", wrap_phase(std::arg(u(0, 1)) - std::arg(u(0, 0)))}};
  if (config.shots > 0) {
    const auto zeros = static_cast<std::uint64_t>(std::llround(est.p00 * static_cast<double>(config.shots)));
    out.histogram = {{"b=0", zeros}, {"b=1", config.shots - zeros}};
  }
  out.gate_uses = config.shots * (1 + kTomographyGrid);
  return out;
}

Sections run_pe(const ExperimentConfig& config, const UnitaryMatrix& u) {
  const auto n = static_cast<unsigned>(count_param(config.params, "n"));
  const PeReport rep = run_double_pe(u, n, config.shots, config.seed);
  Sections out;
  const std::uint64_t modulus = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < rep.exact_joint.size(); ++i) {
    if (rep.exact_joint[i] > 1e-12) {
      out.exact[std::to_string(i / modulus) + "," + std::to_string(i % modulus)] = rep.exact_joint[i];
    }
  }
  json hist = json::object();
  for (const PeOutcome& o : rep.outcomes) {
    const std::string label = std::to_string(o.z_a) + "," + std::to_string(o.z_b);
    out.fidelities.push_back({{"outcome", label},
                              {"probability", o.probability},
                              {"wires", {o.fidelity_a, o.fidelity_b}},
                              {"assignment", o.assignment}});
    if (config.shots > 0) hist[label] = o.count;
  }
  if (config.shots > 0) out.histogram = hist;
  out.gate_uses = rep.gate_uses;
  json grids = json::array();
  for (const PhaseGrid& g : rep.grids) grids.push_back({{"xbar", g.xbar}, {"delta", g.delta}});
  out.details = {{"n", n}, {"eigenphases", rep.eigenphases}, {"grids", grids}};
  return out;
}

Sections run_qudit(const ExperimentConfig& config, const UnitaryMatrix& u) {
  const std::uint64_t d = count_param(config.params, "d");
  if (d != u.dim()) {
    throw PreconditionError("parameter d = " + std::to_string(d) + " but the gate has dimension " +
                            std::to_string(u.dim()));
  }
  Sections out;
  for (const PatternProbability& p : exact_pattern_distribution(u)) out.exact[p.label] = p.probability;
  for (const QuditProtocolReport& r : qudit_exact_branches(u)) {
    out.fidelities.push_back({{"outcome", r.pattern_label},
                              {"probability", r.pattern_probability},
                              {"located_wire", *r.located_wire},
                              {"wires", {r.fidelity}}});
    out.gate_uses = r.gate_uses;
  }
  if (config.shots > 0) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& [label, p] : out.exact.items()) counts[label] = 0;
    for (std::uint64_t s = 0; s < config.shots; ++s) {
      ++counts[run_qudit_minus_one(u, shot_seed(config.seed, s)).pattern_label];
    }
    out.histogram = counts;
  }
  return out;
}

bool non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

json error_json(const char* kind, const std::string& message) {
  return json::array({{{"kind", kind}, {"message", message}}});
}

}  // namespace

const std::vector<std::string>& known_protocols() {
  static const std::vector<std::string> names{"tomography", "pm1",       "known-phases",
                                              "square-trick", "quartet", "double-pe",
                                              "qudit-minus-one"};
  return names;
}

std::vector<std::string> required_params(const std::string& protocol) {
  if (protocol == "known-phases") return {"theta1", "theta2"};
  if (protocol == "double-pe") return {"n"};
  if (protocol == "qudit-minus-one") return {"d"};
  const auto& names = known_protocols();
  if (std::find(names.begin(), names.end(), protocol) == names.end()) {
    throw FormatError("unknown protocol: " + protocol);
  }
  return {};
}

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw FormatError("empty angle");
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw FormatError("cannot parse angle \"" + text + "\"");
    }
    if (used != part.size()) throw FormatError("cannot parse angle \"" + text + "\"");
    return v;
  };
  const std::size_t pi_at = s.find("pi");
  if (pi_at == std::string::npos) return number(s);
  double value = kPi;
  std::string head = s.substr(0, pi_at);
  const std::string tail = s.substr(pi_at + 2);
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (head == "-") {
    value = -value;
  } else if (!head.empty() && head != "+") {
    value *= number(head);
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw FormatError("cannot parse angle \"" + text + "\"");
    value /= number(tail.substr(1));
  }
  return value;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  static const std::set<std::string> allowed{"protocol", "gate", "shots", "seed", "params"};
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw FormatError("unknown config key \"" + key + "\"");
  }
  ExperimentConfig c;
  if (!j.contains("protocol") || !j["protocol"].is_string()) {
    throw FormatError("config needs a string \"protocol\"");
  }
  c.protocol = j["protocol"].get<std::string>();
  if (j.contains("shots")) {
    if (!non_negative_integer(j["shots"])) throw FormatError("\"shots\" must be a non-negative integer");
    c.shots = j["shots"].get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!non_negative_integer(j["seed"])) {
      throw FormatError("\"seed\" must be a non-negative integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("params")) c.params = j["params"];
  if (j.contains("gate") && !j["gate"].is_null()) {
    const json& g = j["gate"];
    if (g.is_string()) {
      c.gate = std::filesystem::path(g.get<std::string>());
    } else if (g.is_object()) {
      GateGenerator gen;
      if (!g.contains("dim") || !non_negative_integer(g["dim"])) throw FormatError("gate generator needs \"dim\"");
      gen.dim = g["dim"].get<std::size_t>();
      if (!g.contains("phases") || !g["phases"].is_array()) throw FormatError("gate generator needs \"phases\"");
      for (const json& p : g["phases"]) {
        if (p.is_number()) {
          gen.phases.push_back(p.get<double>());
        } else if (p.is_string()) {
          gen.phases.push_back(parse_angle(p.get<std::string>()));
        } else {
          throw FormatError("gate phases must be numbers or angle strings");
        }
      }
      if (g.contains("seed")) {
        if (!non_negative_integer(g["seed"])) throw FormatError("gate generator \"seed\" must be a non-negative integer");
        gen.seed = g["seed"].get<std::uint64_t>();
      }
      c.gate = std::move(gen);
    } else {
      throw FormatError("\"gate\" must be a file path or a generator object");
    }
  }
  return c;
}

json config_to_json(const ExperimentConfig& config) {
  json j = {{"protocol", config.protocol},
            {"shots", config.shots},
            {"seed", config.seed},
            {"params", config.params}};
  if (const auto* path = std::get_if<std::filesystem::path>(&config.gate)) {
    j["gate"] = path->string();
  } else if (const auto* gen = std::get_if<GateGenerator>(&config.gate)) {
    j["gate"] = generator_json(*gen);
  } else {
    j["gate"] = nullptr;
  }
  return j;
}

UnitaryMatrix generate_gate(const GateGenerator& spec) {
  if (spec.dim < 1) throw PreconditionError("invalid gate spec: dimension must be positive");
  if (spec.phases.size() != spec.dim) {
    throw PreconditionError("invalid gate spec: " + std::to_string(spec.phases.size()) +
                            " phases for dimension " + std::to_string(spec.dim));
  }
  const UnitaryMatrix basis = haar_random_unitary(spec.dim, spec.seed);
  std::vector<CVector> vectors;
  for (std::size_t c = 0; c < spec.dim; ++c) vectors.push_back(basis.matrix().column(c));
  return unitary_from_eigensystem(EigenSystem(std::move(vectors), spec.phases));
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  json report;
  report["meta"] = {{"timestamp", utc_timestamp()},
                    {"tool", "singletlab"},
                    {"version", kVersion},
                    {"kernels", std::string(kernels::active().name)}};
  ExperimentConfig resolved = config;
  report["config"] = config_to_json(resolved);
  report["fidelities"] = json::array();
  report["gate_uses"] = 0;
  try {
    check_params(config);
    if (std::holds_alternative<std::monostate>(resolved.gate)) resolved.gate = default_generator(config);
    report["config"] = config_to_json(resolved);
    const UnitaryMatrix u = std::holds_alternative<GateGenerator>(resolved.gate)
                                ? generate_gate(std::get<GateGenerator>(resolved.gate))
                                : read_unitary_file(std::get<std::filesystem::path>(resolved.gate));

    const std::string& p = config.protocol;
    Sections s;
    if (p == "tomography") {
      s = run_tomography(config, u);
    } else if (p == "pm1") {
      s = run_qubit_protocol(config, [&] { return pm1_exact(u); },
                             [&](std::uint64_t seed) { return protocol_pm1(u, seed); });
    } else if (p == "known-phases") {
      const double t1 = angle_param(config.params, "theta1");
      const double t2 = angle_param(config.params, "theta2");
      s = run_qubit_protocol(config, [&] { return known_phases_exact(u, t1, t2); },
                             [&](std::uint64_t seed) { return protocol_known_phases(u, t1, t2, seed); });
    } else if (p == "square-trick") {
      s = run_qubit_protocol(config, [&] { return square_trick_exact(u); },
                             [&](std::uint64_t seed) { return protocol_square_trick(u, seed); });
    } else if (p == "quartet") {
      s = run_qubit_protocol(config, [&] { return quartet_exact(u); },
                             [&](std::uint64_t seed) { return protocol_quartet(u, seed); });
    } else if (p == "double-pe") {
      s = run_pe(config, u);
    } else {
      s = run_qudit(config, u);
    }
    report["exact_distribution"] = s.exact;
    if (!s.histogram.is_null()) report["histogram"] = s.histogram;
    report["fidelities"] = s.fidelities;
    report["gate_uses"] = s.gate_uses;
    if (!s.details.empty()) report["details"] = s.details;
    return {report, 0};
  } catch (const Error& e) {
    report["errors"] = error_json(e.kind(), e.what());
  } catch (const json::exception& e) {
    report["errors"] = error_json("format", e.what());
  }
  return {report, 1};
}

std::vector<std::string> validate_report(const json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report must be an object"};
  static const std::set<std::string> allowed{"meta",       "config",    "exact_distribution",
                                             "histogram",  "fidelities", "gate_uses",
                                             "details",    "errors"};
  for (const auto& [key, value] : report.items()) {
    if (!allowed.contains(key)) problems.push_back("unexpected key \"" + key + "\"");
  }
  for (const char* key : {"meta", "config", "fidelities", "gate_uses"}) {
    if (!report.contains(key)) problems.push_back(std::string("missing key \"") + key + "\"");
  }
  if (report.contains("meta") &&
      (!report["meta"].is_object() || !report["meta"].contains("timestamp") ||
       !report["meta"]["timestamp"].is_string())) {
    problems.push_back("meta must be an object with a string timestamp");
  }
  if (report.contains("config") &&
      (!report["config"].is_object() || !report["config"].contains("protocol") ||
       !report["config"]["protocol"].is_string())) {
    problems.push_back("config must be an object with a string protocol");
  }
  if (report.contains("fidelities")) {
    if (!report["fidelities"].is_array()) {
      problems.push_back("fidelities must be an array");
    } else {
      for (const json& f : report["fidelities"]) {
        if (!f.is_object() || !f.contains("outcome") || !f["outcome"].is_string() ||
            !f.contains("wires") || !f["wires"].is_array()) {
          problems.push_back("each fidelities entry needs a string outcome and a wires array");
          break;
        }
        for (const json& w : f["wires"]) {
          if (!w.is_number() || w.get<double>() < 0.0 || w.get<double>() > 1.0 + 1e-12) {
            problems.push_back("wire fidelities must lie in [0, 1]");
            break;
          }
        }
      }
    }
  }
  if (report.contains("gate_uses") && !non_negative_integer(report["gate_uses"])) {
    problems.push_back("gate_uses must be a non-negative integer");
  }
  if (report.contains("exact_distribution")) {
    const json& d = report["exact_distribution"];
    if (!d.is_object()) {
      problems.push_back("exact_distribution must be an object");
    } else {
      for (const auto& [label, p] : d.items()) {
        if (!p.is_number() || p.get<double>() < -1e-12 || p.get<double>() > 1.0 + 1e-12) {
          problems.push_back("exact_distribution values must be probabilities");
          break;
        }
      }
    }
  }
  if (report.contains("histogram")) {
    const json& h = report["histogram"];
    if (!h.is_object()) {
      problems.push_back("histogram must be an object");
    } else {
      for (const auto& [label, c] : h.items()) {
        if (!non_negative_integer(c)) {
          problems.push_back("histogram values must be non-negative integers");
          break;
        }
      }
    }
  }
  if (report.contains("details") && !report["details"].is_object()) {
    problems.push_back("details must be an object");
  }
  if (report.contains("errors")) {
    const json& e = report["errors"];
    bool ok = e.is_array() && !e.empty();
    if (ok) {
      for (const json& item : e) {
        ok = ok && item.is_object() && item.contains("kind") && item["kind"].is_string() &&
             item.contains("message") && item["message"].is_string();
      }
    }
    if (!ok) problems.push_back("errors must be a non-empty array of {kind, message}");
  }
  return problems;
}

}  // namespace singletlab
