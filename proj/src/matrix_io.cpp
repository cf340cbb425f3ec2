#include "singletlab/matrix_io.hpp"

#include <cmath>
#include <fstream>

#include "singletlab/errors.hpp"

namespace singletlab {

nlohmann::json complex_list_to_json(std::span<const cplx> values) {
  nlohmann::json entries = nlohmann::json::array();
  for (const cplx& z : values) entries.push_back({z.real(), z.imag()});
  return entries;
}

CVector complex_list_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("\"entries\" must be an array");
  CVector out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("each entry must be a [re, im] pair of numbers");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("gate files hold square matrices");
  return {{"dim", m.rows()}, {"entries", complex_list_to_json(m.entries())}};
}

UnitaryMatrix unitary_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("gate document must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw FormatError("\"dim\" must be a positive integer");
  }
  if (!j.contains("entries")) throw FormatError("missing \"entries\"");
  const auto dim = j["dim"].get<std::size_t>();
  CVector entries = complex_list_from_json(j["entries"]);
  if (entries.size() != dim * dim) {
    throw FormatError("expected " + std::to_string(dim * dim) + " entries for dim " +
                      std::to_string(dim) + ", got " + std::to_string(entries.size()));
  }
  return UnitaryMatrix(ComplexMatrix(dim, dim, std::move(entries)));
}

UnitaryMatrix read_unitary_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open gate file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("gate file " + path.string() + " is not valid JSON: " + e.what());
  }
  return unitary_from_json(j);
}

void write_unitary_file(const std::filesystem::path& path, const UnitaryMatrix& u) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write gate file " + path.string());
  out << matrix_to_json(u.matrix()).dump(2) << '\n';
}

}  // namespace singletlab
