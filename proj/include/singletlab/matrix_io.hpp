#pragma once

// Gate files: {"dim": n, "entries": [[re, im], ...]} with n*n row-major
// entries. Readers reject anything that is not unitary within 1e-10.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "singletlab/linalg.hpp"

namespace singletlab {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json complex_list_to_json(std::span<const cplx> values);
CVector complex_list_from_json(const nlohmann::json& j);

// FormatError on a malformed document, PreconditionError when not unitary.
UnitaryMatrix unitary_from_json(const nlohmann::json& j);

UnitaryMatrix read_unitary_file(const std::filesystem::path& path);
void write_unitary_file(const std::filesystem::path& path, const UnitaryMatrix& u);

}  // namespace singletlab
