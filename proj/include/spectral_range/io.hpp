#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "spectral_range/camion_hoffman.hpp"
#include "spectral_range/sigma.hpp"

namespace spectral_range::io {

using Json = nlohmann::json;

/// A matrix read from disk; `is_complex` when any JSON entry was a [re, im] pair.
struct LoadedMatrix {
  bool is_complex = false;
  Matrix real;
  ComplexMatrix value;
};

/// n lines of n comma-separated reals.
Matrix read_csv(std::istream& in);
/// { "n": n, "entries": [[...], ...] } with real or [re, im] entries.
LoadedMatrix matrix_from_json(const Json& j);
/// CSV or JSON, chosen by content (JSON starts with '{'). Errors are std::invalid_argument.
LoadedMatrix read_matrix_file(const std::string& path);
/// Real matrix file; complex input is rejected.
Matrix read_real_matrix_file(const std::string& path);

Json to_json(const Matrix& a);
Json to_json(const ComplexMatrix& c);
Json vector_to_json(const Vector& v);
Json vector_to_json(const ComplexVector& v);
Json complex_to_json(Complex z);

/// { "n", "support": [[i, j], ...] (1-based), "row_value": [...] }. A dense
/// { "n", "entries" } object is accepted too and must be row uniform.
RowUniformMatrix row_uniform_from_json(const Json& j);
RowUniformMatrix read_row_uniform_file(const std::string& path);
Json to_json(const RowUniformMatrix& b);

Json to_json(const ModulusSet& set);
ModulusSet modulus_set_from_json(const Json& j);
Json to_json(const RegularityVerdict& verdict);

}  // namespace spectral_range::io
