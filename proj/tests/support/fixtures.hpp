#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral_range/io.hpp"

namespace spectral_range::testing {

inline std::string data_path(const std::string& name) { return std::string(SPECTRAL_RANGE_TEST_DATA) + "/" + name; }

// 5x5 row-uniform matrix with mu = 4 (cycle 1-2) and nu = sqrt(6) (cycle 2-5).
inline RowUniformMatrix example_b() { return io::read_row_uniform_file(data_path("example_b.json")); }

// Reducible pair: B has transient classes {2,3} and {4,5}; C cuts their exits.
inline RowUniformMatrix reducible_b() { return io::read_row_uniform_file(data_path("reducible_b.json")); }
inline RowUniformMatrix reducible_c() { return io::read_row_uniform_file(data_path("reducible_c.json")); }

inline RowUniformMatrix from_rows(const Matrix& dense) { return RowUniformMatrix::from_dense(dense); }

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace spectral_range::testing
