#pragma once

// Plain-text matrix files: one row per line, entries separated by commas,
// each entry a complex number such as "0.125", "-0.5+0.25i", "1e-3-2i" or "i"
// ("j" is accepted in place of "i").

#include "tripartite/qubit_algebra.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace tripartite {

Complex parse_complex(std::string_view text);

/// Reads a square complex matrix. Blank lines and lines starting with '#' are
/// skipped. Throws std::invalid_argument on malformed input.
DenseOperator read_matrix(std::istream& is);

/// Reads an 8x8 matrix and validates it as a three-qubit DensityMatrix.
DensityMatrix read_density_file(const std::string& path);

/// Writes entries with round-trip precision in the format read_matrix accepts.
void write_matrix(std::ostream& os, const DenseOperator& m);

}  // namespace tripartite
