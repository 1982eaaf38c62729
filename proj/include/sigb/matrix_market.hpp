#pragma once

#include <iosfwd>
#include <string>

#include "sigb/matrix.hpp"

namespace sigb {

// Reads a Matrix Market file: header
//   %%MatrixMarket matrix coordinate|array real|complex|integer|pattern
//                         general|symmetric|hermitian|skew-symmetric
// then comments, the size line, and 1-based entries (column-major values
// for array format). Symmetric/hermitian/skew storage holds the lower
// triangle only and is expanded to general form; pattern entries become
// 1.0; duplicate coordinates are summed. Coordinate files load as sparse
// matrices, array files as dense; complex-field files load in complex
// mode. Malformed input raises ParseError with the offending line.
Matrix parse_matrix_market(std::istream& in);
Matrix parse_matrix_market(const std::string& path);

// Writes the matrix so that parsing the output reproduces it exactly:
// sparse matrices as coordinate files in stored (row-major) order, dense
// matrices as column-major array files; complex mode selects the complex
// field. Values are printed in shortest round-trip decimal form.
void write_matrix_market(const Matrix& a, std::ostream& out);
void write_matrix_market(const Matrix& a, const std::string& path);

}  // namespace sigb
