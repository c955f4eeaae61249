#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>

#include "condest/linops.hpp"

namespace condest {

/// Coordinate files parse to CSR, array files to a dense matrix.
using MatrixMarketMatrix = std::variant<SparseMatrixCsr, DenseMatrix>;

/// Reads a real-valued Matrix Market stream.
///
/// Supported: `coordinate` and `array` formats; `real`, `integer` and
/// `pattern` fields (pattern entries become 1.0, coordinate only);
/// `general`, `symmetric` and `skew-symmetric` symmetry. Symmetric storage
/// is expanded to both triangles, skew-symmetric mirrors with negation.
/// Coordinate duplicates are summed. Complex and Hermitian inputs are
/// rejected. All failures raise ParseError carrying the 1-based line number.
MatrixMarketMatrix parse_matrix_market(std::istream& in);
MatrixMarketMatrix parse_matrix_market(const std::string& text);
MatrixMarketMatrix read_matrix_market_file(const std::filesystem::path& path);

/// Writes "coordinate real general" with entries in row-major order and
/// values printed round-trip exact.
void write_matrix_market(std::ostream& out, const SparseMatrixCsr& a);

/// Heap-allocates the parsed matrix behind the operator interface.
std::unique_ptr<LinearOperator> to_operator(MatrixMarketMatrix m);

}  // namespace condest
