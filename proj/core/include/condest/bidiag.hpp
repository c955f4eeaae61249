#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "condest/linops.hpp"

namespace condest {

/// Upper bidiagonal matrix grown one column at a time, holding only the
/// diagonal and superdiagonal (the R factor LSQR builds and normally throws
/// away). Memory is O(size()).
class BidiagonalUpper {
public:
  BidiagonalUpper() = default;
  BidiagonalUpper(std::vector<double> diag, std::vector<double> superdiag);

  /// Adds column t: R(t,t) = rho and, for t > 0, R(t-1,t) = theta_prev.
  /// theta_prev must be present exactly when the matrix is nonempty.
  void append(double rho, std::optional<double> theta_prev = std::nullopt);

  std::size_t size() const { return diag_.size(); }
  bool empty() const { return diag_.empty(); }

  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& superdiag() const { return superdiag_; }

  /// Solves R x = b by back substitution. Throws SingularMatrixError on an
  /// exactly zero diagonal entry.
  Vector solve_upper(std::span<const double> b) const;

  /// Solves R^T x = b by forward substitution.
  Vector solve_lower(std::span<const double> b) const;

  Vector multiply(std::span<const double> x) const;            // R x
  Vector multiply_transpose(std::span<const double> x) const;  // R^T x

  DenseMatrix to_dense() const;

private:
  void check_length(std::size_t n) const;

  std::vector<double> diag_;
  std::vector<double> superdiag_;
};

}  // namespace condest
