#include "condest/bidiag.hpp"

#include <cmath>
#include <string>

#include "condest/errors.hpp"

namespace condest {

BidiagonalUpper::BidiagonalUpper(std::vector<double> diag, std::vector<double> superdiag)
    : diag_{std::move(diag)}, superdiag_{std::move(superdiag)} {
  const bool shape_ok = diag_.empty() ? superdiag_.empty() : superdiag_.size() + 1 == diag_.size();
  if (!shape_ok) {
    throw ContractError("BidiagonalUpper: superdiagonal must be one shorter than the diagonal");
  }
  for (double v : diag_) {
    if (!std::isfinite(v)) throw ContractError("BidiagonalUpper: non-finite diagonal entry");
  }
  for (double v : superdiag_) {
    if (!std::isfinite(v)) throw ContractError("BidiagonalUpper: non-finite superdiagonal entry");
  }
}

void BidiagonalUpper::append(double rho, std::optional<double> theta_prev) {
  if (theta_prev.has_value() == diag_.empty()) {
    throw ContractError(diag_.empty()
                            ? "BidiagonalUpper::append: first column takes no superdiagonal"
                            : "BidiagonalUpper::append: superdiagonal entry required");
  }
  if (!std::isfinite(rho) || (theta_prev && !std::isfinite(*theta_prev))) {
    throw ContractError("BidiagonalUpper::append: non-finite entry");
  }
  diag_.push_back(rho);
  if (theta_prev) {
    superdiag_.push_back(*theta_prev);
  }
}

void BidiagonalUpper::check_length(std::size_t n) const {
  if (n != diag_.size()) {
    throw ContractError("BidiagonalUpper: vector length " + std::to_string(n) +
                        " does not match dimension " + std::to_string(diag_.size()));
  }
}

Vector BidiagonalUpper::solve_upper(std::span<const double> b) const {
  check_length(b.size());
  const std::size_t n = diag_.size();
  Vector x(n);
  for (std::size_t k = n; k-- > 0;) {
    if (diag_[k] == 0.0) {
      throw SingularMatrixError(k);
    }
    double r = b[k];
    if (k + 1 < n) {
      r -= superdiag_[k] * x[k + 1];
    }
    x[k] = r / diag_[k];
  }
  return x;
}

Vector BidiagonalUpper::solve_lower(std::span<const double> b) const {
  check_length(b.size());
  const std::size_t n = diag_.size();
  Vector x(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (diag_[k] == 0.0) {
      throw SingularMatrixError(k);
    }
    double r = b[k];
    if (k > 0) {
      r -= superdiag_[k - 1] * x[k - 1];
    }
    x[k] = r / diag_[k];
  }
  return x;
}

Vector BidiagonalUpper::multiply(std::span<const double> x) const {
  check_length(x.size());
  const std::size_t n = diag_.size();
  Vector y(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = diag_[k] * x[k];
    if (k + 1 < n) {
      y[k] += superdiag_[k] * x[k + 1];
    }
  }
  return y;
}

Vector BidiagonalUpper::multiply_transpose(std::span<const double> x) const {
  check_length(x.size());
  const std::size_t n = diag_.size();
  Vector y(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = diag_[k] * x[k];
    if (k > 0) {
      y[k] += superdiag_[k - 1] * x[k - 1];
    }
  }
  return y;
}

DenseMatrix BidiagonalUpper::to_dense() const {
  const std::size_t n = diag_.size();
  DenseMatrix d(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    d(k, k) = diag_[k];
    if (k + 1 < n) {
      d(k, k + 1) = superdiag_[k];
    }
  }
  return d;
}

}  // namespace condest
