#pragma once

#include <span>
#include <vector>

#include "condest/linops.hpp"
#include "condest/random.hpp"

namespace condest {

// Reference dense SVD for small matrices. It exists to check the estimator
// in tests and to run the pseudo-inverse baseline; it is O(m n^2) per sweep
// and is intended for n up to a few hundred.

struct SvdResult {
  std::vector<double> singular_values;  // descending
  DenseMatrix u;  // m x n; column k is zero when singular value k is zero
  DenseMatrix v;  // n x n orthogonal
};

/// One-sided (Hestenes) Jacobi SVD of an m x n matrix with m >= n. Sweeps
/// until every column pair satisfies |a_i^T a_j| <= eps ||a_i|| ||a_j||;
/// throws ConvergenceError after 30 sweeps.
SvdResult jacobi_svd(const DenseMatrix& a);

/// x = V diag(1/sigma) U^T b, ignoring singular values below
/// rank_tol * sigma_max (minimum-norm least-squares solution).
Vector pseudo_inverse_apply(const SvdResult& svd, std::span<const double> b,
                            double rank_tol = 1e-14);
Vector pseudo_inverse_apply(const DenseMatrix& a, std::span<const double> b,
                            double rank_tol = 1e-14);

/// One-shot estimate 1 / ||A^+ b|| for a random unit b. Never below
/// sigma_min(A). Returns +inf if A^+ b vanishes.
double baseline_sigma_min_by_norm(const SvdResult& svd, Rng& rng);
double baseline_sigma_min_by_norm(const DenseMatrix& a, Rng& rng);

}  // namespace condest
