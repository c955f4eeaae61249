#pragma once

#include <cstddef>
#include <cstdint>

#include "condest/bidiag.hpp"
#include "condest/linops.hpp"
#include "condest/random.hpp"

namespace condest {

/// Number of power iterations that estimate the largest singular value of an
/// operator with n columns to relative error below epsilon with probability
/// at least 1 - delta, for any spectrum (no gap assumption):
///
///   ceil( (1/epsilon) * ( ln((2n)^2) + ln(1 / (epsilon * delta^2)) ) )
///
/// Throws ContractError unless 0 < epsilon < 1, 0 < delta < 1 and n >= 1.
std::size_t power_iteration_count(double epsilon, double delta, double n);

struct SigmaMaxEstimate {
  double sigma_hat = 0.0;
  Vector certificate;  // unit vector v with ||A v|| = sigma_hat
  std::size_t iterations = 0;
};

/// Power iteration on A^T A from a random start.
///
/// sigma_hat is the Rayleigh quotient ||A v|| of the final unit iterate, so
/// it never exceeds sigma_max(A) (up to rounding) and, with probability at
/// least 1 - delta, is at least (1 - epsilon) sigma_max(A). A start vector
/// annihilated by A is redrawn; after three redraws ConvergenceError is
/// thrown (A is numerically zero).
SigmaMaxEstimate estimate_sigma_max(const LinearOperator& a, double epsilon, double delta,
                                    Rng& rng);

/// Inverse iteration on R^T R for an upper bidiagonal R: each step solves
/// R^T z = v then R v' = z and normalizes. Returns ||R v|| for the final unit
/// iterate, which is always >= sigma_min(R) and, with probability at least
/// 1 - delta, at most sigma_min(R) / (1 - epsilon). An exactly zero
/// diagonal entry means R is singular and 0 is returned.
double inverse_power_sigma_min(const BidiagonalUpper& r, double epsilon, double delta, Rng& rng);

}  // namespace condest
