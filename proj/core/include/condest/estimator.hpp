#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "condest/bidiag.hpp"
#include "condest/linops.hpp"
#include "condest/random.hpp"

namespace condest {

inline constexpr double kMachineEpsilon = std::numeric_limits<double>::epsilon();

/// Tuning knobs of the condition-number estimator. Defaults reproduce the
/// published configuration.
struct EstimatorConfig {
  /// Residual threshold: stop once ||A d|| / (sigma_max ||x|| + ||b||) <= c1.
  double c1 = 8.0 * kMachineEpsilon;
  /// Replaces c1 once the running condition estimate reaches c4_kappa.
  double c1_prime = 4.0 * kMachineEpsilon;
  /// Failure probability of the small-error test ||d|| <= erfinv(c2)/||x_hat||.
  double c2 = 1e-3;
  /// Condition estimate at which the matrix is declared numerically rank
  /// deficient (about 1/(64 eps)).
  double c3 = 7.2e13;
  /// Condition estimate that switches c1 to c1_prime (eps^-1/2 = 2^26).
  double c4_kappa = 0x1.0p26;
  /// Accuracy and failure probability of both power iterations.
  double epsilon_power = 0.1;
  double delta_power = 1e-12;
  std::size_t max_iterations = 100000;
  /// After convergence is first detected at step t, keep iterating until
  /// step ceil((1 + extra_fraction) t). Zero disables the extension.
  double extra_fraction = 0.25;
  /// Independent LSQR runs; the one with the smallest certified estimate wins.
  std::size_t repeats = 1;
  std::uint64_t seed = 0;

  /// Throws ContractError when a parameter is outside its documented range.
  void validate() const;
};

enum class StopReason {
  ResidualSmall,
  ErrorSmall,
  RankDeficient,
  ExactSolution,
  MaxIterations,
};

std::string_view to_string(StopReason reason);

/// One row per LSQR iteration.
struct TraceEntry {
  std::size_t t = 0;
  double residual_norm = 0.0;  // ||A d||, computed explicitly
  double error_norm = 0.0;     // ||d||
  double rayleigh = 0.0;       // ||A d|| / ||d||
  double best_sigma_min = 0.0;
  double phi_bar = 0.0;  // LSQR's recurrence estimate of the residual norm
};

using ConvergenceTrace = std::vector<TraceEntry>;

struct EstimateResult {
  double sigma_max_hat = 0.0;
  Vector v_max_hat;  // unit certificate, ||A v|| = sigma_max_hat
  double sigma_min_hat = 0.0;
  Vector v_min_hat;  // certificate d, not normalized
  double sigma_min_tilde = 0.0;
  double kappa_hat = 0.0;
  double kappa_tilde = 0.0;
  std::size_t iterations = 0;
  StopReason stop_reason = StopReason::MaxIterations;
  ConvergenceTrace trace;
  std::size_t run_index = 0;  // which of the repeated runs was reported
};

/// LSQR recurrence state (Paige & Saunders bidiagonalization plus Givens QR).
struct LsqrState {
  Vector u;  // unit, length m
  Vector v;  // unit, length n
  Vector w;  // search direction
  Vector x;  // current iterate
  double alpha = 0.0;
  double beta = 0.0;
  double rho_bar = 0.0;
  double phi_bar = 0.0;
  /// Set once a bidiagonalization vector vanishes to rounding level; no
  /// further step can make progress.
  bool exhausted = false;
};

struct LsqrStep {
  double rho = 0.0;
  double theta = 0.0;
};

/// Starts LSQR on A x = b: u = b/||b||, v = normalize(A^T u), w = v, x = 0.
/// Throws ContractError if b is zero or has the wrong length.
LsqrState lsqr_init(const LinearOperator& a, std::span<const double> b);

/// One bidiagonalization step followed by the Givens update of x and w.
/// Returns the new diagonal entry rho and the superdiagonal theta that
/// belongs to the next column of R. Costs one A and one A^T application.
LsqrStep lsqr_step(const LinearOperator& a, LsqrState& state);

/// Called after every LSQR iteration with (run index, t, forward error d).
using IterationObserver =
    std::function<void(std::size_t run, std::size_t t, std::span<const double> d)>;

/// Estimates sigma_max, sigma_min and the condition number of A.
///
/// sigma_max comes from power iteration. sigma_min comes from LSQR on a
/// consistent system b = A x* with a random unit x*: the forward error
/// d = x* - x concentrates in the smallest singular directions, and every
/// Rayleigh quotient ||A d|| / ||d|| is a certified upper bound on
/// sigma_min. The Lanczos estimate sigma_min_tilde (smallest singular value
/// of the stored bidiagonal R) is tighter but uncertified.
///
/// Randomness is derived from config.seed: stream 1 feeds power iteration,
/// streams 100+r and 200+r the start vector and inverse iteration of run r.
/// Identical config and seed give bit-identical results.
///
/// Each LSQR iteration applies the operator three times (A v, A^T u, A d).
EstimateResult estimate_condition(const LinearOperator& a, const EstimatorConfig& config,
                                  const IterationObserver& observer = {});

/// Inverse error function on [0, 1): y with erf(y) = p. Throws ContractError
/// outside that domain.
double inverse_erf(double p);

}  // namespace condest
