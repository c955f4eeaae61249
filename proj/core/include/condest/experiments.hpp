#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "condest/estimator.hpp"
#include "condest/linops.hpp"
#include "condest/matgen.hpp"
#include "condest/random.hpp"

namespace condest {

// Diagnostic experiments that show why the estimator works and why simpler
// alternatives do not.

/// Runs the estimator on a generated matrix and reports |V^T d| after every
/// LSQR iteration (one row of n values per iteration; run 0 only).
using ProjectionSink = std::function<void(std::size_t t, std::span<const double> projection)>;

EstimateResult projection_trace(const GeneratedMatrix& g, const EstimatorConfig& config,
                                const ProjectionSink& sink);

struct InconsistentRow {
  std::size_t t = 0;
  double atr_over_sr = 0.0;          // ||A^T r|| / (sigma_max_hat ||r||)
  double norm_ratio_estimate = 0.0;  // ||b + r|| / ||x|| with r = A x - b
  std::optional<double> lanczos_sigma_min;  // sigma_min(R), every 10th step
};

struct InconsistentOptions {
  std::size_t iterations = 5000;
  std::size_t lanczos_every = 10;
  /// Use b = A x* for a random x* instead of a random b (contrast run).
  bool consistent = false;
  std::uint64_t seed = 0;
};

/// Plain LSQR on a random unit right-hand side. With m > n such a b is
/// almost surely outside range(A). Stops early only if the Krylov space is
/// exhausted. Rows are streamed to the sink as they are produced.
void inconsistent_baseline(const LinearOperator& a, const InconsistentOptions& options,
                           const std::function<void(const InconsistentRow&)>& sink);

struct PinvDraw {
  double estimate = 0.0;
  double oracle_sigma_min = 0.0;
  double relative_error = 0.0;  // (estimate - oracle) / oracle
};

/// `draws` independent estimates 1/||A^+ b|| compared with the Jacobi SVD's
/// sigma_min.
std::vector<PinvDraw> pinv_baseline(const DenseMatrix& a, std::size_t draws, Rng& rng);

}  // namespace condest
