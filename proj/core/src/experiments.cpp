#include "condest/experiments.hpp"

#include <cmath>

#include "condest/bidiag.hpp"
#include "condest/errors.hpp"
#include "condest/spectral.hpp"
#include "condest/svd_oracle.hpp"

namespace condest {

EstimateResult projection_trace(const GeneratedMatrix& g, const EstimatorConfig& config,
                                const ProjectionSink& sink) {
  const DenseMatrix& v = g.right_singular_vectors;
  Vector projection(v.cols());
  auto observer = [&](std::size_t run, std::size_t t, std::span<const double> d) {
    if (run != 0) {
      return;
    }
    for (std::size_t k = 0; k < v.cols(); ++k) {
      projection[k] = std::abs(dot(v.column(k), d));
    }
    sink(t, projection);
  };
  return estimate_condition(g.matrix, config, observer);
}

void inconsistent_baseline(const LinearOperator& a, const InconsistentOptions& options,
                           const std::function<void(const InconsistentRow&)>& sink) {
  const Rng root(options.seed);
  Rng power_rng = root.derive(1);
  Rng rhs_rng = root.derive(2);
  Rng inverse_rng = root.derive(3);

  const double sigma_max = estimate_sigma_max(a, 0.1, 1e-12, power_rng).sigma_hat;

  Vector b;
  if (options.consistent) {
    b = a.apply(random_unit_vector(a.cols(), rhs_rng));
  } else {
    b = random_unit_vector(a.rows(), rhs_rng);
  }

  LsqrState state = lsqr_init(a, b);
  BidiagonalUpper r;
  std::optional<double> theta_prev;
  Vector residual(a.rows());
  Vector ax(a.rows());
  Vector atr(a.cols());
  for (std::size_t t = 1; t <= options.iterations && !state.exhausted; ++t) {
    const LsqrStep step = lsqr_step(a, state);
    if (step.rho == 0.0) {
      break;
    }
    r.append(step.rho, theta_prev);
    theta_prev = step.theta;

    a.apply(state.x, ax);
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual[i] = ax[i] - b[i];
    }
    a.apply_adjoint(residual, atr);

    InconsistentRow row;
    row.t = t;
    row.atr_over_sr = norm2(atr) / (sigma_max * norm2(residual));
    row.norm_ratio_estimate = norm2(ax) / norm2(state.x);
    if (options.lanczos_every > 0 && t % options.lanczos_every == 0) {
      row.lanczos_sigma_min = inverse_power_sigma_min(r, 0.1, 1e-12, inverse_rng);
    }
    sink(row);
  }
}

std::vector<PinvDraw> pinv_baseline(const DenseMatrix& a, std::size_t draws, Rng& rng) {
  const SvdResult svd = jacobi_svd(a);
  const double oracle = svd.singular_values.back();
  std::vector<PinvDraw> out;
  out.reserve(draws);
  for (std::size_t k = 0; k < draws; ++k) {
    const double estimate = baseline_sigma_min_by_norm(svd, rng);
    out.push_back({estimate, oracle, (estimate - oracle) / oracle});
  }
  return out;
}

}  // namespace condest
