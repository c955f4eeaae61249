#include "condest/estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "condest/errors.hpp"
#include "condest/spectral.hpp"

namespace condest {

namespace {

constexpr std::uint64_t kPowerStream = 1;
constexpr std::uint64_t kStartStreamBase = 100;
constexpr std::uint64_t kInverseStreamBase = 200;

constexpr std::size_t kNotConverged = std::numeric_limits<std::size_t>::max();

// A freshly orthogonalized bidiagonalization vector whose norm is this
// small relative to the product it came from is pure cancellation noise:
// the Krylov space is (numerically) invariant.
double exhaustion_threshold(std::size_t length, double source_norm) {
  return 8.0 * kMachineEpsilon * std::sqrt(static_cast<double>(length)) * source_norm;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(c1_prime > 0.0 && c1_prime <= c1 && c1 < 1.0)) {
    throw ContractError("EstimatorConfig: require 0 < c1_prime <= c1 < 1");
  }
  if (!(c2 > 0.0 && c2 < 1.0)) {
    throw ContractError("EstimatorConfig: require 0 < c2 < 1");
  }
  if (!(c3 > 1.0)) {
    throw ContractError("EstimatorConfig: require c3 > 1");
  }
  if (!(c4_kappa > 1.0)) {
    throw ContractError("EstimatorConfig: require c4_kappa > 1");
  }
  if (!(epsilon_power > 0.0 && epsilon_power < 1.0) || !(delta_power > 0.0 && delta_power < 1.0)) {
    throw ContractError("EstimatorConfig: power-iteration parameters must lie in (0, 1)");
  }
  if (!(extra_fraction >= 0.0) || !std::isfinite(extra_fraction)) {
    throw ContractError("EstimatorConfig: extra_fraction must be finite and nonnegative");
  }
  if (max_iterations == 0) {
    throw ContractError("EstimatorConfig: max_iterations must be positive");
  }
  if (repeats == 0) {
    throw ContractError("EstimatorConfig: repeats must be positive");
  }
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ResidualSmall: return "ResidualSmall";
    case StopReason::ErrorSmall: return "ErrorSmall";
    case StopReason::RankDeficient: return "RankDeficient";
    case StopReason::ExactSolution: return "ExactSolution";
    case StopReason::MaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// LSQR

LsqrState lsqr_init(const LinearOperator& a, std::span<const double> b) {
  if (b.size() != a.rows()) {
    throw ContractError("lsqr_init: right-hand side has wrong length");
  }
  const double beta = norm2(b);
  if (beta == 0.0) {
    throw ContractError("lsqr_init: right-hand side is zero");
  }

  LsqrState s;
  s.beta = beta;
  s.u.assign(b.begin(), b.end());
  scale(1.0 / beta, s.u);

  s.v = a.apply_adjoint(s.u);
  s.alpha = norm2(s.v);
  if (s.alpha > 0.0) {
    scale(1.0 / s.alpha, s.v);
  } else {
    s.exhausted = true;
  }
  s.w = s.v;
  s.x.assign(a.cols(), 0.0);
  s.phi_bar = beta;
  s.rho_bar = s.alpha;
  return s;
}

LsqrStep lsqr_step(const LinearOperator& a, LsqrState& s) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  // Bidiagonalization: beta u <- A v - alpha u.
  Vector av = a.apply(s.v);
  const double av_norm = norm2(av);
  for (std::size_t i = 0; i < m; ++i) {
    s.u[i] = av[i] - s.alpha * s.u[i];
  }
  s.beta = norm2(s.u);
  if (s.beta <= exhaustion_threshold(m, av_norm)) {
    s.beta = 0.0;
    s.exhausted = true;
    std::fill(s.u.begin(), s.u.end(), 0.0);
  } else {
    scale(1.0 / s.beta, s.u);
  }

  // alpha v <- A^T u - beta v.
  Vector atu = a.apply_adjoint(s.u);
  const double atu_norm = norm2(atu);
  for (std::size_t j = 0; j < n; ++j) {
    atu[j] -= s.beta * s.v[j];
  }
  s.v = std::move(atu);
  s.alpha = norm2(s.v);
  if (s.alpha <= exhaustion_threshold(n, atu_norm)) {
    s.alpha = 0.0;
    s.exhausted = true;
    std::fill(s.v.begin(), s.v.end(), 0.0);
  } else {
    scale(1.0 / s.alpha, s.v);
  }

  // Givens rotation eliminating beta from the lower bidiagonal.
  const double rho = std::hypot(s.rho_bar, s.beta);
  if (rho == 0.0) {
    s.exhausted = true;
    return {0.0, 0.0};
  }
  const double c = s.rho_bar / rho;
  const double sn = s.beta / rho;
  const double theta = sn * s.alpha;
  s.rho_bar = -c * s.alpha;
  const double phi = c * s.phi_bar;
  s.phi_bar = sn * s.phi_bar;

  // x <- x + (phi/rho) w;  w <- v - (theta/rho) w.
  const double step = phi / rho;
  const double w_coeff = theta / rho;
  for (std::size_t j = 0; j < n; ++j) {
    s.x[j] += step * s.w[j];
    s.w[j] = s.v[j] - w_coeff * s.w[j];
  }
  return {rho, theta};
}

// ---------------------------------------------------------------------------
// Estimator driver

namespace {

struct RunOutcome {
  double sigma_min_hat = 0.0;
  Vector v_min_hat;
  double sigma_min_tilde = 0.0;
  std::size_t iterations = 0;
  StopReason stop_reason = StopReason::MaxIterations;
  ConvergenceTrace trace;
};

RunOutcome run_lsqr_phase(const LinearOperator& a, const EstimatorConfig& config,
                          double sigma_max_hat, const Vector& v_max_hat, double tau_numerator,
                          Rng& start_rng, Rng& inverse_rng, std::size_t run,
                          const IterationObserver& observer) {
  const std::size_t n = a.cols();
  RunOutcome out;
  out.sigma_min_hat = sigma_max_hat;
  out.v_min_hat = v_max_hat;

  Vector x_star = random_gaussian_vector(n, start_rng);
  const double x_hat_norm = norm2(x_star);
  const double tau = tau_numerator / x_hat_norm;
  scale(1.0 / x_hat_norm, x_star);

  const Vector b = a.apply(x_star);
  const double b_norm = norm2(b);
  if (b_norm == 0.0) {
    // x* lies in the null space: A is rank deficient and x* certifies it.
    out.sigma_min_hat = 0.0;
    out.v_min_hat = x_star;
    out.sigma_min_tilde = 0.0;
    out.stop_reason = StopReason::RankDeficient;
    return out;
  }

  LsqrState state = lsqr_init(a, b);
  BidiagonalUpper r;
  std::optional<double> theta_prev;
  double c1 = config.c1;

  std::size_t t = 0;
  std::size_t last = kNotConverged;  // T in the loop bound; set on first detection
  std::optional<StopReason> reason;

  Vector d(n);
  Vector ad(a.rows());
  while (t < last) {
    if (t >= config.max_iterations) {
      break;
    }
    if (state.exhausted) {
      if (!reason) reason = StopReason::ExactSolution;
      break;
    }
    ++t;

    const LsqrStep step = lsqr_step(a, state);
    if (step.rho == 0.0) {
      --t;
      if (!reason) reason = StopReason::ExactSolution;
      break;
    }
    r.append(step.rho, theta_prev);
    theta_prev = step.theta;

    for (std::size_t j = 0; j < n; ++j) {
      d[j] = x_star[j] - state.x[j];
    }
    const double d_norm = norm2(d);
    if (observer) {
      observer(run, t, d);
    }

    if (d_norm == 0.0) {
      out.sigma_min_hat = sigma_max_hat;
      out.v_min_hat = v_max_hat;
      out.trace.push_back({t, 0.0, 0.0, 0.0, out.sigma_min_hat, state.phi_bar});
      reason = StopReason::ExactSolution;
      break;
    }

    a.apply(d, ad);
    const double ad_norm = norm2(ad);
    const double rayleigh = ad_norm / d_norm;
    if (rayleigh < out.sigma_min_hat) {
      out.sigma_min_hat = rayleigh;
      out.v_min_hat = d;
    }
    const double kappa_now = sigma_max_hat / out.sigma_min_hat;
    if (kappa_now >= config.c4_kappa) {
      c1 = config.c1_prime;
    }
    out.trace.push_back({t, ad_norm, d_norm, rayleigh, out.sigma_min_hat, state.phi_bar});

    if (state.exhausted) {
      // The Krylov space is invariant: x is as good as it will get and the
      // extension would only iterate on rounding noise.
      if (!reason) reason = StopReason::ExactSolution;
      break;
    }

    if (last == kNotConverged) {
      const double residual_ratio = ad_norm / (sigma_max_hat * norm2(state.x) + b_norm);
      if (kappa_now >= config.c3) {
        reason = StopReason::RankDeficient;
      } else if (d_norm <= tau) {
        reason = StopReason::ErrorSmall;
      } else if (residual_ratio <= c1) {
        reason = StopReason::ResidualSmall;
      }
      if (reason) {
        last = static_cast<std::size_t>(
            std::ceil((1.0 + config.extra_fraction) * static_cast<double>(t)));
      }
    }
  }

  out.iterations = t;
  out.stop_reason = reason.value_or(StopReason::MaxIterations);
  if (r.empty()) {
    out.sigma_min_tilde = out.sigma_min_hat;
  } else {
    const double lanczos =
        inverse_power_sigma_min(r, config.epsilon_power, config.delta_power, inverse_rng);
    out.sigma_min_tilde = std::min(lanczos, out.sigma_min_hat);
  }
  return out;
}

}  // namespace

EstimateResult estimate_condition(const LinearOperator& a, const EstimatorConfig& config,
                                  const IterationObserver& observer) {
  config.validate();
  if (a.rows() == 0 || a.cols() == 0) {
    throw ContractError("estimate_condition: operator has an empty dimension");
  }

  const Rng root(config.seed);
  Rng power_rng = root.derive(kPowerStream);
  SigmaMaxEstimate smax =
      estimate_sigma_max(a, config.epsilon_power, config.delta_power, power_rng);
  if (smax.sigma_hat == 0.0) {
    throw ContractError("estimate_condition: operator is zero");
  }

  const double tau_numerator = inverse_erf(config.c2);

  EstimateResult best;
  bool have_best = false;
  for (std::size_t run = 0; run < config.repeats; ++run) {
    Rng start_rng = root.derive(kStartStreamBase + run);
    Rng inverse_rng = root.derive(kInverseStreamBase + run);
    RunOutcome outcome = run_lsqr_phase(a, config, smax.sigma_hat, smax.certificate,
                                        tau_numerator, start_rng, inverse_rng, run, observer);
    if (have_best && !(outcome.sigma_min_hat < best.sigma_min_hat)) {
      continue;
    }
    best.sigma_min_hat = outcome.sigma_min_hat;
    best.v_min_hat = std::move(outcome.v_min_hat);
    best.sigma_min_tilde = outcome.sigma_min_tilde;
    best.iterations = outcome.iterations;
    best.stop_reason = outcome.stop_reason;
    best.trace = std::move(outcome.trace);
    best.run_index = run;
    have_best = true;
  }

  best.sigma_max_hat = smax.sigma_hat;
  best.v_max_hat = std::move(smax.certificate);
  best.kappa_hat = best.sigma_max_hat / best.sigma_min_hat;
  best.kappa_tilde = best.sigma_max_hat / best.sigma_min_tilde;
  return best;
}

// ---------------------------------------------------------------------------

double inverse_erf(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ContractError("inverse_erf: argument must lie in [0, 1)");
  }
  if (p == 0.0) {
    return 0.0;
  }

  // Giles' single-precision polynomial approximation as the starting point.
  double w = -std::log((1.0 - p) * (1.0 + p));
  double y = 0.0;
  if (w < 5.0) {
    w -= 2.5;
    double q = 2.81022636e-08;
    q = 3.43273939e-07 + q * w;
    q = -3.5233877e-06 + q * w;
    q = -4.39150654e-06 + q * w;
    q = 0.00021858087 + q * w;
    q = -0.00125372503 + q * w;
    q = -0.00417768164 + q * w;
    q = 0.246640727 + q * w;
    q = 1.50140941 + q * w;
    y = q * p;
  } else {
    w = std::sqrt(w) - 3.0;
    double q = -0.000200214257;
    q = 0.000100950558 + q * w;
    q = 0.00134934322 + q * w;
    q = -0.00367342844 + q * w;
    q = 0.00573950773 + q * w;
    q = -0.0076224613 + q * w;
    q = 0.00943887047 + q * w;
    q = 1.00167406 + q * w;
    q = 2.83297682 + q * w;
    y = q * p;
  }

  // Newton refinement. Near 1 the residual is formed from erfc to avoid
  // cancellation in erf(y) - p.
  const double complement = 1.0 - p;
  for (int k = 0; k < 20; ++k) {
    const double residual = p < 0.5 ? std::erf(y) - p : complement - std::erfc(y);
    const double slope = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-y * y);
    const double delta = residual / slope;
    y -= delta;
    if (std::abs(delta) <= 1e-16 * std::abs(y)) {
      break;
    }
  }
  return y;
}

}  // namespace condest
