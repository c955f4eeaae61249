#include "condest/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "condest/errors.hpp"

namespace condest {

std::size_t power_iteration_count(double epsilon, double delta, double n) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ContractError("power_iteration_count: epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractError("power_iteration_count: delta must lie in (0, 1)");
  }
  if (!(n >= 1.0)) {
    throw ContractError("power_iteration_count: n must be at least 1");
  }
  // ln((2n)^2) = 2 ln(2n); ln(1/(eps delta^2)) = -ln(eps) - 2 ln(delta).
  const double bound = (2.0 * std::log(2.0 * n) - std::log(epsilon) - 2.0 * std::log(delta)) /
                       epsilon;
  return static_cast<std::size_t>(std::ceil(bound));
}

SigmaMaxEstimate estimate_sigma_max(const LinearOperator& a, double epsilon, double delta,
                                    Rng& rng) {
  const std::size_t n = a.cols();
  const std::size_t iterations = power_iteration_count(epsilon, delta, static_cast<double>(n));

  Vector av(a.rows());
  Vector v;
  constexpr int kMaxStarts = 4;  // initial draw plus three restarts
  for (int attempt = 0; attempt < kMaxStarts; ++attempt) {
    v = random_unit_vector(n, rng);
    a.apply(v, av);
    if (norm2(av) > 0.0) {
      break;
    }
    if (attempt + 1 == kMaxStarts) {
      throw ConvergenceError("estimate_sigma_max: operator annihilates every random start");
    }
  }

  Vector z(n);
  for (std::size_t k = 0; k < iterations; ++k) {
    if (k > 0) {
      a.apply(v, av);
    }
    a.apply_adjoint(av, z);
    const double nz = norm2(z);
    if (nz == 0.0) {
      // v drifted into the null space through rounding; keep the last
      // nonzero iterate.
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = z[i] / nz;
    }
  }
  a.apply(v, av);
  return {norm2(av), std::move(v), iterations};
}

double inverse_power_sigma_min(const BidiagonalUpper& r, double epsilon, double delta, Rng& rng) {
  if (r.empty()) {
    throw ContractError("inverse_power_sigma_min: empty matrix");
  }
  const auto& d = r.diag();
  if (std::any_of(d.begin(), d.end(), [](double x) { return x == 0.0; })) {
    return 0.0;
  }

  const std::size_t iterations =
      power_iteration_count(epsilon, delta, static_cast<double>(r.size()));
  Vector v = random_unit_vector(r.size(), rng);
  for (std::size_t k = 0; k < iterations; ++k) {
    Vector z = r.solve_lower(v);
    double nz = norm2(z);
    if (!std::isfinite(nz) || nz == 0.0) {
      break;
    }
    scale(1.0 / nz, z);
    z = r.solve_upper(z);
    nz = norm2(z);
    if (!std::isfinite(nz) || nz == 0.0) {
      break;
    }
    scale(1.0 / nz, z);
    v = std::move(z);
  }
  return norm2(r.multiply(v));
}

}  // namespace condest
