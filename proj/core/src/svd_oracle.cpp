#include "condest/svd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "condest/errors.hpp"

namespace condest {

SvdResult jacobi_svd(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    throw ContractError("jacobi_svd: require rows >= cols");
  }
  constexpr int kMaxSweeps = 30;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  DenseMatrix w = a;
  DenseMatrix v = DenseMatrix::identity(n);

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double* ci = w.column(i).data();
        double* cj = w.column(j).data();
        double alpha = 0.0;
        double beta = 0.0;
        double gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += ci[k] * ci[k];
          beta += cj[k] * cj[k];
          gamma += ci[k] * cj[k];
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        converged = false;

        // Rotation that zeroes the (i, j) entry of the 2x2 Gram block.
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const double x = ci[k];
          const double y = cj[k];
          ci[k] = c * x - s * y;
          cj[k] = s * x + c * y;
        }
        double* vi = v.column(i).data();
        double* vj = v.column(j).data();
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vi[k];
          const double y = vj[k];
          vi[k] = c * x - s * y;
          vj[k] = s * x + c * y;
        }
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("jacobi_svd: no convergence within 30 sweeps");
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    norms[j] = norm2(w.column(j));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out{std::vector<double>(n), DenseMatrix(m, n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    const double sigma = norms[src];
    out.singular_values[k] = sigma;
    auto uk = out.u.column(k);
    if (sigma > 0.0) {
      const auto wc = w.column(src);
      for (std::size_t i = 0; i < m; ++i) {
        uk[i] = wc[i] / sigma;
      }
    }
    std::copy_n(v.column(src).begin(), n, out.v.column(k).begin());
  }
  return out;
}

Vector pseudo_inverse_apply(const SvdResult& svd, std::span<const double> b, double rank_tol) {
  const std::size_t m = svd.u.rows();
  const std::size_t n = svd.v.rows();
  if (b.size() != m) {
    throw ContractError("pseudo_inverse_apply: right-hand side has wrong length");
  }
  const double cutoff = svd.singular_values.empty() ? 0.0 : rank_tol * svd.singular_values[0];
  Vector x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double sigma = svd.singular_values[k];
    if (sigma <= cutoff || sigma == 0.0) {
      continue;
    }
    const double coeff = dot(svd.u.column(k), b) / sigma;
    axpy(coeff, svd.v.column(k), x);
  }
  return x;
}

Vector pseudo_inverse_apply(const DenseMatrix& a, std::span<const double> b, double rank_tol) {
  return pseudo_inverse_apply(jacobi_svd(a), b, rank_tol);
}

double baseline_sigma_min_by_norm(const SvdResult& svd, Rng& rng) {
  const Vector b = random_unit_vector(svd.u.rows(), rng);
  const double xn = norm2(pseudo_inverse_apply(svd, b));
  if (xn == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 1.0 / xn;
}

double baseline_sigma_min_by_norm(const DenseMatrix& a, Rng& rng) {
  if (a.rows() < a.cols()) {
    throw ContractError("baseline_sigma_min_by_norm: require rows >= cols");
  }
  return baseline_sigma_min_by_norm(jacobi_svd(a), rng);
}

}  // namespace condest
