#include <gtest/gtest.h>

#include <cmath>

#include "condest/errors.hpp"
#include "condest/matgen.hpp"
#include "condest/spectral.hpp"
#include "condest/svd_oracle.hpp"

using namespace condest;

TEST(PowerIterationCount, PublishedCounts) {
  EXPECT_EQ(power_iteration_count(0.1, 1e-12, 1e9), 1004u);
  EXPECT_EQ(power_iteration_count(1.0 / 3.0, 1e-12, 1e9), 298u);
}

TEST(PowerIterationCount, HighPrecisionValue) {
  // 709.34... evaluated in 50-digit arithmetic
  EXPECT_EQ(power_iteration_count(0.1, 1e-12, 400), 710u);
}

TEST(PowerIterationCount, Monotonicity) {
  EXPECT_GE(power_iteration_count(0.05, 1e-12, 400), power_iteration_count(0.1, 1e-12, 400));
  EXPECT_GE(power_iteration_count(0.1, 1e-14, 400), power_iteration_count(0.1, 1e-12, 400));
  EXPECT_LE(power_iteration_count(0.1, 1e-12, 400), power_iteration_count(0.1, 1e-12, 4000));
}

TEST(PowerIterationCount, RejectsBadParameters) {
  EXPECT_THROW(power_iteration_count(0.0, 1e-12, 10), ContractError);
  EXPECT_THROW(power_iteration_count(1.0, 1e-12, 10), ContractError);
  EXPECT_THROW(power_iteration_count(0.1, 0.0, 10), ContractError);
  EXPECT_THROW(power_iteration_count(0.1, 1e-12, 0.5), ContractError);
}

TEST(EstimateSigmaMax, IdentityIsExact) {
  Rng rng(1);
  const auto est = estimate_sigma_max(DenseMatrix::identity(10), 0.1, 1e-12, rng);
  EXPECT_NEAR(est.sigma_hat, 1.0, 1e-15);
  EXPECT_NEAR(norm2(est.certificate), 1.0, 1e-12);
}

TEST(EstimateSigmaMax, DiagonalWithinBound) {
  Rng rng(2);
  const auto a = DenseMatrix::diagonal(std::vector<double>{3, 2, 1});
  const auto est = estimate_sigma_max(a, 0.1, 1e-12, rng);
  EXPECT_GE(est.sigma_hat, 2.7);
  EXPECT_LE(est.sigma_hat, 3.0);
  EXPECT_EQ(est.iterations, power_iteration_count(0.1, 1e-12, 3));
}

TEST(EstimateSigmaMax, PrescribedSpectrum) {
  Rng rng(3);
  SpectrumSpec spec{{SpectrumSegment::constant(1, 1.0), SpectrumSegment::constant(39, 0.5)}};
  const auto g = matrix_with_spectrum(100, 40, spec, rng);
  const auto est = estimate_sigma_max(g.matrix, 0.1, 1e-12, rng);
  EXPECT_GE(est.sigma_hat, 0.9);
  EXPECT_LE(est.sigma_hat, 1.0 + 1e-12);
}

TEST(EstimateSigmaMax, CertificateIdentity) {
  Rng rng(4);
  const auto a = random_sign_matrix(60, 30, rng);
  const auto est = estimate_sigma_max(a, 0.1, 1e-12, rng);
  EXPECT_NEAR(norm2(est.certificate), 1.0, 1e-12);
  EXPECT_NEAR(norm2(a.apply(est.certificate)) / est.sigma_hat, 1.0, 1e-12);
}

TEST(EstimateSigmaMax, ZeroOperatorFails) {
  Rng rng(5);
  EXPECT_THROW(estimate_sigma_max(DenseMatrix(4, 3), 0.1, 1e-12, rng), ConvergenceError);
}

TEST(EstimateSigmaMax, OneSidedOnRandomMatrices) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const std::size_t m = n + rng.below(41 - n);
    DenseMatrix a(m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) a(i, j) = rng.normal();
    const double oracle = jacobi_svd(a).singular_values.front();
    const double est = estimate_sigma_max(a, 0.1, 1e-12, rng).sigma_hat;
    EXPECT_LE(est, oracle * (1 + 1e-12)) << "trial " << trial;
    EXPECT_GT(est, 0.9 * oracle) << "trial " << trial;
  }
}

TEST(InversePowerSigmaMin, Examples) {
  Rng rng(7);
  const double diag = inverse_power_sigma_min(BidiagonalUpper({2, 3}, {0}), 0.1, 1e-12, rng);
  EXPECT_GE(diag, 2.0 * (1 - 1e-15));
  EXPECT_LE(diag, 2.0 / 0.9);
  const double golden = inverse_power_sigma_min(BidiagonalUpper({1, 1}, {1}), 0.1, 1e-12, rng);
  EXPECT_NEAR(golden, 0.6180339887498949, 0.1 * 0.6180339887498949);
  EXPECT_GE(golden, 0.6180339887498949 * (1 - 1e-14));
  EXPECT_EQ(inverse_power_sigma_min(BidiagonalUpper({1, 0, 2}, {1, 1}), 0.1, 1e-12, rng), 0.0);
  EXPECT_THROW(inverse_power_sigma_min(BidiagonalUpper(), 0.1, 1e-12, rng), ContractError);
}

TEST(InversePowerSigmaMin, BracketsOracleOnRandomBidiagonals) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<double> d(n);
    std::vector<double> e(n - 1);
    for (auto& x : d) x = rng.uniform() * (rng.uniform() < 0.5 ? -1 : 1);
    for (auto& x : e) x = rng.normal();
    const BidiagonalUpper r(d, e);
    const double oracle = jacobi_svd(r.to_dense()).singular_values.back();
    const double est = inverse_power_sigma_min(r, 0.1, 1e-12, rng);
    EXPECT_GE(est, oracle * (1 - 1e-10)) << "trial " << trial;
    EXPECT_LE(est, oracle / 0.9) << "trial " << trial;
  }
}
