#include <gtest/gtest.h>

#include <cmath>

#include "condest/errors.hpp"
#include "condest/matgen.hpp"
#include "condest/svd_oracle.hpp"
#include "oracles.hpp"

using namespace condest;

namespace {

DenseMatrix random_dense(std::size_t m, std::size_t n, Rng& rng) {
  DenseMatrix a(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) a(i, j) = rng.normal();
  return a;
}

}  // namespace

TEST(JacobiSvd, Diagonal) {
  const auto s = jacobi_svd(DenseMatrix::diagonal(std::vector<double>{3, 4}));
  EXPECT_EQ(s.singular_values, (std::vector<double>{4, 3}));
}

TEST(JacobiSvd, GoldenRatio) {
  const auto s = jacobi_svd(DenseMatrix::from_rows({{1, 1}, {0, 1}}));
  EXPECT_NEAR(s.singular_values[0], 1.6180339887498949, 1e-15);
  EXPECT_NEAR(s.singular_values[1], 0.6180339887498949, 1e-15);
}

TEST(JacobiSvd, ReconstructionAndOrthogonality) {
  Rng rng(61);
  const auto a = random_dense(20, 8, rng);
  const auto s = jacobi_svd(a);
  DenseMatrix rec(20, 8);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      for (std::size_t k = 0; k < 8; ++k)
        rec(i, j) += s.u(i, k) * s.singular_values[k] * s.v(j, k);
  double diff = 0.0;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 8; ++j) diff += (rec(i, j) - a(i, j)) * (rec(i, j) - a(i, j));
  EXPECT_LE(std::sqrt(diff) / a.frobenius_norm(), 1e-12);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_NEAR(dot(s.v.column(i), s.v.column(j)), i == j ? 1.0 : 0.0, 1e-12);
      EXPECT_NEAR(dot(s.u.column(i), s.u.column(j)), i == j ? 1.0 : 0.0, 1e-12);
    }
  for (std::size_t k = 1; k < 8; ++k) EXPECT_GE(s.singular_values[k - 1], s.singular_values[k]);
}

TEST(JacobiSvd, MatchesCubicRootsFor3x3) {
  Rng rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_dense(3, 3, rng);
    const auto want = condest::testing::singular_values_3x3(a);
    const auto got = jacobi_svd(a).singular_values;
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(got[k], want[k], 1e-10 * want[0]) << "trial " << trial;
    }
  }
}

TEST(JacobiSvd, RankDeficientColumnOfU) {
  const auto s = jacobi_svd(DenseMatrix::from_rows({{1, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(s.singular_values[1], 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.u(i, 1), 0.0);
}

TEST(JacobiSvd, RejectsWide) {
  EXPECT_THROW(jacobi_svd(DenseMatrix(2, 3)), ContractError);
}

TEST(PseudoInverseApply, Examples) {
  EXPECT_EQ(pseudo_inverse_apply(DenseMatrix::diagonal(std::vector<double>{2, 4}),
                                 std::vector<double>{2, 4}),
            (Vector{1, 1}));
  const auto x = pseudo_inverse_apply(DenseMatrix::diagonal(std::vector<double>{1, 0}),
                                      std::vector<double>{1, 1});
  EXPECT_EQ(x, (Vector{1, 0}));
}

TEST(PseudoInverseApply, RecoversSolution) {
  Rng rng(63);
  SpectrumSpec spec{{SpectrumSegment::logarithmic(15, 1e-6, 1.0)}};
  const auto g = matrix_with_spectrum(25, 15, spec, rng);
  const auto x = random_gaussian_vector(15, rng);
  const auto b = g.matrix.apply(x);
  const auto y = pseudo_inverse_apply(g.matrix, b);
  const auto ay = g.matrix.apply(y);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_NEAR(ay[i], b[i], 1e-10);
  for (std::size_t j = 0; j < 15; ++j) EXPECT_NEAR(y[j], x[j], 1e-10 * norm2(x) * 1e6);
  EXPECT_THROW(pseudo_inverse_apply(g.matrix, std::vector<double>{1}), ContractError);
}

TEST(PseudoInverseApply, WellConditionedInverse) {
  Rng rng(64);
  SpectrumSpec spec{{SpectrumSegment::logarithmic(10, 1e-2, 1.0)}};
  const auto g = matrix_with_spectrum(12, 10, spec, rng);
  const auto x = random_gaussian_vector(10, rng);
  const auto y = pseudo_inverse_apply(g.matrix, g.matrix.apply(x));
  for (std::size_t j = 0; j < 10; ++j) EXPECT_NEAR(y[j], x[j], 1e-10);
}

TEST(BaselineSigmaMin, ScaledIdentity) {
  Rng rng(65);
  auto a = DenseMatrix::identity(5);
  for (std::size_t k = 0; k < 5; ++k) a(k, k) = 0.25;
  EXPECT_NEAR(baseline_sigma_min_by_norm(a, rng), 0.25, 1e-15);
}

TEST(BaselineSigmaMin, Brackets) {
  Rng rng(66);
  const auto a = DenseMatrix::diagonal(std::vector<double>{1, 1e-3});
  for (int k = 0; k < 20; ++k) {
    const double e = baseline_sigma_min_by_norm(a, rng);
    EXPECT_GE(e, 1e-3);
    EXPECT_LE(e, 1.0);
  }
}

TEST(BaselineSigmaMin, AlwaysOverestimates) {
  Rng rng(67);
  SpectrumSpec spec{{SpectrumSegment::linear(40, 1e-3, 1.0)}};
  const auto g = matrix_with_spectrum(60, 40, spec, rng);
  const auto svd = jacobi_svd(g.matrix);
  for (int k = 0; k < 50; ++k) {
    EXPECT_GT(baseline_sigma_min_by_norm(svd, rng), svd.singular_values.back());
  }
}

TEST(BaselineSigmaMin, ZeroMatrixIsInfinite) {
  Rng rng(68);
  EXPECT_TRUE(std::isinf(baseline_sigma_min_by_norm(DenseMatrix(3, 2), rng)));
}
