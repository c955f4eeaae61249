#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "condest/linops.hpp"
#include "condest/random.hpp"

namespace condest {

/// A run of singular values. Endpoints are included: `linear` is an
/// arithmetic progression from lo to hi, `logarithmic` a geometric one.
struct SpectrumSegment {
  enum class Kind { Constant, Linear, Logarithmic };

  std::size_t count = 0;
  Kind kind = Kind::Constant;
  double lo = 0.0;
  double hi = 0.0;

  static SpectrumSegment constant(std::size_t count, double sigma) {
    return {count, Kind::Constant, sigma, sigma};
  }
  static SpectrumSegment linear(std::size_t count, double lo, double hi) {
    return {count, Kind::Linear, lo, hi};
  }
  static SpectrumSegment logarithmic(std::size_t count, double lo, double hi) {
    return {count, Kind::Logarithmic, lo, hi};
  }
};

struct SpectrumSpec {
  std::vector<SpectrumSegment> segments;

  std::size_t size() const;

  /// All singular values, sorted descending. Throws ContractError for
  /// negative values, lo > hi, or a logarithmic segment touching zero.
  std::vector<double> values() const;
};

struct GeneratedMatrix {
  DenseMatrix matrix;                 // U * diag(sigma) * V^T
  DenseMatrix right_singular_vectors;  // V, n x n orthogonal
  std::vector<double> singular_values;  // descending
};

/// m x n matrix (m >= n) with the given singular values and Haar-random
/// singular vectors. U and V are Householder-QR orthonormalizations of
/// independent Gaussian matrices.
GeneratedMatrix matrix_with_spectrum(std::size_t m, std::size_t n, const SpectrumSpec& spec,
                                     Rng& rng);

/// m x n matrix with orthonormal columns (m >= n), Haar distributed.
DenseMatrix random_orthonormal_columns(std::size_t m, std::size_t n, Rng& rng);

struct Preset {
  std::string name;
  std::size_t m = 0;
  std::size_t n = 0;
  SpectrumSpec spectrum;
};

/// Named test spectra (all 1000 x 400):
///   fig1           90 @ 1, 300 log[1e-3, 1e-2], 10 @ 1e-8
///   fig1_deep      as fig1 with the small cluster at 1e-13
///   fig3_rankdef   as fig1 with the small cluster at 1e-16
///   fig4_inconsistent  50 log[1e-10, 1e-9], 50 log[1e-1, 1], 300 @ 1
///   fig6_linear    400 linear[1e-8, 1]
///   fig7_log       200 log[1e-3, 1], 200 @ 1
///   fig8_clusters  10 @ 1e-10, 10 @ 1e-7, 300 log[1e-3, 1e-2], 80 @ 1
/// Throws ContractError for an unknown name.
Preset preset(std::string_view name);

std::vector<std::string> preset_names();

/// Shrinks a preset by an integer factor: m and n are divided and segment
/// counts are reduced proportionally (largest-remainder rounding, so the
/// counts still sum to the new n).
Preset scaled(const Preset& p, std::size_t divisor);

/// Sparse m x n matrix with exactly nnz_per_col entries per column at
/// distinct uniformly random rows, each value +1 or -1 with probability 1/2.
SparseMatrixCsr random_sign_matrix(std::size_t m, std::size_t n, Rng& rng,
                                   std::size_t nnz_per_col = 3);

/// Parses a spectrum description such as "const:90:1,log:300:1e-3:1e-2".
/// Segment forms: const:<count>:<sigma>, lin:<count>:<lo>:<hi>,
/// log:<count>:<lo>:<hi>. Throws ContractError on malformed input.
SpectrumSpec parse_spectrum(std::string_view text);

}  // namespace condest
