#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace condest {

using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Vector kernels. All reductions run sequentially left to right so results
// are bit-reproducible.

double dot(std::span<const double> x, std::span<const double> y);

/// Euclidean norm, scaled by max |x_i| so that it neither overflows nor
/// underflows when the true norm is representable.
double norm2(std::span<const double> x);

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

void scale(double a, std::span<double> x);

// ---------------------------------------------------------------------------

/// A real m-by-n matrix seen only through y = A x and y = A^T x.
///
/// apply()/apply_adjoint() validate dimensions and throw ContractError on
/// mismatch; implementations override the do_* hooks, which may assume sizes
/// are correct. Implementations must be safe to call concurrently.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;

  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;

  Vector apply(std::span<const double> x) const;
  Vector apply_adjoint(std::span<const double> y) const;

  void apply(std::span<const double> x, std::span<double> out) const;
  void apply_adjoint(std::span<const double> y, std::span<double> out) const;

protected:
  virtual void do_apply(std::span<const double> x, std::span<double> out) const = 0;
  virtual void do_apply_adjoint(std::span<const double> y, std::span<double> out) const = 0;
};

/// Column-major dense matrix.
class DenseMatrix final : public LinearOperator {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);
  /// Row-major initializer, convenient in tests: from_rows({{1, 2}, {3, 4}}).
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }

  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }

  const std::vector<double>& data() const { return data_; }

  DenseMatrix transpose() const;
  double frobenius_norm() const;

protected:
  void do_apply(std::span<const double> x, std::span<double> out) const override;
  void do_apply_adjoint(std::span<const double> y, std::span<double> out) const override;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// One stored entry, 0-based.
struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing in
/// each row and stored values are finite and nonzero. The adjoint is a
/// transposed traversal of the same arrays; no second copy is kept.
class SparseMatrixCsr final : public LinearOperator {
public:
  SparseMatrixCsr() = default;

  /// Validates every invariant; throws ContractError on violation.
  SparseMatrixCsr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                  std::vector<std::size_t> col_indices, std::vector<double> values);

  /// Builds from unordered triplets. Duplicates are summed; entries that sum
  /// to exactly zero are dropped.
  static SparseMatrixCsr from_triplets(std::size_t rows, std::size_t cols,
                                       std::vector<Triplet> entries);

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::size_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  /// Entries in row-major order.
  std::vector<Triplet> triplets() const;

  DenseMatrix to_dense() const;

protected:
  void do_apply(std::span<const double> x, std::span<double> out) const override;
  void do_apply_adjoint(std::span<const double> y, std::span<double> out) const override;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// Forwards to another operator and counts applications of A and A^T.
/// The wrapped operator must outlive this object.
class CountingOperator final : public LinearOperator {
public:
  explicit CountingOperator(const LinearOperator& inner) : inner_{&inner} {}

  std::size_t rows() const override { return inner_->rows(); }
  std::size_t cols() const override { return inner_->cols(); }

  std::uint64_t applications() const { return forward_.load() + adjoint_.load(); }
  std::uint64_t forward_applications() const { return forward_.load(); }
  std::uint64_t adjoint_applications() const { return adjoint_.load(); }

protected:
  void do_apply(std::span<const double> x, std::span<double> out) const override;
  void do_apply_adjoint(std::span<const double> y, std::span<double> out) const override;

private:
  const LinearOperator* inner_;
  mutable std::atomic<std::uint64_t> forward_{0};
  mutable std::atomic<std::uint64_t> adjoint_{0};
};

}  // namespace condest
