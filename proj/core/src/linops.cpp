#include "condest/linops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "condest/errors.hpp"

namespace condest {

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ContractError("dot: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * y[i];
  }
  return s;
}

double norm2(std::span<const double> x) {
  double scale = 0.0;
  for (double xi : x) {
    scale = std::max(scale, std::abs(xi));
  }
  if (scale == 0.0 || !std::isfinite(scale)) {
    return scale;
  }
  double ssq = 0.0;
  for (double xi : x) {
    const double r = xi / scale;
    ssq += r * r;
  }
  return scale * std::sqrt(ssq);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) {
    throw ContractError("axpy: length mismatch");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] += a * x[i];
  }
}

void scale(double a, std::span<double> x) {
  for (auto& xi : x) {
    xi *= a;
  }
}

// ---------------------------------------------------------------------------

namespace {

void check_length(const char* what, std::size_t got, std::size_t expected) {
  if (got != expected) {
    throw ContractError(std::string(what) + ": expected length " + std::to_string(expected) +
                        ", got " + std::to_string(got));
  }
}

}  // namespace

Vector LinearOperator::apply(std::span<const double> x) const {
  Vector out(rows());
  apply(x, out);
  return out;
}

Vector LinearOperator::apply_adjoint(std::span<const double> y) const {
  Vector out(cols());
  apply_adjoint(y, out);
  return out;
}

void LinearOperator::apply(std::span<const double> x, std::span<double> out) const {
  check_length("apply input", x.size(), cols());
  check_length("apply output", out.size(), rows());
  do_apply(x, out);
}

void LinearOperator::apply_adjoint(std::span<const double> y, std::span<double> out) const {
  check_length("apply_adjoint input", y.size(), rows());
  check_length("apply_adjoint output", out.size(), cols());
  do_apply_adjoint(y, out);
}

// ---------------------------------------------------------------------------

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_{rows}, cols_{cols}, data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_{rows}, cols_{cols}, data_{std::move(column_major)} {
  if (data_.size() != rows * cols) {
    throw ContractError("DenseMatrix: entry count does not match rows*cols");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw ContractError("DenseMatrix: entries must be finite");
    }
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    m(i, i) = d[i];
  }
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  std::vector<double> data(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) {
      throw ContractError("DenseMatrix::from_rows: ragged rows");
    }
    for (std::size_t j = 0; j < n; ++j) {
      data[j * m + i] = rows[i][j];
    }
  }
  return DenseMatrix(m, n, std::move(data));
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) {
      t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

double DenseMatrix::frobenius_norm() const { return norm2(data_); }

void DenseMatrix::do_apply(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double xj = x[j];
    if (xj == 0.0) {
      continue;
    }
    const double* col = data_.data() + j * rows_;
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i] += col[i] * xj;
    }
  }
}

void DenseMatrix::do_apply_adjoint(std::span<const double> y, std::span<double> out) const {
  for (std::size_t j = 0; j < cols_; ++j) {
    const double* col = data_.data() + j * rows_;
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += col[i] * y[i];
    }
    out[j] = s;
  }
}

// ---------------------------------------------------------------------------

SparseMatrixCsr::SparseMatrixCsr(std::size_t rows, std::size_t cols,
                                 std::vector<std::size_t> row_offsets,
                                 std::vector<std::size_t> col_indices, std::vector<double> values)
    : rows_{rows},
      cols_{cols},
      row_offsets_{std::move(row_offsets)},
      col_indices_{std::move(col_indices)},
      values_{std::move(values)} {
  if (row_offsets_.size() != rows_ + 1 || row_offsets_.front() != 0) {
    throw ContractError("SparseMatrixCsr: row_offsets must have rows+1 entries starting at 0");
  }
  if (col_indices_.size() != values_.size() || row_offsets_.back() != values_.size()) {
    throw ContractError("SparseMatrixCsr: index/value arrays inconsistent with row_offsets");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_offsets_[i + 1] < row_offsets_[i]) {
      throw ContractError("SparseMatrixCsr: row_offsets not monotone");
    }
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] >= cols_) {
        throw ContractError("SparseMatrixCsr: column index out of range");
      }
      if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1]) {
        throw ContractError("SparseMatrixCsr: column indices not strictly increasing in row " +
                            std::to_string(i));
      }
      if (!std::isfinite(values_[k]) || values_[k] == 0.0) {
        throw ContractError("SparseMatrixCsr: stored values must be finite and nonzero");
      }
    }
  }
}

SparseMatrixCsr SparseMatrixCsr::from_triplets(std::size_t rows, std::size_t cols,
                                               std::vector<Triplet> entries) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw ContractError("SparseMatrixCsr::from_triplets: index out of range");
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<std::size_t> offsets(rows + 1, 0);
  std::vector<std::size_t> cols_out;
  std::vector<double> vals_out;
  cols_out.reserve(entries.size());
  vals_out.reserve(entries.size());

  std::size_t k = 0;
  while (k < entries.size()) {
    const std::size_t r = entries[k].row;
    const std::size_t c = entries[k].col;
    double sum = 0.0;
    for (; k < entries.size() && entries[k].row == r && entries[k].col == c; ++k) {
      sum += entries[k].value;
    }
    if (sum != 0.0) {
      cols_out.push_back(c);
      vals_out.push_back(sum);
      ++offsets[r + 1];
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    offsets[i + 1] += offsets[i];
  }
  return SparseMatrixCsr(rows, cols, std::move(offsets), std::move(cols_out), std::move(vals_out));
}

std::vector<Triplet> SparseMatrixCsr::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      out.push_back({i, col_indices_[k], values_[k]});
    }
  }
  return out;
}

DenseMatrix SparseMatrixCsr::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      d(i, col_indices_[k]) = values_[k];
    }
  }
  return d;
}

void SparseMatrixCsr::do_apply(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      s += values_[k] * x[col_indices_[k]];
    }
    out[i] = s;
  }
}

void SparseMatrixCsr::do_apply_adjoint(std::span<const double> y, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double yi = y[i];
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      out[col_indices_[k]] += values_[k] * yi;
    }
  }
}

// ---------------------------------------------------------------------------

void CountingOperator::do_apply(std::span<const double> x, std::span<double> out) const {
  forward_.fetch_add(1, std::memory_order_relaxed);
  inner_->apply(x, out);
}

void CountingOperator::do_apply_adjoint(std::span<const double> y, std::span<double> out) const {
  adjoint_.fetch_add(1, std::memory_order_relaxed);
  inner_->apply_adjoint(y, out);
}

}  // namespace condest
