#pragma once

#include <cstddef>
#include <vector>

#include "arrlog/field.hpp"

namespace arrlog {

template <class F>
using Vec = std::vector<typename F::Elem>;

/// Dense row-major matrix over an exact field.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  explicit Matrix(F field) : field_(std::move(field)) {}
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}
  /// Entries converted from rationals; every row must have `cols` entries.
  static Matrix from_rows(F field, const std::vector<std::vector<mpq_class>>& rows, std::size_t cols);
  static Matrix from_vectors(F field, const std::vector<Vec<F>>& rows, std::size_t cols);
  static Matrix identity(F field, std::size_t n);

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem* row(std::size_t i) { return data_.data() + i * cols_; }
  const Elem* row(std::size_t i) const { return data_.data() + i * cols_; }
  Vec<F> row_vector(std::size_t i) const { return Vec<F>(row(i), row(i) + cols_); }

  void append_row(const Vec<F>& r);
  Matrix transpose() const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

template <class F>
struct RrefResult {
  Matrix<F> matrix;  // only the first `rank` rows are nonzero
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Pivot rows are normalized to a leading one.
template <class F>
RrefResult<F> rref(const Matrix<F>& m);

template <class F>
std::size_t rank(const Matrix<F>& m);

/// Basis of {v : M v = 0}; one vector per free column, with a one in that
/// column and zeros in the other free columns.
template <class F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& m);

/// Kernel basis read off an already reduced matrix.
template <class F>
std::vector<Vec<F>> kernel_from_rref(const RrefResult<F>& r);

template <class F>
bool in_span(const F& field, const Vec<F>& v, const std::vector<Vec<F>>& basis);

template <class F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b);

template <class F>
Vec<F> apply(const Matrix<F>& a, const Vec<F>& v);

/// Throws Singular when the matrix is not invertible.
template <class F>
Matrix<F> inverse(const Matrix<F>& a);

template <class F>
typename F::Elem determinant(const Matrix<F>& a);

}  // namespace arrlog
