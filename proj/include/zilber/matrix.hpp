#pragma once

#include "zilber/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace zilber {

using Vector = std::vector<Integer>;

/// Dense row-major integer matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;
  void set_column(std::size_t c, std::span<const Integer> v);

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> idx) const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

  bool is_zero() const;
  bool is_identity() const;

  Vector apply(std::span<const Integer> v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Integer& k);
  // col a += k * col b
  void add_col_multiple(std::size_t a, std::size_t b, const Integer& k);
  void negate_row(std::size_t a);
  void negate_col(std::size_t a);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Integer& k, const Matrix& a);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Sparse vector as sorted (index, nonzero value) pairs.
class SparseVec {
 public:
  using Entry = std::pair<std::uint32_t, Integer>;

  SparseVec() = default;
  explicit SparseVec(std::vector<Entry> entries);  // sorts and merges duplicates
  static SparseVec unit(std::uint32_t i, Integer v = 1) { return SparseVec(std::vector<Entry>{{i, std::move(v)}}); }
  static SparseVec from_dense(std::span<const Integer> v);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  Integer at(std::uint32_t i) const;

  Vector to_dense(std::size_t n) const;
  void add_scaled(const SparseVec& other, const Integer& k);  // *this += k * other
  SparseVec scaled(const Integer& k) const;

  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  std::vector<Entry> entries_;
};

SparseVec kron(const SparseVec& a, const SparseVec& b, std::size_t b_dim);

/// Column-compressed sparse integer matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const Matrix& m);
  // Column c has a single 1 at row index_map[c].
  static SparseMatrix from_index_map(std::size_t rows, std::span<const std::uint32_t> index_map);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const SparseVec& column(std::size_t c) const { return columns_[c]; }
  void set_column(std::size_t c, SparseVec v) { columns_[c] = std::move(v); }

  SparseVec apply(const SparseVec& v) const;
  Matrix to_dense() const;
  std::size_t nnz() const;

  // True when every column is zero or a single entry of +1 or -1.
  bool is_monomial_unit() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> columns_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace zilber
