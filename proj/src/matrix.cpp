#include "zilber/matrix.hpp"

#include "zilber/error.hpp"

#include <algorithm>

namespace zilber {

Matrix::Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, ErrorCode::invalid_argument, "ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_column(std::size_t c, std::span<const Integer> v) {
  require(v.size() == rows_, ErrorCode::invalid_argument, "column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

Vector Matrix::apply(std::span<const Integer> v) const {
  require(v.size() == cols_, ErrorCode::invalid_argument, "matrix-vector size mismatch");
  Vector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Integer& a = (*this)(r, c);
      if (a != 0) out[r] += a * v[c];
    }
  }
  return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void Matrix::add_row_multiple(std::size_t a, std::size_t b, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const Integer& x = (*this)(b, c);
    if (x != 0) (*this)(a, c) += k * x;
  }
}

void Matrix::add_col_multiple(std::size_t a, std::size_t b, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Integer& x = (*this)(r, b);
    if (x != 0) (*this)(r, a) += k * x;
  }
}

void Matrix::negate_row(std::size_t a) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(a, c) = -(*this)(a, c);
}

void Matrix::negate_col(std::size_t a) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, a) = -(*this)(r, a);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::invalid_argument, "matrix product size mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Integer& y = b(k, j);
        if (y != 0) out(i, j) += x * y;
      }
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::invalid_argument, "matrix sum size mismatch");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::invalid_argument, "matrix difference size mismatch");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
  return out;
}

Matrix operator*(const Integer& k, const Matrix& a) {
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= k;
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::invalid_argument, "hstack row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorCode::invalid_argument, "vstack column mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return out;
}

// ---------------------------------------------------------------------------

SparseVec::SparseVec(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first)
      entries_.back().second += e.second;
    else
      entries_.push_back(std::move(e));
    if (entries_.back().second == 0) entries_.pop_back();
  }
}

SparseVec SparseVec::from_dense(std::span<const Integer> v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.entries_.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return out;
}

Integer SparseVec::at(std::uint32_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::uint32_t k) { return e.first < k; });
  return (it != entries_.end() && it->first == i) ? it->second : Integer(0);
}

Vector SparseVec::to_dense(std::size_t n) const {
  Vector v(n);
  for (const auto& [i, x] : entries_) {
    require(i < n, ErrorCode::invalid_argument, "sparse index out of range");
    v[i] = x;
  }
  return v;
}

void SparseVec::add_scaled(const SparseVec& other, const Integer& k) {
  if (k == 0 || other.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, k * b->second);
      ++b;
    } else {
      Integer s = a->second + k * b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

SparseVec SparseVec::scaled(const Integer& k) const {
  SparseVec out;
  if (k == 0) return out;
  out.entries_ = entries_;
  for (auto& e : out.entries_) e.second *= k;
  return out;
}

SparseVec kron(const SparseVec& a, const SparseVec& b, std::size_t b_dim) {
  std::vector<SparseVec::Entry> out;
  out.reserve(a.nnz() * b.nnz());
  for (const auto& [i, x] : a.entries())
    for (const auto& [j, y] : b.entries())
      out.emplace_back(static_cast<std::uint32_t>(i * b_dim + j), x * y);
  return SparseVec(std::move(out));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVec::unit(static_cast<std::uint32_t>(i));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& d) {
  SparseMatrix m(d.rows(), d.cols());
  for (std::size_t c = 0; c < d.cols(); ++c) m.columns_[c] = SparseVec::from_dense(d.column(c));
  return m;
}

SparseMatrix SparseMatrix::from_index_map(std::size_t rows, std::span<const std::uint32_t> index_map) {
  SparseMatrix m(rows, index_map.size());
  for (std::size_t c = 0; c < index_map.size(); ++c) {
    require(index_map[c] < rows, ErrorCode::invalid_argument, "index map out of range");
    m.columns_[c] = SparseVec::unit(index_map[c]);
  }
  return m;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, x] : v.entries()) {
    require(i < cols_, ErrorCode::invalid_argument, "sparse apply index out of range");
    out.add_scaled(columns_[i], x);
  }
  return out;
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& [r, x] : columns_[c].entries()) m(r, c) = x;
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.nnz();
  return n;
}

bool SparseMatrix::is_monomial_unit() const {
  for (const auto& c : columns_) {
    if (c.nnz() > 1) return false;
    if (c.nnz() == 1 && abs_value(c.entries()[0].second) != 1) return false;
  }
  return true;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  require(a.cols() == b.rows(), ErrorCode::invalid_argument, "sparse product size mismatch");
  SparseMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) out.set_column(c, a.apply(b.column(c)));
  return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::invalid_argument, "sparse sum size mismatch");
  SparseMatrix out = a;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    SparseVec v = a.column(c);
    v.add_scaled(b.column(c), 1);
    out.set_column(c, std::move(v));
  }
  return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::invalid_argument, "sparse difference size mismatch");
  SparseMatrix out = a;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    SparseVec v = a.column(c);
    v.add_scaled(b.column(c), -1);
    out.set_column(c, std::move(v));
  }
  return out;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      out.set_column(i * b.cols() + j, kron(a.column(i), b.column(j), b.rows()));
  return out;
}

}  // namespace zilber
