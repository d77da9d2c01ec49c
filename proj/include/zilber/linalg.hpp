#pragma once

#include "zilber/matrix.hpp"

#include <optional>
#include <vector>

namespace zilber {

struct SmithOptions {
  bool left = false;           // U
  bool left_inverse = false;   // U^{-1}
  bool right = false;          // V
  bool right_inverse = false;  // V^{-1}
};

/// U * A * V = diag(d_0, ..., d_{rank-1}, 0, ...) with d_i | d_{i+1}, d_i > 0.
struct SmithForm {
  std::vector<Integer> diagonal;  // nonzero invariant factors, length == rank
  std::size_t rank = 0;
  Matrix U, U_inv, V, V_inv;      // populated per SmithOptions
};

/// Smith normal form by elimination, always pivoting on the entry of
/// smallest absolute value so coefficient growth stays bounded.
SmithForm smith_normal_form(const Matrix& a, SmithOptions options = {});

/// Rank over Q (fraction-free elimination).
std::size_t rank(const Matrix& a);

/// Nonzero invariant factors of a, in divisibility order.
std::vector<Integer> invariant_factors(const Matrix& a);

/// Columns form a basis of the (saturated) integer kernel of a.
Matrix kernel_basis(const Matrix& a);

/// Columns form a Z-basis of the column span of a.
Matrix image_basis(const Matrix& a);

bool is_unimodular(const Matrix& a);
Matrix unimodular_inverse(const Matrix& a);

/// Factored once, then answers integer solvability of A x = b for many b.
class LatticeSolver {
 public:
  explicit LatticeSolver(const Matrix& a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::optional<Vector> solve(std::span<const Integer> b) const;
  bool contains(std::span<const Integer> b) const { return solve(b).has_value(); }
  // Solves A X = B column by column; nullopt if any column is unsolvable.
  std::optional<Matrix> solve(const Matrix& b) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  SmithForm smith_;
};

/// True when every column of sub lies in the integer span of the columns of ambient.
bool span_contains(const Matrix& ambient, const Matrix& sub);
bool spans_equal(const Matrix& a, const Matrix& b);

}  // namespace zilber
