#include "zilber/linalg.hpp"

#include "zilber/error.hpp"

namespace zilber {
namespace {

// Quotient of a by p rounded to nearest, so |a - q p| <= |p| / 2.
Integer nearest_quotient(const Integer& a, const Integer& p) {
  Integer q = a / p;
  Integer r = a - q * p;
  if (2 * abs_value(r) > abs_value(p)) {
    if ((r < 0) == (p < 0))
      ++q;
    else
      --q;
  }
  return q;
}

struct SmithWorker {
  Matrix s;
  SmithOptions opt;
  Matrix u, u_inv, v, v_inv;

  SmithWorker(const Matrix& a, SmithOptions o) : s(a), opt(o) {
    if (opt.left) u = Matrix::identity(a.rows());
    if (opt.left_inverse) u_inv = Matrix::identity(a.rows());
    if (opt.right) v = Matrix::identity(a.cols());
    if (opt.right_inverse) v_inv = Matrix::identity(a.cols());
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    s.swap_rows(a, b);
    if (opt.left) u.swap_rows(a, b);
    if (opt.left_inverse) u_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    s.swap_cols(a, b);
    if (opt.right) v.swap_cols(a, b);
    if (opt.right_inverse) v_inv.swap_rows(a, b);
  }
  // row a += k row b
  void add_row(std::size_t a, std::size_t b, const Integer& k) {
    s.add_row_multiple(a, b, k);
    if (opt.left) u.add_row_multiple(a, b, k);
    if (opt.left_inverse) u_inv.add_col_multiple(b, a, -k);
  }
  // col a += k col b
  void add_col(std::size_t a, std::size_t b, const Integer& k) {
    s.add_col_multiple(a, b, k);
    if (opt.right) v.add_col_multiple(a, b, k);
    if (opt.right_inverse) v_inv.add_row_multiple(b, a, -k);
  }
  void negate_row(std::size_t a) {
    s.negate_row(a);
    if (opt.left) u.negate_row(a);
    if (opt.left_inverse) u_inv.negate_col(a);
  }

  // Smallest nonzero |entry| in the trailing block starting at (t, t).
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j) {
        const Integer& x = s(i, j);
        if (x == 0) continue;
        Integer ax = abs_value(x);
        if (!found || ax < best) {
          best = std::move(ax);
          pi = i;
          pj = j;
          found = true;
          if (best == 1) return true;
        }
      }
    return found;
  }

  void run() {
    const std::size_t m = s.rows(), n = s.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (s(i, t) == 0) continue;
          add_row(i, t, -nearest_quotient(s(i, t), s(t, t)));
          if (s(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (s(t, j) == 0) continue;
          add_col(j, t, -nearest_quotient(s(t, j), s(t, t)));
          if (s(t, j) != 0) clean = false;
        }
        if (!clean) {
          // A remainder smaller than the pivot survived; promote the smallest.
          std::size_t bi = t, bj = t;
          Integer best = abs_value(s(t, t));
          for (std::size_t i = t + 1; i < m; ++i)
            if (s(i, t) != 0 && abs_value(s(i, t)) < best) best = abs_value(s(i, t)), bi = i, bj = t;
          for (std::size_t j = t + 1; j < n; ++j)
            if (s(t, j) != 0 && abs_value(s(t, j)) < best) best = abs_value(s(t, j)), bi = t, bj = j;
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        // Divisibility of the trailing block by the pivot.
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (s(i, j) % s(t, t) != 0) {
              add_row(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      if (s(t, t) < 0) negate_row(t);
    }
    rank = t;
  }

  std::size_t rank = 0;
};

}  // namespace

SmithForm smith_normal_form(const Matrix& a, SmithOptions options) {
  SmithWorker w(a, options);
  w.run();
  SmithForm out;
  out.rank = w.rank;
  out.diagonal.reserve(w.rank);
  for (std::size_t i = 0; i < w.rank; ++i) out.diagonal.push_back(w.s(i, i));
  out.U = std::move(w.u);
  out.U_inv = std::move(w.u_inv);
  out.V = std::move(w.v);
  out.V_inv = std::move(w.v_inv);
  return out;
}

std::size_t rank(const Matrix& a) {
  // Bareiss fraction-free elimination.
  Matrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

std::vector<Integer> invariant_factors(const Matrix& a) { return smith_normal_form(a).diagonal; }

Matrix kernel_basis(const Matrix& a) {
  SmithForm f = smith_normal_form(a, {.right = true});
  Matrix k(a.cols(), a.cols() - f.rank);
  for (std::size_t j = f.rank; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - f.rank) = f.V(i, j);
  return k;
}

Matrix image_basis(const Matrix& a) {
  // A V = U^{-1} S, so the first rank columns of U^{-1} scaled by d_i span im A.
  SmithForm f = smith_normal_form(a, {.left_inverse = true});
  Matrix b(a.rows(), f.rank);
  for (std::size_t j = 0; j < f.rank; ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) b(i, j) = f.U_inv(i, j) * f.diagonal[j];
  return b;
}

bool is_unimodular(const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  SmithForm f = smith_normal_form(a);
  if (f.rank != a.rows()) return false;
  for (const auto& d : f.diagonal)
    if (d != 1) return false;
  return true;
}

Matrix unimodular_inverse(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorCode::invalid_argument, "inverse of a non-square matrix");
  SmithForm f = smith_normal_form(a, {.left = true, .right = true});
  require(f.rank == a.rows(), ErrorCode::invalid_argument, "matrix is singular");
  for (const auto& d : f.diagonal) require(d == 1, ErrorCode::invalid_argument, "matrix is not unimodular");
  // U A V = I  =>  A^{-1} = V U
  return f.V * f.U;
}

LatticeSolver::LatticeSolver(const Matrix& a)
    : rows_(a.rows()), cols_(a.cols()), smith_(smith_normal_form(a, {.left = true, .right = true})) {}

std::optional<Vector> LatticeSolver::solve(std::span<const Integer> b) const {
  require(b.size() == rows_, ErrorCode::invalid_argument, "solve: right-hand side length mismatch");
  Vector ub = smith_.U.apply(b);
  Vector y(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < smith_.rank) {
      if (ub[i] % smith_.diagonal[i] != 0) return std::nullopt;
      y[i] = ub[i] / smith_.diagonal[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return smith_.V.apply(y);
}

std::optional<Matrix> LatticeSolver::solve(const Matrix& b) const {
  Matrix x(cols_, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto col = solve(b.column(c));
    if (!col) return std::nullopt;
    x.set_column(c, *col);
  }
  return x;
}

bool span_contains(const Matrix& ambient, const Matrix& sub) {
  require(ambient.rows() == sub.rows(), ErrorCode::invalid_argument, "span_contains: row mismatch");
  if (sub.cols() == 0 || sub.is_zero()) return true;
  LatticeSolver solver(ambient);
  for (std::size_t c = 0; c < sub.cols(); ++c)
    if (!solver.contains(sub.column(c))) return false;
  return true;
}

bool spans_equal(const Matrix& a, const Matrix& b) { return span_contains(a, b) && span_contains(b, a); }

}  // namespace zilber
