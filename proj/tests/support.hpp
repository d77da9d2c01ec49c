#pragma once

#include "zilber/chains.hpp"
#include "zilber/filtration.hpp"
#include "zilber/linalg.hpp"
#include "zilber/simplicial.hpp"

#include <random>
#include <vector>

namespace zilber::testing {

/// Random partial order on n elements: a random relation on i < j, transitively closed.
inline std::vector<std::vector<bool>> random_poset(std::mt19937& rng, std::size_t n, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) leq[i][j] = coin(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return leq;
}

/// Nerve of a random poset, dimension bound 2 or 3.
inline SimplicialSet random_nerve(std::mt19937& rng, std::size_t max_points = 4) {
  std::size_t n = 1 + rng() % max_points;
  std::size_t dim = 2 + rng() % 2;
  return nerve(random_poset(rng, n), dim);
}

/// Product of random elementary operations, entries kept small.
inline Matrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 4) {
  Matrix m = Matrix::identity(n);
  if (n == 0) return m;
  for (int s = 0; s < steps; ++s) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a == b) {
      if (rng() % 2) m.negate_row(a);
      continue;
    }
    m.add_row_multiple(a, b, (rng() % 2) ? 1 : -1);
  }
  return m;
}

/// The same simplicial abelian group in the bases given by unimodular T_k (x' = T_k x).
inline SimplicialAbelianGroup change_basis(const SimplicialAbelianGroup& a, const std::vector<Matrix>& t) {
  const std::size_t top = a.dim_bound();
  std::vector<Matrix> inv;
  for (const auto& m : t) inv.push_back(unimodular_inverse(m));
  std::vector<std::vector<SparseMatrix>> d(top + 1), s(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    for (std::size_t i = 0; k >= 1 && i <= k; ++i)
      d[k].push_back(SparseMatrix::from_dense(t[k - 1] * a.face(k, i).to_dense() * inv[k]));
    for (std::size_t i = 0; k < top && i <= k; ++i)
      s[k].push_back(SparseMatrix::from_dense(t[k + 1] * a.degeneracy(k, i).to_dense() * inv[k]));
  }
  return SimplicialAbelianGroup(top, a.ranks(), std::move(d), std::move(s));
}

inline SimplicialAbelianGroup random_change_basis(std::mt19937& rng, const SimplicialAbelianGroup& a) {
  std::vector<Matrix> t;
  for (std::size_t k = 0; k <= a.dim_bound(); ++k) t.push_back(random_unimodular(rng, a.rank(k), 2 + static_cast<int>(rng() % 4)));
  return change_basis(a, t);
}

/// Random complex with entries in [-bound, bound] and total rank <= max_total.
inline ChainComplex random_chain_complex(std::mt19937& rng, std::size_t max_total, std::size_t top, int bound = 3) {
  std::vector<std::size_t> ranks(top + 1, 0);
  std::size_t budget = max_total;
  for (std::size_t n = 0; n <= top && budget > 0; ++n) {
    ranks[n] = rng() % (std::min<std::size_t>(budget, 4) + 1);
    budget -= ranks[n];
  }
  std::uniform_int_distribution<int> entry(-bound, bound), small(-1, 1);
  std::vector<Matrix> d;
  for (std::size_t n = 1; n <= top; ++n) {
    Matrix m(ranks[n - 1], ranks[n]);
    if (n == 1) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    } else {
      Matrix k = kernel_basis(d.back());
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Vector col(m.rows());
        for (std::size_t c = 0; c < k.cols(); ++c) {
          int w = small(rng);
          for (std::size_t i = 0; i < m.rows(); ++i) col[i] += w * k(i, c);
        }
        bool ok = true;
        for (auto& v : col) ok = ok && abs_value(v) <= bound;
        if (ok) m.set_column(j, col);
      }
    }
    d.push_back(std::move(m));
  }
  return ChainComplex(ranks, d);
}

/// Filtered complex assembled from points, disks and torsion pieces Z --k--> Z, each basis
/// vector placed at a random level, then moved by a filtration-preserving unimodular change of basis.
inline FilteredChainComplex random_filtration(std::mt19937& rng, std::size_t p_max, std::size_t top,
                                              std::size_t pieces = 5) {
  std::vector<std::vector<std::size_t>> level(top + 1);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges(top + 1);  // (row in k-1, col in k)
  std::vector<std::vector<int>> weight(top + 1);
  for (std::size_t t = 0; t < pieces; ++t) {
    std::size_t kind = rng() % 3, n = rng() % (top + 1);
    std::size_t p = rng() % (p_max + 1);
    level[n].push_back(p);
    if (kind == 0 || n == 0) continue;
    level[n - 1].push_back(rng() % (p + 1));
    edges[n].push_back({level[n - 1].size() - 1, level[n].size() - 1});
    weight[n].push_back(kind == 1 ? 1 : 2 + static_cast<int>(rng() % 2));
  }
  std::vector<std::size_t> ranks;
  for (const auto& l : level) ranks.push_back(l.size());
  std::vector<Matrix> t, t_inv;
  for (std::size_t k = 0; k <= top; ++k) {
    const std::size_t r = ranks[k];
    Matrix m = Matrix::identity(r);
    for (int s = 0; r > 0 && s < 6; ++s) {
      std::size_t a = rng() % r, b = rng() % r;
      if (a == b) {
        m.negate_row(a);
      } else if (level[k][a] <= level[k][b]) {
        m.add_row_multiple(a, b, (rng() % 2) ? 1 : -1);
      }
    }
    t_inv.push_back(unimodular_inverse(m));
    t.push_back(std::move(m));
  }
  std::vector<Matrix> d;
  for (std::size_t k = 1; k <= top; ++k) {
    Matrix m(ranks[k - 1], ranks[k]);
    for (std::size_t e = 0; e < edges[k].size(); ++e) m(edges[k][e].first, edges[k][e].second) = weight[k][e];
    d.push_back(t[k - 1] * m * t_inv[k]);
  }
  std::vector<std::vector<Matrix>> stages(p_max + 1);
  for (std::size_t p = 0; p <= p_max; ++p)
    for (std::size_t k = 0; k <= top; ++k) {
      std::vector<std::size_t> cols;
      for (std::size_t i = 0; i < ranks[k]; ++i)
        if (level[k][i] <= p) cols.push_back(i);
      stages[p].push_back(t[k].select_columns(cols));
    }
  return FilteredChainComplex(ChainComplex(ranks, d), std::move(stages));
}

}  // namespace zilber::testing
