#include "zilber/doldkan.hpp"

#include "zilber/error.hpp"

#include <map>

namespace zilber {
namespace {

Matrix sparse_columns_to_dense(std::size_t rows, const std::vector<SparseVec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c].entries()) m(r, c) = v;
  return m;
}

// x <- x - s_{j-1} d_j x for j = n, ..., 1: projects onto the intersection of ker d_i, i >= 1,
// without changing the class modulo degenerate simplices.
SparseVec moore_project(const SimplicialAbelianGroup& a, std::size_t n, SparseVec x) {
  for (std::size_t j = n; j >= 1; --j) {
    SparseVec y = a.degeneracy(n - 1, j - 1).apply(a.face(n, j).apply(x));
    x.add_scaled(y, -1);
  }
  return x;
}

}  // namespace

ChainComplex unnormalized_chains(const SimplicialAbelianGroup& a) {
  std::vector<Matrix> d;
  for (std::size_t n = 1; n <= a.dim_bound(); ++n) {
    std::vector<SparseVec> cols(a.rank(n));
    for (std::size_t c = 0; c < a.rank(n); ++c)
      for (std::size_t i = 0; i <= n; ++i) cols[c].add_scaled(a.face(n, i).column(c), i % 2 == 0 ? 1 : -1);
    d.push_back(sparse_columns_to_dense(a.rank(n - 1), cols));
  }
  return ChainComplex(a.ranks(), std::move(d));
}

std::vector<Matrix> degenerate_span(const SimplicialAbelianGroup& a) {
  std::vector<Matrix> out;
  for (std::size_t n = 0; n <= a.dim_bound(); ++n) {
    Matrix span(a.rank(n), 0);
    for (std::size_t i = 0; n >= 1 && i < n; ++i) span = hstack(span, a.degeneracy(n - 1, i).to_dense());
    out.push_back(image_basis(span));
  }
  return out;
}

NormalizationResult normalize(const SimplicialAbelianGroup& a, bool build_complex) {
  const std::size_t top = a.dim_bound();
  NormalizationResult res;
  res.coordinate_basis = a.degeneracies_monomial();
  std::vector<Matrix> degenerate = res.coordinate_basis ? std::vector<Matrix>{} : degenerate_span(a);
  for (std::size_t n = 0; n <= top; ++n) {
    const std::size_t r = a.rank(n);
    std::vector<SparseVec> lifts;
    if (res.coordinate_basis) {
      std::vector<bool> hit(r, false);
      for (std::size_t i = 0; n >= 1 && i < n; ++i)
        for (std::size_t c = 0; c < a.rank(n - 1); ++c)
          for (const auto& e : a.degeneracy(n - 1, i).column(c).entries()) hit[e.first] = true;
      std::vector<std::size_t> keep;
      for (std::size_t x = 0; x < r; ++x)
        if (!hit[x]) keep.push_back(x);
      SparseMatrix pi(keep.size(), r);
      for (std::size_t k = 0; k < keep.size(); ++k) {
        pi.set_column(keep[k], SparseVec::unit(static_cast<std::uint32_t>(k)));
        lifts.push_back(SparseVec::unit(static_cast<std::uint32_t>(keep[k])));
      }
      res.projection.push_back(std::move(pi));
      res.basis_indices.push_back(std::move(keep));
    } else {
      const Matrix& b = degenerate[n];
      SmithForm f = smith_normal_form(b, {.left = true, .left_inverse = true});
      for (const auto& d : f.diagonal)
        require(d == 1, ErrorCode::validation, "degenerate subgroup is not a direct summand in degree " + std::to_string(n));
      std::vector<std::size_t> rest;
      for (std::size_t i = f.rank; i < r; ++i) rest.push_back(i);
      res.projection.push_back(SparseMatrix::from_dense(f.U.select_rows(rest)));
      Matrix l = f.U_inv.select_columns(rest);
      for (std::size_t c = 0; c < l.cols(); ++c) lifts.push_back(SparseVec::from_dense(l.column(c)));
    }
    SparseMatrix sect(r, lifts.size());
    for (std::size_t c = 0; c < lifts.size(); ++c) sect.set_column(c, moore_project(a, n, std::move(lifts[c])));
    res.section.push_back(std::move(sect));
    res.ranks.push_back(res.projection.back().rows());
  }
  if (build_complex) {
    std::vector<Matrix> d;
    for (std::size_t n = 1; n <= top; ++n) {
      std::vector<SparseVec> cols(res.ranks[n]);
      for (std::size_t c = 0; c < res.ranks[n]; ++c) {
        SparseVec dx;
        for (std::size_t i = 0; i <= n; ++i) dx.add_scaled(a.face(n, i).apply(res.section[n].column(c)), i % 2 == 0 ? 1 : -1);
        cols[c] = res.projection[n - 1].apply(dx);
      }
      d.push_back(sparse_columns_to_dense(res.ranks[n - 1], cols));
    }
    res.normalized = ChainComplex(res.ranks, std::move(d));
  }
  return res;
}

ChainMap projection_map(const SimplicialAbelianGroup& a, const NormalizationResult& na) {
  std::vector<Matrix> comps;
  for (const auto& m : na.projection) comps.push_back(m.to_dense());
  return ChainMap(unnormalized_chains(a), na.normalized, std::move(comps));
}

ChainMap section_map(const SimplicialAbelianGroup& a, const NormalizationResult& na) {
  std::vector<Matrix> comps;
  for (const auto& m : na.section) comps.push_back(m.to_dense());
  return ChainMap(na.normalized, unnormalized_chains(a), std::move(comps));
}

ChainComplex disk(std::size_t n) {
  if (n == 0) return ChainComplex::concentrated(0, 1);
  std::vector<std::size_t> ranks(n + 1, 0);
  ranks[n] = ranks[n - 1] = 1;
  std::vector<Matrix> d;
  for (std::size_t k = 1; k <= n; ++k) d.emplace_back(ranks[k - 1], ranks[k]);
  d[n - 1](0, 0) = 1;
  return ChainComplex(std::move(ranks), std::move(d));
}

SimplicialAbelianGroup gamma(const ChainComplex& c, std::size_t dim_bound) {
  struct Level {
    std::vector<std::vector<MonotoneMap>> surj;  // by k
    std::vector<std::size_t> offset;             // by k
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> position;
    std::size_t rank = 0;
  };
  std::vector<Level> levels(dim_bound + 1);
  for (std::size_t n = 0; n <= dim_bound; ++n) {
    Level& lv = levels[n];
    for (std::size_t k = 0; k <= n; ++k) {
      lv.surj.push_back(c.rank(k) ? enumerate_surjections(n, k) : std::vector<MonotoneMap>{});
      lv.offset.push_back(lv.rank);
      std::map<std::vector<std::size_t>, std::size_t> pos;
      for (std::size_t e = 0; e < lv.surj[k].size(); ++e) pos[lv.surj[k][e].values] = e;
      lv.position.push_back(std::move(pos));
      lv.rank += lv.surj[k].size() * c.rank(k);
    }
  }
  auto index = [&](std::size_t n, const MonotoneMap& eta, std::size_t x) {
    const Level& lv = levels[n];
    const std::size_t k = eta.codomain_top;
    return lv.offset[k] + lv.position[k].at(eta.values) * c.rank(k) + x;
  };
  // theta : [m] -> [n], returns theta^* : Gamma_n -> Gamma_m.
  auto op = [&](const MonotoneMap& theta) {
    const std::size_t m = theta.domain_top, n = theta.codomain_top;
    SparseMatrix out(levels[m].rank, levels[n].rank);
    for (std::size_t k = 0; k <= n; ++k) {
      if (c.rank(k) == 0) continue;
      Matrix dk = k >= 1 ? c.differential(k) : Matrix();
      for (const auto& eta : levels[n].surj[k]) {
        auto [eta2, eps] = epi_mono_factorize(compose(eta, theta));
        const std::size_t j = eps.domain_top;
        const bool ident = j == k;
        const bool top_face = j + 1 == k && eps.values.front() == 1;
        for (std::size_t x = 0; x < c.rank(k); ++x) {
          const auto col = static_cast<std::uint32_t>(index(n, eta, x));
          if (ident) {
            out.set_column(col, SparseVec::unit(static_cast<std::uint32_t>(index(m, eta2, x))));
          } else if (top_face) {
            std::vector<SparseVec::Entry> e;
            for (std::size_t y = 0; y < c.rank(j); ++y)
              if (dk(y, x) != 0) e.emplace_back(static_cast<std::uint32_t>(index(m, eta2, y)), dk(y, x));
            out.set_column(col, SparseVec(std::move(e)));
          }
        }
      }
    }
    return out;
  };
  std::vector<std::size_t> ranks;
  std::vector<std::vector<SparseMatrix>> d(dim_bound + 1), s(dim_bound + 1);
  for (std::size_t n = 0; n <= dim_bound; ++n) {
    ranks.push_back(levels[n].rank);
    for (std::size_t i = 0; n >= 1 && i <= n; ++i) d[n].push_back(op(MonotoneMap::coface(n, i)));
    for (std::size_t i = 0; n < dim_bound && i <= n; ++i) s[n].push_back(op(MonotoneMap::codegeneracy(n, i)));
  }
  return SimplicialAbelianGroup(dim_bound, std::move(ranks), std::move(d), std::move(s));
}

SimplicialAbelianGroup interval_object(std::size_t n, std::size_t dim_bound) { return gamma(disk(n), dim_bound); }

std::vector<AbelianGroupInvariants> homotopy_groups(const SimplicialAbelianGroup& a) {
  return homology(normalize(a).normalized);
}

ChainMap normalized_map(const NormalizationResult& na, const NormalizationResult& nb, const std::vector<SparseMatrix>& f) {
  std::vector<Matrix> comps;
  const std::size_t degs = std::min(na.section.size(), nb.projection.size());
  for (std::size_t n = 0; n < degs; ++n) comps.push_back((nb.projection[n] * f.at(n) * na.section[n]).to_dense());
  return ChainMap(na.normalized, nb.normalized, std::move(comps));
}

std::vector<SparseMatrix> gamma_counit(const SimplicialAbelianGroup& a, const NormalizationResult& na) {
  const auto& ranks = na.ranks;
  std::vector<SparseMatrix> out;
  for (std::size_t n = 0; n <= a.dim_bound(); ++n) {
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k <= n; ++k) {
      if (ranks[k] == 0) continue;
      const SparseMatrix& sec = na.section[k];
      for (const auto& eta : enumerate_surjections(n, k)) {
        SparseMatrix up = a.apply(eta);
        for (std::size_t x = 0; x < ranks[k]; ++x) cols.push_back(up.apply(sec.column(x)));
      }
    }
    SparseMatrix m(a.rank(n), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, std::move(cols[j]));
    out.push_back(std::move(m));
  }
  return out;
}

Certificate normalize_gamma_roundtrip(const ChainComplex& c, std::size_t dim_bound) {
  Certificate cert;
  cert.name = "normalize_gamma";
  SimplicialAbelianGroup g = gamma(c, dim_bound);
  NormalizationResult n = normalize(g);
  ChainComplex expect = truncate(c, dim_bound);
  if (expect.top_degree() < dim_bound) {
    std::vector<std::size_t> ranks = expect.ranks();
    std::vector<Matrix> d = expect.differentials();
    for (std::size_t k = expect.top_degree() + 1; k <= dim_bound; ++k) {
      d.emplace_back(ranks.back(), 0);
      ranks.push_back(0);
    }
    expect = ChainComplex(std::move(ranks), std::move(d));
  }
  cert.details = {{"gamma_ranks", g.ranks()}, {"normalized_ranks", n.normalized.ranks()},
                  {"coordinate_basis", n.coordinate_basis}};
  cert.pass = n.coordinate_basis && n.normalized == expect;
  if (!cert.pass) cert.witness = {{"reason", "normalized complex differs from the input"}};
  return cert;
}

Certificate gamma_normalize_roundtrip(const SimplicialAbelianGroup& a) {
  Certificate cert;
  cert.name = "gamma_normalize";
  NormalizationResult na = normalize(a);
  SimplicialAbelianGroup g = gamma(na.normalized, a.dim_bound());
  auto phi = gamma_counit(a, na);
  cert.details = {{"ranks", a.ranks()}, {"gamma_ranks", g.ranks()}};
  if (auto bad = simplicial_map_violation(g, a, phi)) {
    cert.pass = false;
    cert.witness = {{"reason", "comparison map is not simplicial: " + *bad}};
    return cert;
  }
  for (std::size_t n = 0; n <= a.dim_bound(); ++n)
    if (!is_unimodular(phi[n].to_dense())) {
      cert.pass = false;
      cert.witness = {{"reason", "comparison map is not invertible"}, {"level", n}};
      return cert;
    }
  return cert;
}

}  // namespace zilber
