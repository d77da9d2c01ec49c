#include "zilber/chains.hpp"

#include "zilber/error.hpp"

#include <algorithm>
#include <sstream>

namespace zilber {

std::string AbelianGroupInvariants::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

AbelianGroupInvariants invariants_from_diagonal(std::size_t generators, const std::vector<Integer>& nonzero_diagonal) {
  require(nonzero_diagonal.size() <= generators, ErrorCode::internal, "more invariant factors than generators");
  AbelianGroupInvariants g;
  g.free_rank = generators - nonzero_diagonal.size();
  for (const auto& d : nonzero_diagonal) {
    Integer a = abs_value(d);
    if (a > 1) g.torsion.push_back(a);
  }
  return g;
}

AbelianGroupInvariants direct_sum(const AbelianGroupInvariants& a, const AbelianGroupInvariants& b) {
  // Re-canonicalize the torsion through a diagonal Smith form.
  std::vector<Integer> t = a.torsion;
  t.insert(t.end(), b.torsion.begin(), b.torsion.end());
  Matrix m(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) m(i, i) = t[i];
  AbelianGroupInvariants out = invariants_from_diagonal(t.size(), invariant_factors(m));
  out.free_rank = a.free_rank + b.free_rank;
  return out;
}

// ---------------------------------------------------------------------------

ChainComplex::ChainComplex(std::vector<std::size_t> ranks, std::vector<Matrix> differentials)
    : ranks_(std::move(ranks)), d_(std::move(differentials)) {
  require(!ranks_.empty(), ErrorCode::validation, "chain complex needs at least degree 0");
  require(d_.size() + 1 == ranks_.size(), ErrorCode::validation, "chain complex: need one differential per positive degree");
  for (std::size_t n = 1; n < ranks_.size(); ++n) {
    const Matrix& d = d_[n - 1];
    require(d.rows() == ranks_[n - 1] && d.cols() == ranks_[n], ErrorCode::validation,
            "chain complex: differential " + std::to_string(n) + " has the wrong shape");
  }
  for (std::size_t n = 2; n < ranks_.size(); ++n)
    require((d_[n - 2] * d_[n - 1]).is_zero(), ErrorCode::validation,
            "chain complex: d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0");
}

ChainComplex ChainComplex::concentrated(std::size_t degree, std::size_t rank) {
  std::vector<std::size_t> ranks(degree + 1, 0);
  ranks[degree] = rank;
  std::vector<Matrix> d;
  for (std::size_t n = 1; n <= degree; ++n) d.emplace_back(ranks[n - 1], ranks[n]);
  return ChainComplex(std::move(ranks), std::move(d));
}

std::size_t ChainComplex::total_rank() const {
  std::size_t s = 0;
  for (auto r : ranks_) s += r;
  return s;
}

Matrix ChainComplex::differential(std::size_t n) const {
  if (n >= 1 && n <= d_.size()) return d_[n - 1];
  if (n == 0) return Matrix(0, rank(0));
  return Matrix(rank(n - 1), rank(n));
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> ChainMap::first_noncommuting_degree(const ChainComplex& s, const ChainComplex& t,
                                                               const std::vector<Matrix>& f) {
  for (std::size_t n = 1; n < f.size(); ++n) {
    if (n > s.top_degree() || n > t.top_degree()) break;
    if (!(t.differential(n) * f[n] == f[n - 1] * s.differential(n))) return n;
  }
  return std::nullopt;
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  require(components_.size() == std::min(source_.top_degree(), target_.top_degree()) + 1, ErrorCode::validation,
          "chain map: one component per common degree required");
  for (std::size_t n = 0; n < components_.size(); ++n)
    require(components_[n].rows() == target_.rank(n) && components_[n].cols() == source_.rank(n),
            ErrorCode::validation, "chain map: component " + std::to_string(n) + " has the wrong shape");
  auto bad = first_noncommuting_degree(source_, target_, components_);
  require(!bad, ErrorCode::validation, "chain map: fails to commute with d in degree " + std::to_string(bad.value_or(0)));
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  std::vector<Matrix> f;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) f.push_back(Matrix::identity(c.rank(n)));
  return ChainMap(c, c, std::move(f));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  const std::size_t deg = std::min(g.degrees(), f.degrees());
  std::vector<Matrix> h;
  for (std::size_t n = 0; n < deg; ++n) h.push_back(g.component(n) * f.component(n));
  return ChainMap(truncate(f.source(), deg - 1), truncate(g.target(), deg - 1), std::move(h));
}

// ---------------------------------------------------------------------------

std::vector<AbelianGroupInvariants> homology(const ChainComplex& c) {
  const std::size_t top = c.top_degree();
  std::vector<std::size_t> rank_d(top + 2, 0);
  std::vector<std::vector<Integer>> diag(top + 2);
  for (std::size_t n = 1; n <= top; ++n) {
    diag[n] = invariant_factors(c.differential(n));
    rank_d[n] = diag[n].size();
  }
  std::vector<AbelianGroupInvariants> h;
  for (std::size_t n = 0; n <= top; ++n) {
    AbelianGroupInvariants g;
    g.free_rank = c.rank(n) - rank_d[n] - rank_d[n + 1];
    for (const auto& d : diag[n + 1])
      if (d > 1) g.torsion.push_back(d);
    h.push_back(std::move(g));
  }
  return h;
}

namespace {

Matrix relation_columns(const std::vector<Integer>& orders) {
  std::vector<std::size_t> torsion;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) torsion.push_back(i);
  Matrix r(orders.size(), torsion.size());
  for (std::size_t k = 0; k < torsion.size(); ++k) r(torsion[k], k) = orders[torsion[k]];
  return r;
}

Subquotient homology_presentation(const ChainComplex& c, std::size_t n) {
  Matrix z = kernel_basis(c.differential(n));
  Matrix b = n + 1 <= c.top_degree() ? c.differential(n + 1) : Matrix(c.rank(n), 0);
  return Subquotient(z, b);
}

}  // namespace

AbelianGroupInvariants PresentedMap::kernel() const {
  const std::size_t g = source_orders.size();
  Matrix rel_t = relation_columns(target_orders);
  Matrix k = kernel_basis(hstack(matrix, rel_t));
  Matrix z = k.block(0, 0, g, k.cols());
  return Subquotient(z, relation_columns(source_orders)).invariants();
}

AbelianGroupInvariants PresentedMap::cokernel() const {
  const std::size_t h = target_orders.size();
  return Subquotient(Matrix::identity(h), hstack(matrix, relation_columns(target_orders))).invariants();
}

AbelianGroupInvariants homology_at(const PresentedMap& in, const PresentedMap& out) {
  const std::size_t g = out.source_orders.size();
  require(in.target_orders == out.source_orders, ErrorCode::invalid_argument, "homology_at: presentations differ");
  Matrix k = kernel_basis(hstack(out.matrix, relation_columns(out.target_orders)));
  Matrix z = k.block(0, 0, g, k.cols());
  return Subquotient(z, hstack(in.matrix, relation_columns(in.target_orders))).invariants();
}

std::vector<PresentedMap> induced_on_homology(const ChainMap& f) {
  std::vector<PresentedMap> out;
  for (std::size_t n = 0; n < f.degrees(); ++n) {
    Subquotient hs = homology_presentation(f.source(), n);
    Subquotient ht = homology_presentation(f.target(), n);
    PresentedMap m;
    m.source_orders = hs.orders();
    m.target_orders = ht.orders();
    m.matrix = Matrix(ht.generator_count(), hs.generator_count());
    for (std::size_t c = 0; c < hs.generator_count(); ++c) {
      auto coords = ht.coordinates(f.component(n).apply(hs.lifts().column(c)));
      require(coords.has_value(), ErrorCode::internal, "chain map sends a cycle outside the cycles");
      m.matrix.set_column(c, *coords);
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool is_quasi_isomorphism(const ChainMap& f, std::optional<std::size_t> max_degree) {
  auto maps = induced_on_homology(f);
  for (std::size_t n = 0; n < maps.size(); ++n) {
    if (max_degree && n > *max_degree) break;
    if (!maps[n].is_isomorphism()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

TensorLayout::TensorLayout(std::vector<std::size_t> left_ranks, std::vector<std::size_t> right_ranks)
    : left_(std::move(left_ranks)), right_(std::move(right_ranks)) {
  require(!left_.empty() && !right_.empty(), ErrorCode::invalid_argument, "tensor layout of an empty complex");
  const std::size_t top = top_degree();
  ranks_.assign(top + 1, 0);
  offsets_.assign(top + 1, std::vector<std::size_t>(left_.size(), 0));
  for (std::size_t n = 0; n <= top; ++n) {
    std::size_t off = 0;
    for (std::size_t p = std::min(n, left_.size() - 1) + 1; p-- > 0;) {
      if (n - p >= right_.size()) break;
      offsets_[n][p] = off;
      off += left_[p] * right_[n - p];
    }
    ranks_[n] = off;
  }
}

std::size_t TensorLayout::offset(std::size_t n, std::size_t p) const {
  require(n < offsets_.size() && p < left_.size() && p <= n && n - p < right_.size(), ErrorCode::invalid_argument,
          "tensor layout: no such block");
  return offsets_[n][p];
}

std::size_t TensorLayout::index(std::size_t p, std::size_t i, std::size_t q, std::size_t j) const {
  return offset(p + q, p) + i * right_rank(q) + j;
}

TensorLayout::Position TensorLayout::locate(std::size_t n, std::size_t idx) const {
  for (std::size_t p = std::min(n, left_.size() - 1) + 1; p-- > 0;) {
    if (n - p >= right_.size()) break;
    const std::size_t q = n - p;
    const std::size_t size = left_[p] * right_[q];
    const std::size_t off = offsets_[n][p];
    if (idx >= off && idx < off + size) return {p, (idx - off) / right_[q], q, (idx - off) % right_[q]};
  }
  fail(ErrorCode::invalid_argument, "tensor layout: index out of range");
}

ChainComplex tensor(const ChainComplex& c, const ChainComplex& d) {
  TensorLayout lay(c.ranks(), d.ranks());
  const std::size_t top = lay.top_degree();
  std::vector<Matrix> diffs;
  for (std::size_t n = 1; n <= top; ++n) {
    Matrix m(lay.rank(n - 1), lay.rank(n));
    for (std::size_t p = 0; p <= std::min(n, c.top_degree()); ++p) {
      const std::size_t q = n - p;
      if (q > d.top_degree()) continue;
      const std::size_t rc = c.rank(p), rd = d.rank(q);
      if (rc == 0 || rd == 0) continue;
      if (p >= 1) {
        // dx (x) y into block (p-1, q)
        Matrix dc = c.differential(p);
        for (std::size_t i = 0; i < rc; ++i)
          for (std::size_t j = 0; j < rd; ++j)
            for (std::size_t i2 = 0; i2 < c.rank(p - 1); ++i2)
              if (dc(i2, i) != 0) m(lay.index(p - 1, i2, q, j), lay.index(p, i, q, j)) += dc(i2, i);
      }
      if (q >= 1) {
        Matrix dd = d.differential(q);
        const int sign = (p % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < rc; ++i)
          for (std::size_t j = 0; j < rd; ++j)
            for (std::size_t j2 = 0; j2 < d.rank(q - 1); ++j2)
              if (dd(j2, j) != 0) m(lay.index(p, i, q - 1, j2), lay.index(p, i, q, j)) += sign * dd(j2, j);
      }
    }
    diffs.push_back(std::move(m));
  }
  return ChainComplex(lay.ranks(), std::move(diffs));
}

std::vector<Matrix> tensor_components(const ChainMap& f, const ChainMap& g) {
  const ChainComplex& s1 = f.source();
  const ChainComplex& s2 = g.source();
  const ChainComplex& t1 = f.target();
  const ChainComplex& t2 = g.target();
  TensorLayout src(s1.ranks(), s2.ranks());
  TensorLayout tgt(t1.ranks(), t2.ranks());
  std::vector<Matrix> out;
  const std::size_t top = std::min(src.top_degree(), tgt.top_degree());
  for (std::size_t n = 0; n <= top; ++n) {
    Matrix m(tgt.rank(n), src.rank(n));
    for (std::size_t p = 0; p <= n; ++p) {
      const std::size_t q = n - p;
      if (p >= f.degrees() || q >= g.degrees()) continue;
      if (src.left_rank(p) * src.right_rank(q) == 0 || tgt.left_rank(p) * tgt.right_rank(q) == 0) continue;
      Matrix block = kron(f.component(p), g.component(q));
      m.set_block(tgt.offset(n, p), src.offset(n, p), block);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Matrix> tensor_swap(const ChainComplex& c, const ChainComplex& d) {
  TensorLayout cd(c.ranks(), d.ranks());
  TensorLayout dc(d.ranks(), c.ranks());
  std::vector<Matrix> out;
  for (std::size_t n = 0; n <= cd.top_degree(); ++n) {
    Matrix m(dc.rank(n), cd.rank(n));
    for (std::size_t idx = 0; idx < cd.rank(n); ++idx) {
      auto pos = cd.locate(n, idx);
      const int sign = (pos.p * pos.q) % 2 == 0 ? 1 : -1;
      m(dc.index(pos.q, pos.j, pos.p, pos.i), idx) = sign;
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Matrix> tensor_associator(const ChainComplex& c, const ChainComplex& d, const ChainComplex& e) {
  TensorLayout cd(c.ranks(), d.ranks()), de(d.ranks(), e.ranks());
  TensorLayout left(cd.ranks(), e.ranks()), right(c.ranks(), de.ranks());
  std::vector<Matrix> out;
  for (std::size_t n = 0; n <= left.top_degree(); ++n) {
    Matrix m(right.rank(n), left.rank(n));
    for (std::size_t idx = 0; idx < left.rank(n); ++idx) {
      auto outer = left.locate(n, idx);
      auto inner = cd.locate(outer.p, outer.i);
      m(right.index(inner.p, inner.i, inner.q + outer.q, de.index(inner.q, inner.j, outer.q, outer.j)), idx) = 1;
    }
    out.push_back(std::move(m));
  }
  return out;
}

ChainComplex truncate(const ChainComplex& c, std::size_t top) {
  if (top >= c.top_degree()) return c;
  std::vector<std::size_t> ranks(c.ranks().begin(), c.ranks().begin() + static_cast<std::ptrdiff_t>(top + 1));
  std::vector<Matrix> d(c.differentials().begin(), c.differentials().begin() + static_cast<std::ptrdiff_t>(top));
  return ChainComplex(std::move(ranks), std::move(d));
}

// ---------------------------------------------------------------------------

Subquotient::Subquotient(const Matrix& z_generators, const Matrix& b_generators) : ambient_(z_generators.rows()) {
  require(b_generators.rows() == ambient_, ErrorCode::invalid_argument, "subquotient: ambient dimension mismatch");
  z_basis_ = image_basis(z_generators);
  z_solver_.emplace(z_basis_);
  const std::size_t s = z_basis_.cols();
  Matrix m(s, b_generators.cols());
  for (std::size_t c = 0; c < b_generators.cols(); ++c) {
    auto x = z_solver_->solve(b_generators.column(c));
    require(x.has_value(), ErrorCode::containment, "subquotient: relation generator " + std::to_string(c) +
                                                       " does not lie in the numerator lattice");
    m.set_column(c, *x);
  }
  SmithForm f = smith_normal_form(m, {.left = true, .left_inverse = true});
  u_ = std::move(f.U);
  Matrix adapted = z_basis_ * f.U_inv;
  for (std::size_t i = 0; i < s; ++i) {
    if (i < f.rank && f.diagonal[i] == 1) continue;
    gen_index_.push_back(i);
    order_.push_back(i < f.rank ? f.diagonal[i] : Integer(0));
  }
  lifts_ = adapted.select_columns(gen_index_);
  invariants_ = invariants_from_diagonal(s, f.diagonal);
}

bool Subquotient::in_numerator(std::span<const Integer> y) const { return z_solver_->contains(y); }

Vector Subquotient::reduce(Vector coords) const {
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (order_[k] != 0) coords[k] = mod_positive(coords[k], order_[k]);
  return coords;
}

std::optional<Vector> Subquotient::coordinates(std::span<const Integer> y) const {
  auto c = z_solver_->solve(y);
  if (!c) return std::nullopt;
  Vector adapted = u_.apply(*c);
  Vector out(gen_index_.size());
  for (std::size_t k = 0; k < gen_index_.size(); ++k) out[k] = adapted[gen_index_[k]];
  return reduce(std::move(out));
}

bool Subquotient::is_zero_class(std::span<const Integer> y) const {
  auto c = coordinates(y);
  require(c.has_value(), ErrorCode::containment, "subquotient: element is not in the numerator");
  return std::all_of(c->begin(), c->end(), [](const Integer& x) { return x == 0; });
}

AbelianGroupInvariants subquotient_homology(const Matrix& z_generators, const Matrix& b_generators) {
  return Subquotient(z_generators, b_generators).invariants();
}

// ---------------------------------------------------------------------------

std::size_t chain_map_space_rank(const ChainComplex& c, const ChainComplex& d) {
  const std::size_t top = std::max(c.top_degree(), d.top_degree());
  // Variable block offsets for f_n (d.rank(n) x c.rank(n), row-major).
  std::vector<std::size_t> var_off(top + 2, 0);
  for (std::size_t n = 0; n <= top; ++n) var_off[n + 1] = var_off[n] + d.rank(n) * c.rank(n);
  const std::size_t vars = var_off[top + 1];
  std::size_t eqs = 0;
  for (std::size_t n = 1; n <= top; ++n) eqs += d.rank(n - 1) * c.rank(n);
  Matrix sys(eqs, vars);
  std::size_t row = 0;
  for (std::size_t n = 1; n <= top; ++n) {
    Matrix dd = d.differential(n);  // d.rank(n-1) x d.rank(n)
    Matrix dc = c.differential(n);  // c.rank(n-1) x c.rank(n)
    // (dd f_n - f_{n-1} dc)(a, b) = 0
    for (std::size_t a = 0; a < d.rank(n - 1); ++a)
      for (std::size_t b = 0; b < c.rank(n); ++b, ++row) {
        for (std::size_t k = 0; k < d.rank(n); ++k)
          if (dd(a, k) != 0) sys(row, var_off[n] + k * c.rank(n) + b) += dd(a, k);
        for (std::size_t k = 0; k < c.rank(n - 1); ++k)
          if (dc(k, b) != 0) sys(row, var_off[n - 1] + a * c.rank(n - 1) + k) -= dc(k, b);
      }
  }
  return vars - rank(sys);
}

long long euler_characteristic(const ChainComplex& c) {
  long long e = 0;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) e += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(c.rank(n));
  return e;
}

long long euler_characteristic(const std::vector<AbelianGroupInvariants>& h) {
  long long e = 0;
  for (std::size_t n = 0; n < h.size(); ++n) e += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(h[n].free_rank);
  return e;
}

}  // namespace zilber
