#include "zilber/spectral.hpp"

#include "zilber/doldkan.hpp"
#include "zilber/error.hpp"
#include "zilber/json_util.hpp"

#include <tuple>

namespace zilber {
namespace {

Matrix basis_of(const Matrix& gens) { return gens.cols() == 0 ? gens : image_basis(gens); }

Matrix top_rows(const Matrix& m, std::size_t rows) { return m.block(0, 0, rows, m.cols()); }

class ZBuilder {
 public:
  explicit ZBuilder(const FilteredChainComplex& f) : f_(f) {}

  Matrix stage(long p, std::size_t n) {
    auto key = std::make_pair(p, n);
    auto it = stages_.find(key);
    if (it == stages_.end()) it = stages_.emplace(key, basis_of(f_.stage(p, n))).first;
    return it->second;
  }

  // Z_r^{p,n}
  Matrix z(long r, long p, std::size_t n) {
    auto key = std::make_tuple(r, p, n);
    auto it = z_.find(key);
    if (it != z_.end()) return it->second;
    Matrix g = stage(p, n);
    Matrix out = g;
    if (n >= 1 && g.cols() > 0) {
      Matrix dg = f_.ambient().differential(n) * g;
      Matrix h = stage(p - r, n - 1);
      Matrix k = kernel_basis(hstack(dg, Integer(-1) * h));
      out = g * top_rows(k, g.cols());
    }
    return z_.emplace(key, out).first->second;
  }

  Matrix boundaries_of(const Matrix& x, std::size_t n) { return f_.ambient().differential(n) * x; }

 private:
  const FilteredChainComplex& f_;
  std::map<std::pair<long, std::size_t>, Matrix> stages_;
  std::map<std::tuple<long, long, std::size_t>, Matrix> z_;
};

Page build_page(const FilteredChainComplex& f, ZBuilder& zb, std::size_t r) {
  Page page;
  page.r = r;
  const long rr = static_cast<long>(r);
  const std::size_t top = f.top_degree();
  for (std::size_t p = 0; p <= f.p_max(); ++p) {
    const long pp = static_cast<long>(p);
    std::vector<PageEntry> row;
    for (std::size_t n = 0; n <= top; ++n) {
      Matrix num = zb.z(rr, pp, n);
      Matrix den = zb.z(rr - 1, pp - 1, n);
      if (n + 1 <= top) den = hstack(den, zb.boundaries_of(zb.z(rr - 1, pp + rr - 1, n + 1), n + 1));
      Subquotient group(num, den);
      row.push_back(PageEntry{p, n, std::move(num), std::move(den), std::move(group)});
    }
    page.entries.push_back(std::move(row));
  }
  for (std::size_t p = 0; p <= f.p_max(); ++p) {
    std::vector<Matrix> row;
    for (std::size_t n = 0; n <= top; ++n) {
      const PageEntry& src = page.entries[p][n];
      const PageEntry* tgt = page.entry(static_cast<long>(p) - rr, static_cast<long>(n) - 1);
      const std::size_t rows = tgt ? tgt->group.generator_count() : 0;
      Matrix d(rows, src.group.generator_count());
      if (tgt) {
        Matrix image = f.ambient().differential(n) * src.group.lifts();
        for (std::size_t c = 0; c < d.cols(); ++c) {
          auto coords = tgt->group.coordinates(image.column(c));
          require(coords.has_value(), ErrorCode::internal, "spectral sequence: d_r leaves Z_r");
          d.set_column(c, *coords);
        }
      }
      row.push_back(std::move(d));
    }
    page.differential.push_back(std::move(row));
  }
  return page;
}

Certificate failed(Certificate cert, nlohmann::json witness) {
  cert.pass = false;
  cert.witness = std::move(witness);
  return cert;
}

bool reduces_to_zero(const Subquotient& g, std::span<const Integer> coords) {
  Vector v(coords.begin(), coords.end());
  v = g.reduce(std::move(v));
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

const PageEntry* Page::entry(long p, long n) const {
  if (p < 0 || n < 0 || static_cast<std::size_t>(p) >= entries.size()) return nullptr;
  const auto& row = entries[static_cast<std::size_t>(p)];
  if (static_cast<std::size_t>(n) >= row.size()) return nullptr;
  return &row[static_cast<std::size_t>(n)];
}

PresentedMap Page::d(long p, long n) const {
  PresentedMap m;
  const PageEntry* src = entry(p, n);
  const PageEntry* tgt = entry(p - static_cast<long>(r), n - 1);
  if (src) m.source_orders = src->group.orders();
  if (tgt) m.target_orders = tgt->group.orders();
  if (src && tgt)
    m.matrix = differential[static_cast<std::size_t>(p)][static_cast<std::size_t>(n)];
  else
    m.matrix = Matrix(m.target_orders.size(), m.source_orders.size());
  return m;
}

std::vector<std::vector<AbelianGroupInvariants>> Page::invariants() const {
  std::vector<std::vector<AbelianGroupInvariants>> out;
  for (const auto& row : entries) {
    out.emplace_back();
    for (const auto& e : row) out.back().push_back(e.group.invariants());
  }
  return out;
}

SpectralSequence::SpectralSequence(FilteredChainComplex f, std::size_t r_max) : f_(std::move(f)) {
  ZBuilder zb(f_);
  const std::size_t last = std::max<std::size_t>(r_max, f_.p_max() + 1);
  for (std::size_t r = 1; r <= last; ++r) pages_.push_back(build_page(f_, zb, r));
}

SpectralSequence compute_pages(const FilteredChainComplex& f, std::size_t r_max) { return SpectralSequence(f, r_max); }

nlohmann::json SpectralSequence::to_json() const {
  nlohmann::json pages = nlohmann::json::array();
  for (const auto& page : pages_) {
    nlohmann::json entries = nlohmann::json::array(), diffs = nlohmann::json::array();
    for (const auto& row : page.entries)
      for (const auto& e : row) {
        const long q = static_cast<long>(e.n) - static_cast<long>(e.p);
        nlohmann::json j = invariants_json(e.group.invariants());
        j["p"] = e.p;
        j["q"] = q;
        j["orders"] = vector_json(e.group.orders());
        j["lifts"] = matrix_json(e.group.lifts().transpose());
        entries.push_back(std::move(j));
        const auto& d = page.differential[e.p][e.n];
        if (d.rows() == 0 || d.cols() == 0) continue;
        const long tp = static_cast<long>(e.p) - static_cast<long>(page.r);
        diffs.push_back({{"from", {{"p", e.p}, {"q", q}}},
                         {"to", {{"p", tp}, {"q", static_cast<long>(e.n) - 1 - tp}}},
                         {"matrix", matrix_json(d)}});
      }
    pages.push_back({{"r", page.r}, {"entries", entries}, {"differentials", diffs}});
  }
  return {{"convention",
           "E_1^{p,q} = H_{p+q}(F_p/F_{p-1}); d_r : E_r^{p,q} -> E_r^{p-r,q+r-1}; lifts are rows in ambient coordinates"},
          {"p_max", f_.p_max()},
          {"infinity_page", f_.p_max() + 1},
          {"pages", pages}};
}

std::vector<std::vector<AbelianGroupInvariants>> associated_graded_homology(const FilteredChainComplex& f) {
  const std::size_t top = f.top_degree();
  std::vector<std::vector<AbelianGroupInvariants>> out(f.p_max() + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    const Matrix d = f.ambient().differential(n);
    const Matrix b = n + 1 <= top ? f.ambient().differential(n + 1) : Matrix(f.ambient().rank(n), 0);
    auto cycles_in = [&](long p) {
      Matrix g = basis_of(f.stage(p, n));
      if (n == 0 || g.cols() == 0) return g;
      return Matrix(g * kernel_basis(d * g));
    };
    for (std::size_t p = 0; p <= f.p_max(); ++p) {
      Matrix num = hstack(cycles_in(static_cast<long>(p)), b);
      Matrix den = hstack(cycles_in(static_cast<long>(p) - 1), b);
      out[p].push_back(Subquotient(num, den).invariants());
    }
  }
  return out;
}

Certificate spectral_check(const SpectralSequence& s) {
  Certificate cert;
  cert.name = "spectral_sequence";
  const auto& f = s.source();
  const long pmax = static_cast<long>(f.p_max()), top = static_cast<long>(f.top_degree());
  for (std::size_t r = 1; r <= s.r_max(); ++r) {
    const Page& page = s.page(r);
    const long rr = static_cast<long>(r);
    for (long p = 0; p <= pmax; ++p)
      for (long n = 0; n <= top; ++n) {
        const PageEntry* tgt2 = page.entry(p - 2 * rr, n - 2);
        if (tgt2) {
          Matrix dd = page.d(p - rr, n - 1).matrix * page.d(p, n).matrix;
          for (std::size_t c = 0; c < dd.cols(); ++c)
            if (!reduces_to_zero(tgt2->group, dd.column(c)))
              return failed(cert, {{"r", r}, {"p", p}, {"q", n - p}, {"reason", "d_r d_r != 0"}});
        }
        if (r < s.r_max()) {
          auto h = homology_at(page.d(p + rr, n + 1), page.d(p, n));
          const auto& next = s.page(r + 1).entry(p, n)->group.invariants();
          if (!(h == next))
            return failed(cert, {{"r", r}, {"p", p}, {"q", n - p}, {"reason", "E_{r+1} differs from H(E_r, d_r)"},
                                 {"homology", h.to_string()}, {"next_page", next.to_string()}});
        }
      }
  }
  const auto inf = s.infinity().invariants();
  for (std::size_t r = f.p_max() + 2; r <= s.r_max(); ++r)
    if (!(s.page(r).invariants() == inf))
      return failed(cert, {{"r", r}, {"reason", "page changes after p_max + 1"}});
  const auto gr = associated_graded_homology(f);
  nlohmann::json table = nlohmann::json::array();
  for (long p = 0; p <= pmax; ++p)
    for (long n = 0; n <= top; ++n) {
      const auto& a = inf[static_cast<std::size_t>(p)][static_cast<std::size_t>(n)];
      const auto& b = gr[static_cast<std::size_t>(p)][static_cast<std::size_t>(n)];
      if (!(a == b))
        return failed(cert, {{"p", p}, {"q", n - p}, {"reason", "E_infinity differs from gr H"},
                             {"e_infinity", a.to_string()}, {"graded", b.to_string()}});
      if (!a.is_zero()) table.push_back({{"p", p}, {"q", n - p}, {"group", a.to_string()}});
    }
  cert.details = {{"pages", s.r_max()}, {"p_max", f.p_max()}, {"e_infinity", table}};
  return cert;
}

// ---------------------------------------------------------------------------

Vector PagePairing::multiply(const Key& key, std::span<const Integer> x, std::span<const Integer> y) const {
  const PageEntry* t = target.entry(static_cast<long>(key[0] + key[2]), static_cast<long>(key[1] + key[3]));
  if (!t) return {};
  Vector out(t->group.generator_count());
  auto it = products.find(key);
  if (it == products.end()) return out;
  const Matrix& m = it->second;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      const Integer w = x[i] * y[j];
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * m(k, i * y.size() + j);
    }
  }
  return t->group.reduce(std::move(out));
}

void PagePairing::flip_sign(const Key& key, std::size_t column) {
  Matrix& m = products.at(key);
  const PageEntry* t = target.entry(static_cast<long>(key[0] + key[2]), static_cast<long>(key[1] + key[3]));
  Vector v = m.column(column);
  for (auto& x : v) x = -x;
  m.set_column(column, t->group.reduce(std::move(v)));
}

PagePairing induced_pairing(const FilteredPairing& pairing, const SpectralSequence& sf, const SpectralSequence& sg,
                            const SpectralSequence& sh, std::size_t r) {
  PagePairing out;
  out.r = r;
  out.left = sf.page(r);
  out.right = sg.page(r);
  out.target = sh.page(r);
  out.lift_independence.name = "lift_independence";
  const std::size_t degrees = pairing.map().degrees();
  std::size_t checked = 0;
  for (const auto& frow : out.left.entries)
    for (const auto& x : frow)
      for (const auto& grow : out.right.entries)
        for (const auto& y : grow) {
          // the top degree of a truncated pairing has no boundaries above it to absorb lift changes
          if (x.n + y.n + 1 >= degrees) continue;
          const PageEntry* t = out.target.entry(static_cast<long>(x.p + y.p), static_cast<long>(x.n + y.n));
          if (!t) continue;
          const PagePairing::Key key{x.p, x.n, y.p, y.n};
          const std::size_t gx = x.group.generator_count(), gy = y.group.generator_count();
          Matrix m(t->group.generator_count(), gx * gy);
          auto witness = [&](const char* reason, std::size_t i, std::size_t j) {
            return nlohmann::json{{"reason", reason}, {"left", {{"p", x.p}, {"q", long(x.n) - long(x.p)}, {"generator", i}}},
                                  {"right", {{"p", y.p}, {"q", long(y.n) - long(y.p)}, {"generator", j}}}};
          };
          for (std::size_t i = 0; i < gx; ++i)
            for (std::size_t j = 0; j < gy; ++j) {
              auto coords =
                  t->group.coordinates(pairing.apply(x.n, x.group.lifts().column(i), y.n, y.group.lifts().column(j)));
              if (!coords) {
                if (out.lift_independence.pass)
                  out.lift_independence = failed(out.lift_independence, witness("product leaves Z_r", i, j));
                continue;
              }
              m.set_column(i * gy + j, *coords);
            }
          // changing a lift by a denominator generator must not change the product class
          for (std::size_t b = 0; b < x.denominator.cols() && out.lift_independence.pass; ++b)
            for (std::size_t j = 0; j < gy; ++j) {
              ++checked;
              auto v = pairing.apply(x.n, x.denominator.column(b), y.n, y.group.lifts().column(j));
              if (!t->group.in_numerator(v) || !t->group.is_zero_class(v)) {
                out.lift_independence = failed(out.lift_independence, witness("left lift dependence", b, j));
                break;
              }
            }
          for (std::size_t b = 0; b < y.denominator.cols() && out.lift_independence.pass; ++b)
            for (std::size_t i = 0; i < gx; ++i) {
              ++checked;
              auto v = pairing.apply(x.n, x.group.lifts().column(i), y.n, y.denominator.column(b));
              if (!t->group.in_numerator(v) || !t->group.is_zero_class(v)) {
                out.lift_independence = failed(out.lift_independence, witness("right lift dependence", i, b));
                break;
              }
            }
          out.products.emplace(key, std::move(m));
        }
  if (out.lift_independence.pass) out.lift_independence.details = {{"r", r}, {"denominator_checks", checked}};
  return out;
}

Certificate leibniz_check(const PagePairing& pp) {
  Certificate cert;
  cert.name = "leibniz";
  const long r = static_cast<long>(pp.r);
  std::size_t pairs = 0;
  for (const auto& [key, m] : pp.products) {
    const auto [p1, n1, p2, n2] = key;
    const PageEntry* x = pp.left.entry(long(p1), long(n1));
    const PageEntry* y = pp.right.entry(long(p2), long(n2));
    const PageEntry* dt = pp.target.entry(long(p1 + p2) - r, long(n1 + n2) - 1);
    if (!dt) continue;
    const PresentedMap dh = pp.target.d(long(p1 + p2), long(n1 + n2));
    const PresentedMap dx = pp.left.d(long(p1), long(n1));
    const PresentedMap dy = pp.right.d(long(p2), long(n2));
    const int sign = n1 % 2 == 0 ? 1 : -1;
    const std::size_t gx = x->group.generator_count(), gy = y->group.generator_count();
    for (std::size_t i = 0; i < gx; ++i)
      for (std::size_t j = 0; j < gy; ++j) {
        ++pairs;
        Vector lhs = dt->group.reduce(dh.matrix.apply(m.column(i * gy + j)));
        Vector rhs(dt->group.generator_count());
        Vector ei(gx), ej(gy);
        ei[i] = 1;
        ej[j] = 1;
        if (p1 >= pp.r && n1 >= 1) {
          Vector t = pp.multiply({p1 - pp.r, n1 - 1, p2, n2}, dx.matrix.column(i), ej);
          for (std::size_t k = 0; k < t.size(); ++k) rhs[k] += t[k];
        }
        if (p2 >= pp.r && n2 >= 1) {
          Vector t = pp.multiply({p1, n1, p2 - pp.r, n2 - 1}, ei, dy.matrix.column(j));
          for (std::size_t k = 0; k < t.size(); ++k) rhs[k] += sign * t[k];
        }
        rhs = dt->group.reduce(std::move(rhs));
        if (lhs != rhs)
          return failed(cert, {{"r", pp.r},
                               {"left", {{"p", p1}, {"q", long(n1) - long(p1)}, {"generator", i}}},
                               {"right", {{"p", p2}, {"q", long(n2) - long(p2)}, {"generator", j}}},
                               {"d_of_product", vector_json(lhs)},
                               {"leibniz_side", vector_json(rhs)}});
      }
  }
  cert.details = {{"r", pp.r}, {"generator_pairs", pairs}};
  return cert;
}

Certificate heart_check(const SimplicialAbelianGroup& a) {
  Certificate cert;
  cert.name = "heart";
  const auto na = normalize(a);
  const SpectralSequence s(skeletal_filtration(a), 1);
  const Page& e1 = s.page(1);
  const std::size_t top = a.dim_bound();
  for (std::size_t p = 0; p <= top && cert.pass; ++p)
    for (std::size_t n = 0; n <= top; ++n) {
      const auto got = e1.entry(static_cast<long>(p), static_cast<long>(n))->group.invariants();
      const AbelianGroupInvariants want{n == p ? na.ranks[p] : 0, {}};
      if (got != want) {
        cert.pass = false;
        cert.witness = {{"p", p}, {"n", n}, {"e1", invariants_json(got)}, {"expected", invariants_json(want)}};
        break;
      }
    }
  for (std::size_t p = 1; p <= top && cert.pass; ++p) {
    const auto& src = e1.entry(static_cast<long>(p), static_cast<long>(p))->group;
    const auto& tgt = e1.entry(static_cast<long>(p) - 1, static_cast<long>(p) - 1)->group;
    const auto to_src = LatticeSolver(src.lifts()).solve(Matrix::identity(na.ranks[p]));
    require(to_src.has_value(), ErrorCode::internal, "E_1 generators do not span the normalized chains");
    const Matrix d1 = tgt.lifts() * e1.differential[p][p] * *to_src;
    if (d1 != na.normalized.differential(p)) {
      cert.pass = false;
      cert.witness = {{"degree", p}, {"d1", matrix_json(d1)}, {"normalized", matrix_json(na.normalized.differential(p))}};
    }
  }
  cert.details = {{"dim_bound", top}, {"normalized_ranks", na.ranks}};
  return cert;
}

}  // namespace zilber
