#include "zilber/simplicial.hpp"

#include "zilber/error.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace zilber {
namespace {

std::string op_name(char kind, std::size_t i) { return std::string(1, kind) + "_" + std::to_string(i); }

// Checks the simplicial identities for any representation of maps with a composition
// law (g after f) and an identity per level.
template <class Map, class Compose, class Identity, class Shape>
std::string identity_violation(const std::vector<std::size_t>& sizes, const std::vector<std::vector<Map>>& d,
                               const std::vector<std::vector<Map>>& s, Compose comp, Identity ident, Shape shape_ok) {
  const std::size_t top = sizes.size() - 1;
  if (d.size() != top + 1) return "expected face tables for every level";
  if (s.size() != top + 1 && !(top == 0 && s.empty())) return "expected degeneracy tables for every level";
  for (std::size_t k = 0; k <= top; ++k) {
    if (d[k].size() != (k == 0 ? 0 : k + 1)) return "level " + std::to_string(k) + ": wrong number of face maps";
    for (std::size_t i = 0; i < d[k].size(); ++i)
      if (!shape_ok(d[k][i], sizes[k], sizes[k - 1]))
        return "level " + std::to_string(k) + ": " + op_name('d', i) + " has the wrong shape or range";
    const std::size_t want = k < top ? k + 1 : 0;
    if (k < s.size() && s[k].size() != want) return "level " + std::to_string(k) + ": wrong number of degeneracies";
    for (std::size_t i = 0; k < s.size() && i < s[k].size(); ++i)
      if (!shape_ok(s[k][i], sizes[k], sizes[k + 1]))
        return "level " + std::to_string(k) + ": " + op_name('s', i) + " has the wrong shape or range";
  }
  auto at = [](std::size_t k) { return "on level " + std::to_string(k); };
  for (std::size_t k = 2; k <= top; ++k)
    for (std::size_t j = 1; j <= k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (!(comp(d[k - 1][i], d[k][j]) == comp(d[k - 1][j - 1], d[k][i])))
          return op_name('d', i) + op_name('d', j) + " != " + op_name('d', j - 1) + op_name('d', i) + " " + at(k);
  for (std::size_t k = 0; k + 2 <= top; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (!(comp(s[k + 1][i], s[k][j]) == comp(s[k + 1][j + 1], s[k][i])))
          return op_name('s', i) + op_name('s', j) + " != " + op_name('s', j + 1) + op_name('s', i) + " " + at(k);
  for (std::size_t k = 0; k + 1 <= top; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= k + 1; ++i) {
        Map lhs = comp(d[k + 1][i], s[k][j]);
        std::string name = op_name('d', i) + op_name('s', j);
        if (i < j) {
          if (!(lhs == comp(s[k - 1][j - 1], d[k][i])))
            return name + " != " + op_name('s', j - 1) + op_name('d', i) + " " + at(k);
        } else if (i == j || i == j + 1) {
          if (!(lhs == ident(sizes[k]))) return name + " != id " + at(k);
        } else {
          if (!(lhs == comp(s[k - 1][j], d[k][i - 1])))
            return name + " != " + op_name('s', j) + op_name('d', i - 1) + " " + at(k);
        }
      }
  return {};
}

IndexMap compose_maps(const IndexMap& g, const IndexMap& f) {
  IndexMap out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = g[f[x]];
  return out;
}

IndexMap identity_map(std::size_t n) {
  IndexMap m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(i);
  return m;
}

bool index_map_shape(const IndexMap& m, std::size_t from, std::size_t to) {
  if (m.size() != from) return false;
  return std::all_of(m.begin(), m.end(), [&](std::uint32_t v) { return v < to; });
}

}  // namespace

std::string simplicial_identity_violation(const std::vector<std::size_t>& sizes,
                                          const std::vector<std::vector<IndexMap>>& faces,
                                          const std::vector<std::vector<IndexMap>>& degeneracies) {
  if (sizes.empty()) return "no levels";
  return identity_violation(sizes, faces, degeneracies, compose_maps, identity_map, index_map_shape);
}

std::string simplicial_identity_violation(const std::vector<std::size_t>& ranks,
                                          const std::vector<std::vector<SparseMatrix>>& faces,
                                          const std::vector<std::vector<SparseMatrix>>& degeneracies) {
  if (ranks.empty()) return "no levels";
  return identity_violation(
      ranks, faces, degeneracies, [](const SparseMatrix& g, const SparseMatrix& f) { return g * f; },
      [](std::size_t n) { return SparseMatrix::identity(n); },
      [](const SparseMatrix& m, std::size_t from, std::size_t to) { return m.cols() == from && m.rows() == to; });
}

// ---------------------------------------------------------------------------

SimplicialSet::SimplicialSet(std::size_t dim_bound, std::vector<std::size_t> sizes,
                             std::vector<std::vector<IndexMap>> faces, std::vector<std::vector<IndexMap>> degeneracies,
                             std::vector<std::vector<std::string>> labels)
    : sizes_(std::move(sizes)), faces_(std::move(faces)), degens_(std::move(degeneracies)), labels_(std::move(labels)) {
  require(sizes_.size() == dim_bound + 1, ErrorCode::validation, "simplicial set: need one size per level");
  if (degens_.empty()) degens_.resize(dim_bound + 1);
  std::string bad = simplicial_identity_violation(sizes_, faces_, degens_);
  require(bad.empty(), ErrorCode::validation, "simplicial set: " + bad);
  require(labels_.empty() || labels_.size() == sizes_.size(), ErrorCode::validation, "simplicial set: label levels");
  for (std::size_t k = 0; k < labels_.size(); ++k)
    require(labels_[k].size() == sizes_[k], ErrorCode::validation, "simplicial set: label count");
  degenerate_.resize(dim_bound + 1);
  root_dim_.resize(dim_bound + 1);
  for (std::size_t k = 0; k <= dim_bound; ++k) {
    degenerate_[k].assign(sizes_[k], false);
    root_dim_[k].assign(sizes_[k], static_cast<std::uint32_t>(k));
    if (k == 0) continue;
    for (std::size_t i = 0; i < k; ++i)
      for (std::uint32_t y = 0; y < sizes_[k - 1]; ++y) {
        std::uint32_t x = degens_[k - 1][i][y];
        if (!degenerate_[k][x]) {
          degenerate_[k][x] = true;
          root_dim_[k][x] = root_dim_[k - 1][y];
        }
      }
    for (std::uint32_t x = 0; x < sizes_[k]; ++x)
      if (!degenerate_[k][x]) skeletal_dim_ = std::max(skeletal_dim_, k);
  }
}

std::vector<std::uint32_t> SimplicialSet::nondegenerate(std::size_t k) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < sizes_[k]; ++x)
    if (!degenerate_[k][x]) out.push_back(x);
  return out;
}

std::vector<std::size_t> SimplicialSet::nondegenerate_counts() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < sizes_.size(); ++k) out.push_back(nondegenerate(k).size());
  return out;
}

std::size_t SimplicialSet::root_dimension(std::size_t k, std::uint32_t x) const { return root_dim_[k][x]; }

std::uint32_t SimplicialSet::apply(const MonotoneMap& theta, std::uint32_t x) const {
  require(theta.codomain_top <= dim_bound() && theta.domain_top <= dim_bound(), ErrorCode::overflow,
          "operator exceeds the dimension bound");
  std::size_t level = theta.codomain_top;
  for (auto op : operator_word(theta)) {
    if (op.kind == SimplicialOp::face)
      x = faces_[level--][op.index][x];
    else
      x = degens_[level++][op.index][x];
  }
  return x;
}

// ---------------------------------------------------------------------------

namespace {

// Simplicial set whose level-k simplices are given by keys, with faces and degeneracies
// computed on keys.
template <class Key>
SimplicialSet from_keys(std::size_t dim_bound, const std::function<std::vector<Key>(std::size_t)>& level,
                        const std::function<Key(const Key&, std::size_t)>& face,
                        const std::function<Key(const Key&, std::size_t)>& degeneracy) {
  std::vector<std::vector<Key>> keys(dim_bound + 1);
  std::vector<std::map<Key, std::uint32_t>> index(dim_bound + 1);
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k <= dim_bound; ++k) {
    keys[k] = level(k);
    for (std::size_t x = 0; x < keys[k].size(); ++x) index[k][keys[k][x]] = static_cast<std::uint32_t>(x);
    sizes.push_back(keys[k].size());
  }
  std::vector<std::vector<IndexMap>> d(dim_bound + 1), s(dim_bound + 1);
  for (std::size_t k = 0; k <= dim_bound; ++k) {
    if (k >= 1)
      for (std::size_t i = 0; i <= k; ++i) {
        IndexMap m;
        for (const auto& key : keys[k]) m.push_back(index[k - 1].at(face(key, i)));
        d[k].push_back(std::move(m));
      }
    if (k < dim_bound)
      for (std::size_t i = 0; i <= k; ++i) {
        IndexMap m;
        for (const auto& key : keys[k]) m.push_back(index[k + 1].at(degeneracy(key, i)));
        s[k].push_back(std::move(m));
      }
  }
  return SimplicialSet(dim_bound, std::move(sizes), std::move(d), std::move(s));
}

using Seq = std::vector<std::size_t>;

Seq delete_at(const Seq& v, std::size_t i) {
  Seq out = v;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

Seq repeat_at(const Seq& v, std::size_t i) {
  Seq out = v;
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), v[i]);
  return out;
}

}  // namespace

SimplicialSet standard_simplex(std::size_t n, std::size_t dim_bound) {
  return from_keys<Seq>(
      dim_bound,
      [n](std::size_t k) {
        std::vector<Seq> out;
        for (auto& f : enumerate_monotone(k, n)) out.push_back(f.values);
        return out;
      },
      delete_at, repeat_at);
}

SimplicialSet point(std::size_t dim_bound) { return standard_simplex(0, dim_bound); }

SimplicialSet nerve(const std::vector<std::vector<bool>>& leq, std::size_t dim_bound) {
  const std::size_t n = leq.size();
  require(n > 0, ErrorCode::invalid_argument, "nerve of an empty poset");
  for (std::size_t a = 0; a < n; ++a) {
    require(leq[a].size() == n && leq[a][a], ErrorCode::invalid_argument, "order relation must be square and reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      require(a == b || !(leq[a][b] && leq[b][a]), ErrorCode::invalid_argument, "order relation is not antisymmetric");
      for (std::size_t c = 0; c < n; ++c)
        require(!(leq[a][b] && leq[b][c]) || leq[a][c], ErrorCode::invalid_argument, "order relation is not transitive");
    }
  }
  return from_keys<Seq>(
      dim_bound,
      [&](std::size_t k) {
        std::vector<Seq> out;
        Seq cur;
        std::function<void()> rec = [&]() {
          if (cur.size() == k + 1) {
            out.push_back(cur);
            return;
          }
          for (std::size_t v = 0; v < n; ++v)
            if (cur.empty() || leq[cur.back()][v]) {
              cur.push_back(v);
              rec();
              cur.pop_back();
            }
        };
        rec();
        return out;
      },
      delete_at, repeat_at);
}

SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y) {
  require(x.dim_bound() == y.dim_bound(), ErrorCode::invalid_argument, "product: dimension bounds differ");
  const std::size_t top = x.dim_bound();
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k <= top; ++k) sizes.push_back(x.size(k) * y.size(k));
  auto pair_map = [&](const IndexMap& fx, const IndexMap& fy, std::size_t ny_to) {
    IndexMap m(fx.size() * fy.size());
    for (std::size_t a = 0; a < fx.size(); ++a)
      for (std::size_t b = 0; b < fy.size(); ++b)
        m[a * fy.size() + b] = static_cast<std::uint32_t>(fx[a] * ny_to + fy[b]);
    return m;
  };
  std::vector<std::vector<IndexMap>> d(top + 1), s(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    if (k >= 1)
      for (std::size_t i = 0; i <= k; ++i) d[k].push_back(pair_map(x.faces()[k][i], y.faces()[k][i], y.size(k - 1)));
    if (k < top)
      for (std::size_t i = 0; i <= k; ++i)
        s[k].push_back(pair_map(x.degeneracies()[k][i], y.degeneracies()[k][i], y.size(k + 1)));
  }
  return SimplicialSet(top, std::move(sizes), std::move(d), std::move(s));
}

Subobject restrict_to(const SimplicialSet& x, const std::vector<std::vector<bool>>& members) {
  const std::size_t top = x.dim_bound();
  require(members.size() == top + 1, ErrorCode::invalid_argument, "membership needs one entry per level");
  std::vector<IndexMap> incl(top + 1);
  std::vector<std::vector<std::int64_t>> local(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    require(members[k].size() == x.size(k), ErrorCode::invalid_argument, "membership size mismatch");
    local[k].assign(x.size(k), -1);
    for (std::uint32_t v = 0; v < x.size(k); ++v)
      if (members[k][v]) {
        local[k][v] = static_cast<std::int64_t>(incl[k].size());
        incl[k].push_back(v);
      }
  }
  auto restrict_map = [&](const IndexMap& m, std::size_t from, std::size_t to) {
    IndexMap out;
    for (auto v : incl[from]) {
      auto w = local[to][m[v]];
      require(w >= 0, ErrorCode::validation, "subobject is not closed under the simplicial operators");
      out.push_back(static_cast<std::uint32_t>(w));
    }
    return out;
  };
  std::vector<std::size_t> sizes;
  std::vector<std::vector<IndexMap>> d(top + 1), s(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    sizes.push_back(incl[k].size());
    if (k >= 1)
      for (std::size_t i = 0; i <= k; ++i) d[k].push_back(restrict_map(x.faces()[k][i], k, k - 1));
    if (k < top)
      for (std::size_t i = 0; i <= k; ++i) s[k].push_back(restrict_map(x.degeneracies()[k][i], k, k + 1));
  }
  return {SimplicialSet(top, std::move(sizes), std::move(d), std::move(s)), std::move(incl)};
}

std::vector<std::vector<bool>> skeleton_members(const SimplicialSet& x, std::size_t n) {
  std::vector<std::vector<bool>> m(x.dim_bound() + 1);
  for (std::size_t k = 0; k <= x.dim_bound(); ++k) {
    m[k].resize(x.size(k));
    for (std::uint32_t v = 0; v < x.size(k); ++v) m[k][v] = x.root_dimension(k, v) <= n;
  }
  return m;
}

Subobject skeleton(const SimplicialSet& x, std::size_t n) {
  require(n <= x.dim_bound(), ErrorCode::invalid_argument, "skeleton index exceeds the dimension bound");
  return restrict_to(x, skeleton_members(x, n));
}

SimplicialSet collapse(const SimplicialSet& x, const std::vector<std::vector<bool>>& a) {
  restrict_to(x, a);  // closure check
  const std::size_t top = x.dim_bound();
  std::vector<std::vector<std::uint32_t>> local(top + 1);
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k <= top; ++k) {
    std::uint32_t next = 0;
    local[k].resize(x.size(k));
    for (std::uint32_t v = 0; v < x.size(k); ++v)
      if (!a[k][v]) local[k][v] = next++;
    for (std::uint32_t v = 0; v < x.size(k); ++v)
      if (a[k][v]) local[k][v] = next;
    require(next < x.size(k), ErrorCode::invalid_argument, "collapse: the collapsed subobject is empty");
    sizes.push_back(next + 1);
  }
  auto image_map = [&](const IndexMap& m, std::size_t from, std::size_t to) {
    IndexMap out(sizes[from]);
    for (std::uint32_t v = 0; v < x.size(from); ++v) out[local[from][v]] = local[to][m[v]];
    return out;
  };
  std::vector<std::vector<IndexMap>> d(top + 1), s(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    if (k >= 1)
      for (std::size_t i = 0; i <= k; ++i) d[k].push_back(image_map(x.faces()[k][i], k, k - 1));
    if (k < top)
      for (std::size_t i = 0; i <= k; ++i) s[k].push_back(image_map(x.degeneracies()[k][i], k, k + 1));
  }
  return SimplicialSet(top, std::move(sizes), std::move(d), std::move(s));
}

SimplicialSet circle(std::size_t dim_bound) {
  require(dim_bound >= 1, ErrorCode::invalid_argument, "the circle needs dimension bound >= 1");
  SimplicialSet interval = standard_simplex(1, dim_bound);
  return collapse(interval, skeleton_members(interval, 0));
}

SimplicialSet torus(std::size_t dim_bound) { return product(circle(dim_bound), circle(dim_bound)); }

Certificate skeleton_product_check(const SimplicialSet& x, const SimplicialSet& y, std::size_t p, std::size_t q,
                                   std::size_t n) {
  Certificate cert;
  cert.name = "skeleton_product";
  require(x.dim_bound() == y.dim_bound(), ErrorCode::invalid_argument, "product: dimension bounds differ");
  const std::size_t top = x.dim_bound();
  require(p <= top && q <= top && n <= top, ErrorCode::invalid_argument, "skeleton index exceeds the dimension bound");
  cert.details = {{"p", p}, {"q", q}, {"n", n}, {"dim_bound", top}};
  SimplicialSet xy = product(x, y);
  auto in_sk = skeleton_members(xy, n);
  auto mx = skeleton_members(x, p);
  auto my = skeleton_members(y, q);
  std::vector<std::vector<bool>> prod(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    prod[k].assign(xy.size(k), false);
    for (std::uint32_t a = 0; a < x.size(k); ++a)
      for (std::uint32_t b = 0; b < y.size(k); ++b) {
        const std::uint32_t v = static_cast<std::uint32_t>(a * y.size(k) + b);
        if (!mx[k][a] || !my[k][b]) continue;
        prod[k][v] = true;
        if (!in_sk[k][v] && cert.pass) {
          cert.pass = false;
          cert.witness = {{"part", "containment"},
                          {"level", k},
                          {"x", a},
                          {"y", b},
                          {"x_root_dimension", x.root_dimension(k, a)},
                          {"y_root_dimension", y.root_dimension(k, b)},
                          {"product_root_dimension", xy.root_dimension(k, v)}};
        }
      }
  }
  Subobject sub = restrict_to(xy, prod);
  cert.details["product_of_skeleta_nondegenerate"] = sub.set.nondegenerate_counts();
  cert.details["product_of_skeleta_dimension"] = sub.set.skeletal_dimension();
  if (sub.set.skeletal_dimension() > n && cert.pass) {
    cert.pass = false;
    const std::size_t k = sub.set.skeletal_dimension();
    const std::uint32_t v = sub.inclusion[k][sub.set.nondegenerate(k).front()];
    cert.witness = {{"part", "skeletal"}, {"level", k}, {"x", v / y.size(k)}, {"y", v % y.size(k)}};
  }
  return cert;
}

// ---------------------------------------------------------------------------

SimplicialMap::SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<IndexMap> levels)
    : source_(std::move(source)), target_(std::move(target)), levels_(std::move(levels)) {
  const std::size_t top = source_.dim_bound();
  require(target_.dim_bound() == top && levels_.size() == top + 1, ErrorCode::validation,
          "simplicial map: level count mismatch");
  for (std::size_t k = 0; k <= top; ++k)
    require(index_map_shape(levels_[k], source_.size(k), target_.size(k)), ErrorCode::validation,
            "simplicial map: level " + std::to_string(k) + " has the wrong shape");
  for (std::size_t k = 0; k <= top; ++k)
    for (std::uint32_t v = 0; v < source_.size(k); ++v) {
      for (std::size_t i = 0; k >= 1 && i <= k; ++i)
        require(levels_[k - 1][source_.face(k, i, v)] == target_.face(k, i, levels_[k][v]), ErrorCode::validation,
                "simplicial map does not commute with d_" + std::to_string(i) + " on level " + std::to_string(k));
      for (std::size_t i = 0; k < top && i <= k; ++i)
        require(levels_[k + 1][source_.degeneracy(k, i, v)] == target_.degeneracy(k, i, levels_[k][v]),
                ErrorCode::validation,
                "simplicial map does not commute with s_" + std::to_string(i) + " on level " + std::to_string(k));
    }
}

SimplicialMap SimplicialMap::induced(const MonotoneMap& theta, std::size_t dim_bound) {
  SimplicialSet src = standard_simplex(theta.domain_top, dim_bound);
  SimplicialSet tgt = standard_simplex(theta.codomain_top, dim_bound);
  std::vector<IndexMap> levels(dim_bound + 1);
  for (std::size_t k = 0; k <= dim_bound; ++k)
    for (const auto& f : enumerate_monotone(k, theta.domain_top))
      levels[k].push_back(static_cast<std::uint32_t>(monotone_rank(compose(theta, f))));
  return SimplicialMap(std::move(src), std::move(tgt), std::move(levels));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  require(f.target() == g.source(), ErrorCode::invalid_argument, "simplicial maps are not composable");
  std::vector<IndexMap> levels;
  for (std::size_t k = 0; k < f.levels().size(); ++k) levels.push_back(compose_maps(g.level(k), f.level(k)));
  return SimplicialMap(f.source(), g.target(), std::move(levels));
}

// ---------------------------------------------------------------------------

BiSimplicialSet::BiSimplicialSet(std::vector<SimplicialSet> rows, std::vector<SimplicialSet> columns)
    : rows_(std::move(rows)), columns_(std::move(columns)) {
  require(!rows_.empty() && rows_.size() == columns_.size(), ErrorCode::validation, "bisimplicial set: level count");
  const std::size_t top = rows_.size() - 1;
  for (std::size_t r = 0; r <= top; ++r)
    require(rows_[r].dim_bound() == top && columns_[r].dim_bound() == top, ErrorCode::validation,
            "bisimplicial set: dimension bounds differ");
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t r = 0; r <= top; ++r)
      require(rows_[r].size(k) == columns_[k].size(r), ErrorCode::validation, "bisimplicial set: sizes disagree");
  // horizontal op on B_{k,r}: (kind, i) -> new k and element
  struct Step {
    bool ok;
    std::size_t level;
    std::uint32_t value;
  };
  auto horizontal = [&](SimplicialOp op, std::size_t k, std::size_t r, std::uint32_t x) -> Step {
    if (op.kind == SimplicialOp::face) {
      if (k == 0 || op.index > k) return {false, 0, 0};
      return {true, k - 1, rows_[r].face(k, op.index, x)};
    }
    if (k >= top || op.index > k) return {false, 0, 0};
    return {true, k + 1, rows_[r].degeneracy(k, op.index, x)};
  };
  auto vertical = [&](SimplicialOp op, std::size_t k, std::size_t r, std::uint32_t x) -> Step {
    if (op.kind == SimplicialOp::face) {
      if (r == 0 || op.index > r) return {false, 0, 0};
      return {true, r - 1, columns_[k].face(r, op.index, x)};
    }
    if (r >= top || op.index > r) return {false, 0, 0};
    return {true, r + 1, columns_[k].degeneracy(r, op.index, x)};
  };
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t r = 0; r <= top; ++r)
      for (auto hk : {SimplicialOp::face, SimplicialOp::degeneracy})
        for (auto vk : {SimplicialOp::face, SimplicialOp::degeneracy})
          for (std::size_t i = 0; i <= k + 1; ++i)
            for (std::size_t j = 0; j <= r + 1; ++j)
              for (std::uint32_t x = 0; x < rows_[r].size(k); ++x) {
                SimplicialOp h{hk, i}, v{vk, j};
                Step a = vertical(v, k, r, x);
                if (!a.ok) continue;
                Step b = horizontal(h, k, a.level, a.value);
                if (!b.ok) continue;
                Step c = horizontal(h, k, r, x);
                Step e = vertical(v, c.level, r, c.value);
                require(c.ok && e.ok && b.value == e.value, ErrorCode::validation,
                        "bisimplicial set: horizontal and vertical operators do not commute");
              }
}

BiSimplicialSet external_product(const SimplicialSet& x, const SimplicialSet& y) {
  require(x.dim_bound() == y.dim_bound(), ErrorCode::invalid_argument, "external product: dimension bounds differ");
  const std::size_t top = x.dim_bound();
  std::vector<SimplicialSet> rows, columns;
  for (std::size_t r = 0; r <= top; ++r) {
    // x (x) constant Y_r
    std::vector<std::size_t> sizes;
    std::vector<std::vector<IndexMap>> d(top + 1), s(top + 1);
    const std::size_t ny = y.size(r);
    auto lift = [&](const IndexMap& m) {
      IndexMap out(m.size() * ny);
      for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < ny; ++b) out[a * ny + b] = static_cast<std::uint32_t>(m[a] * ny + b);
      return out;
    };
    for (std::size_t k = 0; k <= top; ++k) {
      sizes.push_back(x.size(k) * ny);
      for (std::size_t i = 0; k >= 1 && i <= k; ++i) d[k].push_back(lift(x.faces()[k][i]));
      for (std::size_t i = 0; k < top && i <= k; ++i) s[k].push_back(lift(x.degeneracies()[k][i]));
    }
    rows.emplace_back(top, std::move(sizes), std::move(d), std::move(s));
  }
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<std::size_t> sizes;
    std::vector<std::vector<IndexMap>> d(top + 1), s(top + 1);
    const std::size_t nx = x.size(k);
    for (std::size_t r = 0; r <= top; ++r) {
      sizes.push_back(nx * y.size(r));
      auto lift = [&](const IndexMap& m, std::size_t to) {
        IndexMap out(nx * m.size());
        for (std::size_t a = 0; a < nx; ++a)
          for (std::size_t b = 0; b < m.size(); ++b) out[a * m.size() + b] = static_cast<std::uint32_t>(a * to + m[b]);
        return out;
      };
      for (std::size_t i = 0; r >= 1 && i <= r; ++i) d[r].push_back(lift(y.faces()[r][i], y.size(r - 1)));
      for (std::size_t i = 0; r < top && i <= r; ++i) s[r].push_back(lift(y.degeneracies()[r][i], y.size(r + 1)));
    }
    columns.emplace_back(top, std::move(sizes), std::move(d), std::move(s));
  }
  return BiSimplicialSet(std::move(rows), std::move(columns));
}

BiSimplicialSet vertically_constant(const SimplicialSet& x) {
  const std::size_t top = x.dim_bound();
  std::vector<SimplicialSet> rows(top + 1, x), columns;
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<std::size_t> sizes(top + 1, x.size(k));
    std::vector<std::vector<IndexMap>> d(top + 1), s(top + 1);
    for (std::size_t r = 0; r <= top; ++r) {
      for (std::size_t i = 0; r >= 1 && i <= r; ++i) d[r].push_back(identity_map(x.size(k)));
      for (std::size_t i = 0; r < top && i <= r; ++i) s[r].push_back(identity_map(x.size(k)));
    }
    columns.emplace_back(top, std::move(sizes), std::move(d), std::move(s));
  }
  return BiSimplicialSet(std::move(rows), std::move(columns));
}

SimplicialSet diagonal(const BiSimplicialSet& b) {
  const std::size_t top = b.dim_bound();
  std::vector<std::size_t> sizes;
  std::vector<std::vector<IndexMap>> d(top + 1), s(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    sizes.push_back(b.size(n, n));
    for (std::size_t i = 0; n >= 1 && i <= n; ++i) {
      // vertical d_i to B_{n,n-1}, then horizontal d_i to B_{n-1,n-1}
      IndexMap m(b.size(n, n));
      for (std::uint32_t x = 0; x < m.size(); ++x) m[x] = b.row(n - 1).face(n, i, b.column(n).face(n, i, x));
      d[n].push_back(std::move(m));
    }
    for (std::size_t i = 0; n < top && i <= n; ++i) {
      IndexMap m(b.size(n, n));
      for (std::uint32_t x = 0; x < m.size(); ++x)
        m[x] = b.row(n + 1).degeneracy(n, i, b.column(n).degeneracy(n, i, x));
      s[n].push_back(std::move(m));
    }
  }
  return SimplicialSet(top, std::move(sizes), std::move(d), std::move(s));
}

// ---------------------------------------------------------------------------

SimplicialAbelianGroup::SimplicialAbelianGroup(std::size_t dim_bound, std::vector<std::size_t> ranks,
                                               std::vector<std::vector<SparseMatrix>> faces,
                                               std::vector<std::vector<SparseMatrix>> degeneracies)
    : ranks_(std::move(ranks)), faces_(std::move(faces)), degens_(std::move(degeneracies)) {
  require(ranks_.size() == dim_bound + 1, ErrorCode::validation, "simplicial abelian group: need one rank per level");
  if (degens_.empty()) degens_.resize(dim_bound + 1);
  std::string bad = simplicial_identity_violation(ranks_, faces_, degens_);
  require(bad.empty(), ErrorCode::validation, "simplicial abelian group: " + bad);
}

SparseMatrix SimplicialAbelianGroup::apply(const MonotoneMap& theta) const {
  require(theta.codomain_top <= dim_bound() && theta.domain_top <= dim_bound(), ErrorCode::overflow,
          "operator exceeds the dimension bound");
  std::size_t level = theta.codomain_top;
  SparseMatrix m = SparseMatrix::identity(ranks_[level]);
  for (auto op : operator_word(theta)) {
    if (op.kind == SimplicialOp::face)
      m = faces_[level--][op.index] * m;
    else
      m = degens_[level++][op.index] * m;
  }
  return m;
}

bool SimplicialAbelianGroup::degeneracies_monomial() const {
  for (const auto& level : degens_)
    for (const auto& s : level)
      if (!s.is_monomial_unit()) return false;
  return true;
}

SimplicialAbelianGroup free_abelian(const SimplicialSet& x) {
  const std::size_t top = x.dim_bound();
  std::vector<std::vector<SparseMatrix>> d(top + 1), s(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    for (std::size_t i = 0; k >= 1 && i <= k; ++i)
      d[k].push_back(SparseMatrix::from_index_map(x.size(k - 1), x.faces()[k][i]));
    for (std::size_t i = 0; k < top && i <= k; ++i)
      s[k].push_back(SparseMatrix::from_index_map(x.size(k + 1), x.degeneracies()[k][i]));
  }
  return SimplicialAbelianGroup(top, x.sizes(), std::move(d), std::move(s));
}

std::vector<SparseMatrix> free_abelian(const SimplicialMap& f) {
  std::vector<SparseMatrix> out;
  for (std::size_t k = 0; k < f.levels().size(); ++k)
    out.push_back(SparseMatrix::from_index_map(f.target().size(k), f.level(k)));
  return out;
}

SimplicialAbelianGroup levelwise_tensor(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b) {
  require(a.dim_bound() == b.dim_bound(), ErrorCode::invalid_argument, "tensor: dimension bounds differ");
  const std::size_t top = a.dim_bound();
  std::vector<std::size_t> ranks;
  std::vector<std::vector<SparseMatrix>> d(top + 1), s(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    ranks.push_back(a.rank(k) * b.rank(k));
    for (std::size_t i = 0; k >= 1 && i <= k; ++i) d[k].push_back(kron(a.face(k, i), b.face(k, i)));
    for (std::size_t i = 0; k < top && i <= k; ++i) s[k].push_back(kron(a.degeneracy(k, i), b.degeneracy(k, i)));
  }
  return SimplicialAbelianGroup(top, std::move(ranks), std::move(d), std::move(s));
}

std::vector<SparseMatrix> levelwise_swap(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b) {
  std::vector<SparseMatrix> out;
  for (std::size_t k = 0; k <= a.dim_bound(); ++k) {
    const std::size_t ra = a.rank(k), rb = b.rank(k);
    IndexMap m(ra * rb);
    for (std::size_t x = 0; x < ra; ++x)
      for (std::size_t y = 0; y < rb; ++y) m[x * rb + y] = static_cast<std::uint32_t>(y * ra + x);
    out.push_back(SparseMatrix::from_index_map(ra * rb, m));
  }
  return out;
}

SimplicialAbelianGroup truncate(const SimplicialAbelianGroup& a, std::size_t dim_bound) {
  require(dim_bound <= a.dim_bound(), ErrorCode::invalid_argument, "truncation above the dimension bound");
  std::vector<std::size_t> ranks(a.ranks().begin(), a.ranks().begin() + static_cast<std::ptrdiff_t>(dim_bound + 1));
  std::vector<std::vector<SparseMatrix>> d(a.faces().begin(), a.faces().begin() + static_cast<std::ptrdiff_t>(dim_bound + 1));
  std::vector<std::vector<SparseMatrix>> s(a.degeneracies().begin(),
                                           a.degeneracies().begin() + static_cast<std::ptrdiff_t>(dim_bound + 1));
  s[dim_bound].clear();
  return SimplicialAbelianGroup(dim_bound, std::move(ranks), std::move(d), std::move(s));
}

SimplicialSet truncate(const SimplicialSet& x, std::size_t dim_bound) {
  require(dim_bound <= x.dim_bound(), ErrorCode::invalid_argument, "truncation above the dimension bound");
  std::vector<std::size_t> sizes(x.sizes().begin(), x.sizes().begin() + static_cast<std::ptrdiff_t>(dim_bound + 1));
  std::vector<std::vector<IndexMap>> d(x.faces().begin(), x.faces().begin() + static_cast<std::ptrdiff_t>(dim_bound + 1));
  std::vector<std::vector<IndexMap>> s(x.degeneracies().begin(),
                                       x.degeneracies().begin() + static_cast<std::ptrdiff_t>(dim_bound + 1));
  s[dim_bound].clear();
  std::vector<std::vector<std::string>> labels;
  if (!x.labels().empty())
    labels.assign(x.labels().begin(), x.labels().begin() + static_cast<std::ptrdiff_t>(dim_bound + 1));
  return SimplicialSet(dim_bound, std::move(sizes), std::move(d), std::move(s), std::move(labels));
}

std::optional<std::string> simplicial_map_violation(const SimplicialAbelianGroup& source,
                                                    const SimplicialAbelianGroup& target,
                                                    const std::vector<SparseMatrix>& f) {
  const std::size_t top = source.dim_bound();
  if (target.dim_bound() != top || f.size() != top + 1) return "level count mismatch";
  for (std::size_t k = 0; k <= top; ++k) {
    if (f[k].rows() != target.rank(k) || f[k].cols() != source.rank(k))
      return "level " + std::to_string(k) + " has the wrong shape";
    for (std::size_t i = 0; k >= 1 && i <= k; ++i)
      if (!(target.face(k, i) * f[k] == f[k - 1] * source.face(k, i)))
        return "does not commute with d_" + std::to_string(i) + " on level " + std::to_string(k);
    for (std::size_t i = 0; k < top && i <= k; ++i)
      if (!(target.degeneracy(k, i) * f[k] == f[k + 1] * source.degeneracy(k, i)))
        return "does not commute with s_" + std::to_string(i) + " on level " + std::to_string(k);
  }
  return std::nullopt;
}

}  // namespace zilber
