#include "zilber/promonoidal.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <boost/pending/disjoint_sets.hpp>

#include "zilber/error.hpp"

namespace zilber {

namespace {

nlohmann::json chain_json(const PosetChain& c) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : c) j.push_back(p);
  return j;
}

std::size_t hom_count_delta(std::size_t m, std::size_t n) {
  return static_cast<std::size_t>(binomial(m + n + 1, m + 1));
}

}  // namespace

// ---------------------------------------------------------------- FiniteCategory

struct FiniteCategory::Impl {
  bool product = false;
  std::shared_ptr<const FiniteCategory> a, b;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::size_t> identities;
  std::vector<std::ptrdiff_t> composition;  // [g * M + f]
  std::vector<std::size_t> generators;
  std::vector<std::size_t> hom_position;
  std::vector<std::vector<std::size_t>> homs;  // [a * N + b]
};

namespace {

void index_homs(FiniteCategory::Morphism const* ms, std::size_t m, std::size_t n,
                std::vector<std::vector<std::size_t>>& homs, std::vector<std::size_t>& pos) {
  homs.assign(n * n, {});
  pos.assign(m, 0);
  for (std::size_t f = 0; f < m; ++f) {
    auto& h = homs[ms[f].source * n + ms[f].target];
    pos[f] = h.size();
    h.push_back(f);
  }
}

}  // namespace

FiniteCategory::FiniteCategory() {
  auto impl = std::make_shared<Impl>();
  impl->objects = {"*"};
  impl->morphisms = {{0, 0, "id"}};
  impl->identities = {0};
  impl->composition = {0};
  index_homs(impl->morphisms.data(), 1, 1, impl->homs, impl->hom_position);
  impl_ = impl;
}

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                               std::vector<std::size_t> identities,
                               std::vector<std::vector<std::ptrdiff_t>> composition,
                               std::vector<std::size_t> generators) {
  auto impl = std::make_shared<Impl>();
  const std::size_t n = objects.size(), m = morphisms.size();
  require(identities.size() == n, ErrorCode::validation, "one identity per object required");
  require(composition.size() == m, ErrorCode::validation, "composition table has wrong height");
  for (const auto& f : morphisms)
    require(f.source < n && f.target < n, ErrorCode::validation, "morphism endpoint out of range");
  for (std::size_t c = 0; c < n; ++c) {
    require(identities[c] < m && morphisms[identities[c]].source == c && morphisms[identities[c]].target == c,
            ErrorCode::validation, "identity of object " + std::to_string(c) + " is not an endomorphism");
  }
  impl->composition.assign(m * m, -1);
  for (std::size_t g = 0; g < m; ++g) {
    require(composition[g].size() == m, ErrorCode::validation, "composition table has wrong width");
    for (std::size_t f = 0; f < m; ++f) {
      const std::ptrdiff_t h = composition[g][f];
      const bool ok = morphisms[f].target == morphisms[g].source;
      if (!ok) {
        require(h == -1, ErrorCode::validation, "composite defined for a non-composable pair");
        continue;
      }
      require(h >= 0 && static_cast<std::size_t>(h) < m, ErrorCode::validation, "composite missing");
      require(morphisms[h].source == morphisms[f].source && morphisms[h].target == morphisms[g].target,
              ErrorCode::validation, "composite has wrong endpoints");
      impl->composition[g * m + f] = h;
    }
  }
  const auto& comp = impl->composition;
  for (std::size_t f = 0; f < m; ++f) {
    require(comp[identities[morphisms[f].target] * m + f] == static_cast<std::ptrdiff_t>(f) &&
                comp[f * m + identities[morphisms[f].source]] == static_cast<std::ptrdiff_t>(f),
            ErrorCode::validation, "unit law fails for morphism " + std::to_string(f));
  }
  index_homs(morphisms.data(), m, n, impl->homs, impl->hom_position);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t g : impl->homs[morphisms[f].target * n + t]) {
        const auto gf = static_cast<std::size_t>(comp[g * m + f]);
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t h : impl->homs[t * n + u]) {
            require(comp[h * m + gf] == comp[static_cast<std::size_t>(comp[h * m + g]) * m + f], ErrorCode::validation,
                    "associativity fails at (" + std::to_string(h) + "," + std::to_string(g) + "," +
                        std::to_string(f) + ")");
          }
        }
      }
    }
  }
  if (generators.empty()) {
    for (std::size_t f = 0; f < m; ++f)
      if (identities[morphisms[f].source] != f) generators.push_back(f);
  } else {
    // every morphism must be reachable as a composite of generators
    std::vector<char> reached(m, 0);
    std::vector<std::size_t> frontier(identities.begin(), identities.end());
    for (std::size_t c : identities) reached[c] = 1;
    while (!frontier.empty()) {
      const std::size_t f = frontier.back();
      frontier.pop_back();
      for (std::size_t g : generators) {
        require(g < m, ErrorCode::validation, "generator out of range");
        if (morphisms[g].source != morphisms[f].target) continue;
        const auto h = static_cast<std::size_t>(comp[g * m + f]);
        if (!reached[h]) {
          reached[h] = 1;
          frontier.push_back(h);
        }
      }
    }
    for (std::size_t f = 0; f < m; ++f)
      require(reached[f], ErrorCode::validation, "morphism " + std::to_string(f) + " is not generated");
  }
  impl->objects = std::move(objects);
  impl->morphisms = std::move(morphisms);
  impl->identities = std::move(identities);
  impl->generators = std::move(generators);
  impl_ = impl;
}

FiniteCategory FiniteCategory::discrete(std::size_t n) {
  std::vector<std::string> objects;
  std::vector<Morphism> ms;
  std::vector<std::size_t> ids;
  std::vector<std::vector<std::ptrdiff_t>> comp(n, std::vector<std::ptrdiff_t>(n, -1));
  for (std::size_t c = 0; c < n; ++c) {
    objects.push_back(std::to_string(c));
    ms.push_back({c, c, "id" + std::to_string(c)});
    ids.push_back(c);
    comp[c][c] = static_cast<std::ptrdiff_t>(c);
  }
  return FiniteCategory(std::move(objects), std::move(ms), std::move(ids), std::move(comp));
}

FiniteCategory FiniteCategory::poset(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq,
                                     std::vector<std::string> names) {
  if (names.empty())
    for (std::size_t c = 0; c < n; ++c) names.push_back(std::to_string(c));
  require(names.size() == n, ErrorCode::invalid_argument, "one name per element required");
  std::vector<Morphism> ms;
  std::vector<std::ptrdiff_t> index(n * n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq(i, j)) {
        if (i != j) require(!leq(j, i), ErrorCode::validation, "order is not antisymmetric");
        index[i * n + j] = static_cast<std::ptrdiff_t>(ms.size());
        ms.push_back({i, j, names[i] + "<=" + names[j]});
      }
  std::vector<std::size_t> ids(n);
  for (std::size_t c = 0; c < n; ++c) {
    require(index[c * n + c] >= 0, ErrorCode::validation, "order is not reflexive");
    ids[c] = static_cast<std::size_t>(index[c * n + c]);
  }
  const std::size_t m = ms.size();
  std::vector<std::vector<std::ptrdiff_t>> comp(m, std::vector<std::ptrdiff_t>(m, -1));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (ms[f].target == ms[g].source) {
        const std::ptrdiff_t h = index[ms[f].source * n + ms[g].target];
        require(h >= 0, ErrorCode::validation, "order is not transitive");
        comp[g][f] = h;
      }
  return FiniteCategory(std::move(names), std::move(ms), std::move(ids), std::move(comp));
}

namespace {

std::vector<std::size_t> simplex_offsets(std::size_t b) {
  std::vector<std::size_t> off;
  std::size_t total = 0;
  for (std::size_t m = 0; m <= b; ++m)
    for (std::size_t n = 0; n <= b; ++n) {
      off.push_back(total);
      total += hom_count_delta(m, n);
    }
  off.push_back(total);
  return off;
}

}  // namespace

std::size_t simplex_index(std::size_t b, const MonotoneMap& f) {
  require(f.domain_top <= b && f.codomain_top <= b, ErrorCode::invalid_argument, "map outside the truncation");
  return simplex_offsets(b)[f.domain_top * (b + 1) + f.codomain_top] + monotone_rank(f);
}

MonotoneMap simplex_map(std::size_t b, std::size_t index) {
  const auto off = simplex_offsets(b);
  require(index < off.back(), ErrorCode::invalid_argument, "morphism index out of range");
  const auto it = std::upper_bound(off.begin(), off.end(), index) - 1;
  const auto slot = static_cast<std::size_t>(it - off.begin());
  return monotone_unrank(slot / (b + 1), slot % (b + 1), index - *it);
}

FiniteCategory FiniteCategory::simplex(std::size_t b) {
  const auto off = simplex_offsets(b);
  std::vector<std::string> objects;
  for (std::size_t n = 0; n <= b; ++n) objects.push_back("[" + std::to_string(n) + "]");
  std::vector<Morphism> ms;
  std::vector<MonotoneMap> maps;
  for (std::size_t m = 0; m <= b; ++m)
    for (std::size_t n = 0; n <= b; ++n)
      for (auto& f : enumerate_monotone(m, n)) {
        ms.push_back({m, n, f.to_string()});
        maps.push_back(std::move(f));
      }
  const std::size_t count = ms.size();
  auto index_of = [&](const MonotoneMap& f) {
    return off[f.domain_top * (b + 1) + f.codomain_top] + monotone_rank(f);
  };
  std::vector<std::vector<std::ptrdiff_t>> comp(count, std::vector<std::ptrdiff_t>(count, -1));
  for (std::size_t g = 0; g < count; ++g)
    for (std::size_t f = 0; f < count; ++f)
      if (ms[f].target == ms[g].source) comp[g][f] = static_cast<std::ptrdiff_t>(index_of(zilber::compose(maps[g], maps[f])));
  std::vector<std::size_t> ids, gens;
  for (std::size_t n = 0; n <= b; ++n) ids.push_back(index_of(MonotoneMap::identity(n)));
  for (std::size_t n = 1; n <= b; ++n)
    for (std::size_t i = 0; i <= n; ++i) gens.push_back(index_of(MonotoneMap::coface(n, i)));
  for (std::size_t n = 0; n + 1 <= b; ++n)
    for (std::size_t i = 0; i <= n; ++i) gens.push_back(index_of(MonotoneMap::codegeneracy(n, i)));
  if (gens.empty()) gens.push_back(ids[0]);
  return FiniteCategory(std::move(objects), std::move(ms), std::move(ids), std::move(comp), std::move(gens));
}

FiniteCategory FiniteCategory::product(const FiniteCategory& a, const FiniteCategory& b) {
  auto impl = std::make_shared<Impl>();
  impl->product = true;
  impl->a = std::make_shared<const FiniteCategory>(a);
  impl->b = std::make_shared<const FiniteCategory>(b);
  const std::size_t nb = b.object_count(), mb = b.morphism_count();
  for (std::size_t g : a.generators())
    for (std::size_t j = 0; j < nb; ++j) impl->generators.push_back(g * mb + b.identity(j));
  for (std::size_t i = 0; i < a.object_count(); ++i)
    for (std::size_t g : b.generators()) impl->generators.push_back(a.identity(i) * mb + g);
  std::sort(impl->generators.begin(), impl->generators.end());
  impl->generators.erase(std::unique(impl->generators.begin(), impl->generators.end()), impl->generators.end());
  return FiniteCategory(std::shared_ptr<const Impl>(impl));
}

FiniteCategory FiniteCategory::opposite() const {
  if (impl_->product) return product(impl_->a->opposite(), impl_->b->opposite());
  auto impl = std::make_shared<Impl>(*impl_);
  const std::size_t n = impl->objects.size(), m = impl->morphisms.size();
  for (auto& f : impl->morphisms) std::swap(f.source, f.target);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) impl->composition[g * m + f] = impl_->composition[f * m + g];
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) impl->homs[x * n + y] = impl_->homs[y * n + x];
  return FiniteCategory(std::shared_ptr<const Impl>(impl));
}

std::size_t FiniteCategory::object_count() const {
  return impl_->product ? impl_->a->object_count() * impl_->b->object_count() : impl_->objects.size();
}
std::size_t FiniteCategory::morphism_count() const {
  return impl_->product ? impl_->a->morphism_count() * impl_->b->morphism_count() : impl_->morphisms.size();
}
std::string FiniteCategory::object_name(std::size_t c) const {
  if (!impl_->product) return impl_->objects.at(c);
  const std::size_t nb = impl_->b->object_count();
  return "(" + impl_->a->object_name(c / nb) + "," + impl_->b->object_name(c % nb) + ")";
}
std::size_t FiniteCategory::source(std::size_t f) const {
  if (!impl_->product) return impl_->morphisms[f].source;
  const std::size_t mb = impl_->b->morphism_count();
  return impl_->a->source(f / mb) * impl_->b->object_count() + impl_->b->source(f % mb);
}
std::size_t FiniteCategory::target(std::size_t f) const {
  if (!impl_->product) return impl_->morphisms[f].target;
  const std::size_t mb = impl_->b->morphism_count();
  return impl_->a->target(f / mb) * impl_->b->object_count() + impl_->b->target(f % mb);
}
std::string FiniteCategory::label(std::size_t f) const {
  if (!impl_->product) return impl_->morphisms.at(f).label;
  const std::size_t mb = impl_->b->morphism_count();
  return "(" + impl_->a->label(f / mb) + "," + impl_->b->label(f % mb) + ")";
}
std::size_t FiniteCategory::identity(std::size_t c) const {
  if (!impl_->product) return impl_->identities.at(c);
  const std::size_t nb = impl_->b->object_count();
  return impl_->a->identity(c / nb) * impl_->b->morphism_count() + impl_->b->identity(c % nb);
}
std::size_t FiniteCategory::compose(std::size_t g, std::size_t f) const {
  require(composable(g, f), ErrorCode::invalid_argument, "morphisms are not composable");
  if (!impl_->product) return static_cast<std::size_t>(impl_->composition[g * impl_->morphisms.size() + f]);
  const std::size_t mb = impl_->b->morphism_count();
  return impl_->a->compose(g / mb, f / mb) * mb + impl_->b->compose(g % mb, f % mb);
}
std::vector<std::size_t> FiniteCategory::hom(std::size_t x, std::size_t y) const {
  if (!impl_->product) return impl_->homs.at(x * impl_->objects.size() + y);
  const std::size_t nb = impl_->b->object_count(), mb = impl_->b->morphism_count();
  std::vector<std::size_t> out;
  for (std::size_t f : impl_->a->hom(x / nb, y / nb))
    for (std::size_t g : impl_->b->hom(x % nb, y % nb)) out.push_back(f * mb + g);
  return out;
}
std::size_t FiniteCategory::hom_position(std::size_t f) const {
  if (!impl_->product) return impl_->hom_position.at(f);
  const std::size_t mb = impl_->b->morphism_count();
  const std::size_t g = f % mb;
  return impl_->a->hom_position(f / mb) * impl_->b->hom_size(impl_->b->source(g), impl_->b->target(g)) +
         impl_->b->hom_position(g);
}
std::size_t FiniteCategory::hom_at(std::size_t x, std::size_t y, std::size_t position) const {
  if (!impl_->product) return impl_->homs.at(x * impl_->objects.size() + y).at(position);
  const std::size_t nb = impl_->b->object_count(), mb = impl_->b->morphism_count();
  const std::size_t hb = impl_->b->hom_size(x % nb, y % nb);
  return impl_->a->hom_at(x / nb, y / nb, position / hb) * mb + impl_->b->hom_at(x % nb, y % nb, position % hb);
}
std::size_t FiniteCategory::hom_size(std::size_t x, std::size_t y) const {
  if (!impl_->product) return impl_->homs.at(x * impl_->objects.size() + y).size();
  const std::size_t nb = impl_->b->object_count();
  return impl_->a->hom_size(x / nb, y / nb) * impl_->b->hom_size(x % nb, y % nb);
}
const std::vector<std::size_t>& FiniteCategory::generators() const { return impl_->generators; }
bool FiniteCategory::is_product() const { return impl_->product; }
const FiniteCategory& FiniteCategory::left_factor() const {
  require(impl_->product, ErrorCode::invalid_argument, "not a product category");
  return *impl_->a;
}
const FiniteCategory& FiniteCategory::right_factor() const {
  require(impl_->product, ErrorCode::invalid_argument, "not a product category");
  return *impl_->b;
}

// ---------------------------------------------------------------- SetProfunctor

SetProfunctor::SetProfunctor(FiniteCategory source, FiniteCategory target, std::vector<std::size_t> sizes,
                             Action left, Action right)
    : source_(std::move(source)), target_(std::move(target)), sizes_(std::move(sizes)),
      left_(std::move(left)), right_(std::move(right)) {
  require(sizes_.size() == source_.object_count() * target_.object_count(), ErrorCode::validation,
          "profunctor needs one value set per object pair");
}

SetProfunctor SetProfunctor::tabulated(FiniteCategory source, FiniteCategory target, std::vector<std::size_t> sizes,
                                       std::vector<std::vector<std::vector<std::size_t>>> left,
                                       std::vector<std::vector<std::vector<std::size_t>>> right) {
  const std::size_t nc = source.object_count(), nd = target.object_count();
  require(left.size() == source.morphism_count() && right.size() == target.morphism_count(), ErrorCode::validation,
          "one action table per morphism required");
  require(sizes.size() == nc * nd, ErrorCode::validation, "profunctor needs one value set per object pair");
  for (std::size_t f = 0; f < left.size(); ++f) {
    require(left[f].size() == nd, ErrorCode::validation, "left action table has wrong shape");
    for (std::size_t d = 0; d < nd; ++d)
      require(left[f][d].size() == sizes[source.target(f) * nd + d], ErrorCode::validation,
              "left action table has wrong length");
  }
  for (std::size_t g = 0; g < right.size(); ++g) {
    require(right[g].size() == nc, ErrorCode::validation, "right action table has wrong shape");
    for (std::size_t c = 0; c < nc; ++c)
      require(right[g][c].size() == sizes[c * nd + target.source(g)], ErrorCode::validation,
              "right action table has wrong length");
  }
  auto l = std::make_shared<const std::vector<std::vector<std::vector<std::size_t>>>>(std::move(left));
  auto r = std::make_shared<const std::vector<std::vector<std::vector<std::size_t>>>>(std::move(right));
  SetProfunctor p(std::move(source), std::move(target), std::move(sizes),
                  [l](std::size_t f, std::size_t d, std::size_t x) { return (*l)[f][d].at(x); },
                  [r](std::size_t g, std::size_t c, std::size_t x) { return (*r)[g][c].at(x); });
  if (auto v = p.violation()) fail(ErrorCode::validation, "profunctor laws fail: " + v->dump());
  return p;
}

SetProfunctor SetProfunctor::hom(const FiniteCategory& c) {
  return SetProfunctor(
      c, c,
      [&] {
        std::vector<std::size_t> s;
        for (std::size_t x = 0; x < c.object_count(); ++x)
          for (std::size_t y = 0; y < c.object_count(); ++y) s.push_back(c.hom_size(x, y));
        return s;
      }(),
      [c](std::size_t f, std::size_t d, std::size_t x) {
        return c.hom_position(c.compose(c.hom_at(c.target(f), d, x), f));
      },
      [c](std::size_t g, std::size_t a, std::size_t x) {
        return c.hom_position(c.compose(g, c.hom_at(a, c.source(g), x)));
      });
}

std::vector<std::size_t> SetProfunctor::left_table(std::size_t f, std::size_t d) const {
  std::vector<std::size_t> t(size(source_.target(f), d));
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = left(f, d, x);
  return t;
}

std::vector<std::size_t> SetProfunctor::right_table(std::size_t g, std::size_t c) const {
  std::vector<std::size_t> t(size(c, target_.source(g)));
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = right(g, c, x);
  return t;
}

std::optional<nlohmann::json> SetProfunctor::violation() const {
  const FiniteCategory& C = source_;
  const FiniteCategory& D = target_;
  const std::size_t nc = C.object_count(), nd = D.object_count();
  auto bad = [](std::string law, nlohmann::json at) { return nlohmann::json{{"law", std::move(law)}, {"at", std::move(at)}}; };
  for (std::size_t f = 0; f < C.morphism_count(); ++f)
    for (std::size_t d = 0; d < nd; ++d)
      for (std::size_t x = 0; x < size(C.target(f), d); ++x)
        if (left(f, d, x) >= size(C.source(f), d)) return bad("range", {{"left", f}, {"d", d}, {"x", x}});
  for (std::size_t g = 0; g < D.morphism_count(); ++g)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t x = 0; x < size(c, D.source(g)); ++x)
        if (right(g, c, x) >= size(c, D.target(g))) return bad("range", {{"right", g}, {"c", c}, {"x", x}});
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t d = 0; d < nd; ++d)
      for (std::size_t x = 0; x < size(c, d); ++x) {
        if (left(C.identity(c), d, x) != x) return bad("left identity", {{"c", c}, {"d", d}, {"x", x}});
        if (right(D.identity(d), c, x) != x) return bad("right identity", {{"c", c}, {"d", d}, {"x", x}});
      }
  for (std::size_t f2 = 0; f2 < C.morphism_count(); ++f2)
    for (std::size_t a = 0; a < nc; ++a)
      for (std::size_t f1 : C.hom(a, C.source(f2))) {
        const std::size_t f21 = C.compose(f2, f1);
        for (std::size_t d = 0; d < nd; ++d)
          for (std::size_t x = 0; x < size(C.target(f2), d); ++x)
            if (left(f21, d, x) != left(f1, d, left(f2, d, x)))
              return bad("left functoriality", {{"outer", f2}, {"inner", f1}, {"d", d}, {"x", x}});
      }
  for (std::size_t g2 = 0; g2 < D.morphism_count(); ++g2)
    for (std::size_t a = 0; a < nd; ++a)
      for (std::size_t g1 : D.hom(a, D.source(g2))) {
        const std::size_t g21 = D.compose(g2, g1);
        for (std::size_t c = 0; c < nc; ++c)
          for (std::size_t x = 0; x < size(c, a); ++x)
            if (right(g21, c, x) != right(g2, c, right(g1, c, x)))
              return bad("right functoriality", {{"outer", g2}, {"inner", g1}, {"c", c}, {"x", x}});
      }
  for (std::size_t f = 0; f < C.morphism_count(); ++f)
    for (std::size_t g = 0; g < D.morphism_count(); ++g)
      for (std::size_t x = 0; x < size(C.target(f), D.source(g)); ++x)
        if (right(g, C.source(f), left(f, D.source(g), x)) != left(f, D.target(g), right(g, C.target(f), x)))
          return bad("actions commute", {{"left", f}, {"right", g}, {"x", x}});
  return std::nullopt;
}

// ---------------------------------------------------------------- quotients and coends

QuotientBuilder::QuotientBuilder(std::size_t n, std::uint64_t seed)
    : n_(n), seed_(seed), rank_(n, 0), parent_(n), perm_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  if (seed_ != 0) {
    std::mt19937_64 rng(seed_);
    std::shuffle(perm_.begin(), perm_.end(), rng);
  }
}

void QuotientBuilder::relate(std::size_t a, std::size_t b) {
  require(a < n_ && b < n_, ErrorCode::internal, "relation outside the element set");
  if (seed_ != 0) {
    pending_.emplace_back(a, b);
    return;
  }
  boost::disjoint_sets<std::size_t*, std::size_t*> ds(rank_.data(), parent_.data());
  ds.union_set(a, b);
}

QuotientSet QuotientBuilder::finish() {
  boost::disjoint_sets<std::size_t*, std::size_t*> ds(rank_.data(), parent_.data());
  if (seed_ != 0) {
    std::mt19937_64 rng(seed_ ^ 0x9e3779b97f4a7c15ULL);
    std::shuffle(pending_.begin(), pending_.end(), rng);
    for (auto& [a, b] : pending_) {
      if (rng() & 1) std::swap(a, b);
      ds.union_set(perm_[a], perm_[b]);
    }
    pending_.clear();
  }
  QuotientSet q;
  q.class_of.assign(n_, 0);
  std::vector<std::size_t> label(n_, static_cast<std::size_t>(-1));
  for (std::size_t x = 0; x < n_; ++x) {
    const std::size_t r = ds.find_set(perm_[x]);
    if (label[r] == static_cast<std::size_t>(-1)) {
      label[r] = q.representatives.size();
      q.representatives.push_back(x);
    }
    q.class_of[x] = label[r];
  }
  return q;
}

std::pair<std::size_t, std::size_t> CoendSet::representative(std::size_t k) const {
  const std::size_t x = quotient.representatives.at(k);
  const auto it = std::upper_bound(offsets.begin(), offsets.end(), x) - 1;
  return {static_cast<std::size_t>(it - offsets.begin()), x - *it};
}

namespace {

// offsets for a diagonal family of sizes; the last entry is the total.
std::vector<std::size_t> prefix_offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
  return off;
}

CoendSet finish_coend(QuotientBuilder& qb, std::vector<std::size_t> off) {
  CoendSet out;
  out.quotient = qb.finish();
  off.pop_back();
  out.offsets = std::move(off);
  return out;
}

}  // namespace

CoendSet coend_set(const SetProfunctor& f, std::uint64_t shuffle_seed) {
  const FiniteCategory& C = f.source();
  require(C.object_count() == f.target().object_count() && C.morphism_count() == f.target().morphism_count(),
          ErrorCode::invalid_argument, "coend needs a profunctor from a category to itself");
  std::vector<std::size_t> diag;
  for (std::size_t c = 0; c < C.object_count(); ++c) diag.push_back(f.size(c, c));
  auto off = prefix_offsets(diag);
  QuotientBuilder qb(off.back(), shuffle_seed);
  for (std::size_t g : C.generators()) {
    const std::size_t a = C.source(g), b = C.target(g);
    for (std::size_t x = 0; x < f.size(b, a); ++x) qb.relate(off[a] + f.left(g, a, x), off[b] + f.right(g, b, x));
  }
  return finish_coend(qb, std::move(off));
}

ProfunctorComposite compose_with_coends(const SetProfunctor& p, const SetProfunctor& q, std::uint64_t shuffle_seed) {
  const FiniteCategory& C = p.source();
  const FiniteCategory& D = p.target();
  const FiniteCategory& E = q.target();
  require(D.object_count() == q.source().object_count() && D.morphism_count() == q.source().morphism_count(),
          ErrorCode::invalid_argument, "profunctors are not composable");
  const std::size_t nc = C.object_count(), nd = D.object_count(), ne = E.object_count();
  std::vector<CoendSet> coends;
  std::vector<std::size_t> sizes;
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t e = 0; e < ne; ++e) {
      std::vector<std::size_t> diag;
      for (std::size_t d = 0; d < nd; ++d) diag.push_back(p.size(c, d) * q.size(d, e));
      auto off = prefix_offsets(diag);
      QuotientBuilder qb(off.back(), shuffle_seed);
      for (std::size_t g : D.generators()) {
        const std::size_t a = D.source(g), b = D.target(g);
        const std::size_t qa = q.size(a, e), qb_size = q.size(b, e);
        for (std::size_t x = 0; x < p.size(c, a); ++x)
          for (std::size_t y = 0; y < qb_size; ++y)
            qb.relate(off[a] + x * qa + q.left(g, e, y), off[b] + p.right(g, c, x) * qb_size + y);
      }
      coends.push_back(finish_coend(qb, std::move(off)));
      sizes.push_back(coends.back().size());
    }
  auto shared = std::make_shared<const std::vector<CoendSet>>(coends);
  auto left = [shared, p, q, ne](std::size_t h, std::size_t e, std::size_t k) {
    const FiniteCategory& Cc = p.source();
    const auto& from = (*shared)[Cc.target(h) * ne + e];
    const auto [d, idx] = from.representative(k);
    const std::size_t qs = q.size(d, e);
    const std::size_t x = p.left(h, d, idx / qs);
    return (*shared)[Cc.source(h) * ne + e].class_of(d, x * qs + idx % qs);
  };
  auto right = [shared, p, q, ne](std::size_t g, std::size_t c, std::size_t k) {
    const FiniteCategory& Ee = q.target();
    const auto& from = (*shared)[c * ne + Ee.source(g)];
    const auto [d, idx] = from.representative(k);
    const std::size_t qs = q.size(d, Ee.source(g));
    const std::size_t y = q.right(g, d, idx % qs);
    return (*shared)[c * ne + Ee.target(g)].class_of(d, (idx / qs) * q.size(d, Ee.target(g)) + y);
  };
  // Tabulate so the composite does not hold on to the factors.
  SetProfunctor lazy(C, E, sizes, left, right);
  std::vector<std::vector<std::vector<std::size_t>>> lt(C.morphism_count()), rt(E.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f)
    for (std::size_t e = 0; e < ne; ++e) lt[f].push_back(lazy.left_table(f, e));
  for (std::size_t g = 0; g < E.morphism_count(); ++g)
    for (std::size_t c = 0; c < nc; ++c) rt[g].push_back(lazy.right_table(g, c));
  auto l = std::make_shared<const decltype(lt)>(std::move(lt));
  auto r = std::make_shared<const decltype(rt)>(std::move(rt));
  SetProfunctor out(C, E, std::move(sizes), [l](std::size_t f, std::size_t e, std::size_t x) { return (*l)[f][e][x]; },
                    [r](std::size_t g, std::size_t c, std::size_t x) { return (*r)[g][c][x]; });
  return {std::move(out), std::move(coends)};
}

SetProfunctor compose_profunctors(const SetProfunctor& p, const SetProfunctor& q) {
  return compose_with_coends(p, q).profunctor;
}

Certificate coyoneda_check(const SetProfunctor& p) {
  Certificate cert;
  cert.name = "coyoneda";
  const FiniteCategory& C = p.source();
  const FiniteCategory& D = p.target();
  const std::size_t nc = C.object_count(), nd = D.object_count();
  // P -> Hom_D o P: x |-> [(e, x, id_e)]
  const auto after = compose_with_coends(p, SetProfunctor::hom(D));
  // P -> P o Hom_C: x |-> [(c, id_c, x)]
  const auto before = compose_with_coends(SetProfunctor::hom(C), p);
  std::size_t checked = 0;
  for (std::size_t c = 0; c < nc && cert.pass; ++c)
    for (std::size_t e = 0; e < nd && cert.pass; ++e) {
      const std::size_t n = p.size(c, e);
      for (int side = 0; side < 2 && cert.pass; ++side) {
        const CoendSet& co = side == 0 ? after.coends[c * nd + e] : before.coends[c * nd + e];
        std::vector<char> hit(co.size(), 0);
        bool ok = co.size() == n;
        for (std::size_t x = 0; x < n && ok; ++x) {
          const std::size_t k = side == 0
                                    ? co.class_of(e, x * D.hom_size(e, e) + D.hom_position(D.identity(e)))
                                    : co.class_of(c, C.hom_position(C.identity(c)) * p.size(c, e) + x);
          if (hit[k]) ok = false;
          hit[k] = 1;
        }
        ++checked;
        if (!ok) {
          cert.pass = false;
          cert.witness = {{"c", c}, {"d", e}, {"side", side == 0 ? "hom_after" : "hom_before"},
                          {"value_size", n}, {"coend_size", co.size()}};
        }
      }
    }
  cert.details = {{"pairs_checked", checked}};
  return cert;
}

// ---------------------------------------------------------------- promonoidal data

PromonoidalData delta_op_promonoidal(std::size_t b) {
  const FiniteCategory C = FiniteCategory::simplex(b).opposite();
  const FiniteCategory CC = FiniteCategory::product(C, C);
  const std::size_t n = b + 1, m = C.morphism_count();
  std::vector<std::size_t> mu_sizes;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t o = 0; o < n; ++o) mu_sizes.push_back(hom_count_delta(o, p) * hom_count_delta(o, q));
  // morphism f: x -> y of Delta^op is the Delta map [y] -> [x]
  auto maps = std::make_shared<std::vector<MonotoneMap>>();
  for (std::size_t f = 0; f < m; ++f) maps->push_back(simplex_map(b, f));
  auto left = [maps, m](std::size_t f, std::size_t o, std::size_t x) {
    const MonotoneMap& a1 = (*maps)[f / m];
    const MonotoneMap& a2 = (*maps)[f % m];
    const std::size_t p = a1.domain_top, q = a2.domain_top;
    const std::size_t nq = hom_count_delta(o, q);
    const MonotoneMap s1 = monotone_unrank(o, p, x / nq), s2 = monotone_unrank(o, q, x % nq);
    return monotone_rank(compose(a1, s1)) * hom_count_delta(o, a2.codomain_top) + monotone_rank(compose(a2, s2));
  };
  auto right = [maps, n](std::size_t g, std::size_t pq, std::size_t x) {
    const MonotoneMap& gam = (*maps)[g];  // [o'] -> [o]
    const std::size_t p = pq / n, q = pq % n, o = gam.codomain_top, o2 = gam.domain_top;
    const std::size_t nq = hom_count_delta(o, q);
    const MonotoneMap s1 = monotone_unrank(o, p, x / nq), s2 = monotone_unrank(o, q, x % nq);
    return monotone_rank(compose(s1, gam)) * hom_count_delta(o2, q) + monotone_rank(compose(s2, gam));
  };
  SetProfunctor mu(CC, C, std::move(mu_sizes), left, right);
  SetProfunctor eta(FiniteCategory(), C, std::vector<std::size_t>(n, 1),
                    [](std::size_t, std::size_t, std::size_t) { return std::size_t{0}; },
                    [](std::size_t, std::size_t, std::size_t) { return std::size_t{0}; });
  return {C, std::move(mu), std::move(eta), "delta_op", b};
}

PromonoidalData point_promonoidal() {
  const FiniteCategory C;
  auto zero = [](std::size_t, std::size_t, std::size_t) { return std::size_t{0}; };
  SetProfunctor mu(FiniteCategory::product(C, C), C, {1}, zero, zero);
  SetProfunctor eta(FiniteCategory(), C, {1}, zero, zero);
  return {C, std::move(mu), std::move(eta), "point", 0};
}

// ---------------------------------------------------------------- n-ary mu

NaryMu::NaryMu(const PromonoidalData& data, std::vector<std::size_t> inputs, Nesting nesting, std::uint64_t seed)
    : NaryMu(std::make_shared<const PromonoidalData>(data), std::move(inputs), nesting, seed) {}

NaryMu::NaryMu(std::shared_ptr<const PromonoidalData> data, std::vector<std::size_t> inputs, Nesting nesting,
               std::uint64_t seed)
    : data_(std::move(data)), inputs_(std::move(inputs)), nesting_(nesting) {
  const FiniteCategory& C = data_->base;
  const std::size_t n = C.object_count();
  for (std::size_t c : inputs_) require(c < n, ErrorCode::invalid_argument, "input object out of range");
  if (arity() < 3) return;
  std::vector<std::size_t> rest = nesting_ == Nesting::right
                                      ? std::vector<std::size_t>(inputs_.begin() + 1, inputs_.end())
                                      : std::vector<std::size_t>(inputs_.begin(), inputs_.end() - 1);
  compound_ = std::make_shared<const NaryMu>(data_, std::move(rest), nesting_, seed);
  const SetProfunctor& mu = data_->mu;
  const std::size_t cs = single_input();
  // inner(dc, o): coend over ds of hom(cs, ds) x mu(ds @ single, dc; o)
  inner_.resize(n * n);
  for (std::size_t dc = 0; dc < n; ++dc)
    for (std::size_t o = 0; o < n; ++o) {
      std::vector<std::size_t> diag;
      for (std::size_t ds = 0; ds < n; ++ds) diag.push_back(C.hom_size(cs, ds) * mu.size(mu_object(ds, dc), o));
      auto off = prefix_offsets(diag);
      QuotientBuilder qb(off.back(), seed);
      for (std::size_t g : C.generators()) {
        const std::size_t a = C.source(g), b = C.target(g);
        const std::size_t za = mu.size(mu_object(a, dc), o), zb = mu.size(mu_object(b, dc), o);
        const std::size_t gm = mu_single_morphism(g, dc);
        std::vector<std::size_t> pulled(zb);
        for (std::size_t z = 0; z < zb; ++z) pulled[z] = mu.left(gm, o, z);
        for (std::size_t h = 0; h < C.hom_size(cs, a); ++h) {
          const std::size_t gh = C.hom_position(C.compose(g, C.hom_at(cs, a, h)));
          for (std::size_t z = 0; z < zb; ++z) qb.relate(off[a] + h * za + pulled[z], off[b] + gh * zb + z);
        }
      }
      inner_[dc * n + o] = finish_coend(qb, std::move(off));
    }
  // outer(o): coend over dc of Y(dc) x inner(dc, o)
  outer_.resize(n);
  for (std::size_t o = 0; o < n; ++o) {
    std::vector<std::size_t> diag;
    for (std::size_t dc = 0; dc < n; ++dc) diag.push_back(compound_->size(dc) * inner_[dc * n + o].size());
    auto off = prefix_offsets(diag);
    QuotientBuilder qb(off.back(), seed);
    for (std::size_t g : C.generators()) {
      const std::size_t a = C.source(g), b = C.target(g);
      const CoendSet& ia = inner_[a * n + o];
      const CoendSet& ib = inner_[b * n + o];
      std::vector<std::size_t> ya(compound_->size(a));
      for (std::size_t y = 0; y < ya.size(); ++y) ya[y] = compound_->act_at(g, a, y);
      for (std::size_t k = 0; k < ib.size(); ++k) {
        const auto [ds, idx] = ib.representative(k);
        const std::size_t zb = mu.size(mu_object(ds, b), o), za = mu.size(mu_object(ds, a), o);
        const std::size_t z = mu.left(mu_slot_morphism(g, ds), o, idx % zb);
        const std::size_t pulled = ia.class_of(ds, (idx / zb) * za + z);
        for (std::size_t y = 0; y < ya.size(); ++y)
          qb.relate(off[a] + y * ia.size() + pulled, off[b] + ya[y] * ib.size() + k);
      }
    }
    outer_[o] = finish_coend(qb, std::move(off));
  }
}

std::size_t NaryMu::single_input() const { return nesting_ == Nesting::right ? inputs_.front() : inputs_.back(); }

std::size_t NaryMu::mu_object(std::size_t ds, std::size_t dc) const {
  const std::size_t n = data_->base.object_count();
  return nesting_ == Nesting::right ? ds * n + dc : dc * n + ds;
}

std::size_t NaryMu::mu_single_morphism(std::size_t f, std::size_t dc) const {
  const FiniteCategory& C = data_->base;
  const std::size_t m = C.morphism_count();
  return nesting_ == Nesting::right ? f * m + C.identity(dc) : C.identity(dc) * m + f;
}

std::size_t NaryMu::mu_slot_morphism(std::size_t f, std::size_t ds) const {
  const FiniteCategory& C = data_->base;
  const std::size_t m = C.morphism_count();
  return nesting_ == Nesting::right ? C.identity(ds) * m + f : f * m + C.identity(ds);
}

std::size_t NaryMu::size(std::size_t o) const {
  const FiniteCategory& C = data_->base;
  switch (arity()) {
    case 0: return data_->eta.size(0, o);
    case 1: return C.hom_size(inputs_[0], o);
    case 2: return data_->mu.size(inputs_[0] * C.object_count() + inputs_[1], o);
    default: return outer_.at(o).size();
  }
}

std::size_t NaryMu::act(std::size_t g, std::size_t k) const { return act_at(g, data_->base.source(g), k); }

std::size_t NaryMu::act_at(std::size_t g, std::size_t o, std::size_t k) const {
  const FiniteCategory& C = data_->base;
  require(C.source(g) == o, ErrorCode::invalid_argument, "morphism does not start at the output");
  switch (arity()) {
    case 0: return data_->eta.right(g, 0, k);
    case 1: return C.hom_position(C.compose(g, C.hom_at(inputs_[0], o, k)));
    case 2: return data_->mu.right(g, inputs_[0] * C.object_count() + inputs_[1], k);
    default: {
      Element e = representative(o, k);
      e.mu = data_->mu.right(g, e.d1 * C.object_count() + e.d2, e.mu);
      return class_of(C.target(g), e);
    }
  }
}

const CoendSet& NaryMu::inner(std::size_t dc, std::size_t o) const {
  return inner_.at(dc * data_->base.object_count() + o);
}
const CoendSet& NaryMu::outer(std::size_t o) const { return outer_.at(o); }

NaryMu::Element NaryMu::representative(std::size_t o, std::size_t k) const {
  require(arity() >= 3, ErrorCode::invalid_argument, "representatives exist for arity >= 3");
  const auto [dc, idx] = outer(o).representative(k);
  const CoendSet& in = inner(dc, o);
  const std::size_t y = idx / in.size(), kin = idx % in.size();
  const auto [ds, idx2] = in.representative(kin);
  const std::size_t zs = data_->mu.size(mu_object(ds, dc), o);
  Element e;
  e.mu = idx2 % zs;
  if (nesting_ == Nesting::right) {
    e.d1 = ds, e.d2 = dc, e.slot1 = idx2 / zs, e.slot2 = y;
  } else {
    e.d1 = dc, e.d2 = ds, e.slot1 = y, e.slot2 = idx2 / zs;
  }
  return e;
}

std::size_t NaryMu::class_of(std::size_t o, const Element& e) const {
  require(arity() >= 3, ErrorCode::invalid_argument, "classes of elements exist for arity >= 3");
  const bool r = nesting_ == Nesting::right;
  const std::size_t ds = r ? e.d1 : e.d2, dc = r ? e.d2 : e.d1;
  const std::size_t h = r ? e.slot1 : e.slot2, y = r ? e.slot2 : e.slot1;
  const CoendSet& in = inner(dc, o);
  const std::size_t kin = in.class_of(ds, h * data_->mu.size(mu_object(ds, dc), o) + e.mu);
  return outer(o).class_of(dc, y * in.size() + kin);
}

std::vector<NaryMu::Element> NaryMu::members(std::size_t o, std::size_t k, std::size_t limit) const {
  std::vector<Element> out{representative(o, k)};
  const FiniteCategory& C = data_->base;
  const std::size_t n = C.object_count();
  const bool r = nesting_ == Nesting::right;
  const CoendSet& top = outer(o);
  for (std::size_t dc = 0; dc < n && out.size() < limit; ++dc) {
    const CoendSet& in = inner(dc, o);
    for (std::size_t y = 0; y < compound_->size(dc) && out.size() < limit; ++y)
      for (std::size_t kin = 0; kin < in.size() && out.size() < limit; ++kin) {
        if (top.class_of(dc, y * in.size() + kin) != k) continue;
        for (std::size_t ds = 0; ds < n && out.size() < limit; ++ds) {
          const std::size_t zs = data_->mu.size(mu_object(ds, dc), o);
          const std::size_t hs = C.hom_size(single_input(), ds);
          for (std::size_t x = 0; x < hs * zs && out.size() < limit; ++x) {
            if (in.class_of(ds, x) != kin) continue;
            Element e;
            e.mu = x % zs;
            if (r) e.d1 = ds, e.d2 = dc, e.slot1 = x / zs, e.slot2 = y;
            else e.d1 = dc, e.d2 = ds, e.slot1 = y, e.slot2 = x / zs;
            if (!(e.d1 == out[0].d1 && e.d2 == out[0].d2 && e.slot1 == out[0].slot1 && e.slot2 == out[0].slot2 &&
                  e.mu == out[0].mu))
              out.push_back(e);
          }
        }
      }
  }
  return out;
}

std::vector<std::size_t> nary_mu_sizes(const PromonoidalData& data, const std::vector<std::size_t>& inputs) {
  NaryMu mu(data, inputs);
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < data.base.object_count(); ++o) out.push_back(mu.size(o));
  return out;
}

// ---------------------------------------------------------------- Delta^op evaluation

namespace {

void require_delta(const PromonoidalData& d) {
  require(d.model == "delta_op", ErrorCode::invalid_argument, "evaluation needs the Delta^op data");
}

// mu([p],[q];[o]) element as its two coordinate maps
std::pair<MonotoneMap, MonotoneMap> decode_mu(std::size_t p, std::size_t q, std::size_t o, std::size_t x) {
  const std::size_t nq = hom_count_delta(o, q);
  return {monotone_unrank(o, p, x / nq), monotone_unrank(o, q, x % nq)};
}

}  // namespace

PosetChain evaluate_delta_element(const NaryMu& mu, std::size_t o, const NaryMu::Element& e) {
  const PromonoidalData& data = mu.data();
  require_delta(data);
  const std::size_t b = data.bound;
  const auto& in = mu.inputs();
  const auto [z1, z2] = decode_mu(e.d1, e.d2, o, e.mu);
  PosetChain out(o + 1);
  if (mu.nesting() == NaryMu::Nesting::right) {
    const MonotoneMap h = simplex_map(b, data.base.hom_at(in.front(), e.d1, e.slot1));
    const PosetChain y = evaluate_delta_mu(mu.compound(), e.d2, e.slot2);
    for (std::size_t t = 0; t <= o; ++t) {
      out[t].push_back(h(z1(t)));
      out[t].insert(out[t].end(), y[z2(t)].begin(), y[z2(t)].end());
    }
  } else {
    const PosetChain y = evaluate_delta_mu(mu.compound(), e.d1, e.slot1);
    const MonotoneMap h = simplex_map(b, data.base.hom_at(in.back(), e.d2, e.slot2));
    for (std::size_t t = 0; t <= o; ++t) {
      out[t] = y[z1(t)];
      out[t].push_back(h(z2(t)));
    }
  }
  return out;
}

PosetChain evaluate_delta_mu(const NaryMu& mu, std::size_t o, std::size_t k) {
  const PromonoidalData& data = mu.data();
  require_delta(data);
  const auto& in = mu.inputs();
  require(k < mu.size(o), ErrorCode::invalid_argument, "class index out of range");
  switch (mu.arity()) {
    case 0: return PosetChain(o + 1);
    case 1: {
      const MonotoneMap h = simplex_map(data.bound, data.base.hom_at(in[0], o, k));
      PosetChain out;
      for (std::size_t t = 0; t <= o; ++t) out.push_back({h(t)});
      return out;
    }
    case 2: {
      const auto [s1, s2] = decode_mu(in[0], in[1], o, k);
      PosetChain out;
      for (std::size_t t = 0; t <= o; ++t) out.push_back({s1(t), s2(t)});
      return out;
    }
    default: return evaluate_delta_element(mu, o, mu.representative(o, k));
  }
}

namespace {

std::map<PosetChain, std::size_t> chain_index(const std::vector<std::size_t>& ns, std::size_t m) {
  std::map<PosetChain, std::size_t> idx;
  for (auto& c : poset_maps(ns, m)) idx.emplace(std::move(c), idx.size());
  return idx;
}

// Bijectivity of class -> chain; returns a witness on failure.
std::optional<nlohmann::json> check_bijective(const std::vector<PosetChain>& images,
                                              const std::map<PosetChain, std::size_t>& target) {
  std::vector<std::ptrdiff_t> pre(target.size(), -1);
  for (std::size_t k = 0; k < images.size(); ++k) {
    const auto it = target.find(images[k]);
    if (it == target.end()) return nlohmann::json{{"reason", "image outside target"}, {"class", k}};
    if (pre[it->second] >= 0)
      return nlohmann::json{{"reason", "not injective"}, {"classes", {pre[it->second], k}}, {"value", chain_json(images[k])}};
    pre[it->second] = static_cast<std::ptrdiff_t>(k);
  }
  for (const auto& [c, i] : target)
    if (pre[i] < 0) return nlohmann::json{{"reason", "not surjective"}, {"value", chain_json(c)}};
  return std::nullopt;
}

}  // namespace

Certificate mu_associativity_check(std::size_t b, std::size_t entry_max, std::size_t output_max) {
  Certificate cert;
  cert.name = "mu_associativity";
  require(entry_max <= b && output_max <= b, ErrorCode::invalid_argument, "entries and outputs must be <= b");
  const auto data = std::make_shared<const PromonoidalData>(delta_op_promonoidal(b));
  const std::size_t n = b + 1;
  std::size_t instances = 0, elements = 0;
  for (std::size_t p = 0; p <= entry_max && cert.pass; ++p)
    for (std::size_t q = 0; q <= entry_max && cert.pass; ++q)
      for (std::size_t r = 0; r <= entry_max && cert.pass; ++r)
        for (auto nest : {NaryMu::Nesting::right, NaryMu::Nesting::left}) {
          if (!cert.pass) break;
          const NaryMu mu(data, {p, q, r}, nest, 0);
          const bool right = nest == NaryMu::Nesting::right;
          const std::size_t cs = right ? p : r;
          for (std::size_t o = 0; o <= output_max && cert.pass; ++o) {
            auto fail_at = [&](nlohmann::json why) {
              cert.pass = false;
              why["inputs"] = {p, q, r};
              why["output"] = o;
              why["nesting"] = right ? "mu(1 x mu)" : "mu(mu x 1)";
              cert.witness = std::move(why);
            };
            // Stage 1: (ds, h, z) |-> (h z_s, z_c) is constant on inner classes.
            std::vector<std::vector<PosetChain>> inner_values(n);
            for (std::size_t dc = 0; dc < n && cert.pass; ++dc) {
              const CoendSet& in = mu.inner(dc, o);
              inner_values[dc].assign(in.size(), {});
              std::vector<char> seen(in.size(), 0);
              for (std::size_t ds = 0; ds < n && cert.pass; ++ds) {
                const std::size_t d1 = right ? ds : dc, d2 = right ? dc : ds;
                const std::size_t zs = hom_count_delta(o, d1) * hom_count_delta(o, d2);
                for (std::size_t x = 0; x < data->base.hom_size(cs, ds) * zs; ++x) {
                  const MonotoneMap h = simplex_map(b, data->base.hom_at(cs, ds, x / zs));
                  const auto [z1, z2] = decode_mu(d1, d2, o, x % zs);
                  PosetChain v(o + 1);
                  for (std::size_t t = 0; t <= o; ++t)
                    v[t] = right ? PosetPoint{h(z1(t)), z2(t)} : PosetPoint{z1(t), h(z2(t))};
                  const std::size_t k = in.class_of(ds, x);
                  ++elements;
                  if (!seen[k]) {
                    seen[k] = 1;
                    inner_values[dc][k] = std::move(v);
                  } else if (inner_values[dc][k] != v) {
                    fail_at({{"reason", "inner coend class not well defined"}, {"d", dc}});
                    break;
                  }
                }
              }
            }
            if (!cert.pass) break;
            // Stage 2: (dc, y, k) |-> combined map is constant on outer classes.
            const CoendSet& top = mu.outer(o);
            std::vector<PosetChain> values(top.size());
            std::vector<char> seen(top.size(), 0);
            for (std::size_t dc = 0; dc < n && cert.pass; ++dc) {
              const std::size_t isz = mu.inner(dc, o).size();
              for (std::size_t y = 0; y < mu.compound().size(dc) && cert.pass; ++y) {
                const PosetChain yv = evaluate_delta_mu(mu.compound(), dc, y);
                for (std::size_t kin = 0; kin < isz; ++kin) {
                  const PosetChain& iv = inner_values[dc][kin];
                  PosetChain v(o + 1);
                  for (std::size_t t = 0; t <= o; ++t) {
                    if (right) {
                      v[t] = {iv[t][0]};
                      v[t].insert(v[t].end(), yv[iv[t][1]].begin(), yv[iv[t][1]].end());
                    } else {
                      v[t] = yv[iv[t][0]];
                      v[t].push_back(iv[t][1]);
                    }
                  }
                  const std::size_t k = top.class_of(dc, y * isz + kin);
                  if (!seen[k]) {
                    seen[k] = 1;
                    values[k] = std::move(v);
                  } else if (values[k] != v) {
                    fail_at({{"reason", "outer coend class not well defined"}, {"d", dc}});
                    break;
                  }
                }
              }
            }
            if (!cert.pass) break;
            for (std::size_t k = 0; k < values.size(); ++k)
              if (values[k] != evaluate_delta_mu(mu, o, k)) {
                fail_at({{"reason", "representative evaluation disagrees"}, {"class", k}});
                break;
              }
            if (!cert.pass) break;
            if (auto w = check_bijective(values, chain_index({p, q, r}, o))) fail_at(*w);
            ++instances;
          }
        }
  cert.details = {{"bound", b}, {"entry_max", entry_max}, {"output_max", output_max},
                  {"instances", instances}, {"inner_elements", elements}};
  return cert;
}

Certificate mu_unit_check(std::size_t b) {
  Certificate cert;
  cert.name = "mu_unit";
  const PromonoidalData data = delta_op_promonoidal(b);
  const FiniteCategory& C = data.base;
  const std::size_t n = b + 1, m = C.morphism_count();
  std::size_t instances = 0;
  for (std::size_t side = 0; side < 2 && cert.pass; ++side)
    for (std::size_t c = 0; c < n && cert.pass; ++c)
      for (std::size_t o = 0; o < n && cert.pass; ++o) {
        // coend over d of eta(d) x mu(d, c; o) (side 0) or mu(c, d; o) (side 1)
        auto obj = [&](std::size_t d) { return side == 0 ? d * n + c : c * n + d; };
        std::vector<std::size_t> diag;
        for (std::size_t d = 0; d < n; ++d) diag.push_back(data.eta.size(0, d) * data.mu.size(obj(d), o));
        auto off = prefix_offsets(diag);
        QuotientBuilder qb(off.back());
        for (std::size_t g : C.generators()) {
          const std::size_t a = C.source(g), bb = C.target(g);
          const std::size_t gm = side == 0 ? g * m + C.identity(c) : C.identity(c) * m + g;
          const std::size_t za = data.mu.size(obj(a), o), zb = data.mu.size(obj(bb), o);
          for (std::size_t e = 0; e < data.eta.size(0, a); ++e)
            for (std::size_t z = 0; z < zb; ++z)
              qb.relate(off[a] + e * za + data.mu.left(gm, o, z), off[bb] + data.eta.right(g, 0, e) * zb + z);
        }
        const CoendSet co = finish_coend(qb, std::move(off));
        // (d, e, z) |-> the c-coordinate of z, a morphism c -> o of Delta^op
        std::vector<std::ptrdiff_t> value(co.size(), -1);
        std::vector<char> hit(C.hom_size(c, o), 0);
        bool ok = true;
        for (std::size_t d = 0; d < n && ok; ++d) {
          const std::size_t zs = data.mu.size(obj(d), o);
          for (std::size_t x = 0; x < data.eta.size(0, d) * zs && ok; ++x) {
            const auto [s1, s2] = side == 0 ? decode_mu(d, c, o, x % zs) : decode_mu(c, d, o, x % zs);
            const auto v = static_cast<std::ptrdiff_t>(C.hom_position(simplex_index(b, side == 0 ? s2 : s1)));
            auto& slot = value[co.class_of(d, x)];
            if (slot >= 0 && slot != v) ok = false;
            slot = v;
          }
        }
        for (auto v : value) {
          if (!ok || v < 0 || hit[static_cast<std::size_t>(v)]) {
            ok = false;
            break;
          }
          hit[static_cast<std::size_t>(v)] = 1;
        }
        ok = ok && co.size() == hit.size();
        ++instances;
        if (!ok) {
          cert.pass = false;
          cert.witness = {{"side", side == 0 ? "left" : "right"}, {"c", c}, {"output", o},
                          {"coend_size", co.size()}, {"hom_size", hit.size()}};
        }
      }
  cert.details = {{"bound", b}, {"instances", instances}};
  return cert;
}

// ---------------------------------------------------------------- multimorphisms

std::vector<PosetChain> mul_delta(const std::vector<std::size_t>& ns, std::size_t m) { return poset_maps(ns, m); }

std::vector<PosetChain> mul_nn_delta(const std::vector<std::size_t>& a_list, const std::vector<std::size_t>& n_list,
                                     std::size_t b, std::size_t m) {
  require(a_list.size() == n_list.size(), ErrorCode::invalid_argument, "a_list and n_list differ in length");
  for (std::size_t i = 0; i < a_list.size(); ++i)
    require(n_list[i] <= a_list[i], ErrorCode::invalid_argument, "n_i must not exceed a_i");
  require(m <= b, ErrorCode::invalid_argument, "m must not exceed b");
  const std::size_t total = std::accumulate(a_list.begin(), a_list.end(), std::size_t{0});
  if (total > b) return {};
  return poset_maps(n_list, m);
}

namespace {

// prod_i Hom([k],[n_i]) with mixed-radix indices
struct PowerHom {
  std::vector<std::size_t> ns;
  std::size_t k;
  std::vector<std::size_t> radix;
  std::size_t count = 1;
  PowerHom(std::vector<std::size_t> ns_, std::size_t k_) : ns(std::move(ns_)), k(k_) {
    for (std::size_t n : ns) {
      radix.push_back(hom_count_delta(k, n));
      count *= radix.back();
    }
  }
  std::vector<MonotoneMap> decode(std::size_t x) const {
    std::vector<MonotoneMap> out(ns.size());
    for (std::size_t i = ns.size(); i-- > 0;) {
      out[i] = monotone_unrank(k, ns[i], x % radix[i]);
      x /= radix[i];
    }
    return out;
  }
  std::size_t encode(const std::vector<MonotoneMap>& maps) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) x = x * radix[i] + monotone_rank(maps[i]);
    return x;
  }
};

PosetChain tuple_chain(const std::vector<MonotoneMap>& maps, std::size_t k) {
  PosetChain c(k + 1);
  for (std::size_t t = 0; t <= k; ++t)
    for (const auto& f : maps) c[t].push_back(f(t));
  return c;
}

}  // namespace

Certificate left_kan_check(const std::vector<std::size_t>& ns, std::size_t b, const std::vector<std::size_t>& m_range) {
  Certificate cert;
  cert.name = "left_kan";
  const std::size_t total = std::accumulate(ns.begin(), ns.end(), std::size_t{0});
  std::vector<PowerHom> H;
  for (std::size_t k = 0; k <= b; ++k) H.emplace_back(ns, k);
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t m : m_range) {
    // elements (k, alpha: [m] -> [k], sigma in H(k))
    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k <= b; ++k) sizes.push_back(hom_count_delta(m, k) * H[k].count);
    auto off = prefix_offsets(sizes);
    QuotientBuilder qb(off.back());
    // generating morphisms of the comma category: cofaces and codegeneracies v: [k'] -> [k]
    for (std::size_t k2 = 0; k2 <= b; ++k2) {
      std::vector<MonotoneMap> gens;
      if (k2 + 1 <= b)
        for (std::size_t i = 0; i <= k2 + 1; ++i) gens.push_back(MonotoneMap::coface(k2 + 1, i));
      if (k2 >= 1)
        for (std::size_t i = 0; i + 1 <= k2; ++i) gens.push_back(MonotoneMap::codegeneracy(k2 - 1, i));
      for (const auto& v : gens) {
        const std::size_t k = v.codomain_top;
        std::vector<std::size_t> pull(H[k].count);
        for (std::size_t s = 0; s < pull.size(); ++s) {
          auto maps = H[k].decode(s);
          for (auto& f : maps) f = compose(f, v);
          pull[s] = H[k2].encode(maps);
        }
        const auto alphas = enumerate_monotone(m, k2);
        for (std::size_t a2 = 0; a2 < alphas.size(); ++a2) {
          const std::size_t a = monotone_rank(compose(v, alphas[a2]));
          for (std::size_t s = 0; s < pull.size(); ++s)
            qb.relate(off[k] + a * H[k].count + s, off[k2] + a2 * H[k2].count + pull[s]);
        }
      }
    }
    const CoendSet co = finish_coend(qb, std::move(off));
    // canonical map (k, alpha, sigma) |-> sigma o alpha
    const PowerHom Hm(ns, m);
    std::vector<std::ptrdiff_t> value(co.size(), -1);
    bool ok = true;
    for (std::size_t k = 0; k <= b && ok; ++k) {
      const auto alphas = enumerate_monotone(m, k);
      for (std::size_t a = 0; a < alphas.size() && ok; ++a)
        for (std::size_t s = 0; s < H[k].count; ++s) {
          auto maps = H[k].decode(s);
          for (auto& f : maps) f = compose(f, alphas[a]);
          const auto v = static_cast<std::ptrdiff_t>(Hm.encode(maps));
          auto& slot = value[co.class_of(k, a * H[k].count + s)];
          if (slot >= 0 && slot != v) {
            ok = false;
            cert.witness = {{"m", m}, {"reason", "canonical map not well defined"}};
            break;
          }
          slot = v;
        }
    }
    std::vector<std::ptrdiff_t> pre(Hm.count, -1);
    for (std::size_t c = 0; c < value.size() && ok; ++c) {
      auto& p = pre[static_cast<std::size_t>(value[c])];
      if (p >= 0) {
        ok = false;
        cert.witness = {{"m", m}, {"reason", "not injective"},
                        {"value", chain_json(tuple_chain(Hm.decode(static_cast<std::size_t>(value[c])), m))}};
      }
      p = static_cast<std::ptrdiff_t>(c);
    }
    for (std::size_t x = 0; x < Hm.count && ok; ++x)
      if (pre[x] < 0) {
        ok = false;
        cert.witness = {{"m", m}, {"reason", "not surjective"}, {"value", chain_json(tuple_chain(Hm.decode(x), m))}};
      }
    levels.push_back({{"m", m}, {"colimit_size", co.size()}, {"target_size", Hm.count}, {"bijective", ok}});
    if (!ok) {
      cert.pass = false;
      break;
    }
  }
  cert.details = {{"ns", ns}, {"b", b}, {"sum", total}, {"expected_pass", total <= b}, {"levels", levels}};
  return cert;
}

Certificate product_simplices_colimit_check(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& k_range) {
  Certificate cert;
  cert.name = "product_colimit";
  const std::size_t total = std::accumulate(ns.begin(), ns.end(), std::size_t{0});
  // objects of Delta^inj_{/P}
  std::vector<PosetChain> objects;
  std::map<PosetChain, std::size_t> index;
  for (std::size_t m = 0; m <= total; ++m)
    for (auto& s : product_nondegenerate(ns, m)) {
      index.emplace(s, objects.size());
      objects.push_back(std::move(s));
    }
  nlohmann::json levels = nlohmann::json::array();
  std::size_t initial_certified = 0;
  for (std::size_t k : k_range) {
    std::vector<std::size_t> sizes;
    for (const auto& s : objects) sizes.push_back(hom_count_delta(k, s.size() - 1));
    auto off = prefix_offsets(sizes);
    QuotientBuilder qb(off.back());
    for (std::size_t j = 0; j < objects.size(); ++j) {
      const auto& s2 = objects[j];
      const std::size_t m2 = s2.size() - 1;
      if (m2 == 0) continue;
      for (std::size_t i = 0; i <= m2; ++i) {
        PosetChain s = s2;
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
        const std::size_t src = index.at(s);
        const MonotoneMap d = MonotoneMap::coface(m2, i);
        const auto ts = enumerate_monotone(k, m2 - 1);
        for (std::size_t t = 0; t < ts.size(); ++t)
          qb.relate(off[src] + t, off[j] + monotone_rank(compose(d, ts[t])));
      }
    }
    const CoendSet co = finish_coend(qb, std::move(off));
    const auto target = chain_index(ns, k);
    std::vector<std::ptrdiff_t> value(co.size(), -1);
    bool ok = true;
    for (std::size_t j = 0; j < objects.size() && ok; ++j) {
      const auto ts = enumerate_monotone(k, objects[j].size() - 1);
      for (std::size_t t = 0; t < ts.size(); ++t) {
        PosetChain c(k + 1);
        for (std::size_t u = 0; u <= k; ++u) c[u] = objects[j][ts[t](u)];
        const auto v = static_cast<std::ptrdiff_t>(target.at(c));
        auto& slot = value[co.class_of(j, t)];
        if (slot >= 0 && slot != v) {
          ok = false;
          cert.witness = {{"k", k}, {"reason", "canonical map not well defined"}};
          break;
        }
        slot = v;
      }
    }
    if (ok) {
      std::vector<PosetChain> images(co.size());
      std::vector<PosetChain> by_index(target.size());
      for (const auto& [c, i] : target) by_index[i] = c;
      for (std::size_t c = 0; c < co.size(); ++c) images[c] = by_index[static_cast<std::size_t>(value[c])];
      if (auto w = check_bijective(images, target)) {
        ok = false;
        (*w)["k"] = k;
        cert.witness = *w;
      }
    }
    // initial objects of the comma categories under each tau
    std::size_t certified = 0;
    for (const auto& [tau, ti] : target) {
      if (!ok) break;
      PosetChain iota;
      std::vector<std::size_t> e;
      for (const auto& p : tau) {
        if (iota.empty() || iota.back() != p) iota.push_back(p);
        e.push_back(iota.size() - 1);
      }
      const std::size_t l = iota.size() - 1;
      const MonotoneMap epi(l, e);
      if (!index.count(iota) || !epi.is_surjective()) {
        ok = false;
        cert.witness = {{"k", k}, {"reason", "image factorization is not an object"}, {"tau", chain_json(tau)}};
        break;
      }
      for (const auto& sigma : objects) {
        const std::size_t m = sigma.size() - 1;
        // the unique t with sigma o t = tau, if any
        std::vector<std::size_t> tv;
        for (const auto& p : tau) {
          const auto it = std::find(sigma.begin(), sigma.end(), p);
          if (it == sigma.end()) break;
          tv.push_back(static_cast<std::size_t>(it - sigma.begin()));
        }
        if (tv.size() != tau.size()) continue;
        const MonotoneMap t(m, tv);
        std::size_t factorizations = 0;
        for (const auto& theta : enumerate_monotone(l, m)) {
          bool hits = true;
          for (std::size_t u = 0; u <= l && hits; ++u) hits = sigma[theta(u)] == iota[u];
          if (hits && compose(theta, epi) == t) ++factorizations;
        }
        if (factorizations != 1) {
          ok = false;
          cert.witness = {{"k", k}, {"reason", "image factorization is not initial"}, {"tau", chain_json(tau)},
                          {"sigma", chain_json(sigma)}, {"factorizations", factorizations}};
          break;
        }
      }
      if (ok) ++certified;
    }
    initial_certified += certified;
    levels.push_back({{"k", k}, {"colimit_size", co.size()}, {"target_size", target.size()}, {"bijective", ok},
                      {"initial_objects", certified}});
    if (!ok) {
      cert.pass = false;
      break;
    }
  }
  cert.details = {{"ns", ns}, {"objects", objects.size()}, {"levels", levels}, {"initial_objects", initial_certified}};
  return cert;
}

FiniteCategory arrow_fiber_nn(const std::vector<std::size_t>& a_list, std::size_t b) {
  const std::size_t k = a_list.size();
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::size_t> cur(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == k) {
      tuples.push_back(cur);
      return;
    }
    for (std::size_t x = 0; x <= left; ++x) {
      cur[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, b);
  std::vector<std::string> names;
  for (const auto& t : tuples) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    names.push_back(s + ")");
  }
  return FiniteCategory::poset(
      tuples.size(),
      [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < k; ++c)
          if (tuples[i][c] > tuples[j][c]) return false;
        return true;
      },
      std::move(names));
}

// ---------------------------------------------------------------- operator category

OperatorCategoryFragment::OperatorCategoryFragment(PromonoidalData data, std::size_t max_length)
    : data_(std::move(data)), max_length_(max_length) {}

OperatorCategoryFragment operator_category_fragment(const PromonoidalData& data, std::size_t max_length) {
  return OperatorCategoryFragment(data, max_length);
}

std::vector<std::vector<std::size_t>> OperatorCategoryFragment::objects() const {
  std::vector<std::vector<std::size_t>> out{{}};
  const std::size_t n = data_.base.object_count();
  for (std::size_t len = 1; len <= max_length_; ++len) {
    std::vector<std::size_t> cur(len, 0);
    while (true) {
      out.push_back(cur);
      std::size_t i = len;
      while (i > 0 && cur[i - 1] + 1 == n) cur[--i] = 0;
      if (i == 0) break;
      ++cur[i - 1];
    }
  }
  return out;
}

const NaryMu& OperatorCategoryFragment::mu(const std::vector<std::size_t>& inputs) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = cache_[inputs];
  if (!slot) slot = std::make_shared<NaryMu>(data_, inputs);
  return *slot;
}

std::size_t OperatorCategoryFragment::component_size(const std::vector<std::size_t>& inputs, std::size_t output) const {
  return mu(inputs).size(output);
}

namespace {

std::vector<std::size_t> preimage(const std::vector<long>& map, long j) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] == j) out.push_back(i);
  return out;
}

std::vector<std::size_t> pick(const std::vector<std::size_t>& seq, const std::vector<std::size_t>& at) {
  std::vector<std::size_t> out;
  for (std::size_t i : at) out.push_back(seq[i]);
  return out;
}

}  // namespace

std::size_t OperatorCategoryFragment::hom_count(const std::vector<std::size_t>& source,
                                                const std::vector<std::size_t>& target) const {
  const std::size_t m = source.size(), n = target.size();
  std::size_t total = 0;
  std::vector<long> map(m, -1);
  while (true) {
    std::size_t prod = 1;
    for (std::size_t j = 0; j < n; ++j)
      prod *= component_size(pick(source, preimage(map, static_cast<long>(j))), target[j]);
    total += prod;
    std::size_t i = m;
    while (i > 0 && map[i - 1] + 1 == static_cast<long>(n)) map[--i] = -1;
    if (i == 0) break;
    ++map[i - 1];
  }
  return total;
}

OperatorMorphism OperatorCategoryFragment::identity(const std::vector<std::size_t>& object) const {
  OperatorMorphism f{object, object, {}, {}};
  for (std::size_t i = 0; i < object.size(); ++i) {
    f.map.push_back(static_cast<long>(i));
    f.components.push_back(data_.base.hom_position(data_.base.identity(object[i])));
  }
  return f;
}

PosetChain OperatorCategoryFragment::evaluate_member(const std::vector<std::size_t>& inputs, std::size_t output,
                                                     std::size_t k, std::mt19937_64* rng) const {
  const NaryMu& m = mu(inputs);
  if (rng == nullptr || m.arity() < 3) return evaluate_delta_mu(m, output, k);
  const auto members = m.members(output, k, 12);
  return evaluate_delta_element(m, output, members[(*rng)() % members.size()]);
}

std::size_t OperatorCategoryFragment::class_of_chain(const std::vector<std::size_t>& inputs, std::size_t output,
                                                     const PosetChain& chain) const {
  const NaryMu& m = mu(inputs);
  std::map<PosetChain, std::size_t>* table;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    table = &inverse_[{inputs, output}];
  }
  if (table->empty()) {
    std::map<PosetChain, std::size_t> built;
    for (std::size_t k = 0; k < m.size(output); ++k) built.emplace(evaluate_delta_mu(m, output, k), k);
    std::lock_guard<std::mutex> lock(mutex_);
    if (table->empty()) *table = std::move(built);
  }
  const auto it = table->find(chain);
  require(it != table->end(), ErrorCode::internal, "composite has no coend class");
  return it->second;
}

OperatorMorphism OperatorCategoryFragment::compose(const OperatorMorphism& g, const OperatorMorphism& f,
                                                   std::uint64_t member_seed) const {
  require(f.target == g.source, ErrorCode::invalid_argument, "operator morphisms are not composable");
  OperatorMorphism h{f.source, g.target, {}, {}};
  for (long j : f.map) h.map.push_back(j < 0 ? -1 : g.map[static_cast<std::size_t>(j)]);
  if (data_.model == "point") {
    h.components.assign(g.target.size(), 0);
    return h;
  }
  require(data_.model == "delta_op", ErrorCode::invalid_argument, "composition needs a concrete promonoidal model");
  std::mt19937_64 rng(member_seed);
  std::mt19937_64* r = member_seed ? &rng : nullptr;
  for (std::size_t k = 0; k < g.target.size(); ++k) {
    const auto gk = preimage(g.map, static_cast<long>(k));
    const PosetChain beta = evaluate_member(pick(g.source, gk), g.target[k], g.components[k], r);
    std::vector<PosetChain> alphas;
    std::vector<std::vector<std::size_t>> fibers;
    for (std::size_t j : gk) {
      fibers.push_back(preimage(f.map, static_cast<long>(j)));
      alphas.push_back(evaluate_member(pick(f.source, fibers.back()), f.target[j], f.components[j], r));
    }
    const auto hk = preimage(h.map, static_cast<long>(k));
    PosetChain chain(g.target[k] + 1);
    for (std::size_t t = 0; t < chain.size(); ++t)
      for (std::size_t i : hk) {
        const auto jpos = static_cast<std::size_t>(
            std::find(gk.begin(), gk.end(), static_cast<std::size_t>(f.map[i])) - gk.begin());
        const auto ipos = static_cast<std::size_t>(
            std::find(fibers[jpos].begin(), fibers[jpos].end(), i) - fibers[jpos].begin());
        chain[t].push_back(alphas[jpos][beta[t][jpos]][ipos]);
      }
    h.components.push_back(class_of_chain(pick(h.source, hk), g.target[k], chain));
  }
  return h;
}

OperatorMorphism OperatorCategoryFragment::random_morphism(std::mt19937_64& rng, const std::vector<std::size_t>& source,
                                                           std::size_t target_length, std::size_t entry_max) const {
  OperatorMorphism f{source, std::vector<std::size_t>(target_length), {}, {}};
  for (auto& c : f.target) c = rng() % (entry_max + 1);
  for (std::size_t i = 0; i < source.size(); ++i)
    f.map.push_back(static_cast<long>(rng() % (target_length + 1)) - 1);
  for (std::size_t j = 0; j < target_length; ++j) {
    const std::size_t n = component_size(pick(source, preimage(f.map, static_cast<long>(j))), f.target[j]);
    require(n > 0, ErrorCode::internal, "empty multimorphism set");
    f.components.push_back(rng() % n);
  }
  return f;
}

namespace {

nlohmann::json morphism_json(const OperatorMorphism& f) {
  return {{"source", f.source}, {"target", f.target}, {"map", f.map}, {"components", f.components}};
}

}  // namespace

Certificate OperatorCategoryFragment::associativity_check(std::uint64_t seed, std::size_t samples,
                                                         std::size_t entry_max) const {
  Certificate cert;
  cert.name = "operator_associativity";
  std::mt19937_64 rng(seed);
  auto random_object = [&] {
    std::vector<std::size_t> o(rng() % (max_length_ + 1));
    for (auto& c : o) c = rng() % (entry_max + 1);
    return o;
  };
  std::size_t member_checks = 0;
  for (std::size_t s = 0; s < samples && cert.pass; ++s) {
    const auto f = random_morphism(rng, random_object(), rng() % (max_length_ + 1), entry_max);
    const auto g = random_morphism(rng, f.target, rng() % (max_length_ + 1), entry_max);
    const auto h = random_morphism(rng, g.target, rng() % (max_length_ + 1), entry_max);
    const auto hg_f = compose(compose(h, g), f);
    const auto h_gf = compose(h, compose(g, f));
    std::string failure;
    if (hg_f != h_gf) failure = "associativity";
    else if (compose(identity(f.target), f) != f || compose(f, identity(f.source)) != f) failure = "unit";
    else {
      for (int t = 0; t < 2 && failure.empty(); ++t) {
        const std::uint64_t ms = rng() | 1;
        if (compose(g, f, ms) != compose(g, f)) failure = "representative dependence";
        ++member_checks;
      }
    }
    if (!failure.empty()) {
      cert.pass = false;
      cert.witness = {{"sample", s}, {"law", failure}, {"f", morphism_json(f)}, {"g", morphism_json(g)},
                      {"h", morphism_json(h)}};
    }
  }
  cert.details = {{"model", data_.model}, {"max_length", max_length_}, {"entry_max", entry_max},
                  {"samples", samples}, {"seed", seed}, {"member_checks", member_checks}};
  return cert;
}

}  // namespace zilber
