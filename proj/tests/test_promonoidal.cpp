#include "doctest.h"

#include <chrono>
#include <numeric>

#include "support.hpp"
#include "zilber/error.hpp"
#include "zilber/promonoidal.hpp"

using namespace zilber;

namespace {

FiniteCategory poset_category(const std::vector<std::vector<bool>>& leq) {
  return FiniteCategory::poset(leq.size(), [&](std::size_t i, std::size_t j) { return bool(leq[i][j]); });
}

// P(c,d) = {x : c <= phi(x), psi(x) <= d} with inclusions as actions.
SetProfunctor random_profunctor(std::mt19937& rng, const std::vector<std::vector<bool>>& lc,
                                const std::vector<std::vector<bool>>& ld, std::size_t points) {
  const FiniteCategory C = poset_category(lc), D = poset_category(ld);
  const std::size_t nc = lc.size(), nd = ld.size();
  std::vector<std::size_t> phi(points), psi(points);
  for (auto& v : phi) v = rng() % nc;
  for (auto& v : psi) v = rng() % nd;
  std::vector<std::vector<std::size_t>> members(nc * nd);
  std::vector<std::size_t> sizes(nc * nd);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t x = 0; x < points; ++x)
        if (lc[c][phi[x]] && ld[psi[x]][d]) members[c * nd + d].push_back(x);
      sizes[c * nd + d] = members[c * nd + d].size();
    }
  auto position = [&](std::size_t c, std::size_t d, std::size_t x) {
    const auto& m = members[c * nd + d];
    return static_cast<std::size_t>(std::find(m.begin(), m.end(), x) - m.begin());
  };
  std::vector<std::vector<std::vector<std::size_t>>> left(C.morphism_count()), right(D.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f)
    for (std::size_t d = 0; d < nd; ++d) {
      std::vector<std::size_t> t;
      for (std::size_t x : members[C.target(f) * nd + d]) t.push_back(position(C.source(f), d, x));
      left[f].push_back(t);
    }
  for (std::size_t g = 0; g < D.morphism_count(); ++g)
    for (std::size_t c = 0; c < nc; ++c) {
      std::vector<std::size_t> t;
      for (std::size_t x : members[c * nd + D.source(g)]) t.push_back(position(c, D.target(g), x));
      right[g].push_back(t);
    }
  return SetProfunctor::tabulated(C, D, sizes, left, right);
}

// Hom(-, x) x Hom(x', -) on a category, as a functor C^op x C -> Set.
SetProfunctor yoneda_pair(const FiniteCategory& C, std::size_t x, std::size_t x2) {
  const std::size_t n = C.object_count();
  std::vector<std::size_t> sizes;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) sizes.push_back(C.hom_size(c, x) * C.hom_size(x2, d));
  std::vector<std::vector<std::vector<std::size_t>>> left(C.morphism_count()), right(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    for (std::size_t d = 0; d < n; ++d) {
      std::vector<std::size_t> t;
      const std::size_t hd = C.hom_size(x2, d);
      for (std::size_t u = 0; u < C.hom_size(C.target(f), x); ++u)
        for (std::size_t v = 0; v < hd; ++v)
          t.push_back(C.hom_position(C.compose(C.hom_at(C.target(f), x, u), f)) * hd + v);
      left[f].push_back(t);
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<std::size_t> t;
      const std::size_t hs = C.hom_size(x2, C.source(f)), ht = C.hom_size(x2, C.target(f));
      for (std::size_t u = 0; u < C.hom_size(c, x); ++u)
        for (std::size_t v = 0; v < hs; ++v)
          t.push_back(u * ht + C.hom_position(C.compose(f, C.hom_at(x2, C.source(f), v))));
      right[f].push_back(t);
    }
  }
  return SetProfunctor::tabulated(C, C, sizes, left, right);
}

}  // namespace

TEST_CASE("finite categories: truncated simplex category, opposites, products, bad tables") {
  const auto d2 = FiniteCategory::simplex(2);
  CHECK(d2.object_count() == 3);
  CHECK(d2.morphism_count() == 31);
  CHECK(d2.generators().size() == 5 + 3);
  const auto op = d2.opposite();
  const std::size_t f = simplex_index(2, MonotoneMap::coface(1, 0));
  CHECK(op.source(f) == 1);
  CHECK(op.target(f) == 0);
  CHECK(simplex_map(2, f) == MonotoneMap::coface(1, 0));
  const auto pr = FiniteCategory::product(d2, op);
  CHECK(pr.object_count() == 9);
  CHECK(pr.hom_size(0, 8) == d2.hom_size(0, 2) * op.hom_size(0, 2));
  for (std::size_t x = 0; x < 40; ++x) {
    const std::size_t g = (x * 7919) % pr.morphism_count();
    CHECK(pr.hom_at(pr.source(g), pr.target(g), pr.hom_position(g)) == g);
  }
  // two endomorphisms e, e' of one object with e o e = id but e' o e' = e breaks associativity
  std::vector<FiniteCategory::Morphism> ms{{0, 0, "id"}, {0, 0, "e"}, {0, 0, "e2"}};
  std::vector<std::vector<std::ptrdiff_t>> comp{{0, 1, 2}, {1, 0, 0}, {2, 1, 1}};
  CHECK_THROWS_AS(FiniteCategory({"a"}, ms, {0}, comp), Error);
  CHECK_THROWS_AS(FiniteCategory::poset(2, [](std::size_t, std::size_t) { return true; }), Error);
}

TEST_CASE("coends: connected constant, discrete, co-Yoneda over the 2-truncated simplex category") {
  const auto chain3 = FiniteCategory::poset(3, [](std::size_t i, std::size_t j) { return i <= j; });
  auto zero = [](std::size_t, std::size_t, std::size_t) { return std::size_t{0}; };
  CHECK(coend_set(SetProfunctor(chain3, chain3, std::vector<std::size_t>(9, 1), zero, zero)).size() == 1);

  const auto disc = FiniteCategory::discrete(3);
  std::vector<std::size_t> sizes(9, 0);
  sizes[0] = 2, sizes[4] = 3, sizes[8] = 1;
  auto ident = [](std::size_t, std::size_t, std::size_t x) { return x; };
  CHECK(coend_set(SetProfunctor(disc, disc, sizes, ident, ident)).size() == 6);

  const auto d2 = FiniteCategory::simplex(2);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t x2 = 0; x2 < 3; ++x2) {
      const auto f = yoneda_pair(d2, x, x2);
      const auto co = coend_set(f);
      CHECK(co.size() == d2.hom_size(x2, x));
      for (std::uint64_t seed : {3u, 17u}) CHECK(coend_set(f, seed).quotient.class_of == co.quotient.class_of);
    }
}

TEST_CASE("profunctor laws are validated") {
  const auto chain2 = FiniteCategory::poset(2, [](std::size_t i, std::size_t j) { return i <= j; });
  // P(c,d) one point everywhere, but the action of 0 <= 1 on the right sends to a missing element
  std::vector<std::vector<std::vector<std::size_t>>> left(3, std::vector<std::vector<std::size_t>>(2, {0}));
  auto right = left;
  right[1][0] = {1};
  const std::size_t f01 = chain2.hom_at(0, 1, 0);
  (void)f01;
  CHECK_THROWS_AS(SetProfunctor::tabulated(chain2, chain2, {1, 1, 1, 1}, left, right), Error);
}

TEST_CASE("composition with Hom is the identity up to canonical bijection") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const auto lc = testing::random_poset(rng, 2 + rng() % 3);
    const auto ld = testing::random_poset(rng, 2 + rng() % 3);
    const auto p = random_profunctor(rng, lc, ld, 3 + rng() % 4);
    CHECK_FALSE(p.violation().has_value());
    const auto cert = coyoneda_check(p);
    CHECK_MESSAGE(cert.pass, cert.to_json().dump());
  }
  CHECK(coyoneda_check(SetProfunctor::hom(FiniteCategory::simplex(2))).pass);
  // composing tabulated profunctors keeps the laws
  const auto d2 = FiniteCategory::simplex(2);
  const auto hh = compose_profunctors(SetProfunctor::hom(d2), SetProfunctor::hom(d2));
  CHECK_FALSE(hh.violation().has_value());
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(hh.size(a, b) == d2.hom_size(a, b));
}

TEST_CASE("Delta^op promonoidal data: unit law and n-ary mu") {
  const auto data = delta_op_promonoidal(2);
  // mu on a product category is too large for the exhaustive law check at b = 2; use b = 1
  CHECK_FALSE(delta_op_promonoidal(1).mu.violation().has_value());
  CHECK(mu_unit_check(3).pass);
  for (std::vector<std::size_t> in : {std::vector<std::size_t>{}, {1}, {1, 2}, {1, 0, 1}, {2, 1, 1}})
    for (auto nest : {NaryMu::Nesting::right, NaryMu::Nesting::left}) {
      const NaryMu mu(data, in, nest);
      for (std::size_t o = 0; o < 3; ++o) CHECK(mu.size(o) == mul_delta(in, o).size());
    }
}

TEST_CASE("associativity bijections of mu for Delta^op") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cert = mu_associativity_check(3, 2, 3);
  CHECK_MESSAGE(cert.pass, cert.to_json().dump());
  CHECK(cert.details["instances"] == 27 * 2 * 4);
  MESSAGE("mu associativity: "
          << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
}

TEST_CASE("n-ary mu is independent of union order") {
  const auto data = delta_op_promonoidal(2);
  const NaryMu a(data, {1, 1, 2}), b(data, {1, 1, 2}, NaryMu::Nesting::right, 99);
  for (std::size_t o = 0; o < 3; ++o) CHECK(a.outer(o).quotient.class_of == b.outer(o).quotient.class_of);
}

TEST_CASE("multimorphism sets") {
  const auto s = mul_delta({1, 1}, 2);
  std::size_t chains = 0;
  for (std::size_t x = 0; x < 64; ++x) {
    std::size_t pts[3] = {x % 4, (x / 4) % 4, x / 16};
    bool mono = true;
    for (int i = 0; i < 2; ++i) mono = mono && (pts[i] / 2 <= pts[i + 1] / 2) && (pts[i] % 2 <= pts[i + 1] % 2);
    chains += mono;
  }
  CHECK(s.size() == chains);
  CHECK(s.size() == 16);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t m = 0; m < 4; ++m) CHECK(mul_delta({n}, m).size() == enumerate_monotone(m, n).size());
  CHECK(mul_nn_delta({2, 2}, {1, 1}, 3, 2).empty());
  CHECK(mul_nn_delta({1, 1}, {1, 1}, 2, 2).size() == 16);
  CHECK_THROWS_AS(mul_nn_delta({1, 1}, {2, 1}, 3, 2), Error);
  CHECK_THROWS_AS(mul_nn_delta({1, 1}, {1, 1}, 2, 3), Error);
}

TEST_CASE("left Kan extension from the b-truncation") {
  CHECK(left_kan_check({0}, 0, {0, 1, 2, 3, 4}).pass);
  CHECK(left_kan_check({1, 1}, 2, {0, 1, 2, 3, 4}).pass);
  const auto bad = left_kan_check({1, 1}, 1, {2});
  REQUIRE_FALSE(bad.pass);
  CHECK(bad.witness["reason"] == "not surjective");
  const auto w = bad.witness["value"];
  CHECK((w == nlohmann::json{{0, 0}, {0, 1}, {1, 1}} || w == nlohmann::json{{0, 0}, {1, 0}, {1, 1}}));
  for (std::size_t n1 = 0; n1 <= 2; ++n1)
    for (std::size_t n2 = 0; n2 <= 2; ++n2)
      for (std::size_t b = 0; b <= 4; ++b) {
        const auto c = left_kan_check({n1, n2}, b, {0, 1, 2, 3, 4});
        CHECK_MESSAGE(c.pass == (n1 + n2 <= b), c.to_json().dump());
      }
}

TEST_CASE("products of simplices are colimits of their nondegenerate simplices") {
  CHECK(product_simplices_colimit_check({3}, {0, 1, 2, 3, 4}).pass);
  const auto c11 = product_simplices_colimit_check({1, 1}, {0, 1, 2, 3, 4});
  REQUIRE(c11.pass);
  for (const auto& level : c11.details["levels"])
    CHECK(level["colimit_size"] == mul_delta({1, 1}, level["k"].get<std::size_t>()).size());
  CHECK(product_simplices_colimit_check({2, 1}, {0, 1, 2, 3, 4, 5}).pass);
}

TEST_CASE("arrow fibre of N and operator category fragments") {
  for (std::size_t b = 0; b <= 5; ++b) CHECK(arrow_fiber_nn({1, 1}, b).object_count() == binomial(b + 2, 2));
  const auto fib = arrow_fiber_nn({2, 3}, 2);
  CHECK(fib.hom_size(0, fib.object_count() - 1) == 1);

  const auto point = operator_category_fragment(point_promonoidal(), 3);
  CHECK(point.objects().size() == 4);
  for (std::size_t m = 0; m <= 3; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      std::size_t expected = 1;
      for (std::size_t i = 0; i < m; ++i) expected *= n + 1;
      CHECK(point.hom_count(std::vector<std::size_t>(m, 0), std::vector<std::size_t>(n, 0)) == expected);
    }
  CHECK(point.associativity_check(5, 30, 0).pass);

  const auto delta = operator_category_fragment(delta_op_promonoidal(3), 3);
  const auto cert = delta.associativity_check(2024, 50, 2);
  CHECK_MESSAGE(cert.pass, cert.to_json().dump());
  CHECK(delta.hom_count({1}, {1}) == enumerate_monotone(1, 1).size() + 1);
}
