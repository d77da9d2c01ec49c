#include "doctest.h"

#include "support.hpp"
#include "zilber/error.hpp"
#include "zilber/simplicial.hpp"

using namespace zilber;

TEST_CASE("standard simplices") {
  auto p = standard_simplex(0, 4);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(p.size(k) == 1);
  CHECK(p.nondegenerate_counts() == std::vector<std::size_t>{1, 0, 0, 0, 0});
  auto d1 = standard_simplex(1, 3);
  CHECK(d1.size(1) == 3);
  CHECK(d1.nondegenerate(1).size() == 1);
  auto d2 = standard_simplex(2, 4);
  CHECK(d2.nondegenerate_counts() == std::vector<std::size_t>{3, 3, 1, 0, 0});
  CHECK(d2.skeletal_dimension() == 2);
}

TEST_CASE("apply matches precomposition on standard simplices") {
  auto d3 = standard_simplex(3, 4);
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t m = 0; m <= 4; ++m)
      for (const auto& theta : enumerate_monotone(m, n))
        for (const auto& x : enumerate_monotone(n, 3)) {
          auto got = d3.apply(theta, static_cast<std::uint32_t>(monotone_rank(x)));
          CHECK(got == monotone_rank(compose(x, theta)));
        }
}

TEST_CASE("products") {
  auto a = standard_simplex(1, 4);
  CHECK(product(a, point(4)) == a);
  CHECK(product(a, a).nondegenerate_counts() == std::vector<std::size_t>{4, 5, 2, 0, 0});
  auto b = product(standard_simplex(2, 3), standard_simplex(1, 3));
  CHECK(b.nondegenerate(3).size() == 3);
  CHECK(b.nondegenerate(3).size() == product_nondegenerate({2, 1}, 3).size());
  CHECK_THROWS_AS(product(standard_simplex(1, 2), standard_simplex(1, 3)), Error);
  for (std::size_t k = 0; k <= 3; ++k)
    CHECK(b.nondegenerate(k).size() == product_nondegenerate({2, 1}, k).size());
}

TEST_CASE("skeleta") {
  auto d2 = standard_simplex(2, 3);
  CHECK(skeleton(d2, 1).set.nondegenerate_counts() == std::vector<std::size_t>{3, 3, 0, 0});
  CHECK(skeleton(d2, 3).set == d2);
  for (std::size_t n = 0; n <= 3; ++n) {
    auto v = skeleton(standard_simplex(n, 3), 0).set;
    for (std::size_t k = 0; k <= 3; ++k) CHECK(v.size(k) == n + 1);
    CHECK(v.skeletal_dimension() == 0);
  }
  std::mt19937 rng(17);
  for (int t = 0; t < 30; ++t) {
    auto x = testing::random_nerve(rng, 5);
    for (std::size_t n = 0; n <= x.dim_bound(); ++n) {
      auto s = skeleton(x, n).set;
      CHECK(skeleton(s, n).set == s);
      for (std::size_t m = n; m <= x.dim_bound(); ++m) {
        auto small = skeleton_members(x, n), big = skeleton_members(x, m);
        for (std::size_t k = 0; k <= x.dim_bound(); ++k)
          for (std::size_t v = 0; v < x.size(k); ++v) CHECK((!small[k][v] || big[k][v]));
      }
    }
    CHECK(skeleton(x, x.skeletal_dimension()).set == x);
  }
}

TEST_CASE("skeleton product check") {
  CHECK(skeleton_product_check(point(3), point(3), 1, 2, 3).pass);
  CHECK(skeleton_product_check(standard_simplex(2, 3), standard_simplex(1, 3), 2, 1, 3).pass);
  auto c = skeleton_product_check(standard_simplex(2, 2), standard_simplex(2, 2), 1, 1, 1);
  CHECK(!c.pass);
  CHECK(c.witness["level"] == 2);
  CHECK(c.witness["x_root_dimension"] == 1);
  CHECK(c.witness["y_root_dimension"] == 1);
}

TEST_CASE("circle and torus") {
  auto s1 = circle(3);
  CHECK(s1.nondegenerate_counts() == std::vector<std::size_t>{1, 1, 0, 0});
  auto t = torus(3);
  CHECK(t.nondegenerate_counts() == std::vector<std::size_t>{1, 3, 2, 0});
}

TEST_CASE("free abelian functor") {
  auto x = standard_simplex(1, 3), y = standard_simplex(2, 3);
  CHECK(free_abelian(point(3)).ranks() == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(free_abelian(x).rank(1) == 3);
  CHECK(free_abelian(product(x, y)) == levelwise_tensor(free_abelian(x), free_abelian(y)));
  std::mt19937 rng(23);
  for (int t = 0; t < 30; ++t) {
    std::size_t a = rng() % 4, b = rng() % 4, c = rng() % 4;
    auto f = monotone_unrank(a, b, rng() % binomial(a + b + 1, a + 1));
    auto g = monotone_unrank(b, c, rng() % binomial(b + c + 1, b + 1));
    auto mf = SimplicialMap::induced(f, 3), mg = SimplicialMap::induced(g, 3);
    auto lhs = free_abelian(compose(mg, mf));
    auto zf = free_abelian(mf), zg = free_abelian(mg);
    for (std::size_t k = 0; k <= 3; ++k) CHECK(lhs[k] == zg[k] * zf[k]);
    CHECK(compose(mg, mf).levels() == SimplicialMap::induced(compose(g, f), 3).levels());
    auto za = free_abelian(mf.source()), zc = free_abelian(mg.target());
    CHECK(!simplicial_map_violation(za, zc, lhs));
  }
}

TEST_CASE("bisimplicial diagonal") {
  auto x = standard_simplex(1, 3);
  CHECK(diagonal(vertically_constant(x)) == x);
  CHECK(diagonal(external_product(x, x)) == product(x, x));
  auto y = circle(3);
  CHECK(diagonal(external_product(y, standard_simplex(2, 3))) == product(y, standard_simplex(2, 3)));
}

TEST_CASE("identity validation rejects corruptions") {
  std::mt19937 rng(29);
  for (int t = 0; t < 100; ++t) {
    auto x = testing::random_nerve(rng, 4);
    auto faces = x.faces();
    auto degs = x.degeneracies();
    bool use_face = rng() % 2 == 0;
    std::size_t k = use_face ? 1 + rng() % x.dim_bound() : rng() % x.dim_bound();
    auto& table = use_face ? faces[k][rng() % (k + 1)] : degs[k][rng() % (k + 1)];
    std::size_t target = use_face ? x.size(k - 1) : x.size(k + 1);
    if (target < 2) continue;
    std::size_t pos = rng() % table.size();
    table[pos] = static_cast<std::uint32_t>((table[pos] + 1 + rng() % (target - 1)) % target);
    CHECK(!simplicial_identity_violation(x.sizes(), faces, degs).empty());
  }
}
