#include "doctest.h"

#include "support.hpp"
#include "zilber/doldkan.hpp"

using namespace zilber;

TEST_CASE("unnormalized chains") {
  auto c = unnormalized_chains(free_abelian(point(3)));
  CHECK(c.differential(1) == Matrix{{0}});
  CHECK(c.differential(2) == Matrix{{1}});
  CHECK(c.differential(3) == Matrix{{0}});
  auto e = unnormalized_chains(free_abelian(standard_simplex(1, 2)));
  // level 1 is (0,0), (0,1), (1,1); the edge (0,1) has boundary v1 - v0
  CHECK(e.differential(1).column(1) == Vector{-1, 1});
  for (std::size_t n = 0; n <= 3; ++n) {
    auto h = homology(unnormalized_chains(free_abelian(standard_simplex(n, 3))));
    CHECK(h[0] == AbelianGroupInvariants{1, {}});
    // the top level of a truncated object carries truncation artifacts
    for (std::size_t k = 1; k < 3; ++k) CHECK(h[k].is_zero());
  }
}

TEST_CASE("normalization") {
  auto n0 = normalize(free_abelian(point(3)));
  CHECK(n0.normalized.ranks() == std::vector<std::size_t>{1, 0, 0, 0});
  auto n2 = normalize(free_abelian(standard_simplex(2, 3)));
  CHECK(n2.normalized.ranks() == std::vector<std::size_t>{3, 3, 1, 0});
  CHECK(n2.coordinate_basis);
  auto s1 = homotopy_groups(free_abelian(circle(3)));
  CHECK(s1[0] == AbelianGroupInvariants{1, {}});
  CHECK(s1[1] == AbelianGroupInvariants{1, {}});
  CHECK(s1[2].is_zero());
}

TEST_CASE("normalization matches unnormalized homology, with and without basis changes") {
  std::mt19937 rng(41);
  for (int t = 0; t < 40; ++t) {
    auto a = free_abelian(testing::random_nerve(rng, 4));
    if (t % 2) a = testing::random_change_basis(rng, a);
    auto n = normalize(a);
    CHECK(n.coordinate_basis == (t % 2 == 0 || a.degeneracies_monomial()));
    auto hn = homology(n.normalized), hc = homology(unnormalized_chains(a));
    for (std::size_t k = 0; k < a.dim_bound(); ++k) CHECK(hn[k] == hc[k]);
    CHECK(is_quasi_isomorphism(projection_map(a, n), a.dim_bound() - 1));
    section_map(a, n);
    for (std::size_t k = 0; k <= a.dim_bound(); ++k) {
      CHECK((n.projection[k] * n.section[k]).to_dense().is_identity());
      for (std::size_t i = 1; i <= k; ++i) CHECK((a.face(k, i) * n.section[k]).nnz() == 0);
      // projection kills exactly the degenerate span
      auto dspan = degenerate_span(a)[k];
      CHECK((n.projection[k].to_dense() * dspan).is_zero());
      CHECK(dspan.cols() + n.normalized.rank(k) == a.rank(k));
    }
  }
}

TEST_CASE("disks and interval objects") {
  CHECK(disk(0) == ChainComplex::concentrated(0, 1));
  auto d1 = interval_object(1, 4);
  CHECK(d1.rank(1) == 2);
  CHECK(d1.ranks() == std::vector<std::size_t>{1, 2, 3, 4, 5});
  for (std::size_t n = 0; n <= 3; ++n) {
    auto dn = interval_object(n, 4);
    auto nd = normalize(dn).normalized;
    for (std::size_t k = 0; k <= 4; ++k) CHECK(nd.rank(k) == ((k == n || k + 1 == n) ? 1u : 0u));
    if (n >= 1) CHECK(nd.differential(n) == Matrix{{1}});
    CHECK(normalize_gamma_roundtrip(disk(n), 4).pass);
    auto pi = homotopy_groups(dn);
    for (std::size_t k = 1; k < pi.size(); ++k) CHECK(pi[k].is_zero());
    CHECK(pi[0].is_zero() == (n >= 1));
  }
  CHECK(gamma(ChainComplex::concentrated(0, 1), 3) == free_abelian(point(3)));
}

TEST_CASE("Dold-Kan round trips") {
  std::mt19937 rng(43);
  for (int t = 0; t < 25; ++t) {
    auto c = testing::random_chain_complex(rng, 10, 1 + rng() % 3);
    auto cert = normalize_gamma_roundtrip(c, 3);
    CHECK(cert.pass);
  }
  for (int t = 0; t < 15; ++t) {
    auto a = free_abelian(testing::random_nerve(rng, 3));
    if (t % 3 == 1) a = testing::random_change_basis(rng, a);
    if (t % 3 == 2) a = gamma(testing::random_chain_complex(rng, 6, 2), 3);
    CHECK(gamma_normalize_roundtrip(a).pass);
  }
}

TEST_CASE("naturality of normalization") {
  std::mt19937 rng(47);
  for (int t = 0; t < 20; ++t) {
    std::size_t m = rng() % 3, n = rng() % 3;
    auto theta = monotone_unrank(m, n, rng() % binomial(m + n + 1, m + 1));
    auto f = SimplicialMap::induced(theta, 3);
    auto za = free_abelian(f.source()), zb = free_abelian(f.target());
    auto na = normalize(za), nb = normalize(zb);
    auto zf = free_abelian(f);
    auto nf = normalized_map(na, nb, zf);
    for (std::size_t k = 0; k <= 3; ++k)
      CHECK(nf.component(k) * na.projection[k].to_dense() == (nb.projection[k] * zf[k]).to_dense());
  }
}
