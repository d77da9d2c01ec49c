#include "doctest.h"

#include "support.hpp"
#include "zilber/doldkan.hpp"
#include "zilber/ez.hpp"
#include "zilber/spectral.hpp"

using namespace zilber;

namespace {

AbelianGroupInvariants z(std::size_t r) { return {r, {}}; }

}  // namespace

TEST_CASE("constant filtration") {
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    auto c = testing::random_chain_complex(rng, 8, 3);
    auto s = compute_pages(FilteredChainComplex::constant(c), 3);
    auto h = homology(c);
    for (std::size_t r = 1; r <= 3; ++r) {
      for (std::size_t n = 0; n <= c.top_degree(); ++n) CHECK(s.page(r).entry(0, n)->group.invariants() == h[n]);
      for (const auto& row : s.page(r).differential)
        for (const auto& d : row) CHECK(d.is_zero());
    }
    CHECK(spectral_check(s).pass);
  }
}

TEST_CASE("E_1 of the skeletal filtration is the normalized complex") {
  for (const auto& x : {standard_simplex(1, 3), standard_simplex(2, 3), circle(3), torus(3)}) {
    auto a = free_abelian(x);
    auto n = normalize(a);
    auto s = compute_pages(skeletal_filtration(a), 2);
    const Page& e1 = s.page(1);
    for (std::size_t p = 0; p <= 3; ++p)
      for (std::size_t k = 0; k <= 3; ++k)
        CHECK(e1.entry(p, k)->group.invariants() == (k == p ? z(n.ranks[p]) : z(0)));
    // d_1 on lifts agrees with the normalized differential up to the chosen generators
    for (std::size_t p = 1; p <= 3; ++p) {
      const auto& src = e1.entry(p, p)->group;
      const auto& tgt = e1.entry(p - 1, p - 1)->group;
      Matrix to_src = *LatticeSolver(src.lifts()).solve(Matrix::identity(n.ranks[p]));
      Matrix from_tgt = tgt.lifts();
      CHECK(from_tgt * e1.differential[p][p] * to_src == n.normalized.differential(p));
    }
    CHECK(spectral_check(s).pass);
    CHECK(heart_check(a).pass);
  }
  auto t = compute_pages(skeletal_filtration(free_abelian(torus(3))), 4);
  const auto& inf = t.infinity();
  CHECK(inf.entry(0, 0)->group.invariants() == z(1));
  CHECK(inf.entry(1, 1)->group.invariants() == z(2));
  CHECK(inf.entry(2, 2)->group.invariants() == z(1));
}

TEST_CASE("random filtrations converge to the associated graded") {
  std::mt19937 rng(11);
  for (int t = 0; t < 25; ++t) {
    auto f = testing::random_filtration(rng, 1 + rng() % 4, 1 + rng() % 3, 3 + rng() % 4);
    auto s = compute_pages(f, f.p_max() + 2);
    auto cert = spectral_check(s);
    CHECK(cert.pass);
    if (!cert.pass) MESSAGE(cert.to_json().dump());
  }
}

TEST_CASE("torsion appears on later pages") {
  // Z --2--> Z with the source one filtration step above the target
  ChainComplex c({1, 1}, {Matrix{{2}}});
  FilteredChainComplex f(c, {{Matrix{{1}}, Matrix(1, 0)}, {Matrix{{1}}, Matrix{{1}}}});
  auto s = compute_pages(f, 3);
  CHECK(s.page(1).entry(0, 0)->group.invariants() == z(1));
  CHECK(s.page(1).entry(1, 1)->group.invariants() == z(1));
  CHECK(s.page(1).differential[1][1] == Matrix{{2}});
  CHECK(s.page(2).entry(0, 0)->group.invariants() == AbelianGroupInvariants{0, {2}});
  CHECK(s.page(2).entry(1, 1)->group.invariants().is_zero());
  CHECK(spectral_check(s).pass);
}

TEST_CASE("Leibniz rule for shuffle pairings") {
  for (auto [a, b] : {std::pair{standard_simplex(1, 3), standard_simplex(1, 3)},
                      std::pair{circle(3), circle(3)}, std::pair{standard_simplex(2, 3), circle(3)}}) {
    auto fa = free_abelian(a), fb = free_abelian(b);
    auto pairing = filtered_ez(fa, fb);
    auto sf = compute_pages(pairing.left(), 3), sg = compute_pages(pairing.right(), 3);
    auto sh = compute_pages(pairing.target(), 3);
    for (std::size_t r = 1; r <= 3; ++r) {
      auto pp = induced_pairing(pairing, sf, sg, sh, r);
      CHECK(pp.lift_independence.pass);
      CHECK(leibniz_check(pp).pass);
    }
  }
  // unnormalized chains: pages differ from E_1 on, the rule still holds
  auto e = free_abelian(standard_simplex(1, 3));
  auto pu = filtered_ez(e, e, ChainModel::unnormalized);
  auto su = compute_pages(pu.left(), 2), sh = compute_pages(pu.target(), 2);
  for (std::size_t r = 1; r <= 2; ++r) {
    auto pp = induced_pairing(pu, su, su, sh, r);
    CHECK(pp.lift_independence.pass);
    if (!pp.lift_independence.pass) MESSAGE(pp.lift_independence.to_json().dump());
    CHECK(leibniz_check(pp).pass);
  }
}

TEST_CASE("a sign flip on one product breaks the Leibniz rule") {
  auto e = free_abelian(standard_simplex(1, 3));
  auto pairing = filtered_ez(e, e);
  auto sf = compute_pages(pairing.left(), 1), sh = compute_pages(pairing.target(), 1);
  auto pp = induced_pairing(pairing, sf, sf, sh, 1);
  REQUIRE(leibniz_check(pp).pass);
  // edge times vertex: its d_1 is nonzero
  PagePairing::Key key{1, 1, 0, 0};
  REQUIRE(pp.products.count(key));
  pp.flip_sign(key, 0);
  auto cert = leibniz_check(pp);
  CHECK_FALSE(cert.pass);
  CHECK(cert.witness.contains("left"));
}

TEST_CASE("unit pairing") {
  std::mt19937 rng(4);
  auto f = testing::random_filtration(rng, 2, 2, 4);
  auto u = FilteredChainComplex::unit();
  ChainComplex src = tensor(u.ambient(), f.ambient());
  ChainMap m(src, f.ambient(), [&] {
    std::vector<Matrix> id;
    for (std::size_t k = 0; k <= f.top_degree(); ++k) id.push_back(Matrix::identity(f.ambient().rank(k)));
    return id;
  }());
  FilteredPairing pairing(u, f, f, m);
  auto su = compute_pages(u, 2), sf = compute_pages(f, 2);
  auto pp = induced_pairing(pairing, su, sf, sf, 1);
  CHECK(pp.lift_independence.pass);
  for (const auto& [key, mat] : pp.products)
    if (key[0] == 0 && key[1] == 0) CHECK(mat.is_identity());
  CHECK(leibniz_check(pp).pass);
}
