#include "doctest.h"

#include "support.hpp"
#include "zilber/doldkan.hpp"
#include "zilber/error.hpp"
#include "zilber/filtration.hpp"

using namespace zilber;

namespace {

using Ranks = std::vector<std::size_t>;

}  // namespace

TEST_CASE("skeletal filtration of simplices") {
  auto e = skeletal_filtration(free_abelian(standard_simplex(1, 2)));
  CHECK(e.stage_ranks(0) == Ranks{2, 0, 0});
  CHECK(e.stage_ranks(1) == Ranks{2, 1, 0});
  CHECK(e.stage_ranks(2) == Ranks{2, 1, 0});
  for (std::size_t n = 0; n <= 3; ++n) {
    auto f = skeletal_filtration(free_abelian(standard_simplex(n, 3)));
    CHECK(f.stage_ranks(0)[0] == n + 1);
    // unnormalized: stage 0 is the degenerate vertices in every degree
    auto u = skeletal_filtration(free_abelian(standard_simplex(n, 3)), ChainModel::unnormalized);
    CHECK(u.stage_ranks(0) == Ranks(4, n + 1));
  }
  // the 1-skeleton of the 2-simplex in degree 2: degenerate triangles on its three edges and vertices
  auto u = skeletal_filtration(free_abelian(standard_simplex(2, 2)), ChainModel::unnormalized);
  CHECK(u.stage_ranks(1) == Ranks{3, 6, 9});
}

TEST_CASE("graded pieces have homology concentrated in their filtration degree") {
  std::mt19937 rng(3);
  std::vector<SimplicialAbelianGroup> objs{free_abelian(standard_simplex(2, 3)), free_abelian(circle(3)),
                                           free_abelian(torus(3))};
  for (int t = 0; t < 8; ++t) objs.push_back(free_abelian(testing::random_nerve(rng, 4)));
  for (const auto& a : objs) {
    auto n = normalize(a);
    for (auto model : {ChainModel::normalized, ChainModel::unnormalized}) {
      auto gr = graded_pieces(skeletal_filtration(a, model));
      REQUIRE(gr.size() == a.dim_bound() + 1);
      for (std::size_t p = 0; p < a.dim_bound(); ++p) {
        auto h = homology(gr[p].complex);
        for (std::size_t k = 0; k < a.dim_bound(); ++k)
          CHECK(h[k] == (k == p ? AbelianGroupInvariants{n.ranks[p], {}} : AbelianGroupInvariants{}));
      }
    }
  }
  auto gr = graded_pieces(skeletal_filtration(free_abelian(standard_simplex(2, 2))));
  Ranks conc;
  for (std::size_t p = 0; p < gr.size(); ++p) conc.push_back(homology(gr[p].complex)[p].free_rank);
  CHECK(conc == Ranks{3, 3, 1});
}

TEST_CASE("graded pieces: gr_0 = F_0 and ranks add up") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto f = testing::random_filtration(rng, 1 + rng() % 3, 1 + rng() % 3);
    auto gr = graded_pieces(f);
    for (std::size_t k = 0; k <= f.top_degree(); ++k) {
      std::size_t sum = 0;
      for (const auto& g : gr) sum += g.complex.rank(k);
      CHECK(sum == f.ambient().rank(k));
      CHECK(gr[0].complex.rank(k) == f.stage_ranks(0)[k]);
    }
  }
  // 2Z inside Z has a torsion quotient
  FilteredChainComplex bad(ChainComplex::concentrated(0, 1), {{Matrix{{2}}}, {Matrix{{1}}}});
  CHECK_THROWS_AS(graded_pieces(bad), Error);
}

TEST_CASE("filtered complexes reject bad stages") {
  ChainComplex c({1, 1}, {Matrix{{1}}});
  CHECK_THROWS_AS(FilteredChainComplex(c, {{Matrix(1, 0), Matrix{{1}}}, {Matrix{{1}}, Matrix{{1}}}}), Error);
  CHECK_THROWS_AS(FilteredChainComplex(c, {{Matrix{{1}}, Matrix(1, 0)}, {Matrix{{1}}, Matrix(1, 0)}}), Error);
  CHECK_THROWS_AS(FilteredChainComplex(c, {{Matrix{{1}}, Matrix(1, 0)}, {Matrix(1, 0), Matrix{{1}}}}), Error);
  CHECK_NOTHROW(FilteredChainComplex(c, {{Matrix{{1}}, Matrix(1, 0)}, {Matrix{{1}}, Matrix{{1}}}}));
}

TEST_CASE("Day convolution") {
  auto e = skeletal_filtration(free_abelian(standard_simplex(1, 2)));
  auto ee = day_convolution(e, e);
  // vertex (x) vertex, vertex (x) edge, edge (x) vertex
  CHECK(ee.stage_ranks(0) == Ranks{4, 0, 0, 0, 0});
  CHECK(ee.stage_ranks(1) == Ranks{4, 4, 0, 0, 0});
  CHECK(ee.stage_ranks(2) == Ranks{4, 4, 1, 0, 0});
  CHECK(ee.p_max() == 4);

  auto c = testing::random_chain_complex(*new std::mt19937(2), 6, 2);
  auto cc = day_convolution(FilteredChainComplex::constant(c), FilteredChainComplex::constant(c));
  CHECK(stages_equal(cc, FilteredChainComplex::constant(tensor(c, c))));

  std::mt19937 rng(9);
  for (int t = 0; t < 15; ++t) {
    auto f = testing::random_filtration(rng, 1 + rng() % 3, 1 + rng() % 2, 4);
    auto g = testing::random_filtration(rng, 1 + rng() % 2, 1 + rng() % 2, 3);
    auto h = testing::random_filtration(rng, 1 + rng() % 2, 1, 3);
    CHECK(day_unit_check(f).pass);
    CHECK(day_symmetry_check(f, g).pass);
    CHECK(day_associativity_check(f, g, h).pass);
  }
  CHECK(day_associativity_check(e, e, e).pass);
}

TEST_CASE("filtered shuffle product") {
  auto pt = free_abelian(point(2));
  auto id = filtered_ez(pt, pt);
  CHECK(id.map().component(0) == Matrix{{1}});
  for (auto model : {ChainModel::normalized, ChainModel::unnormalized}) {
    for (std::size_t a = 0; a <= 2; ++a)
      for (std::size_t b = 0; b <= 2; ++b) {
        const std::size_t d = std::max<std::size_t>(a + b, 1);
        auto cert = filtered_ez_check(free_abelian(standard_simplex(a, d)), free_abelian(standard_simplex(b, d)), model);
        CHECK(cert.pass);
        CHECK(cert.details["filtration0_isomorphism"] == true);
      }
    CHECK(filtered_ez_check(free_abelian(circle(3)), free_abelian(circle(3)), model).pass);
  }
  auto cert = filtered_ez_check(free_abelian(standard_simplex(2, 3)), free_abelian(standard_simplex(1, 3)));
  for (const auto& row : cert.details["containment"])
    if (row["p"] == 1 && row["q"] == 1) CHECK(row["image_rank"] < row["target_rank"]);

  // shifting the target filtration up by one breaks containment
  auto s1 = free_abelian(standard_simplex(1, 2));
  auto pairing = filtered_ez(s1, s1);
  const auto& h = pairing.target();
  std::vector<std::vector<Matrix>> shifted(h.p_max() + 2);
  for (std::size_t p = 0; p < shifted.size(); ++p)
    for (std::size_t k = 0; k <= h.top_degree(); ++k) shifted[p].push_back(h.stage(static_cast<long>(p) - 1, k));
  FilteredChainComplex hs(h.ambient(), shifted);
  auto w = pairing_violation(pairing.left(), pairing.right(), hs, pairing.map());
  REQUIRE(w.has_value());
  CHECK((*w)["p"] == 0);
}
