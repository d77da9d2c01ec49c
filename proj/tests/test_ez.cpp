#include "doctest.h"

#include "support.hpp"
#include "zilber/error.hpp"
#include "zilber/ez.hpp"

using namespace zilber;

namespace {

std::vector<SimplicialAbelianGroup> corpus(std::size_t d) {
  return {free_abelian(point(d)), free_abelian(standard_simplex(1, d)), free_abelian(standard_simplex(2, d)),
          free_abelian(circle(d))};
}

}  // namespace

TEST_CASE("shuffle map on vertices and on the edge of the interval") {
  auto a = free_abelian(standard_simplex(1, 2));
  ChainMap un = unnormalized_shuffle_product(a, a);
  // degree 0: vertex pairs go to the matching vertex of the product
  CHECK(un.component(0).is_identity());
  TensorLayout lay(std::vector<std::size_t>{2, 3, 4}, std::vector<std::size_t>{2, 3, 4});
  // level 1 of the interval is 00, 01, 11; the edge is index 1
  std::size_t col = lay.offset(2, 1) + 1 * 3 + 1;
  auto v = un.component(2).column(col);
  // level 2 is 000, 001, 011, 111; the terms are (001,011) and (011,001)
  std::size_t nonzero = 0;
  for (std::size_t r = 0; r < v.size(); ++r)
    if (v[r] != 0) ++nonzero;
  CHECK(nonzero == 2);
  CHECK(v[1 * 4 + 2] * v[2 * 4 + 1] == -1);
}

TEST_CASE("normalized shuffle product is a chain map") {
  auto objs = corpus(4);
  for (const auto& a : objs)
    for (const auto& b : objs) {
      CHECK(ez_chain_check(a, b).pass);
      CHECK(aw_check(a, b).pass);
      CHECK(unital_check(a, b).pass);
      CHECK(symmetry_check(a, b).pass);
    }
}

TEST_CASE("shuffle product gives the Kunneth isomorphism for the torus") {
  auto s = free_abelian(circle(3));
  auto cert = ez_homology_check(s, s);
  CHECK(cert.pass);
  auto nab = shuffle_product(s, s);
  auto h = homology(nab.target);
  CHECK(h[0] == AbelianGroupInvariants{1, {}});
  CHECK(h[1] == AbelianGroupInvariants{2, {}});
  CHECK(h[2] == AbelianGroupInvariants{1, {}});
  auto t = homotopy_groups(free_abelian(torus(3)));
  for (std::size_t k = 0; k < 3; ++k) CHECK(t[k] == h[k]);
}

TEST_CASE("overflow above the dimension bound") {
  auto a = free_abelian(standard_simplex(2, 3));
  CHECK_THROWS_AS(shuffle_product(a, a), Error);
  CHECK(shuffle_product(a, a, true).map.degrees() == 4);
}

TEST_CASE("associativity on generators") {
  auto objs = corpus(3);
  for (const auto& a : objs)
    for (const auto& b : objs)
      for (const auto& c : objs) CHECK(associativity_check(a, b, c).pass);
}

TEST_CASE("normalized shuffle product does not depend on the splitting") {
  std::mt19937 rng(7);
  for (int t = 0; t < 10; ++t) {
    auto a = free_abelian(testing::random_nerve(rng, 3));
    auto b = free_abelian(t % 2 ? circle(a.dim_bound()) : standard_simplex(1, a.dim_bound()));
    auto na = normalize(a), nb = normalize(b), nab = normalize(levelwise_tensor(a, b));
    auto perturb = [&](const SimplicialAbelianGroup& g, std::vector<SparseMatrix> s) {
      auto dspan = degenerate_span(g);
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (dspan[k].cols() == 0) continue;
        Matrix m = s[k].to_dense();
        for (std::size_t c = 0; c < m.cols(); ++c)
          for (std::size_t e = 0; e < dspan[k].cols(); ++e) {
            int coef = static_cast<int>(rng() % 5) - 2;
            for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) += coef * dspan[k](r, e);
          }
        s[k] = SparseMatrix::from_dense(m);
      }
      return s;
    };
    const std::size_t top = a.dim_bound();
    auto base = normalized_shuffle_components(a, b, na.section, nb.section, nab.projection, top);
    auto moved = normalized_shuffle_components(a, b, perturb(a, na.section), perturb(b, nb.section), nab.projection,
                                               top);
    CHECK(base == moved);
  }
}
