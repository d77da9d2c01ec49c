#include "doctest.h"

#include "zilber/chains.hpp"
#include "zilber/error.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace zilber;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

long long det2(long long a, long long b, long long c, long long d) { return a * d - b * c; }

// Elements of Z^2 / span(B) for a nonsingular 2x2 B, by brute force: reduce a box of
// points to canonical representatives using Cramer's rule, then count x with k x = 0.
std::size_t killed_by(const Matrix& b, long long k) {
  const long long a11 = static_cast<long long>(b(0, 0)), a12 = static_cast<long long>(b(0, 1));
  const long long a21 = static_cast<long long>(b(1, 0)), a22 = static_cast<long long>(b(1, 1));
  const long long det = det2(a11, a12, a21, a22);
  const long long n = std::llabs(det);
  auto in_lattice = [&](long long x, long long y) {
    long long s = det2(x, a12, y, a22), t = det2(a11, x, a21, y);
    return s % det == 0 && t % det == 0;
  };
  // Z^2/B embeds into (Z/n)^2, so representatives live in [0, n)^2.
  std::vector<std::pair<long long, long long>> reps;
  for (long long x = 0; x < n; ++x)
    for (long long y = 0; y < n; ++y) {
      bool fresh = true;
      for (auto& [u, v] : reps)
        if (in_lattice(x - u, y - v)) {
          fresh = false;
          break;
        }
      if (fresh) reps.emplace_back(x, y);
    }
  std::size_t count = 0;
  for (auto& [u, v] : reps)
    if (in_lattice(k * u, k * v)) ++count;
  return count;
}

}  // namespace

TEST_CASE("smith normal form small cases") {
  CHECK(invariant_factors(Matrix{{2}}) == std::vector<Integer>{2});
  CHECK(invariant_factors(Matrix::identity(3)) == std::vector<Integer>{1, 1, 1});
  auto f = smith_normal_form(Matrix{{1, 1}, {1, 1}}, {.left = true, .right = true});
  CHECK(f.rank == 1);
  CHECK(f.diagonal == std::vector<Integer>{1});
  Matrix s = f.U * Matrix{{1, 1}, {1, 1}} * f.V;
  CHECK(s == Matrix{{1, 0}, {0, 0}});
}

TEST_CASE("smith transforms are unimodular inverses") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix a = random_matrix(rng, r, c, 6);
    auto f = smith_normal_form(a, {.left = true, .left_inverse = true, .right = true, .right_inverse = true});
    CHECK((f.U * f.U_inv).is_identity());
    CHECK((f.V * f.V_inv).is_identity());
    Matrix s = f.U * a * f.V;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (i == j && i < f.rank) {
          CHECK(s(i, j) == f.diagonal[i]);
          CHECK(s(i, j) > 0);
          if (i + 1 < f.rank) CHECK(f.diagonal[i + 1] % f.diagonal[i] == 0);
        } else {
          CHECK(s(i, j) == 0);
        }
      }
    CHECK(f.rank == rank(a));
  }
}

TEST_CASE("kernel and image bases") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix a = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 5, 4);
    Matrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == a.cols() - rank(a));
    Matrix im = image_basis(a);
    CHECK(im.cols() == rank(a));
    CHECK(spans_equal(im, a));
  }
}

TEST_CASE("homology of basic complexes") {
  auto h0 = homology(ChainComplex::concentrated(0, 1));
  CHECK(h0.size() == 1);
  CHECK(h0[0] == AbelianGroupInvariants{1, {}});
  ChainComplex two({1, 1}, {Matrix{{2}}});
  auto h = homology(two);
  CHECK(h[0] == AbelianGroupInvariants{0, {2}});
  CHECK(h[1].is_zero());
  CHECK(h[0].to_string() == "Z/2");
  // circle: one vertex, one edge with zero boundary
  ChainComplex circle({1, 1}, {Matrix{{0}}});
  auto hc = homology(circle);
  CHECK(hc[0] == AbelianGroupInvariants{1, {}});
  CHECK(hc[1] == AbelianGroupInvariants{1, {}});
  auto torus = homology(tensor(circle, circle));
  CHECK(torus[0].free_rank == 1);
  CHECK(torus[1].free_rank == 2);
  CHECK(torus[2].free_rank == 1);
}

TEST_CASE("chain complex rejects d^2 != 0") {
  CHECK_THROWS_AS(ChainComplex({1, 1, 1}, {Matrix{{1}}, Matrix{{1}}}), Error);
}

TEST_CASE("subquotient examples") {
  CHECK(subquotient_homology(Matrix::identity(2), Matrix::identity(2)).is_zero());
  Matrix b(2, 1);
  b(0, 0) = 2;
  auto g = subquotient_homology(Matrix::identity(2), b);
  CHECK(g.free_rank == 1);
  CHECK(g.torsion == std::vector<Integer>{2});
  Matrix bad(2, 1);
  bad(0, 0) = 1;
  Matrix z(2, 1);
  z(0, 0) = 2;
  CHECK_THROWS_AS(Subquotient(z, bad), Error);
}

TEST_CASE("subquotient torsion against coset enumeration") {
  std::mt19937 rng(3);
  int tested = 0;
  while (tested < 40) {
    Matrix b = random_matrix(rng, 2, 2, 5);
    long long det = static_cast<long long>(b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0));
    if (det == 0 || std::llabs(det) > 40) continue;
    ++tested;
    auto g = subquotient_homology(Matrix::identity(2), b);
    CHECK(g.free_rank == 0);
    Integer order = 1;
    for (auto& t : g.torsion) order *= t;
    CHECK(order == std::llabs(det));
    for (long long k = 1; k <= 12; ++k) {
      Integer expected = 1;
      for (auto& t : g.torsion) expected *= gcd(Integer(k), t);
      CHECK(Integer(killed_by(b, k)) == expected);
    }
  }
}

TEST_CASE("subquotient coordinates") {
  Matrix b(2, 1);
  b(0, 0) = 2;
  Subquotient q(Matrix::identity(2), b);
  Vector e0{1, 0}, e0x3{3, 0}, e1{0, 1};
  CHECK(q.coordinates(e0) == q.coordinates(e0x3));
  CHECK(!q.is_zero_class(e0));
  CHECK(q.is_zero_class(Vector{4, 0}));
  CHECK(!q.is_zero_class(e1));
}

TEST_CASE("homology is additive and Euler characteristic matches") {
  std::mt19937 rng(5);
  auto random_complex = [&](std::size_t top) {
    std::vector<std::size_t> ranks(top + 1);
    std::vector<Matrix> d;
    for (auto& r : ranks) r = 1 + rng() % 3;
    for (std::size_t n = 1; n <= top; ++n) {
      Matrix m(ranks[n - 1], ranks[n]);
      m(0, 0) = 1 + rng() % 3;
      d.push_back(m);
    }
    for (std::size_t n = 2; n <= top; ++n)
      if (!(d[n - 2] * d[n - 1]).is_zero()) d[n - 1](0, 0) = 0;
    return ChainComplex(ranks, d);
  };
  for (int trial = 0; trial < 30; ++trial) {
    ChainComplex a = random_complex(1 + rng() % 3);
    ChainComplex b = random_complex(1 + rng() % 3);
    auto ha = homology(a);
    CHECK(euler_characteristic(a) == euler_characteristic(ha));
    auto t = tensor(a, b);
    auto ht = homology(t);
    CHECK(euler_characteristic(t) == euler_characteristic(ht));
    CHECK(euler_characteristic(t) == euler_characteristic(a) * euler_characteristic(b));
  }
}

TEST_CASE("Hom(D^m, D^n) rank table") {
  auto disk = [](std::size_t n) {
    if (n == 0) return ChainComplex::concentrated(0, 1);
    std::vector<std::size_t> ranks(n + 1, 0);
    ranks[n] = ranks[n - 1] = 1;
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= n; ++k) d.emplace_back(ranks[k - 1], ranks[k]);
    d[n - 1](0, 0) = 1;
    return ChainComplex(ranks, d);
  };
  for (std::size_t m = 0; m <= 5; ++m)
    for (std::size_t n = 0; n <= 5; ++n)
      CHECK(chain_map_space_rank(disk(m), disk(n)) == ((n == m || n == m + 1) ? 1u : 0u));
}

TEST_CASE("tensor swap is a chain isomorphism") {
  ChainComplex c({2, 1}, {Matrix{{1}, {-1}}});
  ChainComplex d({1, 2, 1}, {Matrix{{0, 0}}, Matrix{{1}, {-1}}});
  auto cd = tensor(c, d), dc = tensor(d, c);
  auto sw = tensor_swap(c, d);
  ChainMap m(cd, dc, sw);
  CHECK(is_quasi_isomorphism(m));
}
