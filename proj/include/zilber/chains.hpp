#pragma once

#include "zilber/linalg.hpp"
#include "zilber/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zilber {

/// Finitely generated abelian group Z^free_rank + sum Z/t_i, torsion in divisibility order.
struct AbelianGroupInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;  // e.g. "Z^2 + Z/2"
  friend bool operator==(const AbelianGroupInvariants&, const AbelianGroupInvariants&) = default;
};

/// Canonicalizes a list of diagonal entries (zeros count as free summands, units dropped).
AbelianGroupInvariants invariants_from_diagonal(std::size_t generators, const std::vector<Integer>& nonzero_diagonal);

AbelianGroupInvariants direct_sum(const AbelianGroupInvariants& a, const AbelianGroupInvariants& b);

/// Nonnegatively graded complex of free Z-modules, truncated at top_degree.
/// differential(n) : degree n -> degree n-1, for 1 <= n <= top_degree.
class ChainComplex {
 public:
  ChainComplex() = default;
  // Throws ErrorCode::validation unless every d_{n} d_{n+1} = 0.
  ChainComplex(std::vector<std::size_t> ranks, std::vector<Matrix> differentials);

  static ChainComplex concentrated(std::size_t degree, std::size_t rank);

  std::size_t top_degree() const { return ranks_.empty() ? 0 : ranks_.size() - 1; }
  std::size_t rank(std::size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  std::size_t total_rank() const;
  // d_n; zero matrix for n == 0 or n > top_degree.
  Matrix differential(std::size_t n) const;
  const std::vector<Matrix>& differentials() const { return d_; }

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

 private:
  std::vector<std::size_t> ranks_;
  std::vector<Matrix> d_;  // d_[n-1] is d_n
};

/// Degreewise matrices f_n : source_n -> target_n for n <= degrees.
class ChainMap {
 public:
  ChainMap() = default;
  // Throws ErrorCode::validation unless the map commutes with differentials.
  ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components);

  static ChainMap identity(const ChainComplex& c);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  std::size_t degrees() const { return components_.size(); }
  const Matrix& component(std::size_t n) const { return components_.at(n); }

  // Index of the first degree where d f != f d, if any.
  static std::optional<std::size_t> first_noncommuting_degree(const ChainComplex& s, const ChainComplex& t,
                                                              const std::vector<Matrix>& f);

 private:
  ChainComplex source_, target_;
  std::vector<Matrix> components_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);

/// H_n for 0 <= n <= top_degree.
std::vector<AbelianGroupInvariants> homology(const ChainComplex& c);

/// Homomorphism between finitely presented groups Z^g / diag(orders): column c of
/// `matrix` is the image of source generator c in target coordinates. Order 0 = free.
struct PresentedMap {
  Matrix matrix;
  std::vector<Integer> source_orders;
  std::vector<Integer> target_orders;

  AbelianGroupInvariants kernel() const;
  AbelianGroupInvariants cokernel() const;
  bool is_isomorphism() const { return kernel().is_zero() && cokernel().is_zero(); }
};

/// ker(out) / im(in) for composable maps of presented groups.
AbelianGroupInvariants homology_at(const PresentedMap& in, const PresentedMap& out);

/// H_n(f) : H_n(source) -> H_n(target) in the generator presentations of Subquotient.
std::vector<PresentedMap> induced_on_homology(const ChainMap& f);
/// Checks degrees 0..max_degree (default: all common degrees).
bool is_quasi_isomorphism(const ChainMap& f, std::optional<std::size_t> max_degree = std::nullopt);

/// Block layout of a tensor product: degree n is the direct sum over p (descending)
/// of C_p (x) D_{n-p}; inside a block, basis index is i * rank D_{n-p} + j.
class TensorLayout {
 public:
  TensorLayout(std::vector<std::size_t> left_ranks, std::vector<std::size_t> right_ranks);

  std::size_t top_degree() const { return left_.size() + right_.size() - 2; }
  std::size_t rank(std::size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  // Offset of block (p, n - p) inside degree n; requires the block to exist.
  std::size_t offset(std::size_t n, std::size_t p) const;
  std::size_t index(std::size_t p, std::size_t i, std::size_t q, std::size_t j) const;
  // Inverse of index(): (p, i, q, j).
  struct Position {
    std::size_t p, i, q, j;
  };
  Position locate(std::size_t n, std::size_t idx) const;
  std::size_t left_rank(std::size_t p) const { return p < left_.size() ? left_[p] : 0; }
  std::size_t right_rank(std::size_t q) const { return q < right_.size() ? right_[q] : 0; }

 private:
  std::vector<std::size_t> left_, right_, ranks_;
  std::vector<std::vector<std::size_t>> offsets_;  // offsets_[n][p]
};

/// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy
ChainComplex tensor(const ChainComplex& c, const ChainComplex& d);

/// Tensor of chain maps, f (x) g (no Koszul sign: both are degree 0).
std::vector<Matrix> tensor_components(const ChainMap& f, const ChainMap& g);

/// Symmetry C (x) D -> D (x) C, x (x) y |-> (-1)^{|x||y|} y (x) x.
std::vector<Matrix> tensor_swap(const ChainComplex& c, const ChainComplex& d);

/// (C (x) D) (x) E -> C (x) (D (x) E), a permutation of basis vectors.
std::vector<Matrix> tensor_associator(const ChainComplex& c, const ChainComplex& d, const ChainComplex& e);

/// Keeps degrees <= top.
ChainComplex truncate(const ChainComplex& c, std::size_t top);

/// Z/B for lattices given by generator columns in a common ambient Z^N,
/// with a presentation: lifts of generators and a coordinate map.
class Subquotient {
 public:
  // Throws ErrorCode::containment unless span(b) is contained in span(z).
  Subquotient(const Matrix& z_generators, const Matrix& b_generators);

  const AbelianGroupInvariants& invariants() const { return invariants_; }
  std::size_t ambient_dimension() const { return ambient_; }
  // Generator lifts as columns (torsion generators first, then free ones).
  const Matrix& lifts() const { return lifts_; }
  std::size_t generator_count() const { return order_.size(); }
  // 0 for a free generator, t for a Z/t generator.
  const std::vector<Integer>& orders() const { return order_; }

  bool in_numerator(std::span<const Integer> y) const;
  // Coordinates of y in Z, reduced into [0, t) for torsion generators; nullopt if y is not in Z.
  std::optional<Vector> coordinates(std::span<const Integer> y) const;
  bool is_zero_class(std::span<const Integer> y) const;
  // Canonical reduction of a coordinate vector.
  Vector reduce(Vector coords) const;

 private:
  std::size_t ambient_ = 0;
  Matrix z_basis_;
  std::optional<LatticeSolver> z_solver_;
  Matrix u_;  // change of basis from z_basis_ coordinates to adapted coordinates
  std::vector<std::size_t> gen_index_;
  std::vector<Integer> order_;
  Matrix lifts_;
  AbelianGroupInvariants invariants_;
};

AbelianGroupInvariants subquotient_homology(const Matrix& z_generators, const Matrix& b_generators);

/// Rank of Hom_{Ch}(c, d) as a free Z-module: nullity of the chain-map equations.
std::size_t chain_map_space_rank(const ChainComplex& c, const ChainComplex& d);

/// Euler characteristic of ranks and of free ranks of homology.
long long euler_characteristic(const ChainComplex& c);
long long euler_characteristic(const std::vector<AbelianGroupInvariants>& h);

}  // namespace zilber
