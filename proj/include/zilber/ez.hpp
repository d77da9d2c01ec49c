#pragma once

#include "zilber/certificate.hpp"
#include "zilber/chains.hpp"
#include "zilber/doldkan.hpp"
#include "zilber/simplicial.hpp"

#include <map>
#include <vector>

namespace zilber {

/// Evaluates sum_sigma sgn(sigma) sigma_-^* x (x) sigma_+^* y into (A (x) B)_{p+q},
/// caching the operator matrices per (p, q).
class ShuffleEngine {
 public:
  ShuffleEngine(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);

  SparseVec apply(std::size_t p, const SparseVec& x, std::size_t q, const SparseVec& y);

 private:
  struct Term {
    int sign;
    SparseMatrix first, second;
  };
  const std::vector<Term>& terms(std::size_t p, std::size_t q);

  const SimplicialAbelianGroup& a_;
  const SimplicialAbelianGroup& b_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> cache_;
};

/// C(A) (x) C(B) -> C(A (x) B) on source degrees <= dim_bound.
ChainMap unnormalized_shuffle_product(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);

/// Structure map N(A) (x) N(B) -> N(A (x) B).
struct LaxStructureMap {
  ChainComplex source;
  ChainComplex target;
  ChainMap map;
};

/// Components of pi_{AB} o nabla o (sigma_A (x) sigma_B) in degrees 0..top, for arbitrary
/// (not necessarily chain) splittings.
std::vector<Matrix> normalized_shuffle_components(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b,
                                                  const std::vector<SparseMatrix>& section_a,
                                                  const std::vector<SparseMatrix>& section_b,
                                                  const std::vector<SparseMatrix>& projection_ab, std::size_t top);

/// Throws ErrorCode::overflow when N(A) (x) N(B) is nonzero above dim_bound, unless allow_truncation.
LaxStructureMap shuffle_product(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b,
                                bool allow_truncation = false);

/// Front p-face (x) back q-face, N(A (x) B) -> N(A) (x) N(B) (degrees <= dim_bound).
ChainMap alexander_whitney(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);

/// d nabla = nabla d (unnormalized and normalized), AW nabla = id, degree-0 identity,
/// and unit laws against Z[point].
Certificate ez_chain_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);
Certificate aw_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);
Certificate unital_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);
/// nabla_{B,A} o swap = N(swap) o nabla_{A,B}, swap with the Koszul sign.
Certificate symmetry_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);
/// nabla o (nabla (x) id) = nabla o (id (x) nabla) on all generators x (x) y (x) z of total degree <= dim_bound.
Certificate associativity_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b,
                                const SimplicialAbelianGroup& c);
/// nabla is a quasi-isomorphism in degrees below dim_bound.
Certificate ez_homology_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);

}  // namespace zilber
