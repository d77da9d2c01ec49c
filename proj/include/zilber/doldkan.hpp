#pragma once

#include "zilber/certificate.hpp"
#include "zilber/chains.hpp"
#include "zilber/simplicial.hpp"

#include <vector>

namespace zilber {

/// C_n = A_n with d = sum (-1)^i d_i.
ChainComplex unnormalized_chains(const SimplicialAbelianGroup& a);

/// N = C / D with D the span of the degeneracies, its projection and a splitting.
/// The splitting lands in the intersection of ker d_i, i >= 1, so it is a chain map.
struct NormalizationResult {
  ChainComplex normalized;                // empty when built without the complex
  std::vector<SparseMatrix> projection;  // per level, N_n x A_n
  std::vector<SparseMatrix> section;     // per level, A_n x N_n
  std::vector<std::size_t> ranks;        // rank N_n
  // True when the degeneracies are signed coordinate maps and N has the nondegenerate basis.
  bool coordinate_basis = false;
  // For coordinate_basis: the ambient index of each normalized basis vector, per degree.
  std::vector<std::vector<std::size_t>> basis_indices;
};

/// build_complex = false skips the dense normalized differentials (large products).
NormalizationResult normalize(const SimplicialAbelianGroup& a, bool build_complex = true);

/// Dense, validated chain maps C(A) -> N(A) and N(A) -> C(A).
ChainMap projection_map(const SimplicialAbelianGroup& a, const NormalizationResult& na);
ChainMap section_map(const SimplicialAbelianGroup& a, const NormalizationResult& na);

/// Degreewise span of the degenerate simplices, as generator columns.
std::vector<Matrix> degenerate_span(const SimplicialAbelianGroup& a);

/// Z in degrees n and n-1 with identity differential; D^0 is Z in degree 0.
ChainComplex disk(std::size_t n);

/// Level n has basis (eta : [n] ->> [k], e in basis of C_k), ordered by k, then eta, then e.
/// theta^*(eta, x) = (eta', eps^* x) where eta o theta = eps o eta'; eps^* is the identity,
/// the differential when eps = delta_0, and zero otherwise.
SimplicialAbelianGroup gamma(const ChainComplex& c, std::size_t dim_bound);

/// Gamma(D^n) truncated at dim_bound.
SimplicialAbelianGroup interval_object(std::size_t n, std::size_t dim_bound);

/// Homology of the normalized complex.
std::vector<AbelianGroupInvariants> homotopy_groups(const SimplicialAbelianGroup& a);

/// N(f) = pi_B f sigma_A for levelwise matrices f : A -> B.
ChainMap normalized_map(const NormalizationResult& na, const NormalizationResult& nb,
                        const std::vector<SparseMatrix>& f);

/// Levelwise matrices of Gamma(N(A)) -> A, (eta, x) |-> eta^* sigma(x).
std::vector<SparseMatrix> gamma_counit(const SimplicialAbelianGroup& a, const NormalizationResult& na);

/// N(Gamma(C)) = C on the nose (degrees <= dim_bound).
Certificate normalize_gamma_roundtrip(const ChainComplex& c, std::size_t dim_bound);
/// The comparison Gamma(N(A)) -> A is simplicial and levelwise unimodular.
Certificate gamma_normalize_roundtrip(const SimplicialAbelianGroup& a);

}  // namespace zilber
