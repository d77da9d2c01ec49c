#pragma once

#include "zilber/certificate.hpp"
#include "zilber/chains.hpp"
#include "zilber/simplicial.hpp"

#include <optional>
#include <vector>

namespace zilber {

/// Increasing subcomplexes F_0 ⊆ ... ⊆ F_pmax = ambient, each given by generator
/// columns per degree. F_p for p > p_max is the ambient, F_{-1} is zero.
class FilteredChainComplex {
 public:
  FilteredChainComplex() = default;
  // Throws ErrorCode::validation unless the stages are d-closed, nested and exhaust the ambient.
  FilteredChainComplex(ChainComplex ambient, std::vector<std::vector<Matrix>> stages);

  static FilteredChainComplex constant(const ChainComplex& c);
  // Z in degree 0, constant.
  static FilteredChainComplex unit();

  const ChainComplex& ambient() const { return ambient_; }
  std::size_t p_max() const { return stages_.size() - 1; }
  std::size_t top_degree() const { return ambient_.top_degree(); }
  // Generators of F_p in degree k (p may be negative or beyond p_max).
  Matrix stage(long p, std::size_t k) const;
  // Rank of F_p in each degree.
  std::vector<std::size_t> stage_ranks(long p) const;

  std::optional<std::string> violation() const;

 private:
  ChainComplex ambient_;
  std::vector<std::vector<Matrix>> stages_;  // stages_[p][k]
};

/// Stage n is the sum of F_p (x) G_q, p + q = n, inside the ambient tensor.
FilteredChainComplex day_convolution(const FilteredChainComplex& f, const FilteredChainComplex& g);

/// Stagewise equality of spans, with the ambients identified by the given degreewise matrices.
bool stages_equal(const FilteredChainComplex& f, const FilteredChainComplex& g,
                  const std::vector<Matrix>& identification);
bool stages_equal(const FilteredChainComplex& f, const FilteredChainComplex& g);

enum class ChainModel { normalized, unnormalized };

/// Stage p: the span of all degeneracy composites of simplices of level <= p.
FilteredChainComplex skeletal_filtration(const SimplicialAbelianGroup& a,
                                         ChainModel model = ChainModel::normalized);

/// gr_p = F_p / F_{p-1} as a complex of free modules, with ambient lifts of its basis.
struct GradedPiece {
  ChainComplex complex;
  std::vector<Matrix> lifts;  // per degree
};
/// Throws ErrorCode::validation if some quotient has torsion.
std::vector<GradedPiece> graded_pieces(const FilteredChainComplex& f);

/// m : F (x) G -> H with m(F_p (x) G_q) ⊆ H_{p+q}.
class FilteredPairing {
 public:
  // Throws ErrorCode::containment on a filtration violation.
  FilteredPairing(FilteredChainComplex f, FilteredChainComplex g, FilteredChainComplex h, ChainMap m);

  const FilteredChainComplex& left() const { return f_; }
  const FilteredChainComplex& right() const { return g_; }
  const FilteredChainComplex& target() const { return h_; }
  const ChainMap& map() const { return m_; }

  // m(x (x) y) for x in F of degree n and y in G of degree n'.
  Vector apply(std::size_t n, std::span<const Integer> x, std::size_t n2, std::span<const Integer> y) const;

 private:
  FilteredChainComplex f_, g_, h_;
  ChainMap m_;
};

/// First (p, q, degree, generator) with m(F_p (x) G_q) not inside H_{p+q}, if any.
std::optional<nlohmann::json> pairing_violation(const FilteredChainComplex& f, const FilteredChainComplex& g,
                                                const FilteredChainComplex& h, const ChainMap& m);

/// The shuffle product between skeletal filtrations.
FilteredPairing filtered_ez(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b,
                            ChainModel model = ChainModel::normalized);
/// Containment for every (p, q), image and target ranks per (p, q), and the filtration-0 isomorphism.
Certificate filtered_ez_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b,
                              ChainModel model = ChainModel::normalized);

/// F ⊛ 1 = F = 1 ⊛ F stagewise.
Certificate day_unit_check(const FilteredChainComplex& f);
Certificate day_symmetry_check(const FilteredChainComplex& f, const FilteredChainComplex& g);
Certificate day_associativity_check(const FilteredChainComplex& f, const FilteredChainComplex& g,
                                    const FilteredChainComplex& h);

}  // namespace zilber
