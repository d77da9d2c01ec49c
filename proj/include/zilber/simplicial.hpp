#pragma once

#include "zilber/certificate.hpp"
#include "zilber/delta.hpp"
#include "zilber/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zilber {

using IndexMap = std::vector<std::uint32_t>;

/// Simplicial set truncated at dim_bound D: levels 0..D with face maps d_i : X_k -> X_{k-1}
/// (1 <= k <= D, i <= k) and degeneracies s_i : X_k -> X_{k+1} (k < D, i <= k).
class SimplicialSet {
 public:
  SimplicialSet() = default;
  // faces[k][i] for k >= 1 (faces[0] empty); degeneracies[k][i] for k < D.
  // Throws ErrorCode::validation on any violated simplicial identity.
  SimplicialSet(std::size_t dim_bound, std::vector<std::size_t> sizes, std::vector<std::vector<IndexMap>> faces,
                std::vector<std::vector<IndexMap>> degeneracies, std::vector<std::vector<std::string>> labels = {});

  std::size_t dim_bound() const { return sizes_.size() - 1; }
  std::size_t size(std::size_t k) const { return sizes_.at(k); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::uint32_t face(std::size_t k, std::size_t i, std::uint32_t x) const { return faces_[k][i][x]; }
  std::uint32_t degeneracy(std::size_t k, std::size_t i, std::uint32_t x) const { return degens_[k][i][x]; }
  const std::vector<std::vector<IndexMap>>& faces() const { return faces_; }
  const std::vector<std::vector<IndexMap>>& degeneracies() const { return degens_; }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }

  bool is_degenerate(std::size_t k, std::uint32_t x) const { return degenerate_[k][x]; }
  std::vector<std::uint32_t> nondegenerate(std::size_t k) const;
  std::vector<std::size_t> nondegenerate_counts() const;
  // Dimension of the unique nondegenerate simplex x is a degeneracy of.
  std::size_t root_dimension(std::size_t k, std::uint32_t x) const;
  // Largest level carrying a nondegenerate simplex.
  std::size_t skeletal_dimension() const { return skeletal_dim_; }

  // theta^* x for theta : [m] -> [n] and x in X_n.
  std::uint32_t apply(const MonotoneMap& theta, std::uint32_t x) const;

  friend bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    return a.sizes_ == b.sizes_ && a.faces_ == b.faces_ && a.degens_ == b.degens_;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<IndexMap>> faces_, degens_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<bool>> degenerate_;
  std::vector<std::vector<std::uint32_t>> root_dim_;
  std::size_t skeletal_dim_ = 0;
};

/// Empty string when the data satisfies every identity, else a description of the first failure.
std::string simplicial_identity_violation(const std::vector<std::size_t>& sizes,
                                          const std::vector<std::vector<IndexMap>>& faces,
                                          const std::vector<std::vector<IndexMap>>& degeneracies);

/// Delta^n: level k is Hom([k],[n]) in enumeration order.
SimplicialSet standard_simplex(std::size_t n, std::size_t dim_bound);
SimplicialSet point(std::size_t dim_bound);
/// Nerve of a finite poset given by its order relation leq[a][b] (must be reflexive, transitive, antisymmetric).
SimplicialSet nerve(const std::vector<std::vector<bool>>& leq, std::size_t dim_bound);

/// Levelwise product; (x, y) has index x * |Y_k| + y.
SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y);

/// Sub-simplicial set given by membership flags per level, with its inclusion.
struct Subobject {
  SimplicialSet set;
  std::vector<IndexMap> inclusion;  // inclusion[k][local] = ambient index
};
Subobject restrict_to(const SimplicialSet& x, const std::vector<std::vector<bool>>& members);
std::vector<std::vector<bool>> skeleton_members(const SimplicialSet& x, std::size_t n);
Subobject skeleton(const SimplicialSet& x, std::size_t n);

/// X / A for a nonempty sub-simplicial set A: A collapses to a point, indexed last at each level.
SimplicialSet collapse(const SimplicialSet& x, const std::vector<std::vector<bool>>& a);
/// Delta^1 / boundary.
SimplicialSet circle(std::size_t dim_bound);
SimplicialSet torus(std::size_t dim_bound);

/// (i) sk_p X x sk_q Y inside sk_n(X x Y), (ii) sk_p X x sk_q Y is n-skeletal.
Certificate skeleton_product_check(const SimplicialSet& x, const SimplicialSet& y, std::size_t p, std::size_t q,
                                   std::size_t n);

/// Levelwise maps commuting with all faces and degeneracies.
class SimplicialMap {
 public:
  SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<IndexMap> levels);
  static SimplicialMap induced(const MonotoneMap& theta, std::size_t dim_bound);  // Delta^m -> Delta^n

  const SimplicialSet& source() const { return source_; }
  const SimplicialSet& target() const { return target_; }
  const IndexMap& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<IndexMap>& levels() const { return levels_; }

 private:
  SimplicialSet source_, target_;
  std::vector<IndexMap> levels_;
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// Bisimplicial set truncated at D in both directions: B_{k,r} with horizontal operators on k
/// and vertical operators on r.
class BiSimplicialSet {
 public:
  // rows[r] is the horizontal simplicial set B_{*,r}; columns[k] is the vertical one B_{k,*}.
  // Throws ErrorCode::validation unless the sizes agree and the two directions commute.
  BiSimplicialSet(std::vector<SimplicialSet> rows, std::vector<SimplicialSet> columns);

  std::size_t dim_bound() const { return rows_.size() - 1; }
  std::size_t size(std::size_t k, std::size_t r) const { return rows_[r].size(k); }
  const SimplicialSet& row(std::size_t r) const { return rows_[r]; }
  const SimplicialSet& column(std::size_t k) const { return columns_[k]; }

 private:
  std::vector<SimplicialSet> rows_, columns_;
};

/// X_k x Y_r, index x * |Y_r| + y.
BiSimplicialSet external_product(const SimplicialSet& x, const SimplicialSet& y);
/// Constant in the vertical direction.
BiSimplicialSet vertically_constant(const SimplicialSet& x);
SimplicialSet diagonal(const BiSimplicialSet& b);

/// Levelwise free abelian groups Z^{r_k} with integer face and degeneracy matrices.
class SimplicialAbelianGroup {
 public:
  SimplicialAbelianGroup() = default;
  // Throws ErrorCode::validation on any violated identity.
  SimplicialAbelianGroup(std::size_t dim_bound, std::vector<std::size_t> ranks,
                         std::vector<std::vector<SparseMatrix>> faces,
                         std::vector<std::vector<SparseMatrix>> degeneracies);

  std::size_t dim_bound() const { return ranks_.size() - 1; }
  std::size_t rank(std::size_t k) const { return ranks_.at(k); }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const SparseMatrix& face(std::size_t k, std::size_t i) const { return faces_[k][i]; }
  const SparseMatrix& degeneracy(std::size_t k, std::size_t i) const { return degens_[k][i]; }
  const std::vector<std::vector<SparseMatrix>>& faces() const { return faces_; }
  const std::vector<std::vector<SparseMatrix>>& degeneracies() const { return degens_; }

  // theta^* : A_n -> A_m.
  SparseMatrix apply(const MonotoneMap& theta) const;
  // True when every degeneracy matrix sends basis vectors to signed basis vectors.
  bool degeneracies_monomial() const;

  friend bool operator==(const SimplicialAbelianGroup&, const SimplicialAbelianGroup&) = default;

 private:
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<SparseMatrix>> faces_, degens_;
};

std::string simplicial_identity_violation(const std::vector<std::size_t>& ranks,
                                          const std::vector<std::vector<SparseMatrix>>& faces,
                                          const std::vector<std::vector<SparseMatrix>>& degeneracies);

SimplicialAbelianGroup free_abelian(const SimplicialSet& x);
/// Levelwise matrices of Z[f].
std::vector<SparseMatrix> free_abelian(const SimplicialMap& f);
/// Levelwise tensor product A (x) B, basis a * rank B_k + b.
SimplicialAbelianGroup levelwise_tensor(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);
/// Levelwise swap A (x) B -> B (x) A.
std::vector<SparseMatrix> levelwise_swap(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b);
SimplicialAbelianGroup truncate(const SimplicialAbelianGroup& a, std::size_t dim_bound);
SimplicialSet truncate(const SimplicialSet& x, std::size_t dim_bound);

/// First level where the matrices fail to commute with some face or degeneracy.
std::optional<std::string> simplicial_map_violation(const SimplicialAbelianGroup& source,
                                                    const SimplicialAbelianGroup& target,
                                                    const std::vector<SparseMatrix>& levels);

}  // namespace zilber
