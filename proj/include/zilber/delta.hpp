#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace zilber {

/// A morphism [domain_top] -> [codomain_top] of the simplex category, as its value sequence.
struct MonotoneMap {
  std::size_t domain_top = 0;
  std::size_t codomain_top = 0;
  std::vector<std::size_t> values;

  MonotoneMap() : values{0} {}
  // Throws ErrorCode::invalid_argument unless values is nondecreasing and bounded.
  MonotoneMap(std::size_t codomain, std::vector<std::size_t> values);

  static MonotoneMap identity(std::size_t n);
  // delta_i : [n-1] -> [n], skipping i.
  static MonotoneMap coface(std::size_t n, std::size_t i);
  // sigma_i : [n+1] -> [n], hitting i twice.
  static MonotoneMap codegeneracy(std::size_t n, std::size_t i);
  static MonotoneMap constant(std::size_t m, std::size_t n, std::size_t value);

  std::size_t operator()(std::size_t i) const { return values.at(i); }
  bool is_injective() const;
  bool is_surjective() const;
  bool is_identity() const { return domain_top == codomain_top && is_injective(); }
  std::string to_string() const;

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
  friend auto operator<=>(const MonotoneMap& a, const MonotoneMap& b) {
    if (auto c = a.domain_top <=> b.domain_top; c != 0) return c;
    if (auto c = a.codomain_top <=> b.codomain_top; c != 0) return c;
    return a.values <=> b.values;
  }
};

/// g o f
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All of Hom([m], [n]) in lexicographic order of value sequences.
std::vector<MonotoneMap> enumerate_monotone(std::size_t m, std::size_t n);
/// Surjections [m] ->> [k], lexicographic.
std::vector<MonotoneMap> enumerate_surjections(std::size_t m, std::size_t k);
/// Position of f in enumerate_monotone(f.domain_top, f.codomain_top).
std::size_t monotone_rank(const MonotoneMap& f);
MonotoneMap monotone_unrank(std::size_t m, std::size_t n, std::size_t rank);

struct EpiMono {
  MonotoneMap epi;   // [m] ->> [k]
  MonotoneMap mono;  // [k] >-> [n]
};
/// f = mono o epi with image(mono) = image(f).
EpiMono epi_mono_factorize(const MonotoneMap& f);

/// One face or degeneracy operator of a simplicial object.
struct SimplicialOp {
  enum Kind : std::uint8_t { face, degeneracy } kind;
  std::size_t index;
  friend bool operator==(const SimplicialOp&, const SimplicialOp&) = default;
};

/// Word computing theta^* : X_n -> X_m, in application order (first element applied first).
/// Faces come first, then degeneracies.
std::vector<SimplicialOp> operator_word(const MonotoneMap& theta);

/// A (p,q)-shuffle: a strictly monotone path [p+q] -> [p] x [q] from (0,0) to (p,q).
struct Shuffle {
  std::size_t p = 0, q = 0;
  std::vector<std::size_t> first_steps;  // positions t in {1..p+q} where the first coordinate increases
  int sign = 1;

  MonotoneMap first() const;   // the projection [p+q] ->> [p]
  MonotoneMap second() const;  // the projection [p+q] ->> [q]
  // Permutation of {0..p+q-1}: position t-1 carries letter (first letters 0..p-1, second letters p..p+q-1).
  std::vector<std::size_t> permutation() const;
};

/// All (p,q)-shuffles, lexicographic in first_steps.
std::vector<Shuffle> shuffles(std::size_t p, std::size_t q);

int permutation_parity(const std::vector<std::size_t>& perm);
/// Sign as the product over pairs (i in I_-, j in I_+) with i > j of -1.
int shuffle_sign_by_product(const Shuffle& s);

using PosetPoint = std::vector<std::size_t>;
using PosetChain = std::vector<PosetPoint>;

bool product_leq(const PosetPoint& a, const PosetPoint& b);

/// All monotone maps [m] -> prod_i [ns_i] (nondecreasing sequences of points), lexicographic.
std::vector<PosetChain> poset_maps(const std::vector<std::size_t>& ns, std::size_t m);
/// Strictly monotone maps [k] -> prod_i [ns_i], lexicographic.
std::vector<PosetChain> product_nondegenerate(const std::vector<std::size_t>& ns, std::size_t k);

}  // namespace zilber
