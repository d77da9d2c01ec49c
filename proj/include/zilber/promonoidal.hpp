#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zilber/certificate.hpp"
#include "zilber/delta.hpp"

namespace zilber {

/// A category with finitely many objects and morphisms.
/// Table categories store composition explicitly; products compose componentwise.
class FiniteCategory {
 public:
  struct Morphism {
    std::size_t source = 0, target = 0;
    std::string label;
  };

  FiniteCategory();  // the terminal category
  // composition[g][f] is g o f, or -1 when target(f) != source(g). Validates unit and
  // associativity laws. An empty generator list means every non-identity morphism.
  FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                 std::vector<std::size_t> identities,
                 std::vector<std::vector<std::ptrdiff_t>> composition,
                 std::vector<std::size_t> generators = {});

  static FiniteCategory discrete(std::size_t n);
  /// leq must be a partial order on {0..n-1}.
  static FiniteCategory poset(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq,
                              std::vector<std::string> names = {});
  /// Delta restricted to [0..b], generated by cofaces and codegeneracies.
  static FiniteCategory simplex(std::size_t b);
  static FiniteCategory product(const FiniteCategory& a, const FiniteCategory& b);
  FiniteCategory opposite() const;

  std::size_t object_count() const;
  std::size_t morphism_count() const;
  std::string object_name(std::size_t c) const;
  std::size_t source(std::size_t f) const;
  std::size_t target(std::size_t f) const;
  std::string label(std::size_t f) const;
  std::size_t identity(std::size_t c) const;
  bool composable(std::size_t g, std::size_t f) const { return target(f) == source(g); }
  std::size_t compose(std::size_t g, std::size_t f) const;
  std::vector<std::size_t> hom(std::size_t a, std::size_t b) const;
  /// Position of f inside hom(source(f), target(f)).
  std::size_t hom_position(std::size_t f) const;
  std::size_t hom_at(std::size_t a, std::size_t b, std::size_t position) const;
  std::size_t hom_size(std::size_t a, std::size_t b) const;
  const std::vector<std::size_t>& generators() const;

  bool is_product() const;
  const FiniteCategory& left_factor() const;
  const FiniteCategory& right_factor() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit FiniteCategory(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

/// Morphism index of a Delta map inside FiniteCategory::simplex(b) (and its opposite).
std::size_t simplex_index(std::size_t b, const MonotoneMap& f);
MonotoneMap simplex_map(std::size_t b, std::size_t index);

/// A functor P: C^op x D -> Set with finite values {0..size-1}.
class SetProfunctor {
 public:
  // left(f, d, x): f: c' -> c in C, x in P(c,d), result in P(c',d).
  // right(g, c, x): g: d -> d' in D, x in P(c,d), result in P(c,d').
  using Action = std::function<std::size_t(std::size_t, std::size_t, std::size_t)>;

  SetProfunctor(FiniteCategory source, FiniteCategory target, std::vector<std::size_t> sizes,
                Action left, Action right);
  // left[f][d] and right[g][c] as explicit maps. Validated.
  static SetProfunctor tabulated(FiniteCategory source, FiniteCategory target,
                                 std::vector<std::size_t> sizes,
                                 std::vector<std::vector<std::vector<std::size_t>>> left,
                                 std::vector<std::vector<std::vector<std::size_t>>> right);
  static SetProfunctor hom(const FiniteCategory& c);

  const FiniteCategory& source() const { return source_; }
  const FiniteCategory& target() const { return target_; }
  std::size_t size(std::size_t c, std::size_t d) const { return sizes_.at(c * target_.object_count() + d); }
  std::size_t left(std::size_t f, std::size_t d, std::size_t x) const { return left_(f, d, x); }
  std::size_t right(std::size_t g, std::size_t c, std::size_t x) const { return right_(g, c, x); }
  std::vector<std::size_t> left_table(std::size_t f, std::size_t d) const;
  std::vector<std::size_t> right_table(std::size_t g, std::size_t c) const;

  /// First failure of range, identity, functoriality or commutation of the actions.
  std::optional<nlohmann::json> violation() const;

 private:
  FiniteCategory source_, target_;
  std::vector<std::size_t> sizes_;
  Action left_, right_;
};

/// Quotient of a disjoint union by an equivalence relation. Classes are numbered by their
/// smallest member; the smallest member is the representative.
struct QuotientSet {
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representatives;
  std::size_t size() const { return representatives.size(); }
};

/// Union-find collecting relations; a nonzero seed shuffles element ids and relation order.
class QuotientBuilder {
 public:
  explicit QuotientBuilder(std::size_t n, std::uint64_t seed = 0);
  void relate(std::size_t a, std::size_t b);
  QuotientSet finish();

 private:
  std::size_t n_;
  std::uint64_t seed_;
  std::vector<std::size_t> rank_, parent_, perm_;
  std::vector<std::pair<std::size_t, std::size_t>> pending_;
};

/// Coend of F: C^op x C -> Set. Elements of the disjoint union are ordered by object, then
/// by element; offsets[c] is the position of F(c,c) in that order.
struct CoendSet {
  QuotientSet quotient;
  std::vector<std::size_t> offsets;
  std::size_t size() const { return quotient.size(); }
  std::size_t class_of(std::size_t c, std::size_t x) const { return quotient.class_of[offsets[c] + x]; }
  std::pair<std::size_t, std::size_t> representative(std::size_t k) const;
};

CoendSet coend_set(const SetProfunctor& f, std::uint64_t shuffle_seed = 0);

/// Q o P for P: C -/-> D and Q: D -/-> E, (Q o P)(c,e) = coend over d of P(c,d) x Q(d,e).
/// Element x of P(c,d) x Q(d,e) is encoded as p * |Q(d,e)| + q.
struct ProfunctorComposite {
  SetProfunctor profunctor;
  std::vector<CoendSet> coends;  // [c * |E| + e]
};
ProfunctorComposite compose_with_coends(const SetProfunctor& p, const SetProfunctor& q,
                                        std::uint64_t shuffle_seed = 0);
SetProfunctor compose_profunctors(const SetProfunctor& p, const SetProfunctor& q);
/// Canonical maps P -> Hom o P and P -> P o Hom are bijections.
Certificate coyoneda_check(const SetProfunctor& p);

struct PromonoidalData {
  FiniteCategory base;
  SetProfunctor mu;   // base x base -/-> base
  SetProfunctor eta;  // point -/-> base
  // "delta_op" and "point" have a concrete model used to compose in the operator category.
  std::string model;
  std::size_t bound = 0;
};

/// Delta^op truncated at [b], mu([p],[q];[n]) = Hom_PoSet([n],[p]x[q]), eta = Hom_PoSet(-,[0]).
/// mu element index: rank(first) * |Hom([n],[q])| + rank(second).
PromonoidalData delta_op_promonoidal(std::size_t b);
PromonoidalData point_promonoidal();

/// n-ary mu with fixed inputs, defined inductively as mu o (1 x mu) (right) or mu o (mu x 1)
/// (left), for every output object. Coends over base x base are computed iteratively.
class NaryMu {
 public:
  enum class Nesting { right, left };
  // An element of the coend for arity >= 3: objects d1, d2, slot elements and a mu element.
  // Right nesting: slot1 indexes hom(c_1, d1), slot2 is a class of the (n-1)-ary mu at d2.
  // Left nesting: slot1 is a class of the (n-1)-ary mu at d1, slot2 indexes hom(c_n, d2).
  struct Element {
    std::size_t d1 = 0, d2 = 0, slot1 = 0, slot2 = 0, mu = 0;
  };

  NaryMu(const PromonoidalData& data, std::vector<std::size_t> inputs, Nesting nesting = Nesting::right,
         std::uint64_t shuffle_seed = 0);
  NaryMu(std::shared_ptr<const PromonoidalData> data, std::vector<std::size_t> inputs, Nesting nesting,
         std::uint64_t shuffle_seed);

  const std::vector<std::size_t>& inputs() const { return inputs_; }
  Nesting nesting() const { return nesting_; }
  std::size_t arity() const { return inputs_.size(); }
  std::size_t size(std::size_t output) const;
  /// Covariant action of g: o -> o' on class k of the value at o.
  std::size_t act(std::size_t g, std::size_t k) const;
  std::size_t act_at(std::size_t g, std::size_t output, std::size_t k) const;
  /// Representative of class k at output (arity >= 3 only).
  Element representative(std::size_t output, std::size_t k) const;
  /// Class of an arbitrary element (arity >= 3 only).
  std::size_t class_of(std::size_t output, const Element& e) const;
  /// Up to limit members of class k, representative first (arity >= 3 only).
  std::vector<Element> members(std::size_t output, std::size_t k, std::size_t limit) const;
  const NaryMu& compound() const { return *compound_; }
  const PromonoidalData& data() const { return *data_; }

  // Iterated coend stages, exposed for well-definedness checks.
  // inner(dc, o): coend over the single-input variable; element (ds, h, z) at offset(ds) + h*|mu|+z.
  // outer(o): coend over the compound variable; element (dc, y, k) at offset(dc) + y*|inner|+k.
  const CoendSet& inner(std::size_t dc, std::size_t output) const;
  const CoendSet& outer(std::size_t output) const;

 private:
  std::shared_ptr<const PromonoidalData> data_;
  std::vector<std::size_t> inputs_;
  Nesting nesting_;
  std::shared_ptr<const NaryMu> compound_;
  std::vector<CoendSet> inner_;  // [dc * N + o]
  std::vector<CoendSet> outer_;  // [o]
  std::size_t single_input() const;
  std::size_t mu_object(std::size_t ds, std::size_t dc) const;
  std::size_t mu_slot_morphism(std::size_t f, std::size_t other_object) const;  // f in the compound slot
  std::size_t mu_single_morphism(std::size_t f, std::size_t other_object) const;
};

std::vector<std::size_t> nary_mu_sizes(const PromonoidalData& data, const std::vector<std::size_t>& inputs);

/// Value of a class of the n-ary Delta^op mu as a monotone map [output] -> prod [c_i].
PosetChain evaluate_delta_mu(const NaryMu& mu, std::size_t output, std::size_t k);
PosetChain evaluate_delta_element(const NaryMu& mu, std::size_t output, const NaryMu::Element& e);

/// mu o (1 x mu) and mu o (mu x 1) both biject onto Hom_PoSet([n], [p]x[q]x[r]).
Certificate mu_associativity_check(std::size_t b, std::size_t entry_max, std::size_t output_max);
/// mu(eta, c; c') and mu(c, eta; c') biject onto Hom(c, c').
Certificate mu_unit_check(std::size_t b);

/// Mul_{Delta^op}({[n_i]}, [m]) = Map_PoSet([m], prod [n_i]).
std::vector<PosetChain> mul_delta(const std::vector<std::size_t>& ns, std::size_t m);
/// Multimorphisms of N x| Delta^op_{<=*}: empty when sum a_i > b.
std::vector<PosetChain> mul_nn_delta(const std::vector<std::size_t>& a_list, const std::vector<std::size_t>& n_list,
                                     std::size_t b, std::size_t m);

/// Lan along Delta^op_{<=b} -> Delta^op of prod_i Hom([n_i], -) at [m], for m in m_range.
Certificate left_kan_check(const std::vector<std::size_t>& ns, std::size_t b, const std::vector<std::size_t>& m_range);
/// colim over Delta^inj_{/P} of Delta^sigma at level k vs Hom_PoSet([k], P), plus initial objects.
Certificate product_simplices_colimit_check(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& k_range);

/// Tuples of length |a_list| with sum <= b under the product order.
FiniteCategory arrow_fiber_nn(const std::vector<std::size_t>& a_list, std::size_t b);

/// Objects: sequences of base objects of length <= N. A morphism is a pointed map
/// <m> -> <n> (-1 is the base point) with one mu class per target entry; the inputs of
/// entry j are the source entries mapping to j, in increasing order.
struct OperatorMorphism {
  std::vector<std::size_t> source, target;
  std::vector<long> map;
  std::vector<std::size_t> components;
  friend bool operator==(const OperatorMorphism&, const OperatorMorphism&) = default;
};

class OperatorCategoryFragment {
 public:
  OperatorCategoryFragment(PromonoidalData data, std::size_t max_length);

  std::size_t max_length() const { return max_length_; }
  std::vector<std::vector<std::size_t>> objects() const;
  std::size_t hom_count(const std::vector<std::size_t>& source, const std::vector<std::size_t>& target) const;
  OperatorMorphism identity(const std::vector<std::size_t>& object) const;
  /// g o f, composed through representatives; a nonzero seed uses random class members instead.
  OperatorMorphism compose(const OperatorMorphism& g, const OperatorMorphism& f, std::uint64_t member_seed = 0) const;
  OperatorMorphism random_morphism(std::mt19937_64& rng, const std::vector<std::size_t>& source,
                                   std::size_t target_length, std::size_t entry_max) const;
  /// Associativity, unit laws and representative independence on sampled triples.
  /// Objects are drawn with entries <= entry_max.
  Certificate associativity_check(std::uint64_t seed, std::size_t samples, std::size_t entry_max) const;
  const NaryMu& mu(const std::vector<std::size_t>& inputs) const;

 private:
  PromonoidalData data_;
  std::size_t max_length_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<std::size_t>, std::shared_ptr<NaryMu>> cache_;
  mutable std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::map<PosetChain, std::size_t>> inverse_;
  std::size_t component_size(const std::vector<std::size_t>& inputs, std::size_t output) const;
  PosetChain evaluate_member(const std::vector<std::size_t>& inputs, std::size_t output, std::size_t k,
                             std::mt19937_64* rng) const;
  std::size_t class_of_chain(const std::vector<std::size_t>& inputs, std::size_t output, const PosetChain& chain) const;
};

OperatorCategoryFragment operator_category_fragment(const PromonoidalData& data, std::size_t max_length);

}  // namespace zilber
