// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.
// Usage: acceptance [--criterion N]... [--seed S]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "support.hpp"
#include "zilber/doldkan.hpp"
#include "zilber/error.hpp"
#include "zilber/ez.hpp"
#include "zilber/filtration.hpp"
#include "zilber/promonoidal.hpp"
#include "zilber/simplicial.hpp"
#include "zilber/spectral.hpp"

using namespace zilber;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 3) failures.push_back(what);
  }
};

struct Named {
  std::string label;
  SimplicialSet (*make)(std::size_t);
};

SimplicialSet d0(std::size_t d) { return standard_simplex(0, d); }
SimplicialSet d1(std::size_t d) { return standard_simplex(1, d); }
SimplicialSet d2(std::size_t d) { return standard_simplex(2, d); }
SimplicialSet d3(std::size_t d) { return standard_simplex(3, d); }
SimplicialSet s1(std::size_t d) { return circle(d); }
SimplicialSet t2(std::size_t d) { return torus(d); }

const std::vector<Named> small_corpus{{"D0", d0}, {"D1", d1}, {"D2", d2}, {"S1", s1}};
const std::size_t small_dims[] = {0, 1, 2, 1};

// A random valid simplicial set of dimension bound <= 3: nerves, products, quotients and simplices.
SimplicialSet random_object(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0:
    case 1:
      return testing::random_nerve(rng, 4);
    case 2: {
      const std::size_t d = 1 + rng() % 2;
      const auto x = truncate(testing::random_nerve(rng, 2), d);
      return product(x, truncate(testing::random_nerve(rng, 2), d));
    }
    default: {
      const std::size_t d = 1 + rng() % 3;
      return rng() % 2 ? circle(d) : standard_simplex(rng() % 3, d);
    }
  }
}

// ---------------------------------------------------------------- 1

void simplicial_fuzz(Outcome& out, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + 1));
  std::size_t valid = 0, rejected = 0, attempts = 0;
  for (int t = 0; t < 500; ++t) {
    const SimplicialSet x = random_object(rng);
    bool ok = x.dim_bound() <= 3 && simplicial_identity_violation(x.sizes(), x.faces(), x.degeneracies()).empty();
    try {
      SimplicialSet rebuilt(x.dim_bound(), x.sizes(), x.faces(), x.degeneracies());
      ok = ok && rebuilt == x;
    } catch (const Error& e) {
      ok = false;
    }
    valid += ok;
    out.expect(ok, "valid object rejected");
  }
  while (rejected + (attempts - rejected) < 500) {
    const SimplicialSet x = testing::random_nerve(rng, 4);
    auto faces = x.faces();
    auto degs = x.degeneracies();
    const bool use_face = rng() % 2 == 0;
    const std::size_t k = use_face ? 1 + rng() % x.dim_bound() : rng() % x.dim_bound();
    auto& table = use_face ? faces[k][rng() % (k + 1)] : degs[k][rng() % (k + 1)];
    const std::size_t target = use_face ? x.size(k - 1) : x.size(k + 1);
    if (target < 2) continue;  // no other value to move the entry to
    const std::size_t pos = rng() % table.size();
    table[pos] = static_cast<std::uint32_t>((table[pos] + 1 + rng() % (target - 1)) % target);
    ++attempts;
    bool caught = false;
    try {
      SimplicialSet bad(x.dim_bound(), x.sizes(), faces, degs);
    } catch (const Error& e) {
      caught = e.code() == ErrorCode::validation;
    }
    rejected += caught;
    out.expect(caught, "corruption accepted");
  }
  out.note << valid << "/500 valid objects accepted, " << rejected << "/" << attempts << " corruptions rejected";
}

// ---------------------------------------------------------------- 2

void dold_kan(Outcome& out, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + 2));
  std::size_t chains = 0, groups = 0, table = 0;
  for (int t = 0; t < 100; ++t) {
    const auto c = testing::random_chain_complex(rng, 10, 1 + rng() % 3);
    const bool ok = normalize_gamma_roundtrip(c, 3).pass;
    chains += ok;
    out.expect(ok, "N(Gamma(C)) != C");
  }
  for (int t = 0; t < 50; ++t) {
    SimplicialAbelianGroup a = free_abelian(random_object(rng));
    if (t % 3 == 1) a = testing::random_change_basis(rng, a);
    if (t % 3 == 2) a = gamma(testing::random_chain_complex(rng, 6, 2), 3);
    const bool ok = gamma_normalize_roundtrip(a).pass;
    groups += ok;
    out.expect(ok, "Gamma(N(A)) != A");
  }
  for (std::size_t m = 0; m <= 5; ++m)
    for (std::size_t n = 0; n <= 5; ++n) {
      const std::size_t want = (n == m || n == m + 1) ? 1 : 0;
      const bool ok = chain_map_space_rank(disk(m), disk(n)) == want;
      table += ok;
      out.expect(ok, "rank Hom(D^" + std::to_string(m) + ", D^" + std::to_string(n) + ")");
    }
  out.note << chains << "/100 N(Gamma(C)), " << groups << "/50 Gamma(N(A)), " << table << "/36 Hom(D^m, D^n) ranks";
}

// ---------------------------------------------------------------- 3

void ez_certification(Outcome& out, std::uint64_t) {
  std::size_t pairs = 0, triples = 0;
  for (std::size_t i = 0; i < small_corpus.size(); ++i)
    for (std::size_t j = 0; j < small_corpus.size(); ++j) {
      const std::size_t d = std::max<std::size_t>(small_dims[i] + small_dims[j], 1);
      const auto a = free_abelian(small_corpus[i].make(d)), b = free_abelian(small_corpus[j].make(d));
      const std::string tag = small_corpus[i].label + "x" + small_corpus[j].label;
      bool ok = true;
      for (const auto& c : {ez_chain_check(a, b), aw_check(a, b), unital_check(a, b), symmetry_check(a, b)}) {
        ok = ok && c.pass;
        out.expect(c.pass, c.name + " on " + tag);
      }
      pairs += ok;
    }
  for (const auto& x : small_corpus)
    for (const auto& y : small_corpus)
      for (const auto& z : small_corpus) {
        const bool ok = associativity_check(free_abelian(x.make(2)), free_abelian(y.make(2)), free_abelian(z.make(2))).pass;
        triples += ok;
        out.expect(ok, "associativity on " + x.label + "x" + y.label + "x" + z.label);
      }
  out.note << pairs << "/16 pairs (chain map, AW o nabla = id, unital, symmetric), " << triples
           << "/64 triples associative through degree 2";
}

// ---------------------------------------------------------------- 4

void kunneth(Outcome& out, std::uint64_t) {
  const auto s = free_abelian(circle(3));
  const auto t = free_abelian(torus(3));
  const auto ht = homology(normalize(t).normalized);
  const auto nab = shuffle_product(s, s);
  const auto hs = homology(nab.source);
  const std::vector<AbelianGroupInvariants> want{{1, {}}, {2, {}}, {1, {}}};
  for (std::size_t k = 0; k < 3; ++k) {
    out.expect(ht[k] == want[k], "H_" + std::to_string(k) + "(N(Z[T]))");
    out.expect(hs[k] == want[k], "H_" + std::to_string(k) + "(N(Z[S1]) (x) N(Z[S1]))");
  }
  const auto iso = ez_homology_check(s, s);
  out.expect(iso.pass, "nabla is not a homology isomorphism");
  const auto via_product = homology(nab.target);
  for (std::size_t k = 0; k < 3; ++k) out.expect(via_product[k] == ht[k], "N(Z[S1 x S1]) differs from the torus");
  out.note << "H(N(Z[T])) = (" << ht[0].to_string() << ", " << ht[1].to_string() << ", " << ht[2].to_string()
           << ") = H(N(Z[S1]) (x) N(Z[S1])); nabla quasi-isomorphism " << (iso.pass ? "yes" : "no");
}

// ---------------------------------------------------------------- 5

void skeleta_products(Outcome& out, std::uint64_t) {
  std::size_t positive = 0, cases = 0;
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) {
      const std::size_t d = std::max<std::size_t>(a + b + 1, 1);
      const auto x = standard_simplex(a, d), y = standard_simplex(b, d);
      for (std::size_t n = a + b; n <= d; ++n) {
        ++cases;
        const bool ok = skeleton_product_check(x, y, a, b, n).pass;
        positive += ok;
        out.expect(ok, "D" + std::to_string(a) + "xD" + std::to_string(b) + " n=" + std::to_string(n));
      }
    }
  std::size_t witnesses = 0;
  const auto x = standard_simplex(2, 4);
  for (std::size_t n = 0; n < 4; ++n) {
    const auto c = skeleton_product_check(x, x, 2, 2, n);
    const bool ok = !c.pass && !c.witness.is_null();
    witnesses += ok;
    out.expect(ok, "no witness for D2xD2 at n=" + std::to_string(n));
  }
  out.note << positive << "/" << cases << " (a, b, n >= a+b) certified, " << witnesses
           << "/4 witnesses for D2xD2 with n < 4";
}

// ---------------------------------------------------------------- 6

void filtered_ez_suite(Outcome& out, std::uint64_t) {
  std::size_t ok_count = 0, cases = 0, iso = 0;
  auto run = [&](const SimplicialSet& x, const SimplicialSet& y, const std::string& tag) {
    ++cases;
    const auto c = filtered_ez_check(free_abelian(x), free_abelian(y));
    ok_count += c.pass;
    out.expect(c.pass, "filtered_ez on " + tag);
    const bool f0 = c.details.value("filtration0_isomorphism", false);
    iso += f0;
    out.expect(f0, "filtration-0 component not an isomorphism on " + tag);
  };
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) {
      const std::size_t d = std::max<std::size_t>(a + b, 1);
      run(standard_simplex(a, d), standard_simplex(b, d), "D" + std::to_string(a) + "xD" + std::to_string(b));
    }
  for (std::size_t a = 0; a <= 2; ++a) {
    const std::size_t d = a + 1;
    run(circle(d), standard_simplex(a, d), "S1xD" + std::to_string(a));
  }
  run(circle(2), circle(2), "S1xS1");
  out.note << ok_count << "/" << cases << " containment certificates, " << iso << "/" << cases
           << " filtration-0 isomorphisms";
}

// ---------------------------------------------------------------- 7

void heart(Outcome& out, std::uint64_t) {
  const std::vector<Named> xs{{"D1", d1}, {"D2", d2}, {"S1", s1}, {"S1xS1", t2}};
  std::size_t ok_count = 0;
  for (const auto& x : xs) {
    const auto c = heart_check(free_abelian(x.make(3)));
    ok_count += c.pass;
    out.expect(c.pass, "E_1 differs from N on " + x.label);
  }
  out.note << ok_count << "/4 spaces with (E_1, d_1) = N(Z[X])";
}

// ---------------------------------------------------------------- 8

void spectral(Outcome& out, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + 8));
  std::size_t ok_count = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t p_max = 1 + rng() % 4;
    const auto f = testing::random_filtration(rng, p_max, 1 + rng() % 3, 3 + rng() % 4);
    const auto c = spectral_check(compute_pages(f, p_max + 1));
    ok_count += c.pass;
    out.expect(c.pass, "spectral_check: " + c.witness.dump());
  }
  std::size_t leibniz = 0, pairings = 0;
  const std::vector<std::pair<Named, Named>> pairs{
      {{"D1", d1}, {"D1", d1}}, {{"D1", d1}, {"S1", s1}}, {{"S1", s1}, {"S1", s1}}, {{"D2", d2}, {"D1", d1}}};
  for (const auto& [x, y] : pairs) {
    const auto pairing = filtered_ez(free_abelian(x.make(3)), free_abelian(y.make(3)));
    for (std::size_t r = 1; r <= 3; ++r) {
      const auto sf = compute_pages(pairing.left(), r), sg = compute_pages(pairing.right(), r);
      const auto sh = compute_pages(pairing.target(), r);
      const auto pp = induced_pairing(pairing, sf, sg, sh, r);
      const bool ok = leibniz_check(pp).pass && pp.lift_independence.pass;
      ++pairings;
      leibniz += ok;
      out.expect(ok, "Leibniz on " + x.label + "x" + y.label + " page " + std::to_string(r));
    }
  }
  const auto e = free_abelian(standard_simplex(1, 3));
  const auto pairing = filtered_ez(e, e);
  const auto sf = compute_pages(pairing.left(), 1), sh = compute_pages(pairing.target(), 1);
  auto pp = induced_pairing(pairing, sf, sf, sh, 1);
  const PagePairing::Key key{1, 1, 0, 0};  // edge times vertex
  bool control = false;
  if (pp.products.count(key)) {
    pp.flip_sign(key, 0);
    control = !leibniz_check(pp).pass;
  }
  out.expect(control, "corrupted control passed the Leibniz check");
  out.note << ok_count << "/50 random filtrations (d^2 = 0, recursion, E_inf = gr H), " << leibniz << "/" << pairings
           << " Leibniz pairings, corrupted control " << (control ? "rejected" : "accepted");
}

// ---------------------------------------------------------------- 9

void promonoidal(Outcome& out, std::uint64_t) {
  const auto assoc = mu_associativity_check(3, 2, 3);
  out.expect(assoc.pass, "mu associativity: " + assoc.witness.dump());
  std::size_t colimits = 0;
  const std::vector<std::vector<std::size_t>> nss{{1, 1}, {2, 1}, {2, 2}};
  for (const auto& ns : nss) {
    const auto c = product_simplices_colimit_check(ns, {0, 1, 2, 3, 4, 5});
    colimits += c.pass;
    out.expect(c.pass, "product colimit " + nlohmann::json(ns).dump());
  }
  std::size_t dichotomy = 0, cases = 0;
  for (std::size_t n1 = 0; n1 <= 2; ++n1)
    for (std::size_t n2 = 0; n2 <= 2; ++n2)
      for (std::size_t b = 0; b <= 4; ++b) {
        ++cases;
        const auto c = left_kan_check({n1, n2}, b, {0, 1, 2, 3, 4});
        const bool ok = c.pass == (n1 + n2 <= b) && (c.pass || !c.witness.is_null());
        dichotomy += ok;
        out.expect(ok, "left Kan dichotomy at (" + std::to_string(n1) + ", " + std::to_string(n2) + ", " +
                           std::to_string(b) + ")");
      }
  out.note << "mu associativity " << (assoc.pass ? "certified" : "FAILED") << " on "
           << assoc.details.value("instances", 0) << " instances, " << colimits << "/3 product colimits (k <= 5), "
           << dichotomy << "/" << cases << " left Kan cases match sum n_i <= b";
}

// ---------------------------------------------------------------- 10

void day(Outcome& out, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + 10));
  std::size_t units = 0, sym = 0, assoc = 0;
  for (int t = 0; t < 20; ++t) {
    const auto f = testing::random_filtration(rng, 1 + rng() % 4, 1 + rng() % 3, 3 + rng() % 4);
    const bool ok = day_unit_check(f).pass;
    units += ok;
    out.expect(ok, "unit law");
  }
  for (int t = 0; t < 20; ++t) {
    const auto f = testing::random_filtration(rng, 1 + rng() % 3, 1 + rng() % 2, 4);
    const auto g = testing::random_filtration(rng, 1 + rng() % 2, 1 + rng() % 2, 3);
    const auto h = testing::random_filtration(rng, 1 + rng() % 2, 1, 3);
    const bool s = day_symmetry_check(f, g).pass, a = day_associativity_check(f, g, h).pass;
    sym += s;
    assoc += a;
    out.expect(s, "symmetry");
    out.expect(a, "associativity");
  }
  out.note << units << "/20 unit laws, " << sym << "/20 symmetric pairs, " << assoc << "/20 associative triples";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  std::uint64_t seed = 0;
  app.add_option("--criterion", only, "Run only these criteria (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--seed", seed, "Seed for the randomized criteria")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Outcome&, std::uint64_t)>>> criteria{
      {"simplicial identities fuzz", simplicial_fuzz},
      {"Dold-Kan round trips", dold_kan},
      {"Eilenberg-Zilber certification", ez_certification},
      {"Kunneth for the torus", kunneth},
      {"products of skeleta", skeleta_products},
      {"filtered Eilenberg-Zilber", filtered_ez_suite},
      {"heart identification", heart},
      {"spectral sequences and Leibniz", spectral},
      {"promonoidal suite", promonoidal},
      {"Day convolution laws", day},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out, seed);
    } catch (const std::exception& e) {
      out.pass = false;
      out.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && out.pass;
    std::printf("criterion %2d %s: %s: %s (%.1fs)\n", id, out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                out.note.str().c_str(), secs);
    for (const auto& f : out.failures) std::printf("    failure: %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
