#include "zilber/zilber.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "zilber/doldkan.hpp"
#include "zilber/error.hpp"
#include "zilber/ez.hpp"
#include "zilber/filtration.hpp"
#include "zilber/io.hpp"
#include "zilber/json_util.hpp"
#include "zilber/promonoidal.hpp"
#include "zilber/simplicial.hpp"
#include "zilber/spectral.hpp"

struct zilber_sset {
  zilber::SimplicialSet value;
};
struct zilber_chain {
  zilber::ChainComplex value;
};
struct zilber_filt {
  zilber::FilteredChainComplex value;
};
struct zilber_ss {
  zilber::SpectralSequence value;
};

namespace {

using nlohmann::json;
using zilber::Certificate;
using zilber::ErrorCode;

thread_local std::string last_error;

zilber_status to_status(ErrorCode c) { return static_cast<zilber_status>(static_cast<int>(c)); }

template <class F>
zilber_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return ZILBER_OK;
  } catch (const zilber::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return ZILBER_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ZILBER_OVERFLOW;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return ZILBER_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ZILBER_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return ZILBER_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  zilber::require(p != nullptr, ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) {
  need(out, "output pointer");
  *out = copy_string(j.dump());
}

void emit_certificate(const Certificate& c, char** report, int* pass) {
  need(report, "report pointer");
  need(pass, "pass pointer");
  *report = copy_string(c.to_json().dump());
  *pass = c.pass ? 1 : 0;
}

template <class H, class V>
void emit_handle(V&& value, H** out) {
  need(out, "output pointer");
  *out = new H{std::forward<V>(value)};
}

zilber::ChainModel model_of(zilber_chain_model m) {
  zilber::require(m == ZILBER_NORMALIZED || m == ZILBER_UNNORMALIZED, ErrorCode::invalid_argument,
                  "unknown chain model");
  return m == ZILBER_NORMALIZED ? zilber::ChainModel::normalized : zilber::ChainModel::unnormalized;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  zilber::require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos && s.size() < 6,
                  ErrorCode::invalid_argument, "bad " + what + ": " + s);
  return std::stoul(s);
}

// Both factors truncated to the smaller dimension bound.
std::pair<zilber::SimplicialAbelianGroup, zilber::SimplicialAbelianGroup> common_pair(const zilber_sset* a,
                                                                                      const zilber_sset* b) {
  need(a, "first simplicial set");
  need(b, "second simplicial set");
  const std::size_t d = std::min(a->value.dim_bound(), b->value.dim_bound());
  return {zilber::free_abelian(zilber::truncate(a->value, d)), zilber::free_abelian(zilber::truncate(b->value, d))};
}

template <class T>
T param(const json& p, const char* key, T fallback) {
  return p.contains(key) ? p.at(key).get<T>() : fallback;
}

Certificate promonoidal_certificate(const std::string& check, const json& p) {
  using Sizes = std::vector<std::size_t>;
  if (check == "mu-assoc")
    return zilber::mu_associativity_check(param<std::size_t>(p, "b", 3), param<std::size_t>(p, "entry_max", 2),
                                          param<std::size_t>(p, "output_max", 3));
  if (check == "mu-unit") return zilber::mu_unit_check(param<std::size_t>(p, "b", 3));
  if (check == "left-kan") {
    Sizes m = p.contains("m") && p.at("m").is_number() ? Sizes{p.at("m").get<std::size_t>()}
                                                         : param<Sizes>(p, "m", Sizes{0, 1, 2, 3, 4});
    return zilber::left_kan_check(param<Sizes>(p, "ns", {1, 1}), param<std::size_t>(p, "b", 2), m);
  }
  if (check == "product-colimit") {
    Sizes k = p.contains("k") && p.at("k").is_number() ? Sizes{p.at("k").get<std::size_t>()}
                                                         : param<Sizes>(p, "k", Sizes{0, 1, 2, 3, 4, 5});
    return zilber::product_simplices_colimit_check(param<Sizes>(p, "ns", {1, 1}), k);
  }
  if (check == "operator-frag") {
    const std::string model = param<std::string>(p, "model", "delta_op");
    zilber::require(model == "delta_op" || model == "point", ErrorCode::invalid_argument,
                    "operator-frag model must be delta_op or point");
    const auto data = model == "point" ? zilber::point_promonoidal()
                                       : zilber::delta_op_promonoidal(param<std::size_t>(p, "b", 3));
    const auto entry_max = param<std::size_t>(p, "entry_max", model == "point" ? 0 : 2);
    zilber::require(model != "point" || entry_max == 0, ErrorCode::invalid_argument,
                    "the point model has the single object 0");
    const auto frag = zilber::operator_category_fragment(data, param<std::size_t>(p, "length", 3));
    return frag.associativity_check(param<std::uint64_t>(p, "seed", 0), param<std::size_t>(p, "samples", 50),
                                    entry_max);
  }
  if (check == "coyoneda") {
    zilber::require(p.contains("profunctor"), ErrorCode::invalid_argument, "coyoneda needs a profunctor document");
    return zilber::coyoneda_check(zilber::profunctor_from_json(p.at("profunctor")));
  }
  zilber::fail(ErrorCode::invalid_argument, "unknown promonoidal check: " + check);
}

}  // namespace

extern "C" {

const char* zilber_version(void) { return "1.0.0"; }
const char* zilber_last_error(void) { return last_error.c_str(); }
void zilber_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- sset

zilber_status zilber_sset_from_json(const char* text, zilber_sset** out) {
  return guarded([&] {
    need(text, "text");
    emit_handle(zilber::ssimp_from_json(zilber::parse_json_text(text)), out);
  });
}

zilber_status zilber_sset_builtin(const char* name, size_t dim_bound, zilber_sset** out) {
  return guarded([&] {
    need(name, "name");
    const std::string s = name;
    zilber::SimplicialSet x;
    if (s == "point") {
      x = zilber::point(dim_bound);
    } else if (s == "circle") {
      x = zilber::circle(dim_bound);
    } else if (s == "torus") {
      x = zilber::torus(dim_bound);
    } else if (s.rfind("simplex:", 0) == 0) {
      x = zilber::standard_simplex(parse_count(s.substr(8), "simplex dimension"), dim_bound);
    } else {
      zilber::fail(ErrorCode::invalid_argument, "unknown builtin: " + s);
    }
    emit_handle(std::move(x), out);
  });
}

zilber_status zilber_sset_product(const zilber_sset* a, const zilber_sset* b, zilber_sset** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    const std::size_t d = std::min(a->value.dim_bound(), b->value.dim_bound());
    emit_handle(zilber::product(zilber::truncate(a->value, d), zilber::truncate(b->value, d)), out);
  });
}

zilber_status zilber_sset_truncate(const zilber_sset* a, size_t dim_bound, zilber_sset** out) {
  return guarded([&] {
    need(a, "a");
    emit_handle(zilber::truncate(a->value, dim_bound), out);
  });
}

zilber_status zilber_sset_dim_bound(const zilber_sset* a, size_t* out) {
  return guarded([&] {
    need(a, "a");
    need(out, "output pointer");
    *out = a->value.dim_bound();
  });
}

zilber_status zilber_sset_skeletal_dimension(const zilber_sset* a, size_t* out) {
  return guarded([&] {
    need(a, "a");
    need(out, "output pointer");
    *out = a->value.skeletal_dimension();
  });
}

zilber_status zilber_sset_to_json(const zilber_sset* a, char** out) {
  return guarded([&] {
    need(a, "a");
    emit(zilber::ssimp_to_json(a->value), out);
  });
}

void zilber_sset_free(zilber_sset* a) { delete a; }

// ---------------------------------------------------------------- chain

zilber_status zilber_chain_from_json(const char* text, zilber_chain** out) {
  return guarded([&] {
    need(text, "text");
    emit_handle(zilber::chain_from_json(zilber::parse_json_text(text)), out);
  });
}

zilber_status zilber_chain_normalized(const zilber_sset* a, zilber_chain** out) {
  return guarded([&] {
    need(a, "a");
    emit_handle(zilber::normalize(zilber::free_abelian(a->value)).normalized, out);
  });
}

zilber_status zilber_chain_to_json(const zilber_chain* c, char** out) {
  return guarded([&] {
    need(c, "c");
    emit(zilber::chain_to_json(c->value), out);
  });
}

zilber_status zilber_chain_homology(const zilber_chain* c, char** out) {
  return guarded([&] {
    need(c, "c");
    json groups = json::array();
    const auto h = zilber::homology(c->value);
    for (std::size_t n = 0; n < h.size(); ++n) {
      json g = zilber::invariants_json(h[n]);
      g["degree"] = n;
      groups.push_back(std::move(g));
    }
    emit(groups, out);
  });
}

void zilber_chain_free(zilber_chain* c) { delete c; }

// ---------------------------------------------------------------- filt / ss

zilber_status zilber_filt_from_json(const char* text, zilber_filt** out) {
  return guarded([&] {
    need(text, "text");
    emit_handle(zilber::filtration_from_json(zilber::parse_json_text(text)), out);
  });
}

zilber_status zilber_filt_skeletal(const zilber_sset* a, zilber_chain_model model, zilber_filt** out) {
  return guarded([&] {
    need(a, "a");
    emit_handle(zilber::skeletal_filtration(zilber::free_abelian(a->value), model_of(model)), out);
  });
}

zilber_status zilber_filt_to_json(const zilber_filt* f, char** out) {
  return guarded([&] {
    need(f, "f");
    emit(zilber::filtration_to_json(f->value), out);
  });
}

void zilber_filt_free(zilber_filt* f) { delete f; }

zilber_status zilber_ss_compute(const zilber_filt* f, size_t r_max, zilber_ss** out) {
  return guarded([&] {
    need(f, "f");
    emit_handle(zilber::compute_pages(f->value, r_max), out);
  });
}

zilber_status zilber_ss_to_json(const zilber_ss* s, char** out) {
  return guarded([&] {
    need(s, "s");
    emit(zilber::spectral_to_json(s->value), out);
  });
}

void zilber_ss_free(zilber_ss* s) { delete s; }

// ---------------------------------------------------------------- certificates

zilber_status zilber_check_doldkan_sset(const zilber_sset* a, char** report, int* pass) {
  return guarded([&] {
    need(a, "a");
    emit_certificate(zilber::gamma_normalize_roundtrip(zilber::free_abelian(a->value)), report, pass);
  });
}

zilber_status zilber_check_doldkan_chain(const zilber_chain* c, size_t dim_bound, char** report, int* pass) {
  return guarded([&] {
    need(c, "c");
    emit_certificate(zilber::normalize_gamma_roundtrip(c->value, dim_bound), report, pass);
  });
}

zilber_status zilber_check_ez(const zilber_sset* a, const zilber_sset* b, const char* check, char** report,
                              int* pass) {
  return guarded([&] {
    need(check, "check");
    const std::string k = check;
    const auto [x, y] = common_pair(a, b);
    Certificate c;
    if (k == "chain") {
      c = zilber::ez_chain_check(x, y);
    } else if (k == "aw") {
      c = zilber::aw_check(x, y);
    } else if (k == "unital") {
      c = zilber::unital_check(x, y);
    } else if (k == "symmetry") {
      c = zilber::symmetry_check(x, y);
    } else if (k == "homology") {
      c = zilber::ez_homology_check(x, y);
    } else {
      zilber::fail(ErrorCode::invalid_argument, "unknown ez check: " + k);
    }
    emit_certificate(c, report, pass);
  });
}

zilber_status zilber_check_ez_associativity(const zilber_sset* a, const zilber_sset* b, const zilber_sset* c,
                                            char** report, int* pass) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(c, "c");
    const std::size_t d = std::min({a->value.dim_bound(), b->value.dim_bound(), c->value.dim_bound()});
    auto f = [d](const zilber_sset* s) { return zilber::free_abelian(zilber::truncate(s->value, d)); };
    emit_certificate(zilber::associativity_check(f(a), f(b), f(c)), report, pass);
  });
}

zilber_status zilber_check_skeleton_product(const zilber_sset* a, const zilber_sset* b, size_t p, size_t q, size_t n,
                                            char** report, int* pass) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    emit_certificate(zilber::skeleton_product_check(a->value, b->value, p, q, n), report, pass);
  });
}

zilber_status zilber_check_filtered_ez(const zilber_sset* a, const zilber_sset* b, zilber_chain_model model,
                                       char** report, int* pass) {
  return guarded([&] {
    const auto [x, y] = common_pair(a, b);
    emit_certificate(zilber::filtered_ez_check(x, y, model_of(model)), report, pass);
  });
}

zilber_status zilber_check_heart(const zilber_sset* a, char** report, int* pass) {
  return guarded([&] {
    need(a, "a");
    emit_certificate(zilber::heart_check(zilber::free_abelian(a->value)), report, pass);
  });
}

zilber_status zilber_check_spectral(const zilber_ss* s, char** report, int* pass) {
  return guarded([&] {
    need(s, "s");
    emit_certificate(zilber::spectral_check(s->value), report, pass);
  });
}

zilber_status zilber_check_leibniz(const zilber_sset* a, const zilber_sset* b, zilber_chain_model model, size_t r,
                                   int corrupt, char** report, int* pass) {
  return guarded([&] {
    zilber::require(r >= 1, ErrorCode::invalid_argument, "page index must be at least 1");
    const auto [x, y] = common_pair(a, b);
    const auto pairing = zilber::filtered_ez(x, y, model_of(model));
    const auto sf = zilber::compute_pages(pairing.left(), r);
    const auto sg = zilber::compute_pages(pairing.right(), r);
    const auto sh = zilber::compute_pages(pairing.target(), r);
    auto pp = zilber::induced_pairing(pairing, sf, sg, sh, r);
    Certificate c = zilber::leibniz_check(pp);
    if (corrupt) {
      // Flip the first product whose sign change the rule can see; none means the control is undetectable here.
      json flipped;
      for (const auto& [key, m] : pp.products) {
        if (m.cols() == 0) continue;
        auto trial = pp;
        trial.flip_sign(key, 0);
        Certificate t = zilber::leibniz_check(trial);
        if (!t.pass) {
          c = std::move(t);
          flipped = {{"key", key}, {"column", 0}};
          break;
        }
      }
      c.name = "leibniz_corrupted";
      c.details["corrupted"] = flipped;
    }
    c.details["lift_independence"] = pp.lift_independence.pass;
    if (!pp.lift_independence.pass) c.pass = false;
    emit_certificate(c, report, pass);
  });
}

zilber_status zilber_check_day(const char* check, const zilber_filt* f, const zilber_filt* g, const zilber_filt* h,
                               char** report, int* pass) {
  return guarded([&] {
    need(check, "check");
    need(f, "f");
    const std::string k = check;
    Certificate c;
    if (k == "unit") {
      c = zilber::day_unit_check(f->value);
    } else if (k == "symmetry") {
      need(g, "g");
      c = zilber::day_symmetry_check(f->value, g->value);
    } else if (k == "associativity") {
      need(g, "g");
      need(h, "h");
      c = zilber::day_associativity_check(f->value, g->value, h->value);
    } else {
      zilber::fail(ErrorCode::invalid_argument, "unknown day check: " + k);
    }
    emit_certificate(c, report, pass);
  });
}

zilber_status zilber_check_promonoidal(const char* check, const char* params, char** report, int* pass) {
  return guarded([&] {
    need(check, "check");
    const json p = params && *params ? zilber::parse_json_text(params) : json::object();
    zilber::require(p.is_object(), ErrorCode::parse, "params must be a JSON object");
    emit_certificate(promonoidal_certificate(check, p), report, pass);
  });
}

}  // extern "C"
