#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"

#include <string>

#include "zilber/zilber.h"

using nlohmann::json;

namespace {

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  zilber_string_free(s);
  return j;
}

zilber_sset* builtin(const char* name, size_t d) {
  zilber_sset* x = nullptr;
  REQUIRE(zilber_sset_builtin(name, d, &x) == ZILBER_OK);
  return x;
}

}  // namespace

TEST_CASE("homology of builtins through the C interface") {
  zilber_sset* t = builtin("torus", 3);
  zilber_chain* c = nullptr;
  REQUIRE(zilber_chain_normalized(t, &c) == ZILBER_OK);
  char* out = nullptr;
  REQUIRE(zilber_chain_homology(c, &out) == ZILBER_OK);
  const json h = take(out);
  CHECK(h[0]["free_rank"] == 1);
  CHECK(h[1]["free_rank"] == 2);
  CHECK(h[2]["free_rank"] == 1);
  zilber_chain_free(c);
  zilber_sset_free(t);
}

TEST_CASE("documents round-trip through handles") {
  zilber_sset* x = builtin("circle", 2);
  char* text = nullptr;
  REQUIRE(zilber_sset_to_json(x, &text) == ZILBER_OK);
  zilber_sset* y = nullptr;
  REQUIRE(zilber_sset_from_json(text, &y) == ZILBER_OK);
  char* again = nullptr;
  REQUIRE(zilber_sset_to_json(y, &again) == ZILBER_OK);
  CHECK(std::string(text) == std::string(again));
  zilber_string_free(text);
  zilber_string_free(again);
  size_t d = 0;
  CHECK(zilber_sset_dim_bound(y, &d) == ZILBER_OK);
  CHECK(d == 2);
  zilber_sset_free(x);
  zilber_sset_free(y);
}

TEST_CASE("errors carry codes and messages") {
  zilber_sset* x = nullptr;
  CHECK(zilber_sset_from_json("{\"format\": \"ssimp\",\n oops}", &x) == ZILBER_PARSE);
  CHECK(std::string(zilber_last_error()).find("line 2") != std::string::npos);
  CHECK(x == nullptr);
  CHECK(zilber_sset_builtin("klein", 2, &x) == ZILBER_INVALID_ARGUMENT);
  CHECK(zilber_sset_builtin("simplex:x", 2, &x) == ZILBER_INVALID_ARGUMENT);
  CHECK(zilber_sset_to_json(nullptr, nullptr) == ZILBER_INVALID_ARGUMENT);
  char* r = nullptr;
  int pass = 0;
  CHECK(zilber_check_promonoidal("nonsense", "{}", &r, &pass) == ZILBER_INVALID_ARGUMENT);
  CHECK(zilber_check_promonoidal("left-kan", "[1,2]", &r, &pass) == ZILBER_PARSE);
}

TEST_CASE("certificates") {
  zilber_sset* e = builtin("simplex:1", 2);
  char* r = nullptr;
  int pass = -1;
  for (const char* k : {"chain", "aw", "unital", "symmetry", "homology"}) {
    REQUIRE(zilber_check_ez(e, e, k, &r, &pass) == ZILBER_OK);
    CHECK(pass == 1);
    take(r);
  }
  REQUIRE(zilber_check_filtered_ez(e, e, ZILBER_NORMALIZED, &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  REQUIRE(zilber_check_heart(e, &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  REQUIRE(zilber_check_doldkan_sset(e, &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);

  zilber_sset* e3 = builtin("simplex:1", 3);
  REQUIRE(zilber_check_leibniz(e3, e3, ZILBER_NORMALIZED, 1, 0, &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  REQUIRE(zilber_check_leibniz(e3, e3, ZILBER_NORMALIZED, 1, 1, &r, &pass) == ZILBER_OK);
  CHECK(pass == 0);
  CHECK(take(r).contains("witness"));

  zilber_filt* f = nullptr;
  REQUIRE(zilber_filt_skeletal(e3, ZILBER_NORMALIZED, &f) == ZILBER_OK);
  zilber_ss* s = nullptr;
  REQUIRE(zilber_ss_compute(f, 2, &s) == ZILBER_OK);
  REQUIRE(zilber_check_spectral(s, &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  REQUIRE(zilber_check_day("unit", f, nullptr, nullptr, &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  zilber_ss_free(s);
  zilber_filt_free(f);
  zilber_sset_free(e3);
  zilber_sset_free(e);
}

TEST_CASE("promonoidal checks") {
  char* r = nullptr;
  int pass = -1;
  REQUIRE(zilber_check_promonoidal("left-kan", "{\"ns\": [1, 1], \"b\": 1, \"m\": 2}", &r, &pass) == ZILBER_OK);
  CHECK(pass == 0);
  CHECK(take(r).contains("witness"));
  REQUIRE(zilber_check_promonoidal("left-kan", "{\"ns\": [1, 1], \"b\": 2}", &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  REQUIRE(zilber_check_promonoidal("product-colimit", "{\"ns\": [1, 1], \"k\": [0, 1, 2, 3]}", &r, &pass) ==
          ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  REQUIRE(zilber_check_promonoidal("operator-frag", "{\"model\": \"point\", \"length\": 3}", &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
  REQUIRE(zilber_check_promonoidal("mu-unit", "{\"b\": 2}", &r, &pass) == ZILBER_OK);
  CHECK(pass == 1);
  take(r);
}
