#include "doctest.h"

#include "support.hpp"
#include "zilber/error.hpp"
#include "zilber/io.hpp"

using namespace zilber;

TEST_CASE("ssimp documents round-trip bit-exactly") {
  std::mt19937 rng(5);
  std::vector<SimplicialSet> xs{point(2), standard_simplex(2, 3), circle(3), torus(3)};
  for (int i = 0; i < 10; ++i) xs.push_back(testing::random_nerve(rng));
  for (const auto& x : xs) {
    const std::string text = dump_document(ssimp_to_json(x));
    const SimplicialSet y = ssimp_from_json(parse_json_text(text));
    CHECK(y == x);
    CHECK(y.labels() == x.labels());
    CHECK(dump_document(ssimp_to_json(y)) == text);
  }
}

TEST_CASE("ssimp loading rejects malformed and invalid documents") {
  auto doc = ssimp_to_json(standard_simplex(1, 2));
  auto bad = doc;
  bad["faces"][1][0][0] = 1;  // d_0 of the first edge moved onto the wrong vertex
  bad["faces"][1][1][0] = 0;
  CHECK_THROWS_AS(ssimp_from_json(bad), Error);
  bad = doc;
  bad["version"] = 7;
  try {
    ssimp_from_json(bad);
    FAIL("accepted a future version");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
  }
  try {
    parse_json_text("{\n  \"format\": \"ssimp\",\n  \"version\": 1,\n  oops\n}");
    FAIL("accepted malformed JSON");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(chain_from_json(doc), Error);
}

TEST_CASE("chain, filtration and spectral documents") {
  std::mt19937 rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto c = testing::random_chain_complex(rng, 8, 3);
    const std::string text = dump_document(chain_to_json(c));
    CHECK(chain_from_json(parse_json_text(text)) == c);
    const auto f = testing::random_filtration(rng, 3, 3);
    const auto g = filtration_from_json(parse_json_text(dump_document(filtration_to_json(f))));
    CHECK(g.ambient() == f.ambient());
    CHECK(stages_equal(f, g));
    CHECK(dump_document(filtration_to_json(g)) == dump_document(filtration_to_json(f)));
  }
  const auto ss = spectral_to_json(compute_pages(testing::random_filtration(rng, 2, 3), 2));
  CHECK(document_format(ss) == "ss");
  CHECK(ss.contains("pages"));
}

TEST_CASE("category and profunctor documents") {
  for (const auto& c : {FiniteCategory::simplex(2), FiniteCategory::simplex(2).opposite(), arrow_fiber_nn({1, 1}, 2),
                        FiniteCategory::discrete(2)}) {
    const auto doc = category_to_json(c);
    const auto d = category_from_json(doc);
    CHECK(category_to_json(d) == doc);
  }
  const auto h = SetProfunctor::hom(FiniteCategory::simplex(1));
  const auto doc = profunctor_to_json(h);
  const auto p = profunctor_from_json(doc);
  CHECK(profunctor_to_json(p) == doc);
  auto bad = doc;
  bad["right"][1][0][0] = 2;
  CHECK_THROWS_AS(profunctor_from_json(bad), Error);
}
