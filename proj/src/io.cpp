#include "zilber/io.hpp"

#include "zilber/error.hpp"
#include "zilber/json_util.hpp"

namespace zilber {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(ErrorCode::parse, std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

template <class T>
T get_as(const json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, what + ": " + e.what());
  }
}

json header(const char* format) { return {{"format", format}, {"version", kFormatVersion}}; }

void expect_format(const json& doc, const std::string& format) {
  const std::string f = document_format(doc);
  require(f == format, ErrorCode::parse, "expected a " + format + " document, got " + f);
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

std::string document_format(const json& doc) {
  const auto format = get_as<std::string>(field(doc, "format"), "format");
  const auto version = get_as<int>(field(doc, "version"), "version");
  require(version == kFormatVersion, ErrorCode::parse, "unsupported " + format + " version " + std::to_string(version));
  return format;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------- ssimp

json ssimp_to_json(const SimplicialSet& x) {
  json doc = header("ssimp");
  doc["dim_bound"] = x.dim_bound();
  doc["sizes"] = x.sizes();
  doc["faces"] = x.faces();
  doc["degeneracies"] = x.degeneracies();
  if (!x.labels().empty()) doc["labels"] = x.labels();
  return doc;
}

SimplicialSet ssimp_from_json(const json& doc) {
  expect_format(doc, "ssimp");
  const auto d = get_as<std::size_t>(field(doc, "dim_bound"), "dim_bound");
  auto sizes = get_as<std::vector<std::size_t>>(field(doc, "sizes"), "sizes");
  auto faces = get_as<std::vector<std::vector<IndexMap>>>(field(doc, "faces"), "faces");
  auto degens = get_as<std::vector<std::vector<IndexMap>>>(field(doc, "degeneracies"), "degeneracies");
  std::vector<std::vector<std::string>> labels;
  if (doc.contains("labels")) labels = get_as<std::vector<std::vector<std::string>>>(doc["labels"], "labels");
  require(sizes.size() == d + 1, ErrorCode::parse, "sizes must have dim_bound + 1 entries");
  return SimplicialSet(d, std::move(sizes), std::move(faces), std::move(degens), std::move(labels));
}

// ---------------------------------------------------------------- chain

namespace {

json chain_payload(const ChainComplex& c) {
  json diffs = json::array();
  for (std::size_t n = 1; n <= c.top_degree(); ++n) diffs.push_back(matrix_json(c.differential(n)));
  return {{"ranks", c.ranks()}, {"differentials", diffs}};
}

ChainComplex chain_payload_from(const json& j) {
  auto ranks = get_as<std::vector<std::size_t>>(field(j, "ranks"), "ranks");
  const json& diffs = field(j, "differentials");
  require(!ranks.empty(), ErrorCode::parse, "ranks must be nonempty");
  require(diffs.is_array() && diffs.size() == ranks.size() - 1, ErrorCode::parse,
          "expected one differential per degree 1.." + std::to_string(ranks.size() - 1));
  std::vector<Matrix> d;
  for (std::size_t n = 1; n < ranks.size(); ++n) d.push_back(matrix_from_json(diffs[n - 1], ranks[n - 1], ranks[n]));
  return ChainComplex(std::move(ranks), std::move(d));
}

}  // namespace

json chain_to_json(const ChainComplex& c) {
  json doc = header("chain");
  doc.update(chain_payload(c));
  return doc;
}

ChainComplex chain_from_json(const json& doc) {
  expect_format(doc, "chain");
  return chain_payload_from(doc);
}

// ---------------------------------------------------------------- filt

json filtration_to_json(const FilteredChainComplex& f) {
  json doc = header("filt");
  doc["ambient"] = chain_payload(f.ambient());
  json stages = json::array();
  for (std::size_t p = 0; p <= f.p_max(); ++p) {
    json degrees = json::array();
    for (std::size_t k = 0; k <= f.top_degree(); ++k) degrees.push_back(matrix_json(f.stage(static_cast<long>(p), k)));
    stages.push_back(std::move(degrees));
  }
  doc["stages"] = std::move(stages);
  return doc;
}

FilteredChainComplex filtration_from_json(const json& doc) {
  expect_format(doc, "filt");
  ChainComplex ambient = chain_payload_from(field(doc, "ambient"));
  const json& st = field(doc, "stages");
  require(st.is_array() && !st.empty(), ErrorCode::parse, "stages must be a nonempty array");
  std::vector<std::vector<Matrix>> stages;
  for (std::size_t p = 0; p < st.size(); ++p) {
    require(st[p].is_array() && st[p].size() == ambient.top_degree() + 1, ErrorCode::parse,
            "stage " + std::to_string(p) + " needs one matrix per degree");
    std::vector<Matrix> degrees;
    for (std::size_t k = 0; k <= ambient.top_degree(); ++k) {
      const json& m = st[p][k];
      require(m.is_array() && m.size() == ambient.rank(k), ErrorCode::parse,
              "stage " + std::to_string(p) + " degree " + std::to_string(k) + ": expected " +
                  std::to_string(ambient.rank(k)) + " rows");
      const std::size_t cols = m.empty() ? 0 : m[0].size();
      degrees.push_back(matrix_from_json(m, ambient.rank(k), cols));
    }
    stages.push_back(std::move(degrees));
  }
  return FilteredChainComplex(std::move(ambient), std::move(stages));
}

json spectral_to_json(const SpectralSequence& s) {
  json doc = header("ss");
  doc.update(s.to_json());
  return doc;
}

// ---------------------------------------------------------------- cat / prof

namespace {

json category_payload(const FiniteCategory& c) {
  const std::size_t n = c.object_count(), m = c.morphism_count();
  require(m <= 4096, ErrorCode::overflow, "category too large to write out");
  json objects = json::array(), morphisms = json::array(), ids = json::array(), comp = json::array();
  for (std::size_t x = 0; x < n; ++x) {
    objects.push_back(c.object_name(x));
    ids.push_back(c.identity(x));
  }
  for (std::size_t f = 0; f < m; ++f) {
    morphisms.push_back({{"source", c.source(f)}, {"target", c.target(f)}, {"label", c.label(f)}});
    json row = json::array();
    for (std::size_t g = 0; g < m; ++g)
      row.push_back(c.composable(f, g) ? static_cast<std::ptrdiff_t>(c.compose(f, g)) : -1);
    comp.push_back(std::move(row));
  }
  return {{"objects", objects}, {"morphisms", morphisms}, {"identities", ids}, {"composition", comp},
          {"generators", c.generators()}};
}

FiniteCategory category_payload_from(const json& j) {
  auto objects = get_as<std::vector<std::string>>(field(j, "objects"), "objects");
  std::vector<FiniteCategory::Morphism> ms;
  for (const auto& f : field(j, "morphisms")) {
    FiniteCategory::Morphism mor;
    mor.source = get_as<std::size_t>(field(f, "source"), "morphism source");
    mor.target = get_as<std::size_t>(field(f, "target"), "morphism target");
    if (f.contains("label")) mor.label = get_as<std::string>(f["label"], "morphism label");
    ms.push_back(std::move(mor));
  }
  auto ids = get_as<std::vector<std::size_t>>(field(j, "identities"), "identities");
  auto comp = get_as<std::vector<std::vector<std::ptrdiff_t>>>(field(j, "composition"), "composition");
  std::vector<std::size_t> gens;
  if (j.contains("generators")) gens = get_as<std::vector<std::size_t>>(j["generators"], "generators");
  return FiniteCategory(std::move(objects), std::move(ms), std::move(ids), std::move(comp), std::move(gens));
}

}  // namespace

json category_to_json(const FiniteCategory& c) {
  json doc = header("cat");
  doc.update(category_payload(c));
  return doc;
}

FiniteCategory category_from_json(const json& doc) {
  expect_format(doc, "cat");
  return category_payload_from(doc);
}

json profunctor_to_json(const SetProfunctor& p) {
  const FiniteCategory& C = p.source();
  const FiniteCategory& D = p.target();
  json doc = header("prof");
  doc["source"] = category_payload(C);
  doc["target"] = category_payload(D);
  json sizes = json::array(), left = json::array(), right = json::array();
  for (std::size_t c = 0; c < C.object_count(); ++c) {
    json row = json::array();
    for (std::size_t d = 0; d < D.object_count(); ++d) row.push_back(p.size(c, d));
    sizes.push_back(std::move(row));
  }
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    json per = json::array();
    for (std::size_t d = 0; d < D.object_count(); ++d) per.push_back(p.left_table(f, d));
    left.push_back(std::move(per));
  }
  for (std::size_t g = 0; g < D.morphism_count(); ++g) {
    json per = json::array();
    for (std::size_t c = 0; c < C.object_count(); ++c) per.push_back(p.right_table(g, c));
    right.push_back(std::move(per));
  }
  doc["sizes"] = std::move(sizes);
  doc["left"] = std::move(left);
  doc["right"] = std::move(right);
  return doc;
}

SetProfunctor profunctor_from_json(const json& doc) {
  expect_format(doc, "prof");
  FiniteCategory C = category_payload_from(field(doc, "source"));
  FiniteCategory D = category_payload_from(field(doc, "target"));
  const auto rows = get_as<std::vector<std::vector<std::size_t>>>(field(doc, "sizes"), "sizes");
  require(rows.size() == C.object_count(), ErrorCode::parse, "sizes needs one row per source object");
  std::vector<std::size_t> sizes;
  for (const auto& r : rows) {
    require(r.size() == D.object_count(), ErrorCode::parse, "sizes needs one column per target object");
    sizes.insert(sizes.end(), r.begin(), r.end());
  }
  using Tables = std::vector<std::vector<std::vector<std::size_t>>>;
  return SetProfunctor::tabulated(std::move(C), std::move(D), std::move(sizes),
                                  get_as<Tables>(field(doc, "left"), "left"), get_as<Tables>(field(doc, "right"), "right"));
}

}  // namespace zilber
