#pragma once

#include <string>

#include "json.hpp"
#include "zilber/chains.hpp"
#include "zilber/filtration.hpp"
#include "zilber/promonoidal.hpp"
#include "zilber/simplicial.hpp"
#include "zilber/spectral.hpp"

namespace zilber {

/// File formats. Every document carries "format" and "version" fields; see docs/FORMATS.md.
inline constexpr int kFormatVersion = 1;

/// Parses JSON text; malformed input raises ErrorCode::parse naming the line and column.
nlohmann::json parse_json_text(const std::string& text);
/// Value of the "format" field after checking the version.
std::string document_format(const nlohmann::json& doc);
/// Canonical text of a document: two-space indentation and a trailing newline.
std::string dump_document(const nlohmann::json& doc);

nlohmann::json ssimp_to_json(const SimplicialSet& x);
SimplicialSet ssimp_from_json(const nlohmann::json& doc);

nlohmann::json chain_to_json(const ChainComplex& c);
ChainComplex chain_from_json(const nlohmann::json& doc);

nlohmann::json filtration_to_json(const FilteredChainComplex& f);
FilteredChainComplex filtration_from_json(const nlohmann::json& doc);

nlohmann::json spectral_to_json(const SpectralSequence& s);

/// Product categories are written out as full tables.
nlohmann::json category_to_json(const FiniteCategory& c);
FiniteCategory category_from_json(const nlohmann::json& doc);

nlohmann::json profunctor_to_json(const SetProfunctor& p);
SetProfunctor profunctor_from_json(const nlohmann::json& doc);

}  // namespace zilber
