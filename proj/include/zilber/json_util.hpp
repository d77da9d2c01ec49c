#pragma once

#include "json.hpp"
#include "zilber/chains.hpp"
#include "zilber/error.hpp"
#include "zilber/matrix.hpp"

namespace zilber {

/// Integers fitting in 64 bits are JSON numbers; larger ones are decimal strings.
inline nlohmann::json integer_json(const Integer& x) {
  if (fits_int64(x)) return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  fail(ErrorCode::parse, "expected an integer, got " + j.dump());
}

/// Row-major array of rows; an r x 0 matrix is r empty rows.
inline nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) fail(ErrorCode::parse, "matrix: expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(ErrorCode::parse, "matrix: row " + std::to_string(i) + " should have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = integer_from_json(j[i][c]);
  }
  return m;
}

inline nlohmann::json vector_json(std::span<const Integer> v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

inline nlohmann::json invariants_json(const AbelianGroupInvariants& g) {
  return {{"group", g.to_string()}, {"free_rank", g.free_rank}, {"torsion", vector_json(g.torsion)}};
}

}  // namespace zilber
