#pragma once

#include "json.hpp"

#include <string>

namespace zilber {

/// Outcome of a finite check: pass flag, a summary and (on failure) a witness.
struct Certificate {
  std::string name;
  bool pass = true;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json witness;  // null when passing

  nlohmann::json to_json() const {
    nlohmann::json j{{"check", name}, {"pass", pass}, {"details", details}};
    if (!witness.is_null()) j["witness"] = witness;
    return j;
  }
};

}  // namespace zilber
