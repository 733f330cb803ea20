#pragma once

#include <string>

#include <json.hpp>

namespace qdisk {

// Structured diagnostics shared by every check. Failures are recorded here,
// not thrown, so a report always describes what was observed.
struct Report {
  std::string check;
  std::string anchor;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json observed = nlohmann::json::object();
  nlohmann::json expected = nlohmann::json::object();
  bool pass = true;

  nlohmann::json to_json() const {
    return {{"check", check},       {"paper_anchor", anchor}, {"params", params},
            {"observed", observed}, {"expected", expected},   {"pass", pass}};
  }
};

}  // namespace qdisk
