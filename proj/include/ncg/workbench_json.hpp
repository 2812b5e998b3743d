#pragma once

#include <json.hpp>

#include "ncg/workbench.hpp"

namespace ncg {

inline std::string render_run_json(const RunResult& rr) {
  nlohmann::json j;
  j["command"] = rr.command;
  j["inputs-digest"] = rr.digest;
  j["results"] = nlohmann::json::array();
  for (const auto& row : rr.rows)
    j["results"].push_back(
        {{"name", row.name}, {"expression", row.expression}, {"status", row.status}});
  return j.dump(2) + "\n";
}

}  // namespace ncg
