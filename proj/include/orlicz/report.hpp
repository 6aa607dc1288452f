#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "orlicz/scenario.hpp"

namespace orlicz {

// Outcome of one subcommand run: the JSON report, CSV traces keyed by file
// name, and the process exit code (0 ok, 3 boundedness falsified; invalid
// scenarios throw ScenarioError before a result exists).
struct RunResult {
  nlohmann::ordered_json report;
  std::map<std::string, std::string> csv;
  int exit_code = 0;
};

// Runs `young`, `norm`, `classify`, `stability`, `probe` or `sweep` over a
// parsed scenario. `seed` overrides both the probe seed and the subset
// sampling seed; `horizon` overrides the classifier horizon.
RunResult run_subcommand(const std::string& subcommand, Scenario scenario,
                         std::optional<unsigned long long> seed = std::nullopt,
                         std::optional<long> horizon = std::nullopt);

}  // namespace orlicz
