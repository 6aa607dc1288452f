#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orlicz/classifiers.hpp"
#include "orlicz/dissipative.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/system.hpp"
#include "orlicz/transform.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// Malformed or inconsistent scenario input; the CLI maps this to exit 2.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter;  // "r", "base" or "p"
  std::vector<double> values;
};

// Parsed scenario file. Blocks are optional at parse time; each subcommand
// validates that the blocks it needs are present.
struct Scenario {
  nlohmann::ordered_json raw;
  std::optional<YoungFunction> phi;
  LogGrid young_window;
  std::optional<AtomicMeasureSpace> space;
  std::optional<AtomTransformation> transform;
  std::optional<DissipativeStructure::Spec> dissipative;
  ClassifierConfig classifier;
  std::vector<std::string> criteria;  // enabled criterion tags; empty = all
  ProbeConfig probe;
  std::vector<std::pair<long, double>> function;
  bool norm_dual_grid = false;
  std::optional<SweepSpec> sweep;
  std::string out_hint;
};

Scenario parse_scenario(const nlohmann::ordered_json& j);
Scenario load_scenario(const std::string& path);

// Rebuilds a scenario with one swept parameter replaced; used by `sweep`.
Scenario with_parameter(const Scenario& base, const std::string& parameter,
                        double value);

}  // namespace orlicz
