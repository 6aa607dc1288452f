#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orlicz/report.hpp"

namespace {

int write_outputs(const orlicz::RunResult& result, const std::string& sub,
                  const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  const std::filesystem::path report_path = base / (sub + "_report.json");
  {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return 1;
    }
    out << result.report.dump(2) << "\n";
  }
  std::cout << report_path.string() << "\n";
  for (const auto& [name, contents] : result.csv) {
    const std::filesystem::path csv_path = base / name;
    std::ofstream out(csv_path);
    if (!out) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return 1;
    }
    out << contents;
    std::cout << csv_path.string() << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-space norms and composition-operator classification "
               "over atomic measure spaces"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  unsigned long long seed = 0;
  long horizon = 0;

  const std::pair<const char*, const char*> subs[] = {
      {"young", "Growth certificates and conjugate of the Young function"},
      {"norm", "Gauge/Amemiya/dual-grid norms of the listed function"},
      {"classify", "Run all enabled expansivity criteria"},
      {"stability", "Exponent estimates and structural stability criteria"},
      {"probe", "Randomized orbit-norm expansivity probe"},
      {"sweep", "Grid sweep over one scenario parameter"},
  };
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--scenario", scenario_path, "Scenario JSON file")
        ->required();
    sub->add_option("--out", out_dir, "Output directory (default: scenario "
                                      "'out' field, else current directory)");
    sub->add_option("--seed", seed, "Override probe and sampling seeds");
    sub->add_option("--horizon", horizon, "Override classifier horizon");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* active = app.get_subcommands().front();

  try {
    orlicz::Scenario scenario = orlicz::load_scenario(scenario_path);
    std::optional<unsigned long long> seed_opt;
    if (active->count("--seed") > 0) seed_opt = seed;
    std::optional<long> horizon_opt;
    if (active->count("--horizon") > 0) horizon_opt = horizon;

    std::string dir = !out_dir.empty()          ? out_dir
                      : !scenario.out_hint.empty() ? scenario.out_hint
                                                   : std::string(".");
    const orlicz::RunResult result = orlicz::run_subcommand(
        active->get_name(), std::move(scenario), seed_opt, horizon_opt);
    return write_outputs(result, active->get_name(), dir);
  } catch (const orlicz::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
