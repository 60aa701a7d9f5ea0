#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gatemp/error.hpp"
#include "gatemp/experiment.hpp"
#include "gatemp/oracle_suite.hpp"
#include "gatemp/presets.hpp"

namespace {

// Only the output directory may come from the environment.
std::filesystem::path output_override(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("GATEMP_OUTPUT_DIR"); env && *env) return env;
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GA effective-temperature experiments on spin-glass benchmarks"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "config file")->required();

  std::string preset_name;
  std::string preset_out = "out";
  bool desk = false;
  auto* preset = app.add_subcommand("preset", "run a named preset");
  preset->add_option("name", preset_name, "preset name")->required();
  preset->add_option("--out", preset_out, "output directory");
  preset->add_flag("--desk", desk, "reduced system sizes");

  auto* list = app.add_subcommand("list-presets", "print the preset names");
  auto* oracle = app.add_subcommand("oracle-check", "run the small-N cross-oracle suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = gatemp::load_config(config_path);
      cfg.output_dir = output_override(cfg.output_dir);
      const auto summary = gatemp::run_experiment(cfg);
      std::cout << gatemp::format_run_report(summary);
      return 0;
    }
    if (*preset) {
      const auto p = gatemp::make_preset(preset_name, desk);
      return gatemp::run_preset(p, output_override(preset_out));
    }
    if (*list) {
      for (const auto& name : gatemp::list_presets()) {
        std::cout << name << "  " << gatemp::make_preset(name, false).description << '\n';
      }
      return 0;
    }
    if (*oracle) {
      const auto checks = gatemp::run_oracle_suite();
      std::cout << gatemp::format_oracle_report(checks);
      for (const auto& c : checks) {
        if (!c.passed) return static_cast<int>(gatemp::ErrorCategory::Consistency);
      }
      return 0;
    }
  } catch (const gatemp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
