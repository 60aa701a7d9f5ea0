#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gatemp/experiment.hpp"
#include "gatemp/gibbs_mcmc.hpp"

namespace gatemp {

enum class PresetKind { Campaign, EnergyCurve, OracleSuite };

inline constexpr std::size_t kDeskChainSize = 200;
inline constexpr std::size_t kDeskSKSize = 100;
inline constexpr std::size_t kFullChainSize = 2000;
inline constexpr std::size_t kFullSKSize = 500;

// MCMC internal-energy curve of the chain against the exact infinite-chain
// result.
struct CurveConfig {
  std::size_t n = 3000;
  std::size_t realizations = 10;
  DisorderParams disorder{};
  std::vector<double> temperatures{0.4, 0.7, 1.0, 1.5, 2.0, 3.0};
  MCMCOptions mcmc{20000, 10000, 10, 2, 3.0};
  Seed seed = 1;
};

struct CurvePoint {
  double temperature;
  double mean;       // average over realizations of the per-instance estimate
  double std_error;  // between realizations
  double exact;      // (N - 1) * chain_internal_energy(T)
};

struct Preset {
  std::string name;
  std::string description;
  PresetKind kind = PresetKind::Campaign;
  // Campaign presets: one config per swept value, each writing to its own
  // subdirectory named after the config.
  std::vector<ExperimentConfig> variants;
  CurveConfig curve;  // EnergyCurve only
};

std::vector<std::string> list_presets();

// Throws InvalidArgumentError for an unknown name.
Preset make_preset(std::string_view name, bool desk);

std::vector<CurvePoint> chain_energy_curve(const CurveConfig& cfg);

// Runs every part of the preset under `out`; returns the process exit status
// (nonzero when an oracle check fails).
int run_preset(const Preset& preset, const std::filesystem::path& out);

}  // namespace gatemp
