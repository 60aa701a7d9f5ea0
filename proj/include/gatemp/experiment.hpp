#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gatemp/analysis.hpp"
#include "gatemp/effective_temperature.hpp"
#include "gatemp/ga_engine.hpp"
#include "gatemp/gibbs_mcmc.hpp"
#include "gatemp/spin_systems.hpp"

namespace gatemp {

// Which population feeds U_GA into the learner each generation.
enum class SnapshotPolicy { PostSelection, PostMutation };

inline constexpr double kDefaultInitialTemperature = 10.0;
inline constexpr double kDefaultLearningRateTimesN = 3e-5;
inline constexpr double kDefaultTemperatureFloor = 1e-6;

struct ExperimentConfig {
  std::string name = "experiment";
  ModelKind model = ModelKind::Chain;
  std::size_t n = 200;
  GAParams ga{100, 200};
  DisorderParams disorder{};
  SKOptions sk{};
  double t0 = kDefaultInitialTemperature;
  double learning_rate = kDefaultLearningRateTimesN / 200.0;
  double t_floor = kDefaultTemperatureFloor;
  std::size_t generations = 2000;
  std::size_t replicas = 10;
  Seed seed = 1;
  OracleKind oracle = OracleKind::AnalyticChain;
  SnapshotPolicy snapshot = SnapshotPolicy::PostMutation;
  double fit_decades = 2.0;  // asymptotic window: trailing decades of t
  MCMCOptions mcmc{};        // MCMC oracle only
  std::size_t threads = 0;   // 0: hardware concurrency
  std::filesystem::path output_dir = "out";

  void validate() const;
  bool operator==(const ExperimentConfig& o) const;
};

// INI-style text: [section] headers, `key = value` lines, '#' comments.
std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct TrajectoryRow {
  std::size_t t;
  double temperature;
  double u_ga;
  double u_gibbs;  // oracle U at the row's temperature
  double best_energy;
};

struct ReplicaResult {
  std::size_t index = 0;
  bool ok = false;
  std::string error;
  double ground_energy = 0.0;  // chain only
  std::vector<TrajectoryRow> rows;
};

struct SeriesSummary {
  std::vector<double> t;  // t = 1 .. generations
  std::vector<double> mean;
  std::vector<double> std_error;
  std::optional<PowerLawFit> fit;
  std::optional<Crossover> crossover;
  std::string fit_error;

  TimeSeries series() const { return TimeSeries(t, mean); }
};

struct RunSummary {
  ExperimentConfig config;
  std::vector<ReplicaResult> replicas;
  std::size_t succeeded = 0;
  SeriesSummary temperature;
  std::optional<SeriesSummary> residual;  // chain: best energy minus exact ground state
  std::optional<SeriesSummary> fitness;   // SK: -U_GA / N
};

// One GA + learner replica; disorder and GA seeds are split from
// (cfg.seed, index).
ReplicaResult run_replica(const ExperimentConfig& cfg, std::size_t index);

// Runs every replica and reduces; writes nothing.
RunSummary run_campaign(const ExperimentConfig& cfg);

// run_campaign, then per-replica trajectories, a config snapshot, and the
// emit_plot_data files under cfg.output_dir.
RunSummary run_experiment(const ExperimentConfig& cfg);
// Same, written under dir; the snapshot keeps cfg.output_dir as given.
RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& dir);

// temperature.csv, residual.csv or fitness.csv, fit_report.txt.
void emit_plot_data(const RunSummary& summary, const std::filesystem::path& dir);

std::string format_run_report(const RunSummary& summary);

std::string_view to_string(ModelKind v);
std::string_view to_string(OracleKind v);
std::string_view to_string(SnapshotPolicy v);
std::string_view to_string(SelectionMode v);
std::string_view to_string(PairConvention v);
std::string_view to_string(CouplingScale v);

}  // namespace gatemp
