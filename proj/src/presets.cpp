#include "gatemp/presets.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "gatemp/analytic_oracles.hpp"
#include "gatemp/error.hpp"
#include "gatemp/oracle_suite.hpp"
#include "gatemp/text_io.hpp"

namespace gatemp {

namespace {

constexpr std::string_view kNames[] = {"fg1D", "fgNo",  "fgS",   "fgM",   "fgC",
                                       "fgSSK", "fgMSK", "fgCSK", "fg1", "oracle-suite"};

ExperimentConfig chain_base(bool desk) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::Chain;
  cfg.n = desk ? kDeskChainSize : kFullChainSize;
  cfg.disorder = {0.0, 1.0, ModelKind::Chain};
  cfg.ga.genome_length = cfg.n;
  cfg.ga.tournament_size = 2;
  cfg.ga.crossover_rate = 0.1;
  cfg.ga.mutation_rate = 0.001;
  cfg.learning_rate = kDefaultLearningRateTimesN / static_cast<double>(cfg.n);
  cfg.oracle = OracleKind::AnalyticChain;
  return cfg;
}

// The RS energy only describes couplings J_ij / N ~ N(J0/N, J^2/N) summed
// over unordered pairs, so the SK presets use that scaling.
ExperimentConfig sk_base(bool desk) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::SK;
  cfg.n = desk ? kDeskSKSize : kFullSKSize;
  cfg.disorder = {0.0, 1.0, ModelKind::SK};
  cfg.sk = {PairConvention::UnorderedPairs, CouplingScale::MeanField};
  cfg.ga.genome_length = cfg.n;
  cfg.ga.tournament_size = 2;
  cfg.ga.crossover_rate = 0.05;
  cfg.ga.mutation_rate = 0.005;
  cfg.learning_rate = kDefaultLearningRateTimesN / static_cast<double>(cfg.n);
  cfg.oracle = OracleKind::AnalyticSK;
  return cfg;
}

ExperimentConfig named(ExperimentConfig cfg, const std::string& name) {
  cfg.name = name;
  cfg.output_dir = name;
  return cfg;
}

std::string label(std::string_view prefix, double v) {
  return std::string(prefix) + format_double(v);
}

void write_curve(const std::filesystem::path& path, const std::vector<CurvePoint>& points) {
  std::ostringstream out;
  write_header(out, {"temperature", "u_mean", "u_stderr", "u_exact"});
  for (const auto& p : points) write_row(out, {p.temperature, p.mean, p.std_error, p.exact});
  write_file(path, out.str());
}

}  // namespace

std::vector<std::string> list_presets() { return {std::begin(kNames), std::end(kNames)}; }

Preset make_preset(std::string_view name, bool desk) {
  Preset p;
  p.name = std::string(name);
  if (name == "fg1D") {
    p.description = "chain, sigma=2, p_c=0.1, p_m=0.001: T(t) and residual energy";
    p.variants.push_back(named(chain_base(desk), "fg1D"));
  } else if (name == "fgNo") {
    p.description = "chain without selection pressure, sigma=1";
    auto cfg = chain_base(desk);
    cfg.ga.tournament_size = 1;
    p.variants.push_back(named(cfg, "fgNo"));
  } else if (name == "fgS") {
    p.description = "chain, sigma in {2,3,4}, p_c=0.1, p_m=0.001";
    for (std::size_t s : {2, 3, 4}) {
      auto cfg = chain_base(desk);
      cfg.ga.tournament_size = s;
      p.variants.push_back(named(cfg, "fgS_sigma" + std::to_string(s)));
    }
  } else if (name == "fgM") {
    p.description = "chain, sigma=2, p_c=0.1, p_m in {0.0001,0.0005,0.001,0.005}";
    for (double pm : {0.0001, 0.0005, 0.001, 0.005}) {
      auto cfg = chain_base(desk);
      cfg.ga.mutation_rate = pm;
      p.variants.push_back(named(cfg, label("fgM_pm", pm)));
    }
  } else if (name == "fgC") {
    p.description = "chain, sigma=2, p_m=0.001, p_c in {1,0.5,0.1}";
    for (double pc : {1.0, 0.5, 0.1}) {
      auto cfg = chain_base(desk);
      cfg.ga.crossover_rate = pc;
      p.variants.push_back(named(cfg, label("fgC_pc", pc)));
    }
  } else if (name == "fgSSK") {
    p.description = "SK, sigma in {2,3,4}, p_c=0.05, p_m=0.005";
    for (std::size_t s : {2, 3, 4}) {
      auto cfg = sk_base(desk);
      cfg.ga.tournament_size = s;
      p.variants.push_back(named(cfg, "fgSSK_sigma" + std::to_string(s)));
    }
  } else if (name == "fgMSK") {
    p.description = "SK, sigma=2, p_c=0.05, p_m in {0.005,0.001}";
    for (double pm : {0.005, 0.001}) {
      auto cfg = sk_base(desk);
      cfg.ga.mutation_rate = pm;
      p.variants.push_back(named(cfg, label("fgMSK_pm", pm)));
    }
  } else if (name == "fgCSK") {
    p.description = "SK, sigma=2, p_m=0.005, p_c in {0.1,0.05,0.01}";
    for (double pc : {0.1, 0.05, 0.01}) {
      auto cfg = sk_base(desk);
      cfg.ga.crossover_rate = pc;
      p.variants.push_back(named(cfg, label("fgCSK_pc", pc)));
    }
  } else if (name == "fg1") {
    p.description = "chain internal energy: MCMC over disorder realizations vs exact curve";
    p.kind = PresetKind::EnergyCurve;
    if (desk) {
      p.curve.n = 500;
      p.curve.mcmc = {4000, 2000, 10, 2, 3.0};
    }
  } else if (name == "oracle-suite") {
    p.description = "small-N cross-oracle checks";
    p.kind = PresetKind::OracleSuite;
  } else {
    throw InvalidArgumentError("unknown preset '" + std::string(name) + "'");
  }
  return p;
}

std::vector<CurvePoint> chain_energy_curve(const CurveConfig& cfg) {
  if (cfg.realizations < 2) throw InvalidArgumentError("the curve needs >= 2 realizations");
  cfg.disorder.validate();
  const auto rule = QuadratureRule::gauss_hermite();
  std::vector<Disorder> instances;
  for (std::size_t r = 0; r < cfg.realizations; ++r) {
    instances.emplace_back(sample_chain_disorder(cfg.n, cfg.disorder, derive_seed(cfg.seed, r)));
  }
  std::vector<CurvePoint> out;
  for (std::size_t k = 0; k < cfg.temperatures.size(); ++k) {
    const double temperature = cfg.temperatures[k];
    std::vector<double> values;
    for (std::size_t r = 0; r < instances.size(); ++r) {
      const Seed s = derive_seed(derive_seed(cfg.seed, 1000 + r), k);
      values.push_back(estimate_internal_energy(instances[r], temperature, cfg.mcmc, s).mean);
    }
    const double count = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= count - 1.0;
    out.push_back({temperature, mean, std::sqrt(var / count),
                   static_cast<double>(cfg.n - 1) *  // open chain: N - 1 bonds
                       chain_internal_energy(temperature, cfg.disorder, rule)});
  }
  return out;
}

int run_preset(const Preset& preset, const std::filesystem::path& out) {
  switch (preset.kind) {
    case PresetKind::Campaign:
      for (const auto& cfg : preset.variants) run_experiment(cfg, out / cfg.output_dir);
      return 0;
    case PresetKind::EnergyCurve:
      write_curve(out / "curve.csv", chain_energy_curve(preset.curve));
      return 0;
    case PresetKind::OracleSuite: {
      const auto checks = run_oracle_suite();
      const std::string report = format_oracle_report(checks);
      write_file(out / "oracle_report.txt", report);
      std::cout << report;
      for (const auto& c : checks) {
        if (!c.passed) return static_cast<int>(ErrorCategory::Consistency);
      }
      return 0;
    }
  }
  return 0;
}

}  // namespace gatemp
