#include "gatemp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gatemp/error.hpp"
#include "gatemp/text_io.hpp"

namespace gatemp {

namespace {

template <class Enum>
struct EnumNames {
  Enum value;
  std::string_view name;
};

constexpr EnumNames<ModelKind> kModels[] = {{ModelKind::Chain, "chain"}, {ModelKind::SK, "sk"}};
constexpr EnumNames<OracleKind> kOracles[] = {{OracleKind::AnalyticChain, "analytic_chain"},
                                              {OracleKind::AnalyticSK, "analytic_sk"},
                                              {OracleKind::MCMC, "mcmc"},
                                              {OracleKind::Enumeration, "enumeration"}};
constexpr EnumNames<SnapshotPolicy> kSnapshots[] = {
    {SnapshotPolicy::PostSelection, "post_selection"},
    {SnapshotPolicy::PostMutation, "post_mutation"}};
constexpr EnumNames<SelectionMode> kSelections[] = {{SelectionMode::Tournament, "tournament"},
                                                    {SelectionMode::Boltzmann, "boltzmann"}};
constexpr EnumNames<PairConvention> kConventions[] = {
    {PairConvention::OrderedPairs, "ordered"}, {PairConvention::UnorderedPairs, "unordered"}};
constexpr EnumNames<CouplingScale> kScales[] = {{CouplingScale::Literal, "literal"},
                                                {CouplingScale::MeanField, "mean_field"}};

template <class Enum, std::size_t K>
std::string_view name_of(const EnumNames<Enum> (&table)[K], Enum v) {
  for (const auto& e : table) {
    if (e.value == v) return e.name;
  }
  return "unknown";
}

template <class Enum, std::size_t K>
Enum parse_enum(const EnumNames<Enum> (&table)[K], const std::string& text, const char* key) {
  for (const auto& e : table) {
    if (e.name == text) return e.value;
  }
  throw InvalidArgumentError(std::string("unknown value '") + text + "' for " + key);
}

// Reads keys out of a parsed INI tree and rejects anything left unread.
class ConfigReader {
 public:
  explicit ConfigReader(const boost::property_tree::ptree& tree) : tree_(tree) {}

  std::optional<std::string> get(const std::string& section, const std::string& key) {
    used_.insert(section + "." + key);
    auto child = tree_.get_child_optional(boost::property_tree::ptree::path_type(
        section + "." + key, '.'));
    if (!child) return std::nullopt;
    return child->data();
  }

  void read(const std::string& section, const std::string& key, double& out) {
    if (auto v = get(section, key)) out = parse_double(*v);
  }
  void read(const std::string& section, const std::string& key, std::size_t& out) {
    if (auto v = get(section, key)) out = parse_unsigned(*v, key);
  }
  void read_seed(const std::string& section, const std::string& key, Seed& out) {
    if (auto v = get(section, key)) out = parse_unsigned(*v, key);
  }
  void read(const std::string& section, const std::string& key, std::string& out) {
    if (auto v = get(section, key)) out = *v;
  }
  template <class Enum, std::size_t K>
  void read_enum(const std::string& section, const std::string& key,
                 const EnumNames<Enum> (&table)[K], Enum& out) {
    if (auto v = get(section, key)) out = parse_enum(table, *v, key.c_str());
  }

  void reject_unknown() const {
    for (const auto& [section, body] : tree_) {
      if (body.empty()) throw InvalidArgumentError("key '" + section + "' outside any section");
      for (const auto& [key, value] : body) {
        if (!used_.count(section + "." + key)) {
          throw InvalidArgumentError("unknown config key '" + key + "' in [" + section + "]");
        }
      }
    }
  }

 private:
  static std::uint64_t parse_unsigned(const std::string& text, const std::string& key) {
    std::uint64_t v = 0;
    std::size_t pos = 0;
    try {
      v = std::stoull(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != text.size() || text.empty() || text[0] == '-') {
      throw InvalidArgumentError("'" + key + "' needs a nonnegative integer, got '" + text + "'");
    }
    return v;
  }

  const boost::property_tree::ptree& tree_;
  std::set<std::string> used_;
};

std::size_t worker_count(const ExperimentConfig& cfg) {
  std::size_t threads = cfg.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::min(threads, cfg.replicas);
}

std::string replica_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "replica_%03zu.csv", index);
  return buf;
}

void fit_series(SeriesSummary& s, double decades) {
  try {
    const TimeSeries series = s.series();
    s.fit = fit_power_law(series, trailing_decades(series, decades));
    if (series.size() >= kMinCrossoverPoints) s.crossover = detect_crossover(series);
  } catch (const Error& e) {
    s.fit_error = e.what();
  }
}

SeriesSummary reduce(const std::vector<std::vector<double>>& runs) {
  SeriesSummary s;
  const AveragedTrajectory avg = disorder_averaged_trajectory(runs);
  s.mean = avg.mean;
  s.std_error = avg.std_error;
  s.t.resize(s.mean.size());
  for (std::size_t i = 0; i < s.t.size(); ++i) s.t[i] = static_cast<double>(i + 1);
  return s;
}

void write_series(const std::filesystem::path& path, std::string_view column,
                  const SeriesSummary& s) {
  std::ostringstream out;
  write_header(out, {"t", column, "stderr"});
  for (std::size_t i = 0; i < s.t.size(); ++i) write_row(out, {s.t[i], s.mean[i], s.std_error[i]});
  write_file(path, out.str());
}

void append_fit(std::ostringstream& out, const std::string& label, const SeriesSummary& s) {
  if (s.fit) {
    out << format_fit_report(label, *s.fit, s.crossover);
  } else {
    out << "[" << label << "]\nerror = " << s.fit_error << '\n';
  }
}

}  // namespace

std::string_view to_string(ModelKind v) { return name_of(kModels, v); }
std::string_view to_string(OracleKind v) { return name_of(kOracles, v); }
std::string_view to_string(SnapshotPolicy v) { return name_of(kSnapshots, v); }
std::string_view to_string(SelectionMode v) { return name_of(kSelections, v); }
std::string_view to_string(PairConvention v) { return name_of(kConventions, v); }
std::string_view to_string(CouplingScale v) { return name_of(kScales, v); }

void ExperimentConfig::validate() const {
  if (generations < 1) throw InvalidArgumentError("generations must be >= 1");
  if (replicas < 1) throw InvalidArgumentError("replicas must be >= 1");
  if (n < 2) throw InvalidSizeError("need at least two spins");
  if (disorder.model != model) throw InvalidArgumentError("disorder model disagrees with model");
  disorder.validate();
  GAParams g = ga;
  g.genome_length = n;
  g.validate();
  if (ga.genome_length != 0 && ga.genome_length != n) {
    throw InvalidArgumentError("genome length must equal n");
  }
  LearnerState{t0, 0, learning_rate, t_floor}.validate();
  if (!(fit_decades > 0.0)) throw InvalidArgumentError("fit window must span > 0 decades");
  if (oracle == OracleKind::AnalyticChain && model != ModelKind::Chain) {
    throw InvalidArgumentError("the analytic chain oracle needs the chain model");
  }
  if (oracle == OracleKind::AnalyticSK && model != ModelKind::SK) {
    throw InvalidArgumentError("the analytic SK oracle needs the SK model");
  }
  if (oracle == OracleKind::Enumeration && n > kMaxEnumerationSize) {
    throw InvalidSizeError("the enumeration oracle is capped at 20 spins");
  }
  if (oracle == OracleKind::MCMC) mcmc.validate();
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return name == o.name && model == o.model && n == o.n && ga == o.ga &&
         disorder == o.disorder && sk == o.sk && t0 == o.t0 &&
         learning_rate == o.learning_rate && t_floor == o.t_floor &&
         generations == o.generations && replicas == o.replicas && seed == o.seed &&
         oracle == o.oracle && snapshot == o.snapshot && fit_decades == o.fit_decades &&
         mcmc.sweeps == o.mcmc.sweeps && mcmc.burn_in == o.mcmc.burn_in &&
         mcmc.thinning == o.mcmc.thinning && mcmc.chains == o.mcmc.chains &&
         mcmc.anneal_from == o.mcmc.anneal_from && threads == o.threads &&
         output_dir == o.output_dir;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto d = [](double v) { return format_double(v); };
  out << "[experiment]\n"
      << "name = " << cfg.name << '\n'
      << "model = " << to_string(cfg.model) << '\n'
      << "n = " << cfg.n << '\n'
      << "generations = " << cfg.generations << '\n'
      << "replicas = " << cfg.replicas << '\n'
      << "seed = " << cfg.seed << '\n'
      << "threads = " << cfg.threads << '\n'
      << "output_dir = " << cfg.output_dir.generic_string() << "\n\n";
  out << "[disorder]\n"
      << "mean = " << d(cfg.disorder.mean) << '\n'
      << "std = " << d(cfg.disorder.std) << '\n'
      << "sk_pair_convention = " << to_string(cfg.sk.convention) << '\n'
      << "sk_coupling_scale = " << to_string(cfg.sk.scale) << "\n\n";
  out << "[ga]\n"
      << "population_size = " << cfg.ga.population_size << '\n'
      << "tournament_size = " << cfg.ga.tournament_size << '\n'
      << "crossover_rate = " << d(cfg.ga.crossover_rate) << '\n'
      << "mutation_rate = " << d(cfg.ga.mutation_rate) << '\n'
      << "selection = " << to_string(cfg.ga.selection) << '\n'
      << "boltzmann_beta = " << d(cfg.ga.boltzmann_beta) << "\n\n";
  out << "[learner]\n"
      << "t0 = " << d(cfg.t0) << '\n'
      << "learning_rate = " << d(cfg.learning_rate) << '\n'
      << "t_floor = " << d(cfg.t_floor) << '\n'
      << "oracle = " << to_string(cfg.oracle) << '\n'
      << "snapshot_policy = " << to_string(cfg.snapshot) << "\n\n";
  out << "[analysis]\n"
      << "fit_decades = " << d(cfg.fit_decades) << "\n\n";
  out << "[mcmc]\n"
      << "sweeps = " << cfg.mcmc.sweeps << '\n'
      << "burn_in = " << cfg.mcmc.burn_in << '\n'
      << "thinning = " << cfg.mcmc.thinning << '\n'
      << "chains = " << cfg.mcmc.chains << '\n'
      << "anneal_from = " << d(cfg.mcmc.anneal_from) << '\n';
  return out.str();
}

ExperimentConfig parse_config(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InvalidArgumentError(std::string("malformed config: ") + e.message());
  }
  ConfigReader r(tree);
  ExperimentConfig cfg;
  std::string output_dir = cfg.output_dir.generic_string();
  r.read("experiment", "name", cfg.name);
  r.read_enum("experiment", "model", kModels, cfg.model);
  r.read("experiment", "n", cfg.n);
  r.read("experiment", "generations", cfg.generations);
  r.read("experiment", "replicas", cfg.replicas);
  r.read_seed("experiment", "seed", cfg.seed);
  r.read("experiment", "threads", cfg.threads);
  r.read("experiment", "output_dir", output_dir);
  r.read("disorder", "mean", cfg.disorder.mean);
  r.read("disorder", "std", cfg.disorder.std);
  r.read_enum("disorder", "sk_pair_convention", kConventions, cfg.sk.convention);
  r.read_enum("disorder", "sk_coupling_scale", kScales, cfg.sk.scale);
  r.read("ga", "population_size", cfg.ga.population_size);
  r.read("ga", "tournament_size", cfg.ga.tournament_size);
  r.read("ga", "crossover_rate", cfg.ga.crossover_rate);
  r.read("ga", "mutation_rate", cfg.ga.mutation_rate);
  r.read_enum("ga", "selection", kSelections, cfg.ga.selection);
  r.read("ga", "boltzmann_beta", cfg.ga.boltzmann_beta);
  // Without an explicit rate the default scales with N.
  bool explicit_rate = false;
  if (auto v = r.get("learner", "learning_rate")) {
    cfg.learning_rate = parse_double(*v);
    explicit_rate = true;
  }
  r.read("learner", "t0", cfg.t0);
  r.read("learner", "t_floor", cfg.t_floor);
  r.read_enum("learner", "oracle", kOracles, cfg.oracle);
  r.read_enum("learner", "snapshot_policy", kSnapshots, cfg.snapshot);
  r.read("analysis", "fit_decades", cfg.fit_decades);
  r.read("mcmc", "sweeps", cfg.mcmc.sweeps);
  r.read("mcmc", "burn_in", cfg.mcmc.burn_in);
  r.read("mcmc", "thinning", cfg.mcmc.thinning);
  r.read("mcmc", "chains", cfg.mcmc.chains);
  r.read("mcmc", "anneal_from", cfg.mcmc.anneal_from);
  r.reject_unknown();

  cfg.output_dir = output_dir;
  cfg.disorder.model = cfg.model;
  cfg.ga.genome_length = cfg.n;
  if (!explicit_rate) cfg.learning_rate = kDefaultLearningRateTimesN / static_cast<double>(cfg.n);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ReplicaResult run_replica(const ExperimentConfig& cfg, std::size_t index) {
  ReplicaResult result;
  result.index = index;
  try {
    const Seed disorder_seed = derive_seed(cfg.seed, 2 * index);
    const Seed ga_seed = derive_seed(cfg.seed, 2 * index + 1);
    auto model = std::make_shared<const Disorder>(
        cfg.model == ModelKind::Chain
            ? Disorder(sample_chain_disorder(cfg.n, cfg.disorder, disorder_seed))
            : Disorder(sample_sk_disorder(cfg.n, cfg.disorder, disorder_seed, cfg.sk)));
    if (const auto* chain = std::get_if<ChainDisorder>(model.get())) {
      result.ground_energy = chain_ground_state(*chain).energy;
    }

    auto rule = std::make_shared<const QuadratureRule>(QuadratureRule::gauss_hermite());
    const EnergyOracle oracle = [&]() {
      switch (cfg.oracle) {
        case OracleKind::AnalyticChain:
          return make_analytic_chain_oracle(cfg.disorder, cfg.n, rule);
        case OracleKind::AnalyticSK:
          return make_analytic_sk_oracle(cfg.disorder, cfg.n, rule);
        case OracleKind::MCMC:
          return make_mcmc_oracle(model, cfg.mcmc, derive_seed(ga_seed, ~std::uint64_t{0}));
        case OracleKind::Enumeration:
          break;
      }
      return make_enumeration_oracle(*model);
    }();

    GAParams ga = cfg.ga;
    ga.genome_length = cfg.n;
    Population pop = init_population(ga, *model, derive_seed(ga_seed, 0));
    LearnerState state{cfg.t0, 0, cfg.learning_rate, cfg.t_floor};
    double u_gibbs = oracle(state.temperature);
    result.rows.reserve(cfg.generations + 1);
    result.rows.push_back({0, state.temperature, empirical_energy(pop), u_gibbs, pop.best_energy()});
    for (std::size_t t = 1; t <= cfg.generations; ++t) {
      GenerationOutcome out = step_generation_detailed(pop, ga, *model, derive_seed(ga_seed, t));
      pop = std::move(out.population);
      const double u_ga = cfg.snapshot == SnapshotPolicy::PostSelection ? out.post_selection_energy
                                                                        : empirical_energy(pop);
      state = learner_step_with(state, u_ga, u_gibbs);
      u_gibbs = oracle(state.temperature);
      result.rows.push_back({t, state.temperature, u_ga, u_gibbs, pop.best_energy()});
    }
    result.ok = true;
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = e.what();
    result.rows.clear();
  }
  return result;
}

RunSummary run_campaign(const ExperimentConfig& cfg) {
  cfg.validate();
  RunSummary summary;
  summary.config = cfg;
  summary.replicas.resize(cfg.replicas);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.replicas; i = next++) {
      summary.replicas[i] = run_replica(cfg, i);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < worker_count(cfg); ++w) pool.emplace_back(work);
    work();
  }

  std::vector<std::vector<double>> temps, residuals, fitness;
  const double n = static_cast<double>(cfg.n);
  for (auto& r : summary.replicas) {
    if (!r.ok) continue;
    std::vector<double> times, temp, best, fit;
    for (std::size_t k = 1; k < r.rows.size(); ++k) {
      times.push_back(static_cast<double>(r.rows[k].t));
      temp.push_back(r.rows[k].temperature);
      best.push_back(r.rows[k].best_energy);
      fit.push_back(-r.rows[k].u_ga / n);
    }
    if (cfg.model == ModelKind::Chain) {
      try {
        residuals.push_back(
            residual_energy_series(TimeSeries(times, best), r.ground_energy).values());
      } catch (const Error& e) {
        r.ok = false;
        r.error = e.what();
        continue;
      }
    }
    temps.push_back(std::move(temp));
    fitness.push_back(std::move(fit));
    ++summary.succeeded;
  }
  if (summary.succeeded == 0) {
    std::string why = summary.replicas.empty() ? "" : summary.replicas.front().error;
    throw Error(ErrorCategory::Consistency, "every replica failed; first error: " + why);
  }

  summary.temperature = reduce(temps);
  fit_series(summary.temperature, cfg.fit_decades);
  if (cfg.model == ModelKind::Chain) {
    summary.residual = reduce(residuals);
    fit_series(*summary.residual, cfg.fit_decades);
  } else {
    summary.fitness = reduce(fitness);
    fit_series(*summary.fitness, cfg.fit_decades);
  }
  return summary;
}

RunSummary run_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, cfg.output_dir); }

RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  RunSummary summary = run_campaign(cfg);
  write_file(dir / "config.ini", serialize_config(cfg));
  for (const auto& r : summary.replicas) {
    if (!r.ok) continue;
    std::ostringstream out;
    write_header(out, {"t", "temperature", "u_ga", "u_gibbs", "best_energy"});
    for (const auto& row : r.rows) {
      write_row(out, {static_cast<double>(row.t), row.temperature, row.u_ga, row.u_gibbs,
                      row.best_energy});
    }
    write_file(dir / "replicas" / replica_file_name(r.index), out.str());
  }
  emit_plot_data(summary, dir);
  return summary;
}

void emit_plot_data(const RunSummary& summary, const std::filesystem::path& dir) {
  write_series(dir / "temperature.csv", "temperature", summary.temperature);
  if (summary.residual) write_series(dir / "residual.csv", "residual", *summary.residual);
  if (summary.fitness) write_series(dir / "fitness.csv", "fitness", *summary.fitness);
  write_file(dir / "fit_report.txt", format_run_report(summary));
}

std::string format_run_report(const RunSummary& summary) {
  const auto& cfg = summary.config;
  std::ostringstream out;
  out << "[run]\n"
      << "name = " << cfg.name << '\n'
      << "model = " << to_string(cfg.model) << '\n'
      << "n = " << cfg.n << '\n'
      << "generations = " << cfg.generations << '\n'
      << "replicas = " << cfg.replicas << '\n'
      << "succeeded = " << summary.succeeded << '\n';
  for (const auto& r : summary.replicas) {
    if (!r.ok) out << "failed_replica_" << r.index << " = " << r.error << '\n';
  }
  out << '\n';
  append_fit(out, "temperature", summary.temperature);
  if (summary.residual) {
    out << '\n';
    append_fit(out, "residual", *summary.residual);
  }
  if (summary.fitness) {
    out << '\n';
    append_fit(out, "fitness", *summary.fitness);
  }
  return out.str();
}

}  // namespace gatemp
