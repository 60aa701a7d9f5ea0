#include "gatemp/ga_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gatemp/error.hpp"

namespace gatemp {

// Assembles populations whose energies were maintained by the caller.
class PopulationBuilder {
 public:
  static Population make(std::vector<SpinConfig> members, std::vector<double> energies,
                         std::uint64_t generation) {
    return Population(std::move(members), std::move(energies), generation);
  }
};

namespace {

void require_rate(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgumentError(std::string(name) + " must lie in [0, 1]");
  }
}

void require_nonempty(const Population& pop) {
  if (pop.size() == 0) throw InvalidArgumentError("population is empty");
}

enum Stream : std::uint64_t { kSelection = 1, kCrossover = 2, kMutation = 3 };

}  // namespace

void GAParams::validate() const {
  if (population_size == 0) throw InvalidArgumentError("population size must be positive");
  if (population_size % 2 != 0) {
    throw InvalidArgumentError("population size must be even for crossover pairing");
  }
  if (genome_length == 0) throw InvalidArgumentError("genome length must be positive");
  if (tournament_size < 1 || tournament_size > population_size) {
    throw InvalidArgumentError("tournament size must satisfy 1 <= sigma <= M");
  }
  require_rate(crossover_rate, "crossover rate");
  require_rate(mutation_rate, "mutation rate");
  if (!(boltzmann_beta >= 0.0)) throw InvalidArgumentError("beta_s must be nonnegative");
}

Population::Population(std::vector<SpinConfig> members, const Disorder& model,
                       std::uint64_t generation)
    : members_(std::move(members)), generation_(generation) {
  energies_.reserve(members_.size());
  for (const auto& m : members_) energies_.push_back(energy(m, model));
}

double Population::best_energy() const {
  require_nonempty(*this);
  return *std::min_element(energies_.begin(), energies_.end());
}

std::size_t Population::best_index() const {
  require_nonempty(*this);
  return static_cast<std::size_t>(
      std::distance(energies_.begin(), std::min_element(energies_.begin(), energies_.end())));
}

Population init_population(const GAParams& params, const Disorder& model, Seed seed) {
  params.validate();
  if (params.genome_length != spin_count(model)) {
    throw DimensionError("genome length does not match the model size");
  }
  std::vector<SpinConfig> members;
  members.reserve(params.population_size);
  for (std::size_t k = 0; k < params.population_size; ++k) {
    Rng rng = make_rng(derive_seed(seed, k));
    members.push_back(SpinConfig::random(params.genome_length, rng));
  }
  return Population(std::move(members), model, 0);
}

Population tournament_select(const Population& pop, const GAParams& params, Seed seed) {
  require_nonempty(pop);
  const std::size_t m = pop.size();
  if (params.tournament_size < 1 || params.tournament_size > m) {
    throw InvalidArgumentError("tournament size must satisfy 1 <= sigma <= M");
  }
  Rng rng = make_rng(seed);
  const auto& energies = pop.energies();
  std::vector<SpinConfig> members;
  std::vector<double> cached;
  members.reserve(m);
  cached.reserve(m);
  // Each tournament draws sigma distinct members by a partial Fisher-Yates
  // pass; `order` stays a permutation between slots.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t slot = 0; slot < m; ++slot) {
    std::size_t winner = 0;
    for (std::size_t k = 0; k < params.tournament_size; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, m - 1);
      std::swap(order[k], order[pick(rng)]);
      const std::size_t challenger = order[k];
      if (k == 0 || energies[challenger] < energies[winner]) winner = challenger;
    }
    members.push_back(pop.members()[winner]);
    cached.push_back(energies[winner]);
  }
  return PopulationBuilder::make(std::move(members), std::move(cached), pop.generation());
}

Population boltzmann_select(const Population& pop, double beta_s, Seed seed) {
  require_nonempty(pop);
  if (!(beta_s >= 0.0)) throw InvalidArgumentError("beta_s must be nonnegative");
  const auto& energies = pop.energies();
  const double emin = *std::min_element(energies.begin(), energies.end());
  std::vector<double> weights(energies.size());
  for (std::size_t k = 0; k < energies.size(); ++k) {
    weights[k] = std::exp(-beta_s * (energies[k] - emin));
  }
  Rng rng = make_rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<SpinConfig> members;
  std::vector<double> cached;
  members.reserve(pop.size());
  cached.reserve(pop.size());
  for (std::size_t slot = 0; slot < pop.size(); ++slot) {
    const std::size_t k = pick(rng);
    members.push_back(pop.members()[k]);
    cached.push_back(energies[k]);
  }
  return PopulationBuilder::make(std::move(members), std::move(cached), pop.generation());
}

Population select(const Population& pop, const GAParams& params, Seed seed) {
  if (params.selection == SelectionMode::Boltzmann) {
    return boltzmann_select(pop, params.boltzmann_beta, seed);
  }
  return tournament_select(pop, params, seed);
}

std::pair<SpinConfig, SpinConfig> single_point_crossover(const SpinConfig& a, const SpinConfig& b,
                                                         std::size_t cut) {
  if (a.size() != b.size()) throw DimensionError("crossover parents differ in length");
  if (cut < 1 || cut >= a.size()) throw InvalidArgumentError("cut must lie in [1, N - 1]");
  SpinConfig child_a = a;
  SpinConfig child_b = b;
  child_a.splice_tail(b, cut);
  child_b.splice_tail(a, cut);
  return {std::move(child_a), std::move(child_b)};
}

Population crossover(const Population& pop, double p_c, const Disorder& model, Seed seed) {
  require_nonempty(pop);
  require_rate(p_c, "crossover rate");
  const std::size_t m = pop.size();
  if (m % 2 != 0) throw InvalidArgumentError("crossover needs an even population");
  std::vector<SpinConfig> members = pop.members();
  std::vector<double> cached = pop.energies();
  const std::size_t n = members.front().size();
  if (p_c == 0.0 || n < 2) {
    return PopulationBuilder::make(std::move(members), std::move(cached), pop.generation());
  }

  Rng rng = make_rng(seed);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution mate(p_c);
  std::uniform_int_distribution<std::size_t> cut_point(1, n - 1);
  for (std::size_t k = 0; k + 1 < m; k += 2) {
    const std::size_t a = order[k];
    const std::size_t b = order[k + 1];
    if (!mate(rng)) continue;
    auto [child_a, child_b] = single_point_crossover(members[a], members[b], cut_point(rng));
    members[a] = std::move(child_a);
    members[b] = std::move(child_b);
    cached[a] = energy(members[a], model);
    cached[b] = energy(members[b], model);
  }
  return PopulationBuilder::make(std::move(members), std::move(cached), pop.generation());
}

Population mutate(const Population& pop, double p_m, const Disorder& model, Seed seed) {
  require_nonempty(pop);
  require_rate(p_m, "mutation rate");
  std::vector<SpinConfig> members = pop.members();
  std::vector<double> cached = pop.energies();
  if (p_m == 0.0) {
    return PopulationBuilder::make(std::move(members), std::move(cached), pop.generation());
  }
  for (std::size_t k = 0; k < members.size(); ++k) {
    SpinConfig& member = members[k];
    const std::size_t n = member.size();
    bool changed = false;
    if (p_m == 1.0) {
      member = member.negated();
      changed = true;
    } else {
      // Jump straight to the next flipped site; gaps are geometric.
      Rng rng = make_rng(derive_seed(seed, k));
      std::geometric_distribution<std::size_t> gap(p_m);
      for (std::size_t site = gap(rng); site < n; site += 1 + gap(rng)) {
        member.flip(site);
        changed = true;
      }
    }
    if (changed) cached[k] = energy(member, model);
  }
  return PopulationBuilder::make(std::move(members), std::move(cached), pop.generation());
}

GenerationOutcome step_generation_detailed(const Population& pop, const GAParams& params,
                                           const Disorder& model, Seed seed) {
  params.validate();
  Population selected = select(pop, params, derive_seed(seed, kSelection));
  const double post_selection = empirical_energy(selected);
  Population crossed =
      crossover(selected, params.crossover_rate, model, derive_seed(seed, kCrossover));
  Population mutated =
      mutate(crossed, params.mutation_rate, model, derive_seed(seed, kMutation));
  auto members = mutated.members();
  auto energies = mutated.energies();
  return {PopulationBuilder::make(std::move(members), std::move(energies), pop.generation() + 1),
          post_selection};
}

Population step_generation(const Population& pop, const GAParams& params,
                           const Disorder& model, Seed seed) {
  return step_generation_detailed(pop, params, model, seed).population;
}

double empirical_energy(const Population& pop) {
  require_nonempty(pop);
  const auto& e = pop.energies();
  return std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
}

}  // namespace gatemp
