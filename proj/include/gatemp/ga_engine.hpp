#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "gatemp/rng.hpp"
#include "gatemp/spin_systems.hpp"

namespace gatemp {

enum class SelectionMode { Tournament, Boltzmann };

struct GAParams {
  std::size_t population_size = 100;  // M
  std::size_t genome_length = 0;      // N
  std::size_t tournament_size = 2;    // sigma
  double crossover_rate = 0.1;        // p_c
  double mutation_rate = 0.001;       // p_m
  SelectionMode selection = SelectionMode::Tournament;
  double boltzmann_beta = 0.0;        // beta_s, Boltzmann mode only

  void validate() const;
  bool operator==(const GAParams&) const = default;
};

/// The GA ensemble at one generation. Fitness is -energy.
class Population {
 public:
  Population() = default;
  Population(std::vector<SpinConfig> members, const Disorder& model,
             std::uint64_t generation = 0);

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<SpinConfig>& members() const noexcept { return members_; }
  const std::vector<double>& energies() const noexcept { return energies_; }
  std::uint64_t generation() const noexcept { return generation_; }

  double best_energy() const;
  std::size_t best_index() const;

 private:
  friend class PopulationBuilder;
  Population(std::vector<SpinConfig> members, std::vector<double> energies,
             std::uint64_t generation)
      : members_(std::move(members)), energies_(std::move(energies)), generation_(generation) {}

  std::vector<SpinConfig> members_;
  std::vector<double> energies_;
  std::uint64_t generation_ = 0;
};

Population init_population(const GAParams& params, const Disorder& model, Seed seed);

// Each slot takes the lowest-energy member of sigma distinct members drawn
// uniformly; slots are independent. Ties go to the earliest draw.
Population tournament_select(const Population& pop, const GAParams& params, Seed seed);

// M draws with probability proportional to exp(-beta_s E).
Population boltzmann_select(const Population& pop, double beta_s, Seed seed);

// Selection by whichever mode params declares.
Population select(const Population& pop, const GAParams& params, Seed seed);

// Children swap tails after position `cut`, 1 <= cut <= N - 1.
std::pair<SpinConfig, SpinConfig> single_point_crossover(const SpinConfig& a, const SpinConfig& b,
                                                         std::size_t cut);

// Members are paired by a uniform random perfect matching; each pair swaps
// tails after a cut drawn from {1, ..., N-1} with probability p_c. Children
// keep their parents' slots.
Population crossover(const Population& pop, double p_c, const Disorder& model, Seed seed);

// Every site flips independently with probability p_m. Member k draws from
// its own stream derived from (seed, k).
Population mutate(const Population& pop, double p_m, const Disorder& model, Seed seed);

struct GenerationOutcome {
  Population population;       // after selection, crossover and mutation
  double post_selection_energy; // U_GA of the intermediate selected population
};

// selection -> crossover -> mutation; generation counter + 1.
GenerationOutcome step_generation_detailed(const Population& pop, const GAParams& params,
                                           const Disorder& model, Seed seed);
Population step_generation(const Population& pop, const GAParams& params,
                           const Disorder& model, Seed seed);

// U_GA = (1/M) sum_l H(s(t, l)) over the cached energies.
double empirical_energy(const Population& pop);

}  // namespace gatemp
