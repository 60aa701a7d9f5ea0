#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gatemp/rng.hpp"
#include "gatemp/spin_systems.hpp"

namespace gatemp {

struct MCMCOptions {
  std::size_t sweeps = 10000;  // total, burn-in included
  std::size_t burn_in = 1000;
  std::size_t thinning = 10;
  std::size_t chains = 10;
  // When above the target temperature, burn-in cools geometrically from here.
  double anneal_from = 0.0;

  void validate() const;
};

/// Single-spin-flip Metropolis chain with typewriter site order. Tracks the
/// current energy incrementally and, for SK, the local fields.
class MetropolisChain {
 public:
  MetropolisChain(const Disorder& model, SpinConfig start);

  const SpinConfig& state() const noexcept { return state_; }
  double energy() const noexcept { return energy_; }

  // N sequential proposals at temperature T; returns the number accepted.
  std::size_t sweep(double temperature, Rng& rng);

  // Recomputes the cached energy from scratch.
  void resync();

 private:
  const Disorder* model_;
  SpinConfig state_;
  double energy_ = 0.0;
  std::vector<double> fields_;  // SK only: h_i = sum_j J_ij s_j

  // Chain only: acceptance probabilities per site for the four neighbour
  // sign patterns, rebuilt when the temperature changes.
  std::vector<double> accept_table_;
  double table_temperature_ = 0.0;
  double last_temperature_ = 0.0;
};

SpinConfig metropolis_sweep(const SpinConfig& s, const Disorder& model, double temperature,
                            Seed seed);

struct EnergyEstimate {
  double mean;
  double std_error;  // between-chain; NaN with a single chain
};

EnergyEstimate estimate_internal_energy(const Disorder& model, double temperature,
                                        const MCMCOptions& opts, Seed seed);

struct GibbsExpectation {
  double internal_energy;
  double partition_function;      // may overflow to inf at low T
  double log_partition_function;
};

// Exact Gibbs averages by full enumeration of the 2^N states (N <= 20).
GibbsExpectation exact_gibbs_expectation(const Disorder& model, double temperature);
GibbsExpectation gibbs_expectation(std::span<const double> energies, double temperature);

}  // namespace gatemp
