#include "gatemp/gibbs_mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "gatemp/error.hpp"

namespace gatemp {

namespace {

void require_positive_temperature(double temperature) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
}

// 53 random bits mapped onto [0, 1).
double unit_interval(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void MCMCOptions::validate() const {
  if (sweeps == 0 || chains == 0) throw InvalidArgumentError("sweeps and chains must be positive");
  if (burn_in == 0 || burn_in >= sweeps) {
    throw InvalidArgumentError("burn-in must satisfy 0 < burn_in < sweeps");
  }
  if (thinning == 0) throw InvalidArgumentError("thinning must be >= 1");
  if (!(anneal_from >= 0.0)) throw InvalidArgumentError("anneal start must be nonnegative");
}

MetropolisChain::MetropolisChain(const Disorder& model, SpinConfig start)
    : model_(&model), state_(std::move(start)) {
  if (state_.size() != spin_count(model)) {
    throw DimensionError("start configuration does not match the model size");
  }
  resync();
}

void MetropolisChain::resync() {
  energy_ = gatemp::energy(state_, *model_);
  if (const auto* sk = std::get_if<SKDisorder>(model_)) {
    const std::size_t n = sk->spin_count();
    fields_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = sk->row(i);
      double h = 0.0;
      for (std::size_t j = 0; j < n; ++j) h += row[j] * state_[j];
      fields_[i] = h;
    }
  }
}

std::size_t MetropolisChain::sweep(double temperature, Rng& rng) {
  require_positive_temperature(temperature);
  const double beta = 1.0 / temperature;
  std::size_t accepted = 0;

  if (const auto* chain = std::get_if<ChainDisorder>(model_)) {
    const auto bonds = chain->bonds();
    const std::size_t n = state_.size();
    // Tables only pay off once a temperature repeats; annealing changes it
    // every sweep.
    const bool use_table = temperature == last_temperature_;
    last_temperature_ = temperature;
    if (!use_table) {
      for (std::size_t k = 0; k < n; ++k) {
        const double delta = flip_delta(state_, *chain, k);
        if (delta <= 0.0 || unit_interval(rng) < std::exp(-beta * delta)) {
          energy_ += delta;
          state_.flip(k);
          ++accepted;
        }
      }
      return accepted;
    }
    if (table_temperature_ != temperature) {
      // Entry 4k + 2a + b: spin k aligned (a) / anti-aligned with its left
      // neighbour and likewise (b) with its right one.
      accept_table_.assign(4 * n, 1.0);
      for (std::size_t k = 0; k < n; ++k) {
        const double left = k > 0 ? bonds[k - 1] : 0.0;
        const double right = k + 1 < n ? bonds[k] : 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const double delta = 2.0 * ((a ? left : -left) + (b ? right : -right));
            accept_table_[4 * k + 2 * a + b] = delta <= 0.0 ? 1.0 : std::exp(-beta * delta);
          }
        }
      }
      table_temperature_ = temperature;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const int a = k > 0 && state_[k - 1] == state_[k];
      const int b = k + 1 < n && state_[k + 1] == state_[k];
      const double p = accept_table_[4 * k + 2 * a + b];
      if (p >= 1.0 || unit_interval(rng) < p) {
        energy_ += flip_delta(state_, *chain, k);
        state_.flip(k);
        ++accepted;
      }
    }
    return accepted;
  }

  const auto& sk = std::get<SKDisorder>(*model_);
  const double c = sk.pair_prefactor();
  const std::size_t n = sk.spin_count();
  for (std::size_t k = 0; k < n; ++k) {
    const double delta = 2.0 * c * state_[k] * fields_[k];
    if (delta <= 0.0 || unit_interval(rng) < std::exp(-beta * delta)) {
      const double change = -2.0 * state_[k];
      state_.flip(k);
      energy_ += delta;
      const auto row = sk.row(k);
      for (std::size_t i = 0; i < n; ++i) fields_[i] += row[i] * change;
      ++accepted;
    }
  }
  return accepted;
}

SpinConfig metropolis_sweep(const SpinConfig& s, const Disorder& model, double temperature,
                            Seed seed) {
  MetropolisChain chain(model, s);
  Rng rng = make_rng(seed);
  chain.sweep(temperature, rng);
  return chain.state();
}

EnergyEstimate estimate_internal_energy(const Disorder& model, double temperature,
                                        const MCMCOptions& opts, Seed seed) {
  require_positive_temperature(temperature);
  opts.validate();
  const std::size_t n = spin_count(model);
  std::vector<double> chain_means;
  chain_means.reserve(opts.chains);
  for (std::size_t c = 0; c < opts.chains; ++c) {
    Rng rng = make_rng(derive_seed(seed, c));
    MetropolisChain chain(model, SpinConfig::random(n, rng));
    const bool anneal = opts.anneal_from > temperature;
    for (std::size_t s = 0; s < opts.burn_in; ++s) {
      const double frac = static_cast<double>(s) / static_cast<double>(opts.burn_in);
      chain.sweep(anneal ? opts.anneal_from * std::pow(temperature / opts.anneal_from, frac)
                         : temperature,
                  rng);
    }
    double sum = 0.0;
    std::size_t samples = 0;
    for (std::size_t s = opts.burn_in; s < opts.sweeps; ++s) {
      chain.sweep(temperature, rng);
      if ((s - opts.burn_in + 1) % opts.thinning == 0) {
        chain.resync();
        sum += chain.energy();
        ++samples;
      }
    }
    if (samples == 0) {
      chain.resync();
      sum = chain.energy();
      samples = 1;
    }
    chain_means.push_back(sum / static_cast<double>(samples));
  }

  double mean = 0.0;
  for (double v : chain_means) mean += v;
  mean /= static_cast<double>(chain_means.size());
  if (chain_means.size() < 2) return {mean, std::numeric_limits<double>::quiet_NaN()};
  double var = 0.0;
  for (double v : chain_means) var += (v - mean) * (v - mean);
  var /= static_cast<double>(chain_means.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(chain_means.size()))};
}

GibbsExpectation gibbs_expectation(std::span<const double> energies, double temperature) {
  require_positive_temperature(temperature);
  if (energies.empty()) throw InvalidArgumentError("no states to average over");
  const double beta = 1.0 / temperature;
  const double emin = *std::min_element(energies.begin(), energies.end());
  double weight_sum = 0.0;
  double energy_sum = 0.0;
  for (double e : energies) {
    const double w = std::exp(-beta * (e - emin));
    weight_sum += w;
    energy_sum += w * e;
  }
  const double log_z = std::log(weight_sum) - beta * emin;
  return {energy_sum / weight_sum, std::exp(log_z), log_z};
}

GibbsExpectation exact_gibbs_expectation(const Disorder& model, double temperature) {
  require_positive_temperature(temperature);
  const auto landscape = enumerate_landscape(model);
  std::vector<double> energies;
  energies.reserve(landscape.size());
  for (const auto& p : landscape) energies.push_back(p.energy);
  return gibbs_expectation(energies, temperature);
}

}  // namespace gatemp
