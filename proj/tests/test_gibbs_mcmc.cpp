#include <doctest.h>

#include <cmath>
#include <vector>

#include "gatemp/error.hpp"
#include "gatemp/gibbs_mcmc.hpp"

using namespace gatemp;

namespace {

const DisorderParams kChain{0.0, 1.0, ModelKind::Chain};
const DisorderParams kSK{0.0, 1.0, ModelKind::SK};

double sample_sd(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("option validation") {
  CHECK_THROWS_AS((MCMCOptions{100, 100, 1, 1, 0.0}.validate()), InvalidArgumentError);
  CHECK_THROWS_AS((MCMCOptions{100, 10, 0, 1, 0.0}.validate()), InvalidArgumentError);
  CHECK_THROWS_AS((MCMCOptions{100, 10, 1, 0, 0.0}.validate()), InvalidArgumentError);
  CHECK_NOTHROW(MCMCOptions{}.validate());
}

TEST_CASE("infinite temperature accepts everything") {
  for (std::uint64_t r = 0; r < 5; ++r) {
    const Disorder chain = sample_chain_disorder(200, kChain, r);
    const Disorder sk = sample_sk_disorder(50, kSK, r);
    Rng rng = make_rng(r);
    MetropolisChain a(chain, SpinConfig::random(200, rng));
    MetropolisChain b(sk, SpinConfig::random(50, rng));
    CHECK(a.sweep(1e9, rng) >= 199);
    CHECK(b.sweep(1e9, rng) >= 49);
  }
}

TEST_CASE("tracked energy stays equal to the recomputed energy") {
  for (std::uint64_t r = 0; r < 4; ++r) {
    const Disorder chain = sample_chain_disorder(60, kChain, r);
    const Disorder sk = sample_sk_disorder(30, kSK, r);
    Rng rng = make_rng(100 + r);
    MetropolisChain a(chain, SpinConfig::random(60, rng));
    MetropolisChain b(sk, SpinConfig::random(30, rng));
    for (int s = 0; s < 50; ++s) {
      a.sweep(s % 2 ? 0.7 : 1.3, rng);
      b.sweep(0.9, rng);
    }
    CHECK(a.energy() == doctest::Approx(energy(a.state(), chain)).epsilon(1e-10));
    CHECK(b.energy() == doctest::Approx(energy(b.state(), sk)).epsilon(1e-10));
  }
}

TEST_CASE("ground state is frozen near zero temperature") {
  const auto d = sample_chain_disorder(100, kChain, 17);
  const auto g = chain_ground_state(d);
  SpinConfig s = g.config;
  for (std::uint64_t k = 0; k < 20; ++k) s = metropolis_sweep(s, d, 1e-12, k);
  CHECK(s == g.config);
}

TEST_CASE("exact expectation by enumeration") {
  const Disorder bond = ChainDisorder({1.0}, kChain);
  CHECK(exact_gibbs_expectation(bond, 1.0).internal_energy ==
        doctest::Approx(-std::tanh(1.0)).epsilon(1e-14));
  CHECK(exact_gibbs_expectation(bond, 1.0).internal_energy == doctest::Approx(-0.7616).epsilon(1e-4));

  const Disorder d = sample_chain_disorder(10, kChain, 3);
  double avg = 0.0;
  for (const auto& p : enumerate_landscape(d)) avg += p.energy;
  avg /= 1024.0;
  const auto hot = exact_gibbs_expectation(d, 1e12);
  CHECK(hot.internal_energy == doctest::Approx(avg).epsilon(1e-9));
  CHECK(hot.partition_function == doctest::Approx(1024.0).epsilon(1e-9));
  CHECK(hot.log_partition_function == doctest::Approx(std::log(1024.0)).epsilon(1e-9));
  CHECK_THROWS_AS(exact_gibbs_expectation(Disorder(sample_chain_disorder(21, kChain, 1)), 1.0),
                  InvalidSizeError);
  CHECK_THROWS_AS(exact_gibbs_expectation(d, 0.0), DomainError);
}

TEST_CASE("Metropolis agrees with enumeration at small N") {
  const MCMCOptions opts{20000, 2000, 5, 10, 0.0};
  const Disorder chain = sample_chain_disorder(10, kChain, 5);
  const Disorder sk = sample_sk_disorder(10, kSK, 5);
  for (const Disorder* d : {&chain, &sk}) {
    const double exact = exact_gibbs_expectation(*d, 1.0).internal_energy;
    const auto est = estimate_internal_energy(*d, 1.0, opts, 99);
    CHECK(std::abs(est.mean - exact) < 3.0 * est.std_error);
  }
  const auto single = estimate_internal_energy(chain, 1.0, {1000, 100, 1, 1, 0.0}, 1);
  CHECK(std::isnan(single.std_error));
}

TEST_CASE("paramagnetic limit") {
  const Disorder d = sample_chain_disorder(400, kChain, 8);
  const auto est = estimate_internal_energy(d, 1e6, {2000, 200, 10, 10, 0.0}, 4);
  CHECK(std::abs(est.mean) < 4.0 * est.std_error);
}

TEST_CASE("two-spin sampler reproduces Gibbs probabilities") {
  const Disorder d = ChainDisorder({0.6}, kChain);
  const double temperature = 1.0;
  const auto land = enumerate_landscape(d);
  std::vector<double> energies;
  for (const auto& p : land) energies.push_back(p.energy);
  const auto g = gibbs_expectation(energies, temperature);

  Rng rng = make_rng(12);
  MetropolisChain chain(d, SpinConfig::all_up(2));
  std::vector<double> counts(4, 0.0);
  const std::size_t samples = 1'000'000;
  for (std::size_t s = 0; s < samples; ++s) {
    for (int k = 0; k < 10; ++k) chain.sweep(temperature, rng);
    const auto& st = chain.state();
    counts[(st[0] < 0 ? 2 : 0) + (st[1] < 0 ? 1 : 0)] += 1.0;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = std::exp(-energies[i] / temperature) / g.partition_function;
    CHECK(std::abs(counts[i] - p * samples) < 3.0 * std::sqrt(samples * p * (1 - p)));
  }
}

TEST_CASE("estimates tighten with more sweeps") {
  const Disorder d = sample_sk_disorder(12, kSK, 21);
  const double exact = exact_gibbs_expectation(d, 0.5).internal_energy;
  const auto coarse = estimate_internal_energy(d, 0.5, {2000, 200, 5, 10, 0.0}, 3);
  const auto fine = estimate_internal_energy(d, 0.5, {40000, 4000, 5, 10, 0.0}, 3);
  CHECK(fine.std_error < coarse.std_error);
  CHECK(std::abs(fine.mean - exact) < 3.0 * fine.std_error);
}

TEST_CASE("energy per spin self-averages") {
  const MCMCOptions opts{2000, 500, 10, 2, 0.0};
  std::vector<double> spread;
  for (std::size_t n : {100, 400, 1600}) {
    std::vector<double> per_spin;
    for (std::uint64_t r = 0; r < 10; ++r) {
      const Disorder d = sample_chain_disorder(n, kChain, 1000 * n + r);
      per_spin.push_back(estimate_internal_energy(d, 1.0, opts, r).mean / static_cast<double>(n));
    }
    spread.push_back(sample_sd(per_spin));
  }
  CHECK(spread[1] < spread[0]);
  CHECK(spread[2] < spread[1]);
}
