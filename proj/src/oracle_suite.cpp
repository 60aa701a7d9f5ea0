#include "gatemp/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gatemp/analytic_oracles.hpp"
#include "gatemp/gibbs_mcmc.hpp"
#include "gatemp/spin_systems.hpp"
#include "gatemp/text_io.hpp"

namespace gatemp {

namespace {

OracleCheck check(std::string name, double discrepancy, double tolerance) {
  return {std::move(name), discrepancy <= tolerance, discrepancy, tolerance};
}

double landscape_minimum(const Disorder& d) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : enumerate_landscape(d)) best = std::min(best, p.energy);
  return best;
}

}  // namespace

std::vector<OracleCheck> run_oracle_suite(Seed seed) {
  std::vector<OracleCheck> out;
  const DisorderParams chain_params{0.0, 1.0, ModelKind::Chain};
  const DisorderParams sk_params{0.0, 1.0, ModelKind::SK};

  // Gauge-unwound ground state against exhaustive search.
  double worst = 0.0;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const Disorder d = sample_chain_disorder(10, chain_params, derive_seed(seed, r));
    worst = std::max(worst, std::abs(chain_ground_state(std::get<ChainDisorder>(d)).energy -
                                     landscape_minimum(d)));
  }
  out.push_back(check("chain_ground_state_vs_enumeration", worst, 0.0));

  // Local flip energies against full recomputation.
  worst = 0.0;
  for (std::uint64_t r = 0; r < 5; ++r) {
    const Disorder chain = sample_chain_disorder(12, chain_params, derive_seed(seed, 100 + r));
    const Disorder sk = sample_sk_disorder(12, sk_params, derive_seed(seed, 200 + r));
    Rng rng = make_rng(derive_seed(seed, 300 + r));
    const SpinConfig s = SpinConfig::random(12, rng);
    for (std::size_t k = 0; k < 12; ++k) {
      SpinConfig t = s;
      t.flip(k);
      worst = std::max(worst, std::abs(energy(t, chain) - energy(s, chain) -
                                       flip_delta(s, std::get<ChainDisorder>(chain), k)));
      worst = std::max(worst, std::abs(energy(t, sk) - energy(s, sk) -
                                       flip_delta(s, std::get<SKDisorder>(sk), k)));
    }
  }
  out.push_back(check("flip_delta_vs_recompute", worst, 1e-12));

  // Metropolis against exact enumeration, in units of the MCMC standard error.
  MCMCOptions mcmc{20000, 2000, 5, 8, 0.0};
  double worst_z = 0.0;
  for (std::uint64_t r = 0; r < 4; ++r) {
    const bool use_sk = r % 2 == 1;
    const Disorder d = use_sk ? Disorder(sample_sk_disorder(10, sk_params, derive_seed(seed, 400 + r)))
                              : Disorder(sample_chain_disorder(10, chain_params,
                                                               derive_seed(seed, 400 + r)));
    const double exact = exact_gibbs_expectation(d, 1.0).internal_energy;
    const auto est = estimate_internal_energy(d, 1.0, mcmc, derive_seed(seed, 500 + r));
    worst_z = std::max(worst_z, std::abs(est.mean - exact) / std::max(est.std_error, 1e-12));
  }
  out.push_back(check("mcmc_vs_enumeration_z", worst_z, 4.0));

  // U = d(beta f)/d beta by central differences on the free energy.
  const auto rule = QuadratureRule::gauss_hermite();
  worst = 0.0;
  for (double temperature : {0.5, 1.0, 2.0}) {
    const double beta = 1.0 / temperature;
    const double h = 1e-4 * beta;
    const double d = (chain_free_energy_density(1.0 / (beta + h), chain_params, rule) -
                      chain_free_energy_density(1.0 / (beta - h), chain_params, rule)) /
                     (2.0 * h);
    const double u = chain_internal_energy(temperature, chain_params, rule);
    worst = std::max(worst, std::abs(-d - u) / std::abs(u));
  }
  out.push_back(check("chain_energy_vs_free_energy_derivative", worst, 1e-6));

  // Paramagnetic RS solution above T = J.
  const RSOrderParams rs = sk_rs_fixed_point(2.0, sk_params, rule);
  out.push_back(check("sk_paramagnet_q", std::abs(rs.q), 1e-10));

  // Upper normal tail against the erfc identity at a few points.
  worst = 0.0;
  for (double x : {-2.0, 0.0, 1.0, 3.0}) {
    worst = std::max(worst, std::abs(erfcc(x) + erfcc(-x) - 1.0));
  }
  out.push_back(check("erfcc_symmetry", worst, 1e-15));
  return out;
}

std::string format_oracle_report(const std::vector<OracleCheck>& checks) {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ' ' << format_double(c.discrepancy) << ' '
        << format_double(c.tolerance) << '\n';
  }
  return out.str();
}

}  // namespace gatemp
