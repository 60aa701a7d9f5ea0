#include "gatemp/effective_temperature.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "gatemp/error.hpp"

namespace gatemp {

EnergyOracle make_analytic_chain_oracle(const DisorderParams& params, std::size_t n,
                                        std::shared_ptr<const QuadratureRule> rule) {
  params.validate();
  const double size = static_cast<double>(n);
  return EnergyOracle(
      [params, size, rule = std::move(rule)](double temperature) {
        return size * chain_internal_energy(temperature, params, *rule);
      },
      OracleKind::AnalyticChain);
}

EnergyOracle make_analytic_sk_oracle(const DisorderParams& params, std::size_t n,
                                     std::shared_ptr<const QuadratureRule> rule) {
  params.validate();
  const double size = static_cast<double>(n);
  auto warm = std::make_shared<std::optional<RSOrderParams>>();
  return EnergyOracle(
      [params, size, rule = std::move(rule), warm](double temperature) {
        FixedPointOptions opts;
        if (*warm) {
          opts.initial_m = (*warm)->m;
          // Restart q from above so the iteration cannot stick at q = 0.
          opts.initial_q = std::max((*warm)->q, 0.5);
        }
        const RSOrderParams rs = sk_rs_fixed_point(temperature, params, *rule, opts);
        *warm = rs;
        return size * sk_internal_energy_density(temperature, params, rs);
      },
      OracleKind::AnalyticSK);
}

EnergyOracle make_mcmc_oracle(std::shared_ptr<const Disorder> model, MCMCOptions opts,
                              Seed seed) {
  opts.validate();
  return EnergyOracle(
      [model = std::move(model), opts, seed](double temperature) {
        return estimate_internal_energy(*model, temperature, opts, seed).mean;
      },
      OracleKind::MCMC);
}

EnergyOracle make_enumeration_oracle(const Disorder& model) {
  auto energies = std::make_shared<std::vector<double>>();
  for (const auto& p : enumerate_landscape(model)) energies->push_back(p.energy);
  return EnergyOracle(
      [energies](double temperature) {
        return gibbs_expectation(*energies, temperature).internal_energy;
      },
      OracleKind::Enumeration);
}

void LearnerState::validate() const {
  if (!(t_floor > 0.0)) throw InvalidArgumentError("temperature floor must be positive");
  if (!(temperature >= t_floor) || !std::isfinite(temperature)) {
    throw InvalidArgumentError("temperature must be finite and at least the floor");
  }
  if (!(learning_rate >= 0.0)) throw InvalidArgumentError("learning rate must be nonnegative");
}

LearnerState learner_step_with(const LearnerState& state, double u_ga, double u_gibbs) {
  state.validate();
  if (!std::isfinite(u_ga)) throw DomainError("U_GA must be finite");
  if (!std::isfinite(u_gibbs)) throw DomainError("oracle returned a non-finite energy");
  const double t = state.temperature;
  LearnerState next = state;
  const double proposed = t - state.learning_rate * t * t * (u_gibbs - u_ga);
  // An overshoot to -inf is clamped; NaN and +inf are not.
  if (std::isnan(proposed) || proposed == HUGE_VAL) throw DomainError("temperature diverged");
  next.temperature = std::max(state.t_floor, proposed);
  next.generation = state.generation + 1;
  return next;
}

LearnerState learner_step(const LearnerState& state, double u_ga, const EnergyOracle& oracle) {
  state.validate();
  return learner_step_with(state, u_ga, oracle(state.temperature));
}

double match_temperature(double u_ga, const EnergyOracle& oracle, double t_lo, double t_hi) {
  if (!(t_lo > 0.0 && t_hi > t_lo)) throw InvalidArgumentError("bracket must satisfy 0 < lo < hi");
  double u_lo = oracle(t_lo);
  double u_hi = oracle(t_hi);
  if (!(u_lo <= u_hi)) {
    throw InvalidArgumentError("oracle energy is not increasing across the bracket");
  }
  if (u_ga < u_lo || u_ga > u_hi) {
    throw UnbracketableError("target energy " + std::to_string(u_ga) + " outside [" +
                             std::to_string(u_lo) + ", " + std::to_string(u_hi) + "]");
  }
  double lo = t_lo, hi = t_hi;
  const double tol = 1e-9 * std::abs(u_ga);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double u = oracle(mid);
    if (std::abs(u - u_ga) <= tol || hi - lo <= 1e-9) return mid;
    (u < u_ga ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AveragedTrajectory disorder_averaged_trajectory(std::span<const std::vector<double>> runs) {
  if (runs.empty()) throw InvalidArgumentError("no trajectories to average");
  const std::size_t length = runs.front().size();
  for (const auto& r : runs) {
    if (r.size() != length) throw DimensionError("trajectories differ in length");
  }
  const double count = static_cast<double>(runs.size());
  AveragedTrajectory out;
  out.mean.assign(length, 0.0);
  out.std_error.assign(length, 0.0);
  std::vector<double> column(runs.size());
  for (std::size_t t = 0; t < length; ++t) {
    // Summing in sorted order makes the result independent of replica order.
    for (std::size_t r = 0; r < runs.size(); ++r) column[r] = runs[r][t];
    std::sort(column.begin(), column.end());
    double mean = 0.0;
    for (double v : column) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : column) var += (v - mean) * (v - mean);
    out.mean[t] = mean;
    out.std_error[t] = runs.size() > 1 ? std::sqrt(var / (count - 1.0) / count) : 0.0;
  }
  return out;
}

}  // namespace gatemp
