#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gatemp/analytic_oracles.hpp"
#include "gatemp/gibbs_mcmc.hpp"
#include "gatemp/spin_systems.hpp"

namespace gatemp {

enum class OracleKind { AnalyticChain, AnalyticSK, MCMC, Enumeration };

/// Per-instance Gibbs internal energy T -> U({J}; 1/T), extensive.
class EnergyOracle {
 public:
  EnergyOracle(std::function<double(double)> evaluator, OracleKind kind)
      : evaluator_(std::move(evaluator)), kind_(kind) {}

  double operator()(double temperature) const { return evaluator_(temperature); }
  OracleKind kind() const noexcept { return kind_; }

 private:
  std::function<double(double)> evaluator_;
  OracleKind kind_;
};

// N * chain_internal_energy(T).
EnergyOracle make_analytic_chain_oracle(const DisorderParams& params, std::size_t n,
                                        std::shared_ptr<const QuadratureRule> rule);

// N * U_beta(m(T), q(T)); the RS solve at each T warm-starts from the
// previous solution. Not safe to share across threads.
EnergyOracle make_analytic_sk_oracle(const DisorderParams& params, std::size_t n,
                                     std::shared_ptr<const QuadratureRule> rule);

// Metropolis estimate on the instance; each call reuses the same seed so the
// map is a deterministic function of T.
EnergyOracle make_mcmc_oracle(std::shared_ptr<const Disorder> model, MCMCOptions opts,
                              Seed seed);

// Exact enumeration (N <= 20). The landscape is computed once.
EnergyOracle make_enumeration_oracle(const Disorder& model);

struct LearnerState {
  double temperature = 2.0;
  std::uint64_t generation = 0;
  double learning_rate = 1e-3;
  double t_floor = 1e-6;

  void validate() const;
};

// Forward-Euler step of dT/dt = -T^2 (U(T) - U_GA):
// T <- max(t_floor, T - eta T^2 (U(T) - U_GA)), generation + 1.
LearnerState learner_step(const LearnerState& state, double u_ga, const EnergyOracle& oracle);

// Same step with U(T) already evaluated; returns the new state.
LearnerState learner_step_with(const LearnerState& state, double u_ga, double u_gibbs);

// Solves U(T*) = u_ga by bisection on [t_lo, t_hi]. U must be increasing on
// the bracket.
double match_temperature(double u_ga, const EnergyOracle& oracle, double t_lo, double t_hi);

struct AveragedTrajectory {
  std::vector<double> mean;
  std::vector<double> std_error;  // sample sd / sqrt(R); zero for R = 1
};

AveragedTrajectory disorder_averaged_trajectory(std::span<const std::vector<double>> runs);

}  // namespace gatemp
