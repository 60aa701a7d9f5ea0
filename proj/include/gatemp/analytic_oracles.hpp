#pragma once

#include <optional>

#include "gatemp/quadrature.hpp"
#include "gatemp/spin_systems.hpp"

namespace gatemp {

// Upper tail of the standard normal, int_x^inf dz exp(-z^2/2)/sqrt(2 pi).
double erfcc(double x);

// int Dx log 2cosh(beta (J0 + J x)), the chain's -beta f per spin.
double chain_free_energy_density(double temperature, const DisorderParams& params,
                                 const QuadratureRule& rule);

// Gibbs internal energy per spin of the infinite chain,
// -J0 int Dx tanh(beta y) - beta J^2 int Dx sech^2(beta y), y = J0 + J x.
double chain_internal_energy(double temperature, const DisorderParams& params,
                             const QuadratureRule& rule);

// lim U_min / N = -E|J_i| for J_i ~ N(J0, J^2).
double chain_ground_state_density(const DisorderParams& params);

struct FixedPointOptions {
  double damping = 0.5;
  double tolerance = 1e-12;
  long max_iterations = 100000;
  // Defaults to (0.5 sign(J0), 0.5).
  std::optional<double> initial_m;
  std::optional<double> initial_q;
};

struct RSOrderParams {
  double m = 0.0;
  double q = 0.0;
  double temperature = 0.0;
  double residual = 0.0;
  long iterations = 0;
};

// Replica-symmetric equations of state for the SK model,
//   m = int Dz tanh beta(J z sqrt(q) + J0 m),
//   q = int Dz tanh^2 beta(J z sqrt(q) + J0 m),
// solved by damped iteration x <- (1 - lambda) x + lambda F(x).
RSOrderParams sk_rs_fixed_point(double temperature, const DisorderParams& params,
                                const QuadratureRule& rule, const FixedPointOptions& opts = {});

// Right-hand sides of the equations of state at (m, q).
struct RSMap {
  double m;
  double q;
};
RSMap sk_rs_map(double temperature, const DisorderParams& params, const QuadratureRule& rule,
                double m, double q);

// U/N = -(J0/2) m^2 - (beta J^2 / 2)(1 - q^2).
double sk_internal_energy_density(double temperature, const DisorderParams& params,
                                  const RSOrderParams& rs);

// Largest root in [0, 1] of m = 1 - 2 erfcc((J0/J) m), with
// a = sqrt(2/pi) J0/J. Zero for a <= 1.
double sk_zero_temperature_magnetization(double a);

}  // namespace gatemp
