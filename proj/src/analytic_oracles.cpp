#include "gatemp/analytic_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "gatemp/error.hpp"

namespace gatemp {

namespace {

void require_positive_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive and finite");
  }
}

// log(2 cosh x) without overflow.
double log_two_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax));
}

double sech_squared(double x) {
  const double ax = std::abs(x);
  if (ax > 350.0) return 0.0;
  const double e = std::exp(-2.0 * ax);
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

// Picks the Gauss-Hermite rule or a refinement around the kink of
// g(beta (J0 + J x)) at x = -J0/J, of width T/J.
QuadratureRule select_rule(const QuadratureRule& rule, double center, double width) {
  if (width >= rule.resolution()) return rule;
  return QuadratureRule::refined(center, width);
}

}  // namespace

double erfcc(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double chain_free_energy_density(double temperature, const DisorderParams& params,
                                 const QuadratureRule& rule) {
  require_positive_temperature(temperature);
  params.validate();
  const double beta = 1.0 / temperature;
  if (params.std == 0.0) return log_two_cosh(beta * params.mean);
  auto integrand = [&](double x) { return log_two_cosh(beta * (params.mean + params.std * x)); };
  return integrate_gaussian(rule, integrand, -params.mean / params.std,
                            temperature / params.std);
}

double chain_internal_energy(double temperature, const DisorderParams& params,
                             const QuadratureRule& rule) {
  require_positive_temperature(temperature);
  params.validate();
  const double beta = 1.0 / temperature;
  const double j0 = params.mean;
  const double j = params.std;
  if (j == 0.0) return -j0 * std::tanh(beta * j0);
  const QuadratureRule chosen = select_rule(rule, -j0 / j, temperature / j);
  const double mean_tanh = chosen.integrate([&](double x) { return std::tanh(beta * (j0 + j * x)); });
  const double mean_sech2 = chosen.integrate([&](double x) { return sech_squared(beta * (j0 + j * x)); });
  return -j0 * mean_tanh - beta * j * j * mean_sech2;
}

double chain_ground_state_density(const DisorderParams& params) {
  params.validate();
  const double j0 = params.mean;
  const double j = params.std;
  if (j == 0.0) return -std::abs(j0);
  const double mean_abs = j * std::sqrt(2.0 / std::numbers::pi) * std::exp(-j0 * j0 / (2.0 * j * j)) +
                          j0 * (1.0 - 2.0 * erfcc(j0 / j));
  return -mean_abs;
}

RSMap sk_rs_map(double temperature, const DisorderParams& params, const QuadratureRule& rule,
                double m, double q) {
  require_positive_temperature(temperature);
  const double beta = 1.0 / temperature;
  const double j0 = params.mean;
  const double amplitude = params.std * std::sqrt(std::max(q, 0.0));
  if (amplitude == 0.0) {
    const double t = std::tanh(beta * j0 * m);
    return {t, t * t};
  }
  const QuadratureRule chosen =
      select_rule(rule, -j0 * m / amplitude, temperature / amplitude);
  double sum_m = 0.0, sum_q = 0.0;
  const auto nodes = chosen.nodes();
  const auto weights = chosen.weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double t = std::tanh(beta * (amplitude * nodes[i] + j0 * m));
    sum_m += weights[i] * t;
    sum_q += weights[i] * t * t;
  }
  // At J0 = 0 the m integrand is odd; drop the rounding left by the nodes.
  if (j0 == 0.0) sum_m = 0.0;
  return {sum_m, sum_q};
}

namespace {

// With J0 = 0 the magnetization vanishes and q solves a scalar equation.
// Plain iteration slows down critically near T = J, so bracket the root.
RSOrderParams sk_rs_glass_root(double temperature, const DisorderParams& params,
                               const QuadratureRule& rule, const FixedPointOptions& opts) {
  auto excess = [&](double q) { return sk_rs_map(temperature, params, rule, 0.0, q).q - q; };
  const double lo = 1e-13;
  if (temperature >= params.std || !(excess(lo) > 0.0)) {
    return {0.0, 0.0, temperature, std::abs(excess(0.0)), 0};
  }
  boost::uintmax_t iterations = static_cast<boost::uintmax_t>(std::max(opts.max_iterations, 1L));
  const auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-15; };
  const auto [a, b] =
      boost::math::tools::toms748_solve(excess, lo, 1.0, excess(lo), excess(1.0), tol, iterations);
  const double q = 0.5 * (a + b);
  const double defect = std::abs(excess(q));
  if (!tol(a, b) || defect > opts.tolerance) {
    throw ConvergenceError("replica-symmetric iteration did not converge", 0.0, q, defect,
                           static_cast<long>(iterations));
  }
  return {0.0, q, temperature, defect, static_cast<long>(iterations)};
}

}  // namespace

RSOrderParams sk_rs_fixed_point(double temperature, const DisorderParams& params,
                                const QuadratureRule& rule, const FixedPointOptions& opts) {
  require_positive_temperature(temperature);
  params.validate();
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) {
    throw InvalidArgumentError("damping must lie in (0, 1]");
  }
  if (params.mean == 0.0) return sk_rs_glass_root(temperature, params, rule, opts);
  const double sign_j0 = params.mean > 0.0 ? 1.0 : (params.mean < 0.0 ? -1.0 : 0.0);
  double m = opts.initial_m.value_or(0.5 * sign_j0);
  double q = opts.initial_q.value_or(0.5);
  double defect = 0.0;
  for (long it = 0; it < opts.max_iterations; ++it) {
    const RSMap next = sk_rs_map(temperature, params, rule, m, q);
    defect = std::max(std::abs(next.m - m), std::abs(next.q - q));
    if (defect <= opts.tolerance) {
      return {m, q, temperature, defect, it};
    }
    m = (1.0 - opts.damping) * m + opts.damping * next.m;
    q = std::clamp((1.0 - opts.damping) * q + opts.damping * next.q, 0.0, 1.0);
  }
  throw ConvergenceError("replica-symmetric iteration did not converge", m, q, defect,
                         opts.max_iterations);
}

double sk_internal_energy_density(double temperature, const DisorderParams& params,
                                  const RSOrderParams& rs) {
  require_positive_temperature(temperature);
  if (std::abs(rs.temperature - temperature) > 1e-12 * temperature) {
    throw ConsistencyError("order parameters were solved at a different temperature");
  }
  const double beta = 1.0 / temperature;
  const double j = params.std;
  return -0.5 * params.mean * rs.m * rs.m - 0.5 * beta * j * j * (1.0 - rs.q * rs.q);
}

double sk_zero_temperature_magnetization(double a) {
  if (!(a >= 0.0)) throw DomainError("a must be nonnegative");
  if (a <= 1.0) return 0.0;
  // J0/J recovered from a = sqrt(2/pi) J0/J.
  const double ratio = a * std::sqrt(std::numbers::pi / 2.0);
  auto excess = [ratio](double m) { return 1.0 - 2.0 * erfcc(ratio * m) - m; };
  // The right-hand side is concave on [0, 1], so excess > 0 exactly on (0, m*).
  double lo = 0.0, hi = 1.0;
  if (excess(hi) >= 0.0) return 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gatemp
