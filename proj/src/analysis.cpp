#include "gatemp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gatemp/error.hpp"
#include "gatemp/text_io.hpp"

namespace gatemp {

namespace {

// Running sums for ordinary least squares of y on x.
struct LineSums {
  double n = 0, x = 0, y = 0, xx = 0, xy = 0, yy = 0;

  void add(double xi, double yi) {
    n += 1;
    x += xi;
    y += yi;
    xx += xi * xi;
    xy += xi * yi;
    yy += yi * yi;
  }
  LineSums minus(const LineSums& o) const {
    return {n - o.n, x - o.x, y - o.y, xx - o.xx, xy - o.xy, yy - o.yy};
  }
  double sxx() const { return xx - x * x / n; }
  double sxy() const { return xy - x * y / n; }
  double syy() const { return std::max(0.0, yy - y * y / n); }
  double slope() const { return sxx() > 0 ? sxy() / sxx() : 0.0; }
  double intercept() const { return (y - slope() * x) / n; }
  double sse() const {
    const double s = sxx() > 0 ? syy() - sxy() * sxy() / sxx() : syy();
    return std::max(0.0, s);
  }
};

void require_positive(double v) {
  if (!(v > 0.0)) throw DomainError("power-law fits need strictly positive values");
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) throw DimensionError("times and values differ in length");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] > 0.0) || !std::isfinite(times_[i])) {
      throw InvalidArgumentError("times must be positive and finite");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw InvalidArgumentError("times must be strictly increasing");
    }
    if (!std::isfinite(values_[i])) throw InvalidArgumentError("values must be finite");
  }
}

FitWindow trailing_decades(const TimeSeries& series, double decades) {
  if (series.size() == 0) throw InvalidArgumentError("empty series");
  const double t_max = series.times().back();
  return {t_max / std::pow(10.0, decades), t_max};
}

TimeSeries residual_energy_series(const TimeSeries& best_energy, double ground_energy) {
  const double slack = 1e-9 * std::max(1.0, std::abs(ground_energy));
  std::vector<double> out;
  out.reserve(best_energy.size());
  for (double v : best_energy.values()) {
    if (v < ground_energy - slack) {
      throw ConsistencyError("energy " + format_double(v) + " lies below the ground state " +
                             format_double(ground_energy));
    }
    out.push_back(std::max(0.0, v - ground_energy));
  }
  return TimeSeries(best_energy.times(), std::move(out));
}

PowerLawFit fit_power_law(const TimeSeries& series, FitWindow window) {
  LineSums sums;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.times()[i];
    if (t < window.t_min || t > window.t_max) continue;
    require_positive(series.values()[i]);
    sums.add(std::log(t), std::log(series.values()[i]));
  }
  if (sums.n < static_cast<double>(kMinFitPoints)) {
    throw InvalidArgumentError("power-law fit needs at least 10 points in the window");
  }
  PowerLawFit fit;
  fit.exponent = -sums.slope();
  fit.amplitude = std::exp(sums.intercept());
  fit.window = window;
  fit.points = static_cast<std::size_t>(sums.n);
  const double syy = sums.syy();
  const double scale = std::max(1.0, std::abs(sums.yy));
  // A flat series has nothing left to explain.
  fit.r_squared = syy <= 1e-24 * scale ? 1.0 : std::clamp(1.0 - sums.sse() / syy, 0.0, 1.0);
  return fit;
}

std::optional<Crossover> detect_crossover(const TimeSeries& series) {
  const std::size_t n = series.size();
  if (n < kMinCrossoverPoints) {
    throw InvalidArgumentError("crossover detection needs at least 40 points");
  }
  std::vector<LineSums> prefix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    require_positive(series.values()[i]);
    prefix[i + 1] = prefix[i];
    prefix[i + 1].add(std::log(series.times()[i]), std::log(series.values()[i]));
  }
  const LineSums& all = prefix[n];
  const double single_sse = all.sse();

  double best_sse = INFINITY;
  std::size_t best_k = 0;
  for (std::size_t k = kMinFitPoints; k + kMinFitPoints <= n; ++k) {
    const double sse = prefix[k].sse() + all.minus(prefix[k]).sse();
    if (sse < best_sse) {
      best_sse = sse;
      best_k = k;
    }
  }
  if (best_k == 0 || single_sse <= 0.0) return std::nullopt;
  const double ratio = best_sse / single_sse;
  const double early = -prefix[best_k].slope();
  const double late = -all.minus(prefix[best_k]).slope();
  if (ratio > 1.0 - kCrossoverImprovement || std::abs(late - early) < kCrossoverExponentGap) {
    return std::nullopt;
  }
  const double t_break = std::sqrt(series.times()[best_k - 1] * series.times()[best_k]);
  return Crossover{t_break, early, late, ratio};
}

void HollandSystem::validate() const {
  const std::size_t k = fitness.size();
  if (k == 0 || k > kMaxHollandStates) {
    throw InvalidSizeError("Holland systems hold between 1 and 2^15 configurations");
  }
  if (schema_members.empty() || schema_members.size() >= k) {
    throw InvalidArgumentError("schema must be a nonempty strict subset");
  }
  std::vector<bool> seen(k, false);
  for (auto i : schema_members) {
    if (i >= k || seen[i]) throw InvalidArgumentError("schema members must be distinct indices");
    seen[i] = true;
  }
  for (double g : fitness) {
    if (!std::isfinite(g)) throw InvalidArgumentError("fitness values must be finite");
  }
}

double HollandSchedule::beta(double t) const { return power ? std::pow(t, xi) : t; }

double HollandSchedule::beta_rate(double t) const {
  return power ? xi * std::pow(t, xi - 1.0) : 1.0;
}

std::vector<double> gibbs_weights(const HollandSystem& sys, double t, HollandSchedule schedule) {
  sys.validate();
  if (!(t > 0.0)) throw DomainError("time must be positive");
  const double beta = schedule.beta(t);
  const double gmax = *std::max_element(sys.fitness.begin(), sys.fitness.end());
  std::vector<double> p(sys.fitness.size());
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(beta * (sys.fitness[i] - gmax));
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

double schema_probability(const HollandSystem& sys, double t, HollandSchedule schedule) {
  const auto p = gibbs_weights(sys, t, schedule);
  double total = 0.0;
  for (auto i : sys.schema_members) total += p[i];
  return total;
}

double schema_probability_rate(const HollandSystem& sys, double t, HollandSchedule schedule) {
  const auto p = gibbs_weights(sys, t, schedule);
  double mean_fitness = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) mean_fitness += sys.fitness[j] * p[j];
  const double rate = schedule.beta_rate(t);
  double total = 0.0;
  for (auto i : sys.schema_members) {
    total += rate * (p[i] * sys.fitness[i] - p[i] * mean_fitness);
  }
  return total;
}

double holland_residual(const HollandSystem& sys, double t, HollandSchedule schedule) {
  const auto p = gibbs_weights(sys, t, schedule);
  double f_all = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) f_all += sys.fitness[j] * p[j];
  double f_schema = 0.0, p_schema = 0.0;
  for (auto i : sys.schema_members) {
    f_schema += sys.fitness[i] * p[i];
    p_schema += p[i];
  }
  const double lhs = schema_probability_rate(sys, t, schedule);
  const double rhs = schedule.beta_rate(t) * (f_schema - p_schema * f_all);
  return std::abs(lhs - rhs);
}

std::string format_fit_report(const std::string& label, const PowerLawFit& fit,
                              const std::optional<Crossover>& crossover) {
  std::ostringstream out;
  out << "[" << label << "]\n";
  out << "exponent = " << format_double(fit.exponent) << '\n';
  out << "amplitude = " << format_double(fit.amplitude) << '\n';
  out << "window = " << format_double(fit.window.t_min) << ' ' << format_double(fit.window.t_max)
      << '\n';
  out << "points = " << fit.points << '\n';
  out << "r_squared = " << format_double(fit.r_squared) << '\n';
  if (crossover) {
    out << "breakpoint = " << format_double(crossover->t_break) << '\n';
    out << "exponent_early = " << format_double(crossover->exponent_early) << '\n';
    out << "exponent_late = " << format_double(crossover->exponent_late) << '\n';
  } else {
    out << "breakpoint = none\n";
  }
  return out.str();
}

}  // namespace gatemp
