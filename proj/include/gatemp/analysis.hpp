#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gatemp {

/// Samples of a quantity at strictly increasing positive times.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::vector<double> times, std::vector<double> values);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

struct FitWindow {
  double t_min;
  double t_max;
};

// The last `decades` decades of the series, [t_last / 10^decades, t_last].
FitWindow trailing_decades(const TimeSeries& series, double decades);

/// value ~ amplitude * t^(-exponent) from least squares on log-log data.
struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  FitWindow window{0.0, 0.0};
  double r_squared = 0.0;
  std::size_t points = 0;
};

struct Crossover {
  double t_break;
  double exponent_early;
  double exponent_late;
  double residual_ratio;  // two-segment SSE / single-segment SSE
};

inline constexpr std::size_t kMinFitPoints = 10;
inline constexpr std::size_t kMinCrossoverPoints = 40;
inline constexpr double kCrossoverImprovement = 0.2;
inline constexpr double kCrossoverExponentGap = 0.05;

// best_energy - ground_energy pointwise. Values below the ground energy by
// more than 1e-9 (relative to max(1, |ground|)) mean the oracle is wrong.
TimeSeries residual_energy_series(const TimeSeries& best_energy, double ground_energy);

PowerLawFit fit_power_law(const TimeSeries& series, FitWindow window);

// Best two-segment log-log fit over interior breakpoints with at least ten
// points per side. Reported only when it cuts the squared residual by 20%
// and the exponents differ by at least 0.05.
std::optional<Crossover> detect_crossover(const TimeSeries& series);

/// Finite configuration space with fitness g(i) and a schema H given by its
/// member indices (0-based).
struct HollandSystem {
  std::vector<double> fitness;
  std::vector<std::size_t> schema_members;

  void validate() const;
};

// beta_t = t (linear) or t^xi (power).
struct HollandSchedule {
  double xi = 1.0;
  bool power = false;

  static HollandSchedule linear() { return {1.0, false}; }
  static HollandSchedule power_law(double xi) { return {xi, true}; }

  double beta(double t) const;
  double beta_rate(double t) const;  // d beta / dt
};

inline constexpr std::size_t kMaxHollandStates = std::size_t{1} << 15;

// p_i(t) = exp(beta_t g_i) / sum_j exp(beta_t g_j), max-shifted.
std::vector<double> gibbs_weights(const HollandSystem& sys, double t, HollandSchedule schedule);

double schema_probability(const HollandSystem& sys, double t, HollandSchedule schedule);

// dP(H, t)/dt summed from dp_i/dt = beta'(t) p_i (g_i - sum_j g_j p_j).
double schema_probability_rate(const HollandSystem& sys, double t, HollandSchedule schedule);

// |dP/dt - C (f(H,t) - P(H,t) f(J,t))| with C = beta'(t).
double holland_residual(const HollandSystem& sys, double t, HollandSchedule schedule);

// Key-value block for run summaries.
std::string format_fit_report(const std::string& label, const PowerLawFit& fit,
                              const std::optional<Crossover>& crossover);

}  // namespace gatemp
