// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gatemp/analysis.hpp"
#include "gatemp/analytic_oracles.hpp"
#include "gatemp/effective_temperature.hpp"
#include "gatemp/experiment.hpp"
#include "gatemp/gibbs_mcmc.hpp"
#include "gatemp/presets.hpp"
#include "gatemp/quadrature.hpp"
#include "gatemp/spin_systems.hpp"

using namespace gatemp;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kDensityRelTol = 0.01;
constexpr double kFiniteDiffRelTol = 1e-5;
constexpr double kCurveSigmas = 2.0;
constexpr double kMcmcSigmas = 3.0;
constexpr double kParamagnetTol = 1e-10;
constexpr double kGlassQMin = 0.95;
constexpr double kZeroTEnergyTol = 1e-3;
constexpr double kSKConventionRelTol = 0.10;
constexpr double kMinDecayExponent = 0.05;
constexpr double kMinRSquared = 0.8;
constexpr std::size_t kMonotoneBy = 100;
constexpr double kFlatExponentTol = 0.05;
constexpr double kFlatFinalRelTol = 0.10;
constexpr double kExponentAgreement = 0.1;
constexpr double kHollandResidualTol = 1e-10;
constexpr double kHollandRateTol = 1e-6;
constexpr double kSyntheticExponentTol = 0.02;
constexpr double kFalsePositiveMax = 0.05;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const QuadratureRule& gh() {
  static const QuadratureRule r = QuadratureRule::gauss_hermite();
  return r;
}

const DisorderParams kChainGlass{0.0, 1.0, ModelKind::Chain};
const DisorderParams kSKGlass{0.0, 1.0, ModelKind::SK};

Outcome ground_state_vs_enumeration() {
  std::size_t mismatches = 0, total = 0;
  for (std::size_t n : {8, 12, 16}) {
    for (std::uint64_t k = 0; k < 100; ++k) {
      const auto d = sample_chain_disorder(n, kChainGlass, derive_seed(n, k));
      double best = HUGE_VAL;
      for (const auto& p : enumerate_landscape(Disorder(d))) best = std::min(best, p.energy);
      const auto gs = chain_ground_state(d);
      mismatches += !(gs.energy == best && energy_chain(gs.config, d) == gs.energy);
      ++total;
    }
  }
  return {mismatches == 0, fmt("%zu/%zu instances differ", mismatches, total)};
}

Outcome ground_state_density() {
  const std::size_t n = 2000;
  double sum = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    sum += chain_ground_state(sample_chain_disorder(n, kChainGlass, derive_seed(2, k))).energy / n;
  }
  const double measured = sum / 50.0;
  const double exact = chain_ground_state_density(kChainGlass);
  const double rel = std::abs(measured / exact - 1.0);
  return {rel <= kDensityRelTol, fmt("e0 = %.5f vs %.5f, rel %.4f", measured, exact, rel)};
}

Outcome chain_energy() {
  double worst_fd = 0.0;
  for (double t : {0.2, 0.5, 1.0, 2.0, 5.0}) {
    const double beta = 1.0 / t, h = 1e-5;
    const double derivative = (chain_free_energy_density(1.0 / (beta + h), kChainGlass, gh()) -
                               chain_free_energy_density(1.0 / (beta - h), kChainGlass, gh())) /
                              (2.0 * h);
    const double u = chain_internal_energy(t, kChainGlass, gh());
    worst_fd = std::max(worst_fd, std::abs(-derivative - u) / std::abs(u));
  }
  double worst_z = 0.0;
  for (const auto& p : chain_energy_curve(make_preset("fg1", false).curve)) {
    worst_z = std::max(worst_z, std::abs(p.mean - p.exact) / p.std_error);
  }
  return {worst_fd <= kFiniteDiffRelTol && worst_z <= kCurveSigmas,
          fmt("finite difference rel %.2e, MCMC max |z| %.2f", worst_fd, worst_z)};
}

// 120 comparisons at 3 SE leave ~0.3 expected exceedances from sampling
// noise alone. An exceedance is re-estimated with fresh seeds and four times
// the sweeps: a sampler bias survives that, a tail draw does not.
Outcome mcmc_vs_exact() {
  const MCMCOptions opts{4000, 1000, 5, 40, 0.0};
  const MCMCOptions longer{16000, 4000, 5, 40, 0.0};
  std::size_t outside = 0, confirmed = 0, total = 0;
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const std::size_t n = 8 + k % 5;
    const Disorder models[] = {
        sample_chain_disorder(n, kChainGlass, derive_seed(40, k)),
        sample_sk_disorder(n, kSKGlass, derive_seed(41, k),
                           {PairConvention::UnorderedPairs, CouplingScale::MeanField})};
    for (const auto& m : models) {
      for (double t : {0.5, 1.0, 2.0}) {
        const double exact = exact_gibbs_expectation(m, t).internal_energy;
        const auto est = estimate_internal_energy(m, t, opts, derive_seed(42 + k, total));
        const double z = std::abs(est.mean - exact) / est.std_error;
        worst = std::max(worst, z);
        if (z > kMcmcSigmas) {
          ++outside;
          const auto again = estimate_internal_energy(m, t, longer, derive_seed(4242 + k, total));
          confirmed += std::abs(again.mean - exact) / again.std_error > kMcmcSigmas;
        }
        ++total;
      }
    }
  }
  return {confirmed == 0, fmt("%zu/%zu beyond %.0f SE (max |z| %.2f), %zu persist on rerun", outside,
                             total, kMcmcSigmas, worst, confirmed)};
}

Outcome replica_symmetric() {
  double worst_q = 0.0;
  for (double t : {1.5, 2.0, 3.0}) worst_q = std::max(worst_q, std::abs(sk_rs_fixed_point(t, kSKGlass, gh()).q));
  const double q_cold = sk_rs_fixed_point(0.02, kSKGlass, gh()).q;
  bool weak_zero = true;
  for (double a : {0.0, 0.5, 1.0}) weak_zero = weak_zero && sk_zero_temperature_magnetization(a) == 0.0;
  const double m = sk_zero_temperature_magnetization(50.0);
  const double u0 = -0.5 * m * m;
  return {worst_q <= kParamagnetTol && q_cold >= kGlassQMin && weak_zero &&
              std::abs(u0 + 0.5) <= kZeroTEnergyTol,
          fmt("max q(T>=1.5) %.1e, q(0.02) %.4f, m(a<=1) = 0: %s, m(50) %.6f, u0 %.5f", worst_q,
              q_cold, weak_zero ? "yes" : "no", m, u0)};
}

// Mean exact energy per spin over instances at N = 12, T = 2 for each
// convention, against the replica-symmetric paramagnet.
Outcome sk_convention() {
  const std::size_t n = 12;
  const double t = 2.0;
  const auto rs = sk_rs_fixed_point(t, kSKGlass, gh());
  const double reference = sk_internal_energy_density(t, kSKGlass, rs);
  std::string detail = fmt("RS %.4f;", reference);
  std::size_t agreeing = 0;  // at the mean-field scale the presets use
  double pinned_rel = 0.0;
  for (auto scale : {CouplingScale::Literal, CouplingScale::MeanField}) {
    for (auto conv : {PairConvention::OrderedPairs, PairConvention::UnorderedPairs}) {
      double sum = 0.0;
      for (std::uint64_t k = 0; k < 50; ++k) {
        const Disorder d = sample_sk_disorder(n, kSKGlass, derive_seed(6, k), {conv, scale});
        sum += exact_gibbs_expectation(d, t).internal_energy / n;
      }
      const double u = sum / 50.0;
      const double rel = std::abs(u / reference - 1.0);
      detail += fmt(" %s/%s %.4f (%.0f%%)", std::string(to_string(scale)).c_str(),
                    std::string(to_string(conv)).c_str(), u, 100.0 * rel);
      if (scale != CouplingScale::MeanField) continue;
      agreeing += rel <= kSKConventionRelTol;
      if (conv == PairConvention::UnorderedPairs) pinned_rel = rel;
    }
  }
  return {agreeing == 1 && pinned_rel <= kSKConventionRelTol, detail};
}

struct Campaign {
  RunSummary summary;
  PowerLawFit last_decade;
};

Campaign run_desk(const std::string& preset, std::size_t variant = 0) {
  Campaign c{run_campaign(make_preset(preset, true).variants.at(variant)), {}};
  const auto s = c.summary.temperature.series();
  c.last_decade = fit_power_law(s, trailing_decades(s, 1.0));
  return c;
}

std::vector<double> median_temperature(const RunSummary& s) {
  std::vector<double> out;
  for (std::size_t t = 0; t < s.replicas.front().rows.size(); ++t) {
    std::vector<double> v;
    for (const auto& r : s.replicas) v.push_back(r.rows[t].temperature);
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    double med = v[v.size() / 2];
    if (v.size() % 2 == 0) med = 0.5 * (med + *std::max_element(v.begin(), v.begin() + v.size() / 2));
    out.push_back(med);
  }
  return out;
}

Outcome annealing(const Campaign& c) {
  const auto& mean = c.summary.temperature.mean;  // index i is t = i + 1
  std::size_t last_rise = 0;
  for (std::size_t i = 1; i < mean.size(); ++i) {
    if (mean[i] > mean[i - 1]) last_rise = i + 1;
  }
  const auto& res = *c.summary.residual;
  const bool nonneg = std::all_of(res.mean.begin(), res.mean.end(), [](double v) { return v >= 0.0; });
  const auto rs = res.series();
  const auto res_fit = fit_power_law(rs, trailing_decades(rs, 1.0));
  const bool pass = last_rise <= kMonotoneBy && c.last_decade.exponent > kMinDecayExponent &&
                    c.last_decade.r_squared > kMinRSquared && nonneg && res_fit.exponent > 0.0;
  return {pass, fmt("last rise t=%zu, xi %.3f (r2 %.3f), residual >= 0: %s, xi_res %.3f", last_rise,
                    c.last_decade.exponent, c.last_decade.r_squared, nonneg ? "yes" : "no",
                    res_fit.exponent)};
}

Outcome no_selection(const Campaign& c) {
  const double t0 = c.summary.config.t0;
  const double final_rel = std::abs(c.summary.temperature.mean.back() / t0 - 1.0);
  return {std::abs(c.last_decade.exponent) <= kFlatExponentTol && final_rel <= kFlatFinalRelTol,
          fmt("xi %.3f, final T %.3f (T0 %.1f)", c.last_decade.exponent,
              c.summary.temperature.mean.back(), t0)};
}

Outcome selection_pressure(const Campaign& two, const Campaign& four) {
  const auto a = median_temperature(two.summary), b = median_temperature(four.summary);
  std::size_t violations = 0;
  for (std::size_t t = 10; t <= 100; ++t) violations += b[t] > a[t];
  const double gap = std::abs(two.last_decade.exponent - four.last_decade.exponent);
  return {violations == 0 && gap <= kExponentAgreement,
          fmt("%zu/91 generations with sigma=4 hotter, xi %.3f vs %.3f", violations,
              two.last_decade.exponent, four.last_decade.exponent)};
}

Outcome holland() {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst_res = 0.0, worst_rate = 0.0;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t states = 2 + (k * 37) % 255;
    HollandSystem sys;
    for (std::size_t i = 0; i < states; ++i) sys.fitness.push_back(g(rng));
    for (std::size_t i = 0; i < states; i += 1 + k % 4) sys.schema_members.push_back(i);
    if (sys.schema_members.size() == states) sys.schema_members.pop_back();
    for (const auto schedule : {HollandSchedule::linear(), HollandSchedule::power_law(0.5),
                                HollandSchedule::power_law(0.7), HollandSchedule::power_law(1.3)}) {
      for (double t : {0.5, 1.0, 5.0}) {
        worst_res = std::max(worst_res, holland_residual(sys, t, schedule));
        const double h = 1e-6;
        const double fd = (schema_probability(sys, t + h, schedule) -
                           schema_probability(sys, t - h, schedule)) / (2.0 * h);
        worst_rate = std::max(worst_rate, std::abs(fd - schema_probability_rate(sys, t, schedule)));
      }
    }
  }
  return {worst_res <= kHollandResidualTol && worst_rate <= kHollandRateTol,
          fmt("max residual %.1e, max rate error %.1e", worst_res, worst_rate)};
}

TimeSeries synthetic(double amplitude, const std::function<double(double)>& shape, std::size_t count,
                     double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, noise);
  std::vector<double> t, v;
  for (std::size_t i = 1; i <= count; ++i) {
    t.push_back(static_cast<double>(i));
    v.push_back(amplitude * shape(static_cast<double>(i)) * (1.0 + g(rng)));
  }
  return TimeSeries(t, v);
}

Outcome fitting() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = synthetic(3.0, [](double t) { return std::pow(t, -1.2); }, 10000, 0.01, 11 + seed);
    worst = std::max(worst, std::abs(fit_power_law(s, {1.0, 1e4}).exponent - 1.2));
  }
  const auto exact = synthetic(1.0, [](double t) { return std::pow(t, -0.5); }, 10000, 0.0, 0);
  const bool exact_ok = std::abs(fit_power_law(exact, {1.0, 1e4}).exponent - 0.5) <= 1e-6;
  const auto broken = synthetic(
      1.0, [](double t) { return t < 100 ? std::pow(t, -0.3) : std::pow(100.0, 0.6) * std::pow(t, -0.9); },
      10000, 0.01, 12);
  const auto c = detect_crossover(broken);
  const bool found = c && c->t_break > 100.0 / 1.5 && c->t_break < 150.0 &&
                     std::abs(c->exponent_early - 0.3) <= 0.05 && std::abs(c->exponent_late - 0.9) <= 0.05;
  std::size_t hits = 0;
  const std::size_t trials = 200;
  for (std::uint64_t k = 0; k < trials; ++k) {
    hits += detect_crossover(synthetic(1.0, [](double t) { return std::pow(t, -0.6); }, 2000, 0.01, 500 + k))
                .has_value();
  }
  const double rate = static_cast<double>(hits) / trials;
  return {worst <= kSyntheticExponentTol && exact_ok && found && rate < kFalsePositiveMax,
          fmt("max exponent error %.4f, break %s at %.1f, false positives %.3f", worst,
              found ? "found" : "missed", c ? c->t_break : 0.0, rate)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome reproducible() {
  const fs::path root = fs::temp_directory_path() / "gatemp_acceptance";
  fs::remove_all(root);
  const auto preset = make_preset("fg1D", true);
  run_preset(preset, root / "a");
  run_preset(preset, root / "b");
  std::size_t files = 0, differ = 0;
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const fs::path other = root / "b" / fs::relative(e.path(), root / "a");
    differ += !fs::exists(other) || slurp(e.path()) != slurp(other);
  }
  std::size_t files_b = 0;
  for (const auto& e : fs::recursive_directory_iterator(root / "b")) files_b += e.is_regular_file();
  fs::remove_all(root);
  return {files > 0 && differ == 0 && files == files_b,
          fmt("%zu files, %zu differ, %zu in second tree", files, differ, files_b)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2d %-28s %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "chain ground state", ground_state_vs_enumeration);
  report(2, "ground-state density", ground_state_density);
  report(3, "chain internal energy", chain_energy);
  report(4, "MCMC against enumeration", mcmc_vs_exact);
  report(5, "replica-symmetric solution", replica_symmetric);
  report(6, "SK pair convention", sk_convention);

  const Campaign fg1d = run_desk("fg1D");
  report(7, "learned temperature decays", [&] { return annealing(fg1d); });
  report(8, "no selection, no cooling", [] { return no_selection(run_desk("fgNo")); });
  report(9, "selection pressure", [&] { return selection_pressure(fg1d, run_desk("fgS", 2)); });
  report(10, "Holland identity", holland);
  report(11, "power-law fits", fitting);
  report(12, "reproducible outputs", reproducible);
  return failures == 0 ? 0 : 1;
}
