#include "gatemp/spin_systems.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "gatemp/error.hpp"
#include "gatemp/text_io.hpp"

namespace gatemp {

namespace {

void require_model(const DisorderParams& params, ModelKind expected) {
  if (params.model != expected) {
    throw InvalidArgumentError("disorder parameters declare the wrong model");
  }
}

void require_size(std::size_t n) {
  if (n < 2) throw InvalidSizeError("need at least two spins, got " + std::to_string(n));
}

// std == 0 is a point mass at the mean; std::normal_distribution rejects it.
double draw(Rng& rng, double mean, double std) {
  if (std == 0.0) return mean;
  std::normal_distribution<double> gauss(mean, std);
  return gauss(rng);
}

void check_length(const SpinConfig& s, std::size_t n) {
  if (s.size() != n) {
    throw DimensionError("configuration has " + std::to_string(s.size()) +
                         " spins, disorder expects " + std::to_string(n));
  }
}

}  // namespace

void DisorderParams::validate() const {
  if (!(std >= 0.0) || !std::isfinite(std) || !std::isfinite(mean)) {
    throw InvalidArgumentError("coupling standard deviation must be finite and >= 0");
  }
  if (std == 0.0 && mean == 0.0) {
    throw DegenerateDisorderError("J0 = J = 0 makes every configuration a ground state");
  }
}

SpinConfig::SpinConfig(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (auto v : spins_) {
    if (v != 1 && v != -1) throw InvalidArgumentError("spin values must be -1 or +1");
  }
}

SpinConfig SpinConfig::all_up(std::size_t n) {
  return SpinConfig(std::vector<std::int8_t>(n, 1));
}

SpinConfig SpinConfig::random(std::size_t n, Rng& rng) {
  std::vector<std::int8_t> spins(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& v : spins) v = coin(rng) ? 1 : -1;
  return SpinConfig(std::move(spins));
}

SpinConfig SpinConfig::negated() const {
  SpinConfig out = *this;
  for (auto& v : out.spins_) v = static_cast<std::int8_t>(-v);
  return out;
}

void SpinConfig::splice_tail(const SpinConfig& other, std::size_t from) {
  if (other.size() != size()) throw DimensionError("crossover parents differ in length");
  for (std::size_t i = from; i < spins_.size(); ++i) spins_[i] = other.spins_[i];
}

ChainDisorder::ChainDisorder(std::vector<double> bonds, DisorderParams params)
    : bonds_(std::move(bonds)), params_(params) {
  if (bonds_.empty()) throw InvalidSizeError("a chain needs at least one bond");
}

SKDisorder::SKDisorder(std::size_t n, std::vector<double> couplings, DisorderParams params,
                       SKOptions options)
    : n_(n), couplings_(std::move(couplings)), params_(params), options_(options) {
  require_size(n_);
  if (couplings_.size() != n_ * n_) throw DimensionError("coupling matrix must be N x N");
  for (std::size_t i = 0; i < n_; ++i) {
    if (couplings_[i * n_ + i] != 0.0) throw InvalidArgumentError("diagonal must be zero");
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (couplings_[i * n_ + j] != couplings_[j * n_ + i]) {
        throw InvalidArgumentError("coupling matrix must be symmetric");
      }
    }
  }
}

double SKDisorder::pair_prefactor() const noexcept {
  const double n = static_cast<double>(n_);
  return options_.convention == PairConvention::OrderedPairs ? 2.0 / n : 1.0 / n;
}

ChainDisorder sample_chain_disorder(std::size_t n, const DisorderParams& params, Seed seed) {
  require_size(n);
  params.validate();
  require_model(params, ModelKind::Chain);
  Rng rng = make_rng(seed);
  std::vector<double> bonds(n - 1);
  for (auto& b : bonds) b = draw(rng, params.mean, params.std);
  return ChainDisorder(std::move(bonds), params);
}

SKDisorder sample_sk_disorder(std::size_t n, const DisorderParams& params, Seed seed,
                              SKOptions options) {
  require_size(n);
  params.validate();
  require_model(params, ModelKind::SK);
  Rng rng = make_rng(seed);
  const double std = options.scale == CouplingScale::MeanField
                         ? params.std * std::sqrt(static_cast<double>(n))
                         : params.std;
  std::vector<double> j(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = draw(rng, params.mean, std);
      j[a * n + b] = v;
      j[b * n + a] = v;
    }
  }
  return SKDisorder(n, std::move(j), params, options);
}

double energy_chain(const SpinConfig& s, const ChainDisorder& d) {
  check_length(s, d.spin_count());
  const auto bonds = d.bonds();
  double e = 0.0;
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    e -= bonds[i] * static_cast<double>(s[i] * s[i + 1]);
  }
  return e;
}

double energy_sk(const SpinConfig& s, const SKDisorder& d) {
  const std::size_t n = d.spin_count();
  check_length(s, n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = d.row(i);
    double field = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) field += row[j] * s[j];
    sum += s[i] * field;
  }
  return -d.pair_prefactor() * sum;
}

std::size_t spin_count(const Disorder& d) noexcept {
  return std::visit([](const auto& m) { return m.spin_count(); }, d);
}

double energy(const SpinConfig& s, const Disorder& d) {
  return std::visit(
      [&s](const auto& m) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ChainDisorder>) {
          return energy_chain(s, m);
        } else {
          return energy_sk(s, m);
        }
      },
      d);
}

double flip_delta(const SpinConfig& s, const ChainDisorder& d, std::size_t k) noexcept {
  const auto bonds = d.bonds();
  double local = 0.0;
  if (k > 0) local += bonds[k - 1] * s[k - 1];
  if (k + 1 < s.size()) local += bonds[k] * s[k + 1];
  return 2.0 * s[k] * local;
}

double flip_delta(const SpinConfig& s, const SKDisorder& d, std::size_t k) noexcept {
  const auto row = d.row(k);
  double field = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) field += row[j] * s[j];
  return 2.0 * d.pair_prefactor() * s[k] * field;
}

GroundState chain_ground_state(const ChainDisorder& d) {
  const auto bonds = d.bonds();
  std::vector<std::int8_t> spins(d.spin_count());
  spins[0] = 1;
  double e = 0.0;
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    const std::int8_t tau = bonds[i] < 0.0 ? -1 : 1;
    spins[i + 1] = static_cast<std::int8_t>(spins[i] * tau);
    // Same operation sequence as energy_chain, so the two agree bitwise.
    e -= bonds[i] * static_cast<double>(spins[i] * spins[i + 1]);
  }
  return {e, SpinConfig(std::move(spins))};
}

SpinConfig state_from_index(std::uint64_t state, std::size_t n) {
  if (n > 63 || state < 1 || state > (std::uint64_t{1} << n)) {
    throw InvalidArgumentError("state label out of range");
  }
  const std::uint64_t bits = state - 1;
  std::vector<std::int8_t> spins(n);
  for (std::size_t i = 0; i < n; ++i) {
    spins[i] = ((bits >> (n - 1 - i)) & 1U) ? -1 : 1;
  }
  return SpinConfig(std::move(spins));
}

std::vector<LandscapePoint> enumerate_landscape(const Disorder& d) {
  const std::size_t n = spin_count(d);
  if (n > kMaxEnumerationSize) {
    throw InvalidSizeError("enumeration is capped at " + std::to_string(kMaxEnumerationSize) +
                           " spins, got " + std::to_string(n));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<LandscapePoint> out;
  out.reserve(count);
  for (std::uint64_t state = 1; state <= count; ++state) {
    out.push_back({state, energy(state_from_index(state, n), d)});
  }
  return out;
}

void write_landscape(std::ostream& out, std::span<const LandscapePoint> points) {
  out << "state,energy\n";
  for (const auto& p : points) out << p.state << ',' << format_double(p.energy) << '\n';
}

}  // namespace gatemp
