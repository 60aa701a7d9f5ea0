#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "gatemp/rng.hpp"

namespace gatemp {

enum class ModelKind { Chain, SK };

// How the SK double sum is read: every ordered pair (i, j), i != j, or every
// unordered pair i < j. Both carry the 1/N prefactor.
enum class PairConvention { OrderedPairs, UnorderedPairs };

// Literal draws J_ij ~ N(J0, J^2). MeanField draws the fluctuating part with
// variance N J^2 so that J_ij / N ~ N(J0/N, J^2/N), the normalization under
// which the replica-symmetric equations hold.
enum class CouplingScale { Literal, MeanField };

struct DisorderParams {
  double mean = 0.0;  // J0
  double std = 1.0;   // J
  ModelKind model = ModelKind::Chain;

  // std < 0 is invalid; std == 0 with mean == 0 is degenerate.
  void validate() const;
  bool operator==(const DisorderParams&) const = default;
};

struct SKOptions {
  PairConvention convention = PairConvention::UnorderedPairs;
  CouplingScale scale = CouplingScale::Literal;
  bool operator==(const SKOptions&) const = default;
};

/// A string of N Ising spins, each exactly -1 or +1.
class SpinConfig {
 public:
  SpinConfig() = default;
  explicit SpinConfig(std::vector<std::int8_t> spins);

  static SpinConfig all_up(std::size_t n);
  static SpinConfig random(std::size_t n, Rng& rng);

  std::size_t size() const noexcept { return spins_.size(); }
  std::int8_t operator[](std::size_t i) const noexcept { return spins_[i]; }
  std::span<const std::int8_t> spins() const noexcept { return spins_; }

  void flip(std::size_t i) noexcept { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  SpinConfig negated() const;

  // Copies [from, size()) out of `other`; used by single-point crossover.
  void splice_tail(const SpinConfig& other, std::size_t from);

  bool operator==(const SpinConfig&) const = default;

 private:
  std::vector<std::int8_t> spins_;
};

/// Open chain: N spins joined by N-1 nearest-neighbour bonds.
class ChainDisorder {
 public:
  ChainDisorder(std::vector<double> bonds, DisorderParams params);

  std::size_t spin_count() const noexcept { return bonds_.size() + 1; }
  std::span<const double> bonds() const noexcept { return bonds_; }
  const DisorderParams& params() const noexcept { return params_; }

 private:
  std::vector<double> bonds_;
  DisorderParams params_;
};

/// Fully connected couplings, stored as a dense symmetric matrix.
class SKDisorder {
 public:
  SKDisorder(std::size_t n, std::vector<double> couplings, DisorderParams params,
             SKOptions options = {});

  std::size_t spin_count() const noexcept { return n_; }
  double coupling(std::size_t i, std::size_t j) const noexcept {
    return couplings_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(couplings_).subspan(i * n_, n_);
  }
  const DisorderParams& params() const noexcept { return params_; }
  const SKOptions& options() const noexcept { return options_; }

  // Energy weight of one unordered pair: 2/N (ordered) or 1/N (unordered).
  double pair_prefactor() const noexcept;

 private:
  std::size_t n_;
  std::vector<double> couplings_;
  DisorderParams params_;
  SKOptions options_;
};

using Disorder = std::variant<ChainDisorder, SKDisorder>;

ChainDisorder sample_chain_disorder(std::size_t n, const DisorderParams& params, Seed seed);
SKDisorder sample_sk_disorder(std::size_t n, const DisorderParams& params, Seed seed,
                              SKOptions options = {});

double energy_chain(const SpinConfig& s, const ChainDisorder& d);
double energy_sk(const SpinConfig& s, const SKDisorder& d);

std::size_t spin_count(const Disorder& d) noexcept;
double energy(const SpinConfig& s, const Disorder& d);

// H(s with spin k flipped) - H(s), from the couplings incident to k.
double flip_delta(const SpinConfig& s, const ChainDisorder& d, std::size_t k) noexcept;
double flip_delta(const SpinConfig& s, const SKDisorder& d, std::size_t k) noexcept;

struct GroundState {
  double energy;
  SpinConfig config;
};

// Exact ground state of the open chain by gauge unwinding, s_1 = +1.
GroundState chain_ground_state(const ChainDisorder& d);

inline constexpr std::size_t kMaxEnumerationSize = 20;

struct LandscapePoint {
  std::uint64_t state;  // 1-based label S
  double energy;
};

// State S maps to the binary digits of S - 1, most significant digit first
// (s_1), with 0 -> +1 and 1 -> -1. S = 1 is all up, S = 2^n all down.
SpinConfig state_from_index(std::uint64_t state, std::size_t n);
std::vector<LandscapePoint> enumerate_landscape(const Disorder& d);

void write_landscape(std::ostream& out, std::span<const LandscapePoint> points);

}  // namespace gatemp
