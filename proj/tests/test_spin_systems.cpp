#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gatemp/error.hpp"
#include "gatemp/spin_systems.hpp"

using namespace gatemp;

namespace {

const DisorderParams kChain{0.0, 1.0, ModelKind::Chain};
const DisorderParams kSK{0.0, 1.0, ModelKind::SK};

SpinConfig spins(std::initializer_list<int> v) {
  std::vector<std::int8_t> s;
  for (int x : v) s.push_back(static_cast<std::int8_t>(x));
  return SpinConfig(std::move(s));
}

ChainDisorder chain(std::vector<double> bonds) { return ChainDisorder(std::move(bonds), kChain); }

// Sum written backwards, independent of the library loop.
double reversed_chain_energy(const SpinConfig& s, const ChainDisorder& d) {
  double e = 0.0;
  for (std::size_t i = d.bonds().size(); i-- > 0;) e += -d.bonds()[i] * s[i] * s[i + 1];
  return e;
}

// Literal double loop over ordered pairs with the 1/N prefactor.
double double_loop_sk(const SpinConfig& s, const SKDisorder& d) {
  const std::size_t n = d.spin_count();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) e += d.coupling(i, j) * s[i] * s[j];
    }
  }
  return -e / static_cast<double>(n);
}

double exhaustive_minimum(const Disorder& d) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = spin_count(d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::int8_t> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U ? -1 : 1;
    best = std::min(best, energy(SpinConfig(s), d));
  }
  return best;
}

}  // namespace

TEST_CASE("spin values are restricted to +-1") {
  CHECK_THROWS_AS(spins({1, 0, -1}), InvalidArgumentError);
  Rng rng = make_rng(3);
  const auto s = SpinConfig::random(500, rng);
  for (auto v : s.spins()) CHECK((v == 1 || v == -1));
}

TEST_CASE("degenerate disorder is rejected") {
  CHECK_THROWS_AS(sample_chain_disorder(5, {0.0, 0.0, ModelKind::Chain}, 1),
                  DegenerateDisorderError);
  CHECK_THROWS_AS(sample_chain_disorder(1, kChain, 1), InvalidSizeError);
  CHECK_THROWS_AS(sample_chain_disorder(5, {0.0, -1.0, ModelKind::Chain}, 1),
                  InvalidArgumentError);
  CHECK_THROWS_AS(sample_chain_disorder(5, kSK, 1), InvalidArgumentError);
}

TEST_CASE("chain disorder moments and determinism") {
  const auto d = sample_chain_disorder(2001, kChain, 42);
  REQUIRE(d.bonds().size() == 2000);
  double mean = 0.0, var = 0.0;
  for (double b : d.bonds()) mean += b;
  mean /= 2000.0;
  for (double b : d.bonds()) var += (b - mean) * (b - mean);
  var /= 1999.0;
  CHECK(std::abs(mean) < 0.05 * 3);  // three standard errors of the mean
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));

  const auto again = sample_chain_disorder(2001, kChain, 42);
  CHECK(std::equal(d.bonds().begin(), d.bonds().end(), again.bonds().begin()));
}

TEST_CASE("SK disorder is symmetric with zero diagonal and unit variance") {
  const auto d = sample_sk_disorder(500, kSK, 9);
  double sum = 0.0, sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    CHECK(d.coupling(i, i) == 0.0);
    for (std::size_t j = i + 1; j < 500; ++j) {
      REQUIRE(d.coupling(i, j) == d.coupling(j, i));
      sum += d.coupling(i, j);
      sq += d.coupling(i, j) * d.coupling(i, j);
      ++count;
    }
  }
  const double mean = sum / count;
  CHECK((sq / count - mean * mean) == doctest::Approx(1.0).epsilon(0.05));

  const auto again = sample_sk_disorder(500, kSK, 9);
  for (std::size_t i = 0; i < 500; ++i) {
    const auto a = d.row(i), b = again.row(i);
    REQUIRE(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST_CASE("mean-field scale widens the couplings by sqrt N") {
  const auto d = sample_sk_disorder(400, kSK, 2, {PairConvention::UnorderedPairs,
                                                  CouplingScale::MeanField});
  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < 400; ++i) {
    for (std::size_t j = i + 1; j < 400; ++j, ++count) sq += d.coupling(i, j) * d.coupling(i, j);
  }
  CHECK(sq / count == doctest::Approx(400.0).epsilon(0.05));
}

TEST_CASE("chain energy hand values") {
  CHECK(energy_chain(spins({1, 1, 1}), chain({1, 1})) == -2.0);
  CHECK(energy_chain(spins({1, -1, 1}), chain({1, -1})) == 0.0);
  CHECK_THROWS_AS(energy_chain(spins({1, 1}), chain({1, 1})), DimensionError);
}

TEST_CASE("chain energy matches reversed summation") {
  Rng rng = make_rng(11);
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto d = sample_chain_disorder(10, kChain, r);
    const auto s = SpinConfig::random(10, rng);
    CHECK(energy_chain(s, d) == doctest::Approx(reversed_chain_energy(s, d)).epsilon(1e-14));
  }
}

TEST_CASE("SK energy hand values and double loop") {
  const DisorderParams p{1.0, 0.0, ModelKind::SK};
  const SKDisorder two(2, {0.0, 1.0, 1.0, 0.0}, p, {PairConvention::OrderedPairs});
  CHECK(energy_sk(spins({1, 1}), two) == -1.0);
  const SKDisorder two_unordered(2, {0.0, 1.0, 1.0, 0.0}, p, {PairConvention::UnorderedPairs});
  CHECK(energy_sk(spins({1, 1}), two_unordered) == -0.5);

  const SKDisorder zero(3, std::vector<double>(9, 0.0), p);
  CHECK(energy_sk(spins({1, -1, 1}), zero) == 0.0);

  Rng rng = make_rng(5);
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto d = sample_sk_disorder(10, kSK, r, {PairConvention::OrderedPairs});
    const auto s = SpinConfig::random(10, rng);
    CHECK(energy_sk(s, d) == doctest::Approx(double_loop_sk(s, d)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(SKDisorder(2, {0.0, 1.0, 2.0, 0.0}, p), InvalidArgumentError);
  CHECK_THROWS_AS(SKDisorder(2, {1.0, 1.0, 1.0, 0.0}, p), InvalidArgumentError);
}

TEST_CASE("ground state hand values") {
  const auto g = chain_ground_state(chain({2, -3}));
  CHECK(g.energy == -5.0);
  CHECK(g.config == spins({1, 1, -1}));

  const auto f = chain_ground_state(chain(std::vector<double>(7, 1.0)));
  CHECK(f.energy == -7.0);
  CHECK(f.config == SpinConfig::all_up(8));

  // sgn(0) = +1
  CHECK(chain_ground_state(chain({0.0, -1.0})).config == spins({1, 1, -1}));
}

TEST_CASE("ground state equals exhaustive minimum") {
  for (std::size_t n : {4, 8, 12}) {
    for (std::uint64_t r = 0; r < 30; ++r) {
      const auto d = sample_chain_disorder(n, kChain, 1000 * n + r);
      const auto g = chain_ground_state(d);
      CHECK(g.energy == exhaustive_minimum(d));
      CHECK(energy_chain(g.config, d) == g.energy);
      double abs_sum = 0.0;
      for (double b : d.bonds()) abs_sum += std::abs(b);
      CHECK(g.energy == doctest::Approx(-abs_sum).epsilon(1e-14));
    }
  }
}

TEST_CASE("landscape indexing and size") {
  const auto pts = enumerate_landscape(chain({1.0}));
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].energy == -1.0);
  CHECK(pts[1].energy == 1.0);
  CHECK(pts[2].energy == 1.0);
  CHECK(pts[3].energy == -1.0);
  CHECK(pts[0].state == 1);
  CHECK(state_from_index(1, 3) == SpinConfig::all_up(3));
  CHECK(state_from_index(2, 3) == spins({1, 1, -1}));
  CHECK(state_from_index(8, 3) == spins({-1, -1, -1}));

  const Disorder d = sample_chain_disorder(11, kChain, 77);
  const auto land = enumerate_landscape(d);
  CHECK(land.size() == 2048);
  double lo = land[0].energy;
  for (const auto& p : land) lo = std::min(lo, p.energy);
  CHECK(lo == chain_ground_state(std::get<ChainDisorder>(d)).energy);

  CHECK_THROWS_AS(enumerate_landscape(Disorder(sample_chain_disorder(21, kChain, 1))),
                  InvalidSizeError);

  std::ostringstream out;
  write_landscape(out, pts);
  CHECK(out.str() == "state,energy\n1,-1\n2,1\n3,1\n4,-1\n");
}

TEST_CASE("single flips change the energy by the local difference") {
  Rng rng = make_rng(8);
  for (std::uint64_t r = 0; r < 10; ++r) {
    const auto c = sample_chain_disorder(15, kChain, r);
    const auto k = sample_sk_disorder(15, kSK, r);
    const auto s = SpinConfig::random(15, rng);
    for (std::size_t i = 0; i < 15; ++i) {
      SpinConfig t = s;
      t.flip(i);
      CHECK(flip_delta(s, c, i) == doctest::Approx(energy_chain(t, c) - energy_chain(s, c)));
      CHECK(flip_delta(s, k, i) == doctest::Approx(energy_sk(t, k) - energy_sk(s, k)));
    }
  }
}

TEST_CASE("both Hamiltonians are even under a global flip") {
  Rng rng = make_rng(4);
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto c = sample_chain_disorder(30, kChain, r);
    const auto k = sample_sk_disorder(30, kSK, r);
    const auto s = SpinConfig::random(30, rng);
    CHECK(energy_chain(s.negated(), c) == energy_chain(s, c));
    CHECK(energy_sk(s.negated(), k) == energy_sk(s, k));
  }
}
