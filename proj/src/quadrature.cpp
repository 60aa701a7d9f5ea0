#include "gatemp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "gatemp/error.hpp"

namespace gatemp {

namespace {

constexpr double kCutoff = 13.0;
constexpr double kCoarsePanel = 0.25;
constexpr int kFeaturePanels = 60;

double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights,
                               int degree, double resolution)
    : nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      degree_(degree),
      resolution_(resolution) {
  if (nodes_.size() != weights_.size() || nodes_.empty()) {
    throw DimensionError("quadrature nodes and weights must be nonempty and equal in length");
  }
  for (double w : weights_) {
    if (!(w > 0.0)) throw InvalidArgumentError("quadrature weights must be positive");
  }
}

QuadratureRule QuadratureRule::gauss_hermite(std::size_t n) {
  if (n < 1) throw InvalidArgumentError("Gauss-Hermite rule needs at least one node");

  // Newton iteration on orthonormal Hermite polynomials for the weight
  // exp(-x^2), seeded by the usual asymptotic root estimates.
  constexpr double kPiM4 = 0.7511255444649425;  // pi^(-1/4)
  constexpr int kMaxIter = 100;
  std::vector<double> x(n), w(n);
  const std::size_t half = (n + 1) / 2;
  const double dn = static_cast<double>(n);
  double z = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * dn + 1.0) - 1.85575 * std::pow(2.0 * dn + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(dn, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < kMaxIter; ++it) {
      double p1 = kPiM4, p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (dj + 1.0)) * p2 - std::sqrt(dj / (dj + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * dn) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
  if (n % 2 == 1) x[half - 1] = 0.0;

  // Dx measure: x -> sqrt(2) x, w -> w / sqrt(pi). Nodes ascending.
  std::vector<double> nodes(n), weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = std::numbers::sqrt2 * x[n - 1 - i];
    weights[i] = w[n - 1 - i] / std::sqrt(std::numbers::pi);
  }
  double total = 0.0;
  for (double v : weights) total += v;
  for (double& v : weights) v /= total;

  // Integrand poles at distance ~width from the real axis cost
  // exp(-pi * width * sqrt(2n)); 9 / sqrt(2n) keeps that below 1e-12.
  const double resolution = 9.0 / std::sqrt(2.0 * dn);
  return QuadratureRule(std::move(nodes), std::move(weights), static_cast<int>(2 * n - 1),
                        resolution);
}

QuadratureRule QuadratureRule::refined(double center, double width) {
  if (!(width > 0.0) || !std::isfinite(center)) {
    throw DomainError("refined quadrature needs a positive feature width");
  }
  std::vector<double> breaks;
  for (double b = -kCutoff; b <= kCutoff + 1e-12; b += kCoarsePanel) breaks.push_back(b);
  const double span = kFeaturePanels * width;
  const double lo = std::max(-kCutoff, center - span);
  const double hi = std::min(kCutoff, center + span);
  if (lo < hi) {
    const auto panels = static_cast<int>(std::ceil((hi - lo) / width));
    for (int k = 0; k <= panels; ++k) breaks.push_back(lo + (hi - lo) * k / panels);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               breaks.end());

  using Legendre = boost::math::quadrature::gauss<double, 10>;
  const auto& abscissa = Legendre::abscissa();
  const auto& gl_weights = Legendre::weights();

  std::vector<double> nodes, weights;
  nodes.reserve(breaks.size() * 10);
  weights.reserve(breaks.size() * 10);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    for (std::size_t k = 0; k < abscissa.size(); ++k) {
      // Boost stores the nonnegative half of the symmetric rule.
      const double a = abscissa[k];
      nodes.push_back(mid - half * a);
      weights.push_back(half * gl_weights[k] * standard_normal_pdf(mid - half * a));
      if (a != 0.0) {
        nodes.push_back(mid + half * a);
        weights.push_back(half * gl_weights[k] * standard_normal_pdf(mid + half * a));
      }
    }
  }
  return QuadratureRule(std::move(nodes), std::move(weights), 12, width);
}

}  // namespace gatemp
