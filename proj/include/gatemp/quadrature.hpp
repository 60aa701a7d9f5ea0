#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gatemp {

/// Quadrature for the standard Gaussian measure Dx = dx exp(-x^2/2)/sqrt(2 pi).
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights, int degree,
                 double resolution);

  // n-point Gauss-Hermite, exact for polynomials of degree 2n - 1.
  static QuadratureRule gauss_hermite(std::size_t n = 101);

  // Composite Gauss-Legendre over [-13, 13] with panels of width `width`
  // packed around `center`; for integrands with a feature narrower than the
  // Gauss-Hermite node spacing.
  static QuadratureRule refined(double center, double width);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  int degree() const noexcept { return degree_; }

  // Narrowest feature (in x) the rule integrates to ~1e-12.
  double resolution() const noexcept { return resolution_; }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int degree_;
  double resolution_;
};

// Integrates f against Dx, where f varies on the scale `width` around
// `center`. Uses `rule` when it resolves that scale, a refined rule otherwise.
template <class F>
double integrate_gaussian(const QuadratureRule& rule, F&& f, double center, double width) {
  if (width >= rule.resolution()) return rule.integrate(f);
  return QuadratureRule::refined(center, width).integrate(f);
}

}  // namespace gatemp
