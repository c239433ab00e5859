#include "geomom/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "geomom/errors.hpp"

namespace geomom {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int points) {
  if (panels < 1) throw InvalidArgument("composite rule needs at least one panel");
  if (!(b > a)) throw InvalidArgument("composite rule needs a < b");
  const QuadratureRule base = gauss_legendre(points);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * points);
  rule.weights.reserve(rule.nodes.capacity());
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double mid = lo + 0.5 * width;
    for (int j = 0; j < points; ++j) {
      rule.nodes.push_back(mid + 0.5 * width * base.nodes[j]);
      rule.weights.push_back(0.5 * width * base.weights[j]);
    }
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int n, double period) {
  if (n < 1) throw InvalidArgument("trapezoid rule needs at least one node");
  QuadratureRule rule;
  for (int k = 0; k < n; ++k) {
    rule.nodes.push_back(period * k / n);
    rule.weights.push_back(period / n);
  }
  return rule;
}

}  // namespace geomom
