#pragma once

#include <vector>

namespace geomom {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(nodes[k]);
    return sum;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// `panels` equal panels over [a, b], each with a `points`-point Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int points);

/// Periodic trapezoid rule with n equispaced nodes on [0, period).
QuadratureRule periodic_trapezoid(int n, double period);

}  // namespace geomom
