#pragma once

// Independent oracles shared by the unit tests and the acceptance binary.
// Nothing here calls the code path it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <type_traits>
#include <vector>

#include "geomom/chart.hpp"
#include "geomom/field.hpp"
#include "geomom/geometry.hpp"
#include "geomom/operators.hpp"
#include "geomom/quadrature.hpp"

namespace oracle {

using Complex = std::complex<double>;
using std::numbers::pi;

// Fourth-order central difference of a scalar function of one variable.
// Results are evaluated into the value type so Eigen expressions never
// outlive the temporaries they reference.
template <typename F>
auto derivative(F f, double x, double h) {
  using R = std::decay_t<decltype(f(x))>;
  return R((-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h));
}

template <typename F>
auto second_derivative(F f, double x, double h) {
  using R = std::decay_t<decltype(f(x))>;
  return R((-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) /
           (12.0 * h * h));
}

// Mixed partial from a 4x4 product stencil.
template <typename F>
auto mixed_derivative(F f, double x, double y, double h) {
  auto dx = [&](double yy) { return derivative([&](double xx) { return f(xx, yy); }, x, h); };
  return derivative(dx, y, h);
}

// Legendre polynomial from the explicit sum
// P_l(x) = 2^-l sum_k (-1)^k C(l,k) C(2l-2k, l) x^(l-2k).
inline double legendre_series(int l, double x) {
  auto binom = [](int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  double sum = 0.0;
  for (int k = 0; k <= l / 2; ++k)
    sum += (k % 2 ? -1.0 : 1.0) * binom(l, k) * binom(2 * l - 2 * k, l) * std::pow(x, l - 2 * k);
  return sum / std::pow(2.0, l);
}

// Y_lm from std::sph_legendre (which includes the Condon-Shortley phase and
// normalization for m >= 0), extended to m < 0 by Y_l,-m = (-1)^m conj(Y_lm).
inline Complex spherical_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const Complex y = std::sph_legendre(l, am, theta) * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

// Graded Gauss-Legendre in theta: dyadic panels shrinking toward both poles
// down to theta_min, 16 points each.
inline std::vector<std::pair<double, double>> graded_theta_rule(double theta_min) {
  const geomom::QuadratureRule base = geomom::gauss_legendre(16);
  std::vector<std::pair<double, double>> out;
  auto panel = [&](double a, double b) {
    for (std::size_t k = 0; k < base.nodes.size(); ++k)
      out.emplace_back(0.5 * (a + b) + 0.5 * (b - a) * base.nodes[k],
                       0.5 * (b - a) * base.weights[k]);
  };
  for (double hi = 0.5 * pi; hi > theta_min; hi *= 0.5) {
    const double lo = std::max(0.5 * hi, theta_min);
    panel(lo, hi);
    panel(pi - hi, pi - lo);
  }
  return out;
}

// Amplitude as the direct surface overlap of Y_l0 with the p_z eigenfunction,
// integrated over theta on the sphere (phi contributes 2 pi).
inline Complex surface_amplitude(int l, double p) {
  Complex sum = 0.0;
  for (const auto& [theta, w] : graded_theta_rule(1e-12)) {
    const Complex eigen =
        std::polar(1.0 / (2.0 * pi * std::sin(theta)), -p * std::log(std::tan(0.5 * theta)));
    sum += w * std::sin(theta) * spherical_harmonic(l, 0, theta, 0.0) * std::conj(eigen);
  }
  return 2.0 * pi * sum;
}

// Gradient of psi = chi(q1,q2) phi(q3) / sqrt(1 - 2 M q3 + K q3^2) in flat 3D
// space, through the shell chart X = r + q3 n: grad psi = J^-T (d psi / d q).
inline geomom::CVec3 shell_gradient(const geomom::ParametricChart& chart,
                                    const geomom::ScalarField& chi,
                                    const geomom::NormalProfile& profile, double q1, double q2,
                                    double q3) {
  auto position = [&](double a, double b, double c) {
    const auto f = geomom::evaluate_frame(chart, a, b);
    return geomom::Vec3(f.position + c * f.normal);
  };
  auto psi = [&](double a, double b, double c) {
    const auto f = geomom::evaluate_frame(chart, a, b);
    const double d = 1.0 - 2.0 * f.mean_curvature * c + f.gaussian_curvature * c * c;
    return chi(a, b) * profile.value(c) / std::sqrt(d);
  };
  const double h = 2e-4;
  geomom::Mat3 jacobian;
  jacobian.col(0) = derivative([&](double a) { return position(a, q2, q3); }, q1, h);
  jacobian.col(1) = derivative([&](double b) { return position(q1, b, q3); }, q2, h);
  jacobian.col(2) = derivative([&](double c) { return position(q1, q2, c); }, q3, h);
  Eigen::Vector3cd dq;
  dq(0) = derivative([&](double a) { return psi(a, q2, q3); }, q1, h);
  dq(1) = derivative([&](double b) { return psi(q1, b, q3); }, q2, h);
  dq(2) = derivative([&](double c) { return psi(q1, q2, c); }, q3, h);
  const geomom::Mat3 inv_t = jacobian.inverse().transpose();
  return inv_t.cast<Complex>() * dq;
}

}  // namespace oracle
