#pragma once

// Pointwise differential geometry of a parametric surface and of the thin
// shell R = r + q3 n built on it.
//
// Conventions
//   n        = (d1 r x d2 r) / |d1 r x d2 r|        (outward on built-in closed surfaces)
//   h_mu_nu  = n . d_mu d_nu r                      (second fundamental form)
//   alpha    = -h g^{-1}, so that d_mu n = alpha_mu^nu r_nu
//   M        = -Tr(alpha)/2 = tr(g^{-1} h)/2,   K = det(alpha)
// With these the coordinate functions satisfy Laplace-Beltrami(r) = 2 M n and
// the unit sphere with outward normal has M = -1, K = 1.

#include <array>

#include "geomom/chart.hpp"
#include "geomom/field.hpp"

namespace geomom {

struct GeometryFrame {
  std::array<double, 2> point{};
  Vec3 position = Vec3::Zero();
  std::array<Vec3, 2> tangent{Vec3::Zero(), Vec3::Zero()};       // r_mu
  std::array<Vec3, 2> dual_tangent{Vec3::Zero(), Vec3::Zero()};  // r^mu = g^mu_nu r_nu
  Mat2 metric = Mat2::Identity();
  Mat2 inverse_metric = Mat2::Identity();
  double area_factor = 1.0;  // sqrt(g)
  Vec3 normal = Vec3::UnitZ();
  Mat2 second_fundamental_form = Mat2::Zero();
  Mat2 weingarten = Mat2::Zero();
  double mean_curvature = 0.0;
  double gaussian_curvature = 0.0;
  ChartSample embedding;  // retained for Christoffel symbols
};

/// Throws ChartSingularity when |r_1 x r_2| < 1e-10 max(|r_1|^2, |r_2|^2) or
/// the point lies outside the chart domain.
GeometryFrame evaluate_frame(const ParametricChart& chart, double q1, double q2);

/// Same, from an already sampled embedding (no domain check).
GeometryFrame frame_from_sample(const ChartSample& sample, double q1, double q2);

/// -(hbar^2 / 2 mu) (M^2 - K).
double geometric_potential(const GeometryFrame& frame, double hbar = 1.0, double mass = 1.0);

struct ShellFrame {
  GeometryFrame base;
  double offset = 0.0;                                         // q3
  Mat3 metric = Mat3::Identity();                              // G_ij
  double determinant = 1.0;                                    // g (1 - 2 M q3 + K q3^2)^2
  std::array<Vec3, 2> tangent{Vec3::Zero(), Vec3::Zero()};     // R_mu = r_mu + q3 d_mu n
  std::array<Vec3, 2> dual_tangent{Vec3::Zero(), Vec3::Zero()};  // G^mu_nu R_nu
};

/// 1 - 2 M q3 + K q3^2.
double shell_scale(const GeometryFrame& frame, double q3);

/// Throws ShellFold once a principal factor 1 + q3 k_i of D reaches zero (up to
/// round-off), which covers D <= 0 and offsets beyond the nearest focal point.
ShellFrame shell_frame(const GeometryFrame& frame, double q3);

/// Christoffel symbols Gamma^lambda_{mu nu}; result[lambda](mu, nu).
std::array<Mat2, 2> christoffel(const GeometryFrame& frame);

/// (1/sqrt g) d_mu (g^mu_nu sqrt g d_nu f) = g^mu_nu (f_mu_nu - Gamma^l_mu_nu f_l).
Complex laplace_beltrami(const GeometryFrame& frame, const CJet& f);
double laplace_beltrami(const GeometryFrame& frame, const RJet& f);
Complex laplace_beltrami(const ParametricChart& chart, const ScalarField& field, double q1,
                         double q2);

/// Laplace-Beltrami applied to each Cartesian coordinate function.
Vec3 laplace_beltrami_of_position(const GeometryFrame& frame);

/// d_mu M and d_mu K (needs third chart derivatives, so obtained by
/// Richardson-extrapolated central differences of evaluate_frame).
struct CurvatureGradient {
  std::array<double, 2> mean{};
  std::array<double, 2> gaussian{};
};
CurvatureGradient curvature_gradient(const ParametricChart& chart, double q1, double q2);

}  // namespace geomom
