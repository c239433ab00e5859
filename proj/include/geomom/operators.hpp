#pragma once

// Geometric momentum p = -i hbar (r^mu d_mu + M n) and the operator identities
// it satisfies: Dirac-bracket commutators with position and kinetic energy,
// vector-operator commutators with L on the unit sphere, the rotation
// relations between p_x, p_y and p_z, and the thin-shell (confining)
// decomposition of the flat-space gradient.
//
// Composite operators such as p_j(x_i f) are evaluated from exact jets (product
// rule on field and coordinate partials), never by nested finite differences.

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geomom/chart.hpp"
#include "geomom/field.hpp"
#include "geomom/geometry.hpp"
#include "geomom/sampling.hpp"

namespace geomom {

enum class Axis { x = 0, y = 1, z = 2 };

constexpr int index(Axis a) { return static_cast<int>(a); }
const char* axis_name(Axis a);

/// Sphere-specialized operators refuse theta within this band of either pole.
inline constexpr double kPoleBand = 1e-3;

// ---------------------------------------------------------------------------
// Geometric momentum on a general chart

/// -i hbar (r^mu d_mu f + M n f) from a frame and a field jet.
CVec3 geometric_momentum(const GeometryFrame& frame, const CJet& f, double hbar = 1.0);

CVec3 apply_geometric_momentum(const ParametricChart& chart, const ScalarField& field, double q1,
                               double q2, double hbar = 1.0);

/// -(hbar^2 / 2m) Laplace-Beltrami f.
Complex kinetic_energy(const GeometryFrame& frame, const CJet& f, double hbar = 1.0,
                       double mass = 1.0);

/// ([x_i, p_j] f)(q): x_i p_j f - p_j (x_i f).
Complex position_momentum_commutator(const ParametricChart& chart, Axis i, Axis j,
                                     const ScalarField& field, double q1, double q2,
                                     double hbar = 1.0);

/// [x_i, p_j] f - i hbar (delta_ij - n_i n_j) f; vanishes identically.
Complex commutator_position_momentum(const ParametricChart& chart, Axis i, Axis j,
                                     const ScalarField& field, double q1, double q2,
                                     double hbar = 1.0);

/// ([r, T] f)(q), componentwise.
CVec3 position_kinetic_commutator(const ParametricChart& chart, const ScalarField& field, double q1,
                                  double q2, double hbar = 1.0, double mass = 1.0);

/// [r, T] f - (i hbar / m) p f; vanishes identically.
CVec3 commutator_position_kinetic(const ParametricChart& chart, const ScalarField& field, double q1,
                                  double q2, double hbar = 1.0, double mass = 1.0);

// ---------------------------------------------------------------------------
// Unit sphere, (theta, phi) chart

/// Closed-form p_x, p_y, p_z on the unit sphere:
///   p_x = -i hbar (cos t cos f d_t - (sin f / sin t) d_f - sin t cos f)
///   p_y = -i hbar (cos t sin f d_t + (cos f / sin t) d_f - sin t sin f)
///   p_z =  i hbar (sin t d_t + cos t)
/// Throws PoleProximity within kPoleBand of a pole.
Complex sphere_momentum_component(Axis axis, const ScalarField& field, double theta, double phi,
                                  double hbar = 1.0);

/// Standard realization: L_z = -i hbar d_phi,
/// L_x = i hbar (sin phi d_theta + cot theta cos phi d_phi),
/// L_y = i hbar (-cos phi d_theta + cot theta sin phi d_phi).
Complex angular_momentum_component(Axis axis, const ScalarField& field, double theta, double phi,
                                   double hbar = 1.0);

/// ([L_i, p_j] f)(theta, phi).
Complex angular_momentum_commutator(Axis i, Axis j, const ScalarField& field, double theta,
                                    double phi, double hbar = 1.0);

/// [L_i, p_j] f - i hbar eps_ijk p_k f.
Complex commutator_angular_momentum(Axis i, Axis j, const ScalarField& field, double theta,
                                    double phi, double hbar = 1.0);

/// Rotation acting on fields by pullback, (R f)(x) = f(R^{-1} x).
SphereFunction rotate(const SphereFunction& f, const Mat3& rotation);

Mat3 rotation_about(Axis axis, double angle);

struct RotationResidual {
  double px = 0.0;  // max |p_x f - R_y(pi/2) p_z R_y(-pi/2) f|
  double py = 0.0;  // max |p_y f - R_x(-pi/2) p_z R_x(pi/2) f|
  double max() const { return px > py ? px : py; }
};

/// Check p_x = exp(-i pi L_y / 2) p_z exp(i pi L_y / 2) and
/// p_y = exp(i pi L_x / 2) p_z exp(-i pi L_x / 2) pointwise.
RotationResidual rotation_relation_check(const SphereFunction& f,
                                         std::span<const ParameterPoint> points,
                                         double hbar = 1.0);

/// <f, P g> - <P f, g> over the unit sphere, Gauss-Legendre (order) in theta
/// times a 2*order-point trapezoid in phi.
Complex hermiticity_defect(Axis axis, const ScalarField& f, const ScalarField& g, int order = 64,
                           double hbar = 1.0);

// ---------------------------------------------------------------------------
// Thin-shell confinement

/// Transverse profile phi(q3) with its derivative.
struct NormalProfile {
  std::string label;
  std::function<Complex(double)> value;
  std::function<Complex(double)> derivative;
};

/// sqrt(2/d) sin(pi q3 / d): infinite-well ground state on [0, d].
NormalProfile ground_state_profile(double thickness);

/// Three parts of grad psi for psi = chi(q1, q2) phi(q3) / sqrt(1 - 2 M q3 + K q3^2).
struct ConfinedGradient {
  CVec3 tangential = CVec3::Zero();        // R^mu d_mu psi
  CVec3 normal_geometric = CVec3::Zero();  // n (M - K q3) / D^{3/2} chi phi
  CVec3 normal_derivative = CVec3::Zero(); // n chi / sqrt(D) phi'
  double normal_coefficient = 0.0;         // (M - K q3) / D^{3/2}; equals M at q3 = 0
  Complex psi{};

  CVec3 total() const { return tangential + normal_geometric + normal_derivative; }
  CVec3 surface_part() const { return tangential + normal_geometric; }
};

/// Throws ShellFold if the offset reaches the focal distance.
ConfinedGradient confined_gradient(const ParametricChart& chart, const ScalarField& chi,
                                   const NormalProfile& profile, double q1, double q2, double q3);

/// (r^mu d_mu + M n) psi with surface (q3 = 0) geometry, psi taken at q3.
CVec3 limit_surface_operator(const ParametricChart& chart, const ScalarField& chi,
                             const NormalProfile& profile, double q1, double q2, double q3);

/// |surface_part - limit_surface_operator| / |phi(q3)|.
double confinement_deviation(const ParametricChart& chart, const ScalarField& chi,
                             const NormalProfile& profile, double q1, double q2, double q3);

struct ConvergenceStudy {
  std::vector<std::pair<double, double>> rows;  // (q3, deviation)
  double slope = 0.0;                           // NaN when fewer than two positive rows
};

ConvergenceStudy confinement_study(const ParametricChart& chart, const ScalarField& chi,
                                   const NormalProfile& profile, double q1, double q2,
                                   std::span<const double> offsets);

/// Least-squares slope of log(y) against log(x), using pairs with x, y > 0.
double log_log_slope(std::span<const std::pair<double, double>> rows);

}  // namespace geomom
