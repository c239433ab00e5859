#include "geomom/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "geomom/errors.hpp"
#include "geomom/quadrature.hpp"

namespace geomom {

namespace {

constexpr Complex kI{0.0, 1.0};

// d_mu of a jet, as a jet whose value and gradient are exact. Its Hessian
// would need third derivatives and is poisoned with NaN.
CJet partial(const CJet& f, int mu) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Complex cnan(nan, nan);
  return CJet(f.grad[mu], {f.second(mu, 0), f.second(mu, 1)}, {cnan, cnan, cnan});
}

// First-order operator a_theta d_theta + a_phi d_phi + b on the (theta, phi)
// chart, with coefficient jets in the same variables.
struct FirstOrderOperator {
  CJet d_theta;
  CJet d_phi;
  CJet constant;

  // Value and gradient exact for an order-2 input.
  CJet apply(const CJet& f) const {
    return d_theta * partial(f, 0) + d_phi * partial(f, 1) + constant * f;
  }
  // Value only; needs f's value and gradient.
  Complex value(const CJet& f) const {
    return d_theta.value * f.grad[0] + d_phi.value * f.grad[1] + constant.value * f.value;
  }
};

FirstOrderOperator sphere_momentum_operator(Axis axis, const RJet& theta, const RJet& phi,
                                            double hbar) {
  const RJet st = sin(theta), ct = cos(theta), sp = sin(phi), cp = cos(phi);
  const Complex mih = -kI * hbar;
  switch (axis) {
    case Axis::x:
      return {CJet(ct * cp) * mih, CJet(-(sp / st)) * mih, CJet(-(st * cp)) * mih};
    case Axis::y:
      return {CJet(ct * sp) * mih, CJet(cp / st) * mih, CJet(-(st * sp)) * mih};
    case Axis::z:
      return {CJet(st) * (kI * hbar), CJet(Complex(0.0)), CJet(ct) * (kI * hbar)};
  }
  throw InvalidArgument("bad axis");
}

FirstOrderOperator angular_momentum_operator(Axis axis, const RJet& theta, const RJet& phi,
                                             double hbar) {
  const RJet cot = cos(theta) / sin(theta);
  const RJet sp = sin(phi), cp = cos(phi);
  const Complex ih = kI * hbar;
  switch (axis) {
    case Axis::x:
      return {CJet(sp) * ih, CJet(cot * cp) * ih, CJet(Complex(0.0))};
    case Axis::y:
      return {CJet(-cp) * ih, CJet(cot * sp) * ih, CJet(Complex(0.0))};
    case Axis::z:
      return {CJet(Complex(0.0)), CJet(Complex(-hbar) * kI), CJet(Complex(0.0))};
  }
  throw InvalidArgument("bad axis");
}

void check_pole(double theta) {
  if (!(theta > kPoleBand && theta < std::numbers::pi - kPoleBand)) {
    std::ostringstream os;
    os.precision(17);
    os << "theta = " << theta << " within " << kPoleBand << " of a pole";
    throw PoleProximity(os.str());
  }
}

struct SphereVariables {
  RJet theta;
  RJet phi;
};

SphereVariables seed(double theta, double phi) {
  return {RJet::variable(0, theta), RJet::variable(1, phi)};
}

Complex sphere_component_unchecked(Axis axis, const CJet& f, double theta, double phi,
                                   double hbar) {
  const auto v = seed(theta, phi);
  return sphere_momentum_operator(axis, v.theta, v.phi, hbar).value(f);
}

double levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) ? 1.0 : -1.0;
}

}  // namespace

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "?";
}

CVec3 geometric_momentum(const GeometryFrame& frame, const CJet& f, double hbar) {
  CVec3 out;
  for (int c = 0; c < 3; ++c) {
    Complex s = frame.dual_tangent[0][c] * f.grad[0] + frame.dual_tangent[1][c] * f.grad[1] +
                frame.mean_curvature * frame.normal[c] * f.value;
    out[c] = -kI * hbar * s;
  }
  return out;
}

CVec3 apply_geometric_momentum(const ParametricChart& chart, const ScalarField& field, double q1,
                               double q2, double hbar) {
  return geometric_momentum(evaluate_frame(chart, q1, q2), field.jet(q1, q2), hbar);
}

Complex kinetic_energy(const GeometryFrame& frame, const CJet& f, double hbar, double mass) {
  return -(hbar * hbar / (2.0 * mass)) * laplace_beltrami(frame, f);
}

Complex position_momentum_commutator(const ParametricChart& chart, Axis i, Axis j,
                                     const ScalarField& field, double q1, double q2, double hbar) {
  const auto frame = evaluate_frame(chart, q1, q2);
  const CJet f = field.jet(q1, q2);
  const CJet xf = frame.embedding.coordinate(index(i)) * f;
  const Complex x_pf = frame.position[index(i)] * geometric_momentum(frame, f, hbar)[index(j)];
  const Complex p_xf = geometric_momentum(frame, xf, hbar)[index(j)];
  return x_pf - p_xf;
}

Complex commutator_position_momentum(const ParametricChart& chart, Axis i, Axis j,
                                     const ScalarField& field, double q1, double q2, double hbar) {
  const auto frame = evaluate_frame(chart, q1, q2);
  const double delta = i == j ? 1.0 : 0.0;
  const double projector = delta - frame.normal[index(i)] * frame.normal[index(j)];
  return position_momentum_commutator(chart, i, j, field, q1, q2, hbar) -
         kI * hbar * projector * field(q1, q2);
}

CVec3 position_kinetic_commutator(const ParametricChart& chart, const ScalarField& field, double q1,
                                  double q2, double hbar, double mass) {
  const auto frame = evaluate_frame(chart, q1, q2);
  const CJet f = field.jet(q1, q2);
  const Complex tf = kinetic_energy(frame, f, hbar, mass);
  CVec3 out;
  for (int c = 0; c < 3; ++c) {
    const CJet xf = frame.embedding.coordinate(c) * f;
    out[c] = frame.position[c] * tf - kinetic_energy(frame, xf, hbar, mass);
  }
  return out;
}

CVec3 commutator_position_kinetic(const ParametricChart& chart, const ScalarField& field, double q1,
                                  double q2, double hbar, double mass) {
  const auto frame = evaluate_frame(chart, q1, q2);
  const CVec3 pf = geometric_momentum(frame, field.jet(q1, q2), hbar);
  return position_kinetic_commutator(chart, field, q1, q2, hbar, mass) - (kI * hbar / mass) * pf;
}

Complex sphere_momentum_component(Axis axis, const ScalarField& field, double theta, double phi,
                                  double hbar) {
  check_pole(theta);
  return sphere_component_unchecked(axis, field.jet(theta, phi), theta, phi, hbar);
}

Complex angular_momentum_component(Axis axis, const ScalarField& field, double theta, double phi,
                                   double hbar) {
  check_pole(theta);
  const auto v = seed(theta, phi);
  return angular_momentum_operator(axis, v.theta, v.phi, hbar).value(field.jet(theta, phi));
}

Complex angular_momentum_commutator(Axis i, Axis j, const ScalarField& field, double theta,
                                    double phi, double hbar) {
  check_pole(theta);
  const auto v = seed(theta, phi);
  const CJet f = field.jet(theta, phi);
  const auto L = angular_momentum_operator(i, v.theta, v.phi, hbar);
  const auto P = sphere_momentum_operator(j, v.theta, v.phi, hbar);
  return L.value(P.apply(f)) - P.value(L.apply(f));
}

Complex commutator_angular_momentum(Axis i, Axis j, const ScalarField& field, double theta,
                                    double phi, double hbar) {
  Complex expected{};
  const CJet f = field.jet(theta, phi);
  for (int k = 0; k < 3; ++k) {
    const double e = levi_civita(index(i), index(j), k);
    if (e != 0.0)
      expected += e * sphere_component_unchecked(static_cast<Axis>(k), f, theta, phi, hbar);
  }
  return angular_momentum_commutator(i, j, field, theta, phi, hbar) - kI * hbar * expected;
}

SphereFunction rotate(const SphereFunction& f, const Mat3& rotation) {
  const Mat3 inverse = rotation.transpose();
  return [f, inverse](const UnitVectorJet& x) {
    UnitVectorJet y;
    for (int a = 0; a < 3; ++a) y[a] = inverse(a, 0) * x[0] + inverse(a, 1) * x[1] + inverse(a, 2) * x[2];
    return f(y);
  };
}

Mat3 rotation_about(Axis axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r = Mat3::Identity();
  switch (axis) {
    case Axis::x:
      r << 1, 0, 0, 0, c, -s, 0, s, c;
      break;
    case Axis::y:
      r << c, 0, s, 0, 1, 0, -s, 0, c;
      break;
    case Axis::z:
      r << c, -s, 0, s, c, 0, 0, 0, 1;
      break;
  }
  return r;
}

namespace {

// [U p_z U^{-1} f](x) = [p_z (U^{-1} f)](U^{-1} x).
Complex conjugated_pz(const SphereFunction& f, const Mat3& u, const ParameterPoint& at,
                      double hbar) {
  const ScalarField pulled = field_on_sphere("rotated", rotate(f, u.transpose()));
  const auto x = unit_vector(RJet(at[0]), RJet(at[1]));
  const Vec3 y = u.transpose() * Vec3(x[0].value, x[1].value, x[2].value);
  const double theta = std::acos(std::clamp(y.z(), -1.0, 1.0));
  const double phi = std::atan2(y.y(), y.x());
  return sphere_momentum_component(Axis::z, pulled, theta, phi, hbar);
}

}  // namespace

RotationResidual rotation_relation_check(const SphereFunction& f,
                                         std::span<const ParameterPoint> points, double hbar) {
  using std::numbers::pi;
  const ScalarField field = field_on_sphere("f", f);
  const Mat3 ux = rotation_about(Axis::y, pi / 2.0);
  const Mat3 uy = rotation_about(Axis::x, -pi / 2.0);
  RotationResidual r;
  for (const auto& pt : points) {
    const Complex px = sphere_momentum_component(Axis::x, field, pt[0], pt[1], hbar);
    const Complex py = sphere_momentum_component(Axis::y, field, pt[0], pt[1], hbar);
    r.px = std::max(r.px, std::abs(px - conjugated_pz(f, ux, pt, hbar)));
    r.py = std::max(r.py, std::abs(py - conjugated_pz(f, uy, pt, hbar)));
  }
  return r;
}

Complex hermiticity_defect(Axis axis, const ScalarField& f, const ScalarField& g, int order,
                           double hbar) {
  using std::numbers::pi;
  const QuadratureRule theta_rule = composite_gauss_legendre(0.0, pi, 1, order);
  const QuadratureRule phi_rule = periodic_trapezoid(2 * order, 2.0 * pi);
  Complex defect{};
  for (std::size_t a = 0; a < theta_rule.nodes.size(); ++a) {
    const double theta = theta_rule.nodes[a];
    const double w_theta = theta_rule.weights[a] * std::sin(theta);
    for (std::size_t b = 0; b < phi_rule.nodes.size(); ++b) {
      const double phi = phi_rule.nodes[b];
      const CJet fj = f.jet(theta, phi);
      const CJet gj = g.jet(theta, phi);
      const Complex pg = sphere_component_unchecked(axis, gj, theta, phi, hbar);
      const Complex pf = sphere_component_unchecked(axis, fj, theta, phi, hbar);
      defect += w_theta * phi_rule.weights[b] * (std::conj(fj.value) * pg - std::conj(pf) * gj.value);
    }
  }
  return defect;
}

NormalProfile ground_state_profile(double thickness) {
  if (!(thickness > 0.0)) throw InvalidArgument("shell thickness must be positive");
  using std::numbers::pi;
  const double amp = std::sqrt(2.0 / thickness);
  const double k = pi / thickness;
  return {"ground",
          [amp, k](double q3) { return Complex(amp * std::sin(k * q3)); },
          [amp, k](double q3) { return Complex(amp * k * std::cos(k * q3)); }};
}

namespace {

// d_mu psi for psi = chi phi / sqrt(D), D = 1 - 2 M q3 + K q3^2.
std::array<Complex, 2> shell_wavefunction_gradient(const ParametricChart& chart,
                                                   const GeometryFrame& frame, const CJet& chi,
                                                   Complex phi, double q1, double q2, double q3) {
  const double d = shell_scale(frame, q3);
  std::array<double, 2> dd{0.0, 0.0};
  if (q3 != 0.0) {
    const auto cg = curvature_gradient(chart, q1, q2);
    for (int mu = 0; mu < 2; ++mu) dd[mu] = -2.0 * q3 * cg.mean[mu] + q3 * q3 * cg.gaussian[mu];
  }
  std::array<Complex, 2> out;
  for (int mu = 0; mu < 2; ++mu)
    out[mu] = phi * (chi.grad[mu] / std::sqrt(d) - 0.5 * chi.value * dd[mu] / std::pow(d, 1.5));
  return out;
}

}  // namespace

ConfinedGradient confined_gradient(const ParametricChart& chart, const ScalarField& chi,
                                   const NormalProfile& profile, double q1, double q2, double q3) {
  const auto frame = evaluate_frame(chart, q1, q2);
  const auto shell = shell_frame(frame, q3);
  const double d = shell_scale(frame, q3);
  const CJet c = chi.jet(q1, q2);
  const Complex phi = profile.value(q3);
  const auto dpsi = shell_wavefunction_gradient(chart, frame, c, phi, q1, q2, q3);

  ConfinedGradient out;
  out.psi = c.value * phi / std::sqrt(d);
  out.normal_coefficient =
      (frame.mean_curvature - frame.gaussian_curvature * q3) / std::pow(d, 1.5);
  for (int k = 0; k < 3; ++k) {
    out.tangential[k] = shell.dual_tangent[0][k] * dpsi[0] + shell.dual_tangent[1][k] * dpsi[1];
    out.normal_geometric[k] = frame.normal[k] * out.normal_coefficient * c.value * phi;
    out.normal_derivative[k] = frame.normal[k] * c.value / std::sqrt(d) * profile.derivative(q3);
  }
  return out;
}

CVec3 limit_surface_operator(const ParametricChart& chart, const ScalarField& chi,
                             const NormalProfile& profile, double q1, double q2, double q3) {
  const auto frame = evaluate_frame(chart, q1, q2);
  shell_frame(frame, q3);  // fold check
  const double d = shell_scale(frame, q3);
  const CJet c = chi.jet(q1, q2);
  const Complex phi = profile.value(q3);
  const auto dpsi = shell_wavefunction_gradient(chart, frame, c, phi, q1, q2, q3);
  const Complex psi = c.value * phi / std::sqrt(d);
  CVec3 out;
  for (int k = 0; k < 3; ++k)
    out[k] = frame.dual_tangent[0][k] * dpsi[0] + frame.dual_tangent[1][k] * dpsi[1] +
             frame.mean_curvature * frame.normal[k] * psi;
  return out;
}

double confinement_deviation(const ParametricChart& chart, const ScalarField& chi,
                             const NormalProfile& profile, double q1, double q2, double q3) {
  const double amplitude = std::abs(profile.value(q3));
  if (amplitude == 0.0) throw InvalidArgument("profile vanishes at the requested offset");
  const auto grad = confined_gradient(chart, chi, profile, q1, q2, q3);
  const CVec3 limit = limit_surface_operator(chart, chi, profile, q1, q2, q3);
  return (grad.surface_part() - limit).norm() / amplitude;
}

double log_log_slope(std::span<const std::pair<double, double>> rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [x, y] : rows) {
    if (!(x > 0.0 && y > 0.0)) continue;
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy confinement_study(const ParametricChart& chart, const ScalarField& chi,
                                   const NormalProfile& profile, double q1, double q2,
                                   std::span<const double> offsets) {
  ConvergenceStudy study;
  for (double q3 : offsets) {
    // q3 = 0 is the limit point itself.
    const double dev = q3 == 0.0 ? 0.0 : confinement_deviation(chart, chi, profile, q1, q2, q3);
    study.rows.emplace_back(q3, dev);
  }
  study.slope = log_log_slope(study.rows);
  return study;
}

}  // namespace geomom
