#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geomom/errors.hpp"
#include "geomom/operators.hpp"
#include "geomom/spectra.hpp"
#include "support.hpp"

using namespace geomom;
using std::numbers::pi;

namespace {

const Complex I(0.0, 1.0);
constexpr std::array kAxes{Axis::x, Axis::y, Axis::z};

std::vector<ParametricChart> charts() {
  std::vector<ParametricChart> out;
  for (const auto& name : builtin_chart_names()) out.push_back(make_builtin_chart(name));
  return out;
}

ScalarField cos_theta() {
  return ScalarField("cos", [](const RJet& t, const RJet&) { return CJet(cos(t)); });
}

double max_abs(const CVec3& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("geometric momentum on simple fields") {
  const auto sphere = make_sphere();
  SUBCASE("constant field on the unit sphere is i hbar n") {
    for (double hbar : {1.0, 0.3}) {
      const double t = 1.1, f = 2.2;
      const CVec3 p = apply_geometric_momentum(sphere, constant_field(1.0), t, f, hbar);
      const Vec3 n(std::sin(t) * std::cos(f), std::sin(t) * std::sin(f), std::cos(t));
      CHECK(max_abs(p - I * hbar * n.cast<Complex>()) < 1e-15);
    }
  }
  SUBCASE("plane wave on the plane") {
    const double k1 = 1.7, k2 = -0.6;
    const auto w = plane_wave(k1, k2);
    const CVec3 p = apply_geometric_momentum(make_plane(), w, 0.3, -0.4);
    const Complex f = w(0.3, -0.4);
    CHECK(std::abs(p[0] - k1 * f) < 1e-15);
    CHECK(std::abs(p[1] - k2 * f) < 1e-15);
    CHECK(std::abs(p[2]) == 0.0);
  }
  SUBCASE("cos theta, z component at the equator") {
    const CVec3 p = apply_geometric_momentum(sphere, cos_theta(), pi / 2, 0.7);
    // cos theta = z, so p_z gives -i hbar.
    CHECK(std::abs(p[2] + I) < 1e-15);
  }
  SUBCASE("cylinder: the normal part carries M = -1/(2R)") {
    const double radius = 2.0, phi = 0.4;
    const CVec3 p = apply_geometric_momentum(make_cylinder(radius), constant_field(1.0), phi, 0.1);
    const Vec3 n(std::cos(phi), std::sin(phi), 0.0);
    CHECK(max_abs(p - (I / (2.0 * radius)) * n.cast<Complex>()) < 1e-15);
  }
}

TEST_CASE("kinetic energy is -(hbar^2/2m) Laplace-Beltrami") {
  const auto sphere = make_sphere();
  const auto y = spherical_harmonic(2, 1);
  const auto f = evaluate_frame(sphere, 0.8, 1.9);
  const Complex t = kinetic_energy(f, y.jet(0.8, 1.9), 0.5, 2.0);
  CHECK(std::abs(t - (0.25 / 4.0) * 6.0 * y(0.8, 1.9)) < 1e-13);
}

TEST_CASE("unit sphere components") {
  SUBCASE("p_z on the constant field is i hbar cos theta") {
    for (const auto& q : sphere_grid(7, 5, 0.01))
      CHECK(std::abs(sphere_momentum_component(Axis::z, constant_field(1.0), q[0], q[1]) -
                     I * std::cos(q[0])) < 1e-15);
  }
  SUBCASE("closed forms equal the general operator on every library field") {
    const auto sphere = make_sphere();
    std::vector<ScalarField> fields = field_library();
    fields.push_back(constant_field(1.0));
    for (const auto& f : fields)
      for (const auto& q : interior_points(sphere, 50)) {
        const CVec3 general = apply_geometric_momentum(sphere, f, q[0], q[1], 0.7);
        for (Axis a : kAxes)
          CHECK(std::abs(sphere_momentum_component(a, f, q[0], q[1], 0.7) - general[index(a)]) <
                1e-12);
      }
  }
  SUBCASE("eigenfunctions of p_z") {
    for (double p : {-3.0, 0.0, 0.5, 7.0})
      for (double theta : {0.02, 0.9, pi / 2, 2.5}) {
        const Complex lhs = sphere_momentum_component(Axis::z, eigenfunction_field(p), theta, 0.3);
        CHECK(std::abs(lhs - p * psi(p, theta)) < 1e-10);
      }
  }
  SUBCASE("pole band") {
    CHECK_THROWS_AS(sphere_momentum_component(Axis::x, constant_field(1.0), 5e-4, 0.0),
                    PoleProximity);
    CHECK_THROWS_AS(sphere_momentum_component(Axis::z, constant_field(1.0), pi - 1e-4, 0.0),
                    PoleProximity);
    CHECK_NOTHROW(sphere_momentum_component(Axis::z, constant_field(1.0), 2e-3, 0.0));
  }
}

TEST_CASE("angular momentum realization") {
  const double t = 0.9, f = 2.1;
  const double x = std::sin(t) * std::cos(f), y = std::sin(t) * std::sin(f);
  const auto z = cos_theta();
  // L = -i hbar r x grad: L_x z = -i hbar y, L_y z = i hbar x, L_z z = 0.
  CHECK(std::abs(angular_momentum_component(Axis::x, z, t, f) + I * y) < 1e-15);
  CHECK(std::abs(angular_momentum_component(Axis::y, z, t, f) - I * x) < 1e-15);
  CHECK(std::abs(angular_momentum_component(Axis::z, z, t, f)) < 1e-15);
  for (int m = -2; m <= 2; ++m) {
    const auto ylm = spherical_harmonic(2, m);
    CHECK(std::abs(angular_momentum_component(Axis::z, ylm, t, f) - double(m) * ylm(t, f)) < 1e-14);
  }
}

TEST_CASE("position-momentum commutator") {
  SUBCASE("sphere, z z, Y_2_1") {
    const auto y = spherical_harmonic(2, 1);
    CHECK(std::abs(commutator_position_momentum(make_sphere(), Axis::z, Axis::z, y, 1.3, 0.4)) <
          1e-10);
  }
  SUBCASE("constant field: the commutator is -i hbar n_x n_y") {
    const double t = 0.8, f = 0.3;
    const Complex c =
        position_momentum_commutator(make_sphere(), Axis::x, Axis::y, constant_field(1.0), t, f);
    const double nx = std::sin(t) * std::cos(f), ny = std::sin(t) * std::sin(f);
    CHECK(std::abs(c + I * nx * ny) < 1e-15);
  }
  SUBCASE("plane: canonical relation") {
    const auto w = plane_wave(0.7, 1.1);
    const auto plane = make_plane();
    for (Axis i : kAxes)
      for (Axis j : kAxes) {
        const Complex expected = (i == j && i != Axis::z) ? I * w(0.2, 0.5) : Complex(0.0);
        CHECK(std::abs(position_momentum_commutator(plane, i, j, w, 0.2, 0.5) - expected) < 1e-15);
      }
  }
  SUBCASE("full matrix") {
    for (const auto& chart : charts())
      for (const auto& f : field_library()) {
        double worst = 0.0;
        for (const auto& q : interior_points(chart, 50))
          for (Axis i : kAxes)
            for (Axis j : kAxes)
              worst = std::max(
                  worst, std::abs(commutator_position_momentum(chart, i, j, f, q[0], q[1], 1.3)));
        CAPTURE(chart.name());
        CAPTURE(f.label());
        CHECK(worst < 1e-10);
      }
  }
}

TEST_CASE("position-kinetic commutator") {
  const auto sphere = make_sphere();
  CHECK(max_abs(commutator_position_kinetic(sphere, spherical_harmonic(1, 0), 0.7, 0.2)) < 1e-10);
  SUBCASE("constant field reduces to the Laplacian of r") {
    const double t = 0.7, f = 0.2;
    const CVec3 c = position_kinetic_commutator(sphere, constant_field(1.0), t, f);
    const Vec3 n(std::sin(t) * std::cos(f), std::sin(t) * std::sin(f), std::cos(t));
    // [r, T] 1 = (hbar^2 / 2m) grad^2 r = (hbar^2 / m) M n with M = -1.
    CHECK(max_abs(c + n.cast<Complex>()) < 1e-13);
  }
  CHECK(max_abs(commutator_position_kinetic(make_plane(), plane_wave(1.0, -2.0), 0.1, 0.3)) <
        1e-13);
  SUBCASE("full matrix") {
    for (const auto& chart : charts())
      for (const auto& f : field_library()) {
        double worst = 0.0;
        for (const auto& q : interior_points(chart, 50))
          worst = std::max(worst, max_abs(commutator_position_kinetic(chart, f, q[0], q[1], 0.8, 1.7)));
        CAPTURE(chart.name());
        CAPTURE(f.label());
        CHECK(worst < 1e-9);
      }
  }
}

TEST_CASE("angular-momentum commutator") {
  const double t = 1.2, f = 0.6;
  const auto y11 = spherical_harmonic(1, 1);
  SUBCASE("[L_z, p_x] Y_1_1 = i hbar p_y Y_1_1") {
    const Complex c = angular_momentum_commutator(Axis::z, Axis::x, y11, t, f);
    CHECK(std::abs(c - I * sphere_momentum_component(Axis::y, y11, t, f)) < 1e-10);
    CHECK(std::abs(c) > 1e-3);  // not vacuous
  }
  SUBCASE("[L_z, p_z] vanishes") {
    for (const auto& g : field_library())
      CHECK(std::abs(angular_momentum_commutator(Axis::z, Axis::z, g, t, f)) < 1e-12);
  }
  CHECK(std::abs(commutator_angular_momentum(Axis::x, Axis::y, constant_field(1.0), t, f)) < 1e-10);
  SUBCASE("full matrix") {
    const auto sphere = make_sphere();
    for (const auto& g : field_library()) {
      double worst = 0.0;
      for (const auto& q : interior_points(sphere, 50))
        for (Axis i : kAxes)
          for (Axis j : kAxes)
            worst = std::max(worst, std::abs(commutator_angular_momentum(i, j, g, q[0], q[1], 0.9)));
      CAPTURE(g.label());
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("rotation relation") {
  const auto grid = sphere_grid(20, 40, kPoleBand);
  const SphereFunction one = [](const UnitVectorJet&) { return CJet(Complex(1.0)); };
  CHECK(rotation_relation_check(one, grid).max() < 1e-12);
  CHECK(rotation_relation_check(spherical_harmonic_function(1, 0), grid).max() < 1e-10);
  CHECK(rotation_relation_check(spherical_harmonic_function(2, 2), grid).max() < 1e-10);

  SUBCASE("rotation matrices") {
    const Mat3 ry = rotation_about(Axis::y, pi / 2);
    CHECK((ry * Vec3::UnitZ() - Vec3::UnitX()).norm() < 1e-15);
    const Mat3 rx = rotation_about(Axis::x, -pi / 2);
    CHECK((rx * Vec3::UnitZ() - Vec3::UnitY()).norm() < 1e-15);
  }
  SUBCASE("pullback convention") {
    // (R f)(x) = f(R^-1 x): rotating z by R_y(pi/2) gives the x coordinate.
    const SphereFunction z = [](const UnitVectorJet& x) { return CJet(x[2]); };
    const auto rotated = field_on_sphere("Rz", rotate(z, rotation_about(Axis::y, pi / 2)));
    const double t = 0.7, f = 1.9;
    CHECK(std::abs(rotated(t, f) - std::sin(t) * std::cos(f)) < 1e-15);
  }
  SUBCASE("the opposite rotation sense fails the identity") {
    // Conjugating p_z with R_y(-pi/2) instead gives -p_x, so the residual is
    // large for any field with nonzero p_x.
    const SphereFunction f = spherical_harmonic_function(1, 0);
    const Mat3 u = rotation_about(Axis::y, -pi / 2);
    const double t = 1.0, ph = 0.5;
    const Vec3 x(std::sin(t) * std::cos(ph), std::sin(t) * std::sin(ph), std::cos(t));
    const Vec3 y = u.transpose() * x;
    const double t2 = std::acos(y.z()), ph2 = std::atan2(y.y(), y.x());
    const auto pulled = field_on_sphere("U^-1 f", rotate(f, u.transpose()));
    const Complex wrong = sphere_momentum_component(Axis::z, pulled, t2, ph2);
    const Complex px = sphere_momentum_component(Axis::x, spherical_harmonic(1, 0), t, ph);
    CHECK(std::abs(wrong + px) < 1e-12);
    CHECK(std::abs(px) > 0.1);
  }
}

TEST_CASE("hermiticity") {
  const std::vector<ScalarField> fields{spherical_harmonic(0, 0), spherical_harmonic(1, 0),
                                        spherical_harmonic(1, 1), spherical_harmonic(2, 0)};
  for (Axis a : kAxes)
    for (const auto& f : fields)
      for (const auto& g : fields) CHECK(std::abs(hermiticity_defect(a, f, g, 64)) < 1e-10);
  CHECK(std::abs(hermiticity_defect(Axis::z, constant_field(1.0), constant_field(1.0), 64)) < 1e-12);
  CHECK(std::abs(hermiticity_defect(Axis::x, spherical_harmonic(1, 0), spherical_harmonic(2, 0), 64)) <
        1e-10);
}

TEST_CASE("confined gradient") {
  const auto sphere = make_sphere();
  const auto chi = spherical_harmonic(1, 0);
  const auto profile = ground_state_profile(0.25);

  SUBCASE("ground-state profile") {
    CHECK(std::abs(profile.value(0.125) - std::sqrt(8.0)) < 1e-14);
    CHECK(std::abs(profile.derivative(0.0) - std::sqrt(8.0) * pi / 0.25) < 1e-12);
    CHECK(std::abs(profile.value(0.0)) == 0.0);
  }
  SUBCASE("limit coefficient at q3 = 0 is M exactly") {
    for (const auto& chart : charts()) {
      const auto q = interior_points(chart, 3)[2];
      const auto g = confined_gradient(chart, chi, profile, q[0], q[1], 0.0);
      CHECK(g.normal_coefficient == evaluate_frame(chart, q[0], q[1]).mean_curvature);
    }
  }
  SUBCASE("pre-limit coefficient") {
    // Sphere: (M - K q3) / D^{3/2} = -(1 + q3) / (1 + q3)^3.
    const double q3 = 0.1;
    const auto g = confined_gradient(sphere, chi, profile, 1.0, 0.5, q3);
    CHECK(g.normal_coefficient == doctest::Approx(-1.0 / (1.1 * 1.1)).epsilon(1e-14));
  }
  SUBCASE("parts sum to the flat-space gradient through the shell chart") {
    std::vector<ParametricChart> all = charts();
    for (const auto& chart : all)
      for (const auto& field : {spherical_harmonic(1, 0), spherical_harmonic(2, 1),
                                named_field("trig_0")})
        for (double q3 : {0.0, 0.01, 0.07, 0.2}) {
          const auto q = interior_points(chart, 5)[3];
          const auto g = confined_gradient(chart, field, profile, q[0], q[1], q3);
          const CVec3 direct = oracle::shell_gradient(chart, field, profile, q[0], q[1], q3);
          CAPTURE(chart.name());
          CAPTURE(field.label());
          CAPTURE(q3);
          CHECK(max_abs(g.total() - direct) < 1e-10 * (1.0 + max_abs(direct)));
        }
  }
  SUBCASE("plane: no geometric normal part, tangential part independent of q3") {
    const auto plane = make_plane();
    const auto a = confined_gradient(plane, chi, profile, 0.3, 0.2, 0.01);
    const auto b = confined_gradient(plane, chi, profile, 0.3, 0.2, 0.15);
    CHECK(max_abs(a.normal_geometric) == 0.0);
    CHECK(max_abs(a.tangential / profile.value(0.01) - b.tangential / profile.value(0.15)) < 1e-14);
    CHECK(confinement_deviation(plane, chi, profile, 0.3, 0.2, 0.1) < 1e-14);
  }
  SUBCASE("deviation from the surface operator is linear in q3") {
    // The deviation is normalized by |phi(q3)|, which vanishes on the walls.
    CHECK_THROWS_AS(confinement_deviation(sphere, chi, profile, 1.0, 0.5, 0.0), InvalidArgument);
    std::vector<double> offsets;
    for (int k = 0; k <= 12; ++k) offsets.push_back(std::pow(10.0, -4.0 + 0.25 * k));
    const auto study = confinement_study(sphere, chi, profile, 1.0, 0.5, offsets);
    CHECK(study.rows.size() == offsets.size());
    CHECK(study.slope > 0.95);
    CHECK(study.slope < 1.05);
    // Unit sphere: the difference is -q3/(1+q3)^2 phi (d_theta chi r_theta - chi n),
    // and |d_theta Y_1_0|^2 + |Y_1_0|^2 = 3/(4 pi).
    for (double q3 : {1e-3, 0.01, 0.1})
      CHECK(confinement_deviation(sphere, chi, profile, 1.0, 0.5, q3) ==
            doctest::Approx(q3 / ((1 + q3) * (1 + q3)) * std::sqrt(3.0 / (4.0 * pi))).epsilon(1e-8));
  }
  SUBCASE("shell fold") {
    CHECK_THROWS_AS(confined_gradient(sphere, chi, profile, 1.0, 0.5, -1.0), ShellFold);
    CHECK_THROWS_AS(confinement_deviation(make_cylinder(0.5), chi, profile, 1.0, 0.5, -0.6),
                    ShellFold);
  }
}

TEST_CASE("log-log slope") {
  std::vector<std::pair<double, double>> rows;
  for (double x : {1e-3, 1e-2, 1e-1}) rows.emplace_back(x, 5.0 * x * x);
  CHECK(log_log_slope(rows) == doctest::Approx(2.0).epsilon(1e-12));
  rows.emplace_back(0.0, 0.0);  // ignored
  CHECK(log_log_slope(rows) == doctest::Approx(2.0).epsilon(1e-12));
  const std::vector<std::pair<double, double>> one{{0.1, 0.2}};
  CHECK(std::isnan(log_log_slope(one)));
}
