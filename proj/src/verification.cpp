#include "geomom/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "geomom/chart.hpp"
#include "geomom/errors.hpp"
#include "geomom/field.hpp"
#include "geomom/geometry.hpp"
#include "geomom/operators.hpp"
#include "geomom/sampling.hpp"
#include "geomom/spectra.hpp"

namespace geomom {

namespace {

using std::numbers::pi;

constexpr std::array kAxes{Axis::x, Axis::y, Axis::z};

// Running max of a residual together with the point that produced it.
struct MaxTracker {
  double value = 0.0;
  std::optional<ParameterPoint> where;

  void update(double r, const ParameterPoint& at) {
    // NaN must surface as a failure, so it always wins.
    if (std::isnan(r) || (!std::isnan(value) && r > value)) {
      value = r;
      where = at;
    }
  }
  void update(double r) {
    if (std::isnan(r) || (!std::isnan(value) && r > value)) value = r;
  }
};

class Builder {
 public:
  explicit Builder(const VerificationOptions& options) : options_(options) {}

  void add(std::string identity, std::optional<std::string> chart,
           std::optional<std::string> field, const MaxTracker& m, double default_tolerance) {
    VerificationEntry e;
    e.identity_name = std::move(identity);
    e.chart = std::move(chart);
    e.field = std::move(field);
    e.point = m.where;
    e.residual = m.value;
    e.tolerance = options_.tolerance.value_or(default_tolerance);
    e.pass = std::isfinite(e.residual) && e.residual < e.tolerance;
    report_.entries.push_back(std::move(e));
  }

  void add(std::string identity, std::optional<std::string> chart,
           std::optional<std::string> field, double residual, double default_tolerance) {
    MaxTracker m;
    m.update(residual);
    add(std::move(identity), std::move(chart), std::move(field), m, default_tolerance);
  }

  VerificationReport take() { return std::move(report_); }

 private:
  const VerificationOptions& options_;
  VerificationReport report_;
};

std::vector<ParametricChart> all_charts() {
  std::vector<ParametricChart> charts;
  for (const auto& name : builtin_chart_names()) charts.push_back(make_builtin_chart(name));
  return charts;
}

std::vector<ParameterPoint> sphere_test_grid() { return sphere_grid(20, 40, kPoleBand); }

void suite_geometry(Builder& b, const VerificationOptions& o) {
  for (const auto& chart : all_charts()) {
    MaxTracker m;
    for (const auto& q : interior_points(chart, o.points_per_chart)) {
      const GeometryFrame frame = evaluate_frame(chart, q[0], q[1]);
      const Vec3 expected = 2.0 * frame.mean_curvature * frame.normal;
      m.update((laplace_beltrami_of_position(frame) - expected).cwiseAbs().maxCoeff(), q);
    }
    b.add("laplace_beltrami_position", chart.name(), std::nullopt, m, kIdentityTolerance);
  }

  const ParametricChart sphere = make_sphere();
  MaxTracker vs;
  for (const auto& q : interior_points(sphere, o.points_per_chart))
    vs.update(std::abs(geometric_potential(evaluate_frame(sphere, q[0], q[1]), o.hbar, o.mass)), q);
  b.add("geometric_potential", sphere.name(), std::nullopt, vs, kComponentTolerance);

  for (double radius : {1.0, 2.0}) {
    const ParametricChart cyl = make_cylinder(radius);
    const double expected = -o.hbar * o.hbar / (8.0 * o.mass * radius * radius);
    MaxTracker vc;
    for (const auto& q : interior_points(cyl, o.points_per_chart))
      vc.update(std::abs(geometric_potential(evaluate_frame(cyl, q[0], q[1]), o.hbar, o.mass) -
                         expected),
                q);
    b.add("geometric_potential", cyl.name() + "(radius=" + (radius == 1.0 ? "1" : "2") + ")",
          std::nullopt, vc, kComponentTolerance);
  }
}

void suite_commutator_xp(Builder& b, const VerificationOptions& o) {
  const auto fields = field_library();
  for (const auto& chart : all_charts()) {
    const auto points = interior_points(chart, o.points_per_chart);
    for (const auto& f : fields) {
      MaxTracker m;
      for (const auto& q : points)
        for (Axis i : kAxes)
          for (Axis j : kAxes)
            m.update(std::abs(commutator_position_momentum(chart, i, j, f, q[0], q[1], o.hbar)), q);
      b.add("commutator_xp", chart.name(), f.label(), m, kIdentityTolerance);
    }
  }
}

void suite_commutator_rT(Builder& b, const VerificationOptions& o) {
  const auto fields = field_library();
  for (const auto& chart : all_charts()) {
    const auto points = interior_points(chart, o.points_per_chart);
    for (const auto& f : fields) {
      MaxTracker m;
      for (const auto& q : points)
        m.update(
            commutator_position_kinetic(chart, f, q[0], q[1], o.hbar, o.mass).cwiseAbs().maxCoeff(),
            q);
      b.add("commutator_rT", chart.name(), f.label(), m, kSecondOrderTolerance);
    }
  }
}

void suite_commutator_Lp(Builder& b, const VerificationOptions& o) {
  const ParametricChart sphere = make_sphere();
  const auto points = interior_points(sphere, o.points_per_chart);
  for (const auto& f : field_library()) {
    MaxTracker m;
    for (const auto& q : points)
      for (Axis i : kAxes)
        for (Axis j : kAxes)
          m.update(std::abs(commutator_angular_momentum(i, j, f, q[0], q[1], o.hbar)), q);
    b.add("commutator_Lp", sphere.name(), f.label(), m, kIdentityTolerance);
  }
}

void suite_sphere_components(Builder& b, const VerificationOptions& o) {
  const ParametricChart sphere = make_sphere();
  const auto points = interior_points(sphere, o.points_per_chart);
  for (const auto& f : field_library()) {
    MaxTracker m;
    for (const auto& q : points) {
      const CVec3 general = apply_geometric_momentum(sphere, f, q[0], q[1], o.hbar);
      for (Axis a : kAxes)
        m.update(std::abs(sphere_momentum_component(a, f, q[0], q[1], o.hbar) - general(index(a))),
                 q);
    }
    b.add("sphere_momentum_components", sphere.name(), f.label(), m, kComponentTolerance);
  }
}

void suite_rotation(Builder& b, const VerificationOptions& o) {
  const auto grid = sphere_test_grid();
  for (int l = 0; l <= 3; ++l)
    for (int m = -l; m <= l; ++m) {
      const RotationResidual r =
          rotation_relation_check(spherical_harmonic_function(l, m), grid, o.hbar);
      const std::string label = spherical_harmonic(l, m).label();
      b.add("rotation_px", "sphere", label, r.px, kIdentityTolerance);
      b.add("rotation_py", "sphere", label, r.py, kIdentityTolerance);
    }
}

void suite_confinement(Builder& b, const VerificationOptions&) {
  const ParametricChart sphere = make_sphere();
  const ScalarField chi = spherical_harmonic(1, 0);
  const NormalProfile profile = ground_state_profile(0.25);
  std::vector<double> offsets;
  for (int k = 0; k <= 12; ++k) offsets.push_back(std::pow(10.0, -4.0 + 0.25 * k));
  const ConvergenceStudy study = confinement_study(sphere, chi, profile, 1.0, 0.5, offsets);
  b.add("confinement_slope", sphere.name(), chi.label(), std::abs(study.slope - 1.0),
        kSlopeTolerance);

  const ParametricChart plane = make_plane();
  MaxTracker flat;
  for (double q3 : offsets) flat.update(confinement_deviation(plane, chi, profile, 0.3, -0.2, q3));
  b.add("confinement_flat", plane.name(), chi.label(), flat, kIdentityTolerance);
}

void suite_hermiticity(Builder& b, const VerificationOptions& o) {
  const std::vector<ScalarField> fields{spherical_harmonic(0, 0), spherical_harmonic(1, 0),
                                        spherical_harmonic(1, 1), spherical_harmonic(2, 0)};
  for (Axis a : kAxes)
    for (const auto& f : fields)
      for (const auto& g : fields)
        b.add(std::string("hermiticity_p") + axis_name(a), "sphere", f.label() + "," + g.label(),
              std::abs(hermiticity_defect(a, f, g, 64, o.hbar)), kIdentityTolerance);
}

void suite_eigenvalue(Builder& b, const VerificationOptions& o) {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> p_dist(-10.0, 10.0);
  std::uniform_real_distribution<double> theta_dist(0.01, pi - 0.01);
  MaxTracker m;
  for (int k = 0; k < 100; ++k) {
    const double p = p_dist(rng);
    const double theta = theta_dist(rng);
    const ScalarField field = eigenfunction_field(p);
    const Complex lhs = sphere_momentum_component(Axis::z, field, theta, 0.0, o.hbar);
    m.update(std::abs(lhs - o.hbar * p * psi(p, theta)), {theta, 0.0});
  }
  b.add("eigenvalue_pz", "sphere", "psi_p", m, kIdentityTolerance);
}

void suite_dirichlet(Builder& b, const VerificationOptions&) {
  for (double theta_min : {1e-3, 1e-5, 1e-7}) {
    MaxTracker m;
    for (double p : {-2.0, 0.0, 1.5})
      for (int k = -20; k <= 20; ++k) {
        const double dp = 0.25 * k;
        m.update(std::abs(overlap_kernel(p + dp, p, theta_min) - dirichlet_kernel(dp, theta_min)));
      }
    b.add("dirichlet_kernel", "sphere", "theta_min=" + std::string(theta_min == 1e-3   ? "1e-3"
                                                                   : theta_min == 1e-5 ? "1e-5"
                                                                                       : "1e-7"),
          m, kQuadratureTolerance);
  }
}

void suite_parseval(Builder& b, const VerificationOptions& o) {
  for (int l = 0; l <= o.lmax; ++l)
    b.add("parseval", "sphere", spherical_harmonic_label(l, 0), std::abs(parseval_check(l) - 1.0),
          kParsevalTolerance);
}

void suite_moments(Builder& b, const VerificationOptions& o) {
  for (int l = 0; l <= o.lmax; ++l) {
    const auto mom = moments(l, 3);
    b.add("odd_moments", "sphere", spherical_harmonic_label(l, 0),
          std::max(std::abs(mom[1]), std::abs(mom[3])), kQuadratureTolerance);
  }
  b.add("second_moment", "sphere", spherical_harmonic_label(0, 0),
        std::abs(moments(0, 2)[2] * o.hbar * o.hbar - o.hbar * o.hbar / 3.0),
        kQuadratureTolerance);
}

void suite_uncertainty(Builder& b, const VerificationOptions& o) {
  const UncertaintyReport r0 = uncertainty_report(0, 0);
  const std::string y00 = spherical_harmonic_label(0, 0);
  for (int i = 0; i < 3; ++i) {
    const double var =
        r0.mean_position_squared[i] - r0.mean_position[i] * r0.mean_position[i];
    b.add(std::string("position_variance_") + axis_name(kAxes[i]), "sphere", y00,
          std::abs(var - 1.0 / 3.0), kQuadratureTolerance);
    b.add(std::string("uncertainty_product_") + axis_name(kAxes[i]), "sphere", y00,
          std::abs(r0.products[i].value() * o.hbar - o.hbar / 3.0), kQuadratureTolerance);
  }
  const UncertaintyReport r1 = uncertainty_report(1, 0);
  b.add("position_variance_z", "sphere", spherical_harmonic_label(1, 0),
        std::abs(r1.mean_position_squared[2] - r1.mean_position[2] * r1.mean_position[2] - 0.6),
        kQuadratureTolerance);
}

void suite_closed_form(Builder& b, const VerificationOptions&) {
  b.add("amplitude_at_zero", "sphere", spherical_harmonic_label(0, 0),
        std::abs(amplitude_quadrature(0, 0.0) - std::sqrt(pi) / 2.0), kQuadratureTolerance);
  const auto grid = symmetric_grid(6.0, 0.05);
  for (int l = 0; l <= 2; ++l) {
    const AmplitudeTransform transform(l);
    const double sign = closed_form_sign(l);
    MaxTracker density, amplitude;
    for (double p : grid) {
      const Complex a = transform(p);
      const Complex c = amplitude_closed(l, p);
      density.update(std::abs(std::norm(a) - std::norm(c)), {p, 0.0});
      amplitude.update(std::abs(a - sign * c), {p, 0.0});
    }
    density.where.reset();
    amplitude.where.reset();
    b.add("closed_form_density", "sphere", spherical_harmonic_label(l, 0), density,
          kQuadratureTolerance);
    b.add("closed_form_amplitude", "sphere", spherical_harmonic_label(l, 0), amplitude,
          kQuadratureTolerance);
  }
}

using Suite = void (*)(Builder&, const VerificationOptions&);

struct NamedSuite {
  const char* name;
  Suite run;
};

constexpr std::array<NamedSuite, 14> kSuites{{
    {"geometry", suite_geometry},
    {"commutator_xp", suite_commutator_xp},
    {"commutator_rT", suite_commutator_rT},
    {"commutator_Lp", suite_commutator_Lp},
    {"sphere_components", suite_sphere_components},
    {"rotation", suite_rotation},
    {"confinement", suite_confinement},
    {"hermiticity", suite_hermiticity},
    {"eigenvalue", suite_eigenvalue},
    {"dirichlet", suite_dirichlet},
    {"parseval", suite_parseval},
    {"moments", suite_moments},
    {"uncertainty", suite_uncertainty},
    {"closed_form", suite_closed_form},
}};

}  // namespace

bool VerificationReport::all_passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.pass; }));
}

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

VerificationReport run_verification(const VerificationOptions& options) {
  const auto& names = verification_suites();
  for (const auto& name : options.only)
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw InvalidArgument("unknown verification suite '" + name + "'");
  if (options.lmax < 0 || options.lmax > kMaxLegendreDegree)
    throw InvalidArgument("lmax must lie in [0, 64]");
  if (options.tolerance && !(*options.tolerance > 0.0))
    throw InvalidArgument("tolerance must be positive");
  if (options.points_per_chart < 1) throw InvalidArgument("points_per_chart must be positive");

  Builder builder(options);
  for (const auto& suite : kSuites) {
    const bool selected =
        options.only.empty() ||
        std::find(options.only.begin(), options.only.end(), suite.name) != options.only.end();
    if (selected) suite.run(builder, options);
  }
  return builder.take();
}

}  // namespace geomom
