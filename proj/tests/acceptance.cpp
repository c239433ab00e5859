// Acceptance suite: one line per criterion, `AC<n> PASS|FAIL <summary>`.
// Exit status is nonzero when any selected criterion fails.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "geomom/chart.hpp"
#include "geomom/field.hpp"
#include "geomom/geometry.hpp"
#include "geomom/io.hpp"
#include "geomom/operators.hpp"
#include "geomom/sampling.hpp"
#include "geomom/spectra.hpp"
#include "support.hpp"

using namespace geomom;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string summary;
};

constexpr std::array kAxes{Axis::x, Axis::y, Axis::z};

std::vector<ParametricChart> charts() {
  std::vector<ParametricChart> out;
  for (const auto& name : builtin_chart_names()) out.push_back(make_builtin_chart(name));
  return out;
}

Outcome ac1() {
  const Complex a = amplitude_quadrature(0, 0.0);
  const double vs_value = std::abs(a - 0.88622693);
  const double vs_exact = std::abs(a - std::sqrt(pi) / 2.0);
  return {vs_value < 1e-8 && vs_exact < 1e-8,
          fmt::format("phi_0(0) = {:.12f}; |diff| vs 0.88622693 = {:.2e}, vs sqrt(pi)/2 = {:.2e} "
                      "(limit 1e-8)",
                      a.real(), vs_value, vs_exact)};
}

Outcome ac2() {
  const auto grid = symmetric_grid(6.0, 0.05);
  bool pass = true;
  std::string detail;
  for (int l = 0; l <= 2; ++l) {
    const AmplitudeTransform transform(l);
    const int sign = closed_form_sign(l);
    double density = 0.0, amplitude = 0.0;
    bool constant_sign = true;
    for (double p : grid) {
      const Complex q = transform(p), c = amplitude_closed(l, p);
      density = std::max(density, std::abs(std::norm(q) - std::norm(c)));
      amplitude = std::max(amplitude, std::abs(q - double(sign) * c));
      // The sign relating the two must be the same at every p where it is defined.
      if (std::abs(c) > 1e-6) constant_sign = constant_sign && std::real(q / c) * sign > 0.0;
    }
    pass = pass && density < 1e-8 && amplitude < 1e-8 && constant_sign;
    detail += fmt::format(" l={}: density {:.2e}, amplitude {:.2e} with sign {:+d}{};", l, density,
                          amplitude, sign, constant_sign ? "" : " (sign varies)");
  }
  return {pass, "max over p in [-6,6]:" + detail + " limit 1e-8"};
}

Outcome ac3() {
  const double p2 = moments(0, 2)[2];
  const UncertaintyReport r = uncertainty_report(0, 0);
  const double product = r.products[2].value();
  const double e1 = std::abs(p2 - 1.0 / 3.0), e2 = std::abs(product - 1.0 / 3.0);
  return {e1 < 1e-8 && e2 < 1e-8,
          fmt::format("<p_z^2> = {:.12f} (err {:.2e}); dz dp_z = {:.12f} (err {:.2e}); limit 1e-8",
                      p2, e1, product, e2)};
}

Outcome ac4() {
  double worst = 0.0;
  int worst_l = 0;
  for (int l = 0; l <= 8; ++l) {
    const double e = std::abs(parseval_check(l) - 1.0);
    if (e > worst) {
      worst = e;
      worst_l = l;
    }
  }
  return {worst < 1e-5,
          fmt::format("max |int |phi_l|^2 dp - 1| over l <= 8 = {:.2e} at l = {} (limit 1e-5)",
                      worst, worst_l)};
}

Outcome ac5() {
  double xp = 0.0, lp = 0.0, rt = 0.0;
  const auto fields = field_library();
  for (const auto& chart : charts()) {
    const auto points = interior_points(chart, 50);
    const bool sphere = chart.name() == "sphere";
    for (const auto& f : fields)
      for (const auto& q : points) {
        for (Axis i : kAxes)
          for (Axis j : kAxes) {
            xp = std::max(xp, std::abs(commutator_position_momentum(chart, i, j, f, q[0], q[1])));
            if (sphere)
              lp = std::max(lp, std::abs(commutator_angular_momentum(i, j, f, q[0], q[1])));
          }
        rt = std::max(rt, commutator_position_kinetic(chart, f, q[0], q[1]).cwiseAbs().maxCoeff());
      }
  }
  return {xp < 1e-10 && lp < 1e-10 && rt < 1e-9,
          fmt::format("[x,p] {:.2e} (4 charts), [L,p] {:.2e} (sphere), [r,T] {:.2e} (4 charts); "
                      "{} fields x 50 points; limits 1e-10, 1e-10, 1e-9",
                      xp, lp, rt, fields.size())};
}

Outcome ac6() {
  double lb = 0.0;
  for (const auto& chart : charts())
    for (const auto& q : interior_points(chart, 100)) {
      const auto f = evaluate_frame(chart, q[0], q[1]);
      lb = std::max(lb, (laplace_beltrami_of_position(f) - 2.0 * f.mean_curvature * f.normal)
                            .cwiseAbs()
                            .maxCoeff());
    }
  double sphere_v = 0.0, cylinder_v = 0.0;
  const auto sphere = make_sphere();
  for (const auto& q : interior_points(sphere, 100))
    sphere_v = std::max(sphere_v, std::abs(geometric_potential(evaluate_frame(sphere, q[0], q[1]))));
  for (double radius : {0.5, 1.0, 2.0, 3.0}) {
    const auto cyl = make_cylinder(radius);
    for (const auto& q : interior_points(cyl, 100))
      cylinder_v = std::max(cylinder_v, std::abs(geometric_potential(evaluate_frame(cyl, q[0], q[1])) +
                                                 1.0 / (8.0 * radius * radius)));
  }
  return {lb < 1e-10 && sphere_v < 1e-12 && cylinder_v < 1e-12,
          fmt::format("|LB r - 2Mn| {:.2e} (limit 1e-10); sphere |V_gp| {:.2e}; cylinder "
                      "|V_gp + 1/(8R^2)| {:.2e} (limits 1e-12)",
                      lb, sphere_v, cylinder_v)};
}

Outcome ac7() {
  std::vector<double> offsets;
  for (int k = 0; k <= 12; ++k) offsets.push_back(std::pow(10.0, -4.0 + 0.25 * k));
  const auto study = confinement_study(make_sphere(), spherical_harmonic(1, 0),
                                       ground_state_profile(0.25), 1.0, 0.5, offsets);
  return {study.slope >= 0.95 && study.slope <= 1.05,
          fmt::format("log-log slope of deviation vs q3 on [1e-4, 1e-1] ({} points) = {:.4f} "
                      "(window [0.95, 1.05])",
                      study.rows.size(), study.slope)};
}

Outcome ac8() {
  double worst = 0.0;
  for (double theta_min : {1e-3, 1e-5, 1e-7}) {
    const double window = -std::log(std::tan(0.5 * theta_min));
    for (double p : {-2.0, 0.0, 1.5})
      for (int k = -40; k <= 40; ++k) {
        const double dp = 0.125 * k;
        const double exact = dp == 0.0 ? window / pi : std::sin(dp * window) / (pi * dp);
        worst = std::max(worst, std::abs(overlap_kernel(p + dp, p, theta_min) - exact));
      }
  }
  return {worst < 1e-8, fmt::format("max |overlap - sin(dp L)/(pi dp)| over theta_min in "
                                    "{{1e-3,1e-5,1e-7}}, |dp| <= 5 = {:.2e} (limit 1e-8)",
                                    worst)};
}

Outcome ac9() {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> pd(-10.0, 10.0), td(0.01, pi - 0.01);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double p = pd(rng), theta = td(rng);
    const Complex lhs = sphere_momentum_component(Axis::z, eigenfunction_field(p), theta, 0.0);
    worst = std::max(worst, std::abs(lhs - p * psi(p, theta)));
  }
  return {worst < 1e-10,
          fmt::format("max |p_z psi_p - p psi_p| over 100 random (p, theta) = {:.2e} (limit 1e-10)",
                      worst)};
}

Outcome ac10() {
  const auto grid = sphere_grid(20, 40, kPoleBand);
  RotationResidual worst;
  std::vector<SphereFunction> fields{[](const UnitVectorJet&) { return CJet(Complex(1.0)); }};
  for (int l = 0; l <= 3; ++l)
    for (int m = -l; m <= l; ++m) fields.push_back(spherical_harmonic_function(l, m));
  for (const auto& f : fields) {
    const auto r = rotation_relation_check(f, grid);
    worst.px = std::max(worst.px, r.px);
    worst.py = std::max(worst.py, r.py);
  }
  return {worst.max() < 1e-10,
          fmt::format("20x40 grid, {} fields: p_x via R_y(pi/2) {:.2e}, p_y via R_x(-pi/2) {:.2e} "
                      "(limit 1e-10)",
                      fields.size(), worst.px, worst.py)};
}

Outcome ac11() {
  const std::vector<ScalarField> fields{spherical_harmonic(0, 0), spherical_harmonic(1, 0),
                                        spherical_harmonic(1, 1), spherical_harmonic(2, 0)};
  double worst = 0.0;
  for (Axis a : kAxes)
    for (const auto& f : fields)
      for (const auto& g : fields) worst = std::max(worst, std::abs(hermiticity_defect(a, f, g, 64)));
  return {worst < 1e-10,
          fmt::format("max |<f,Pg> - <Pf,g>| over p_x,p_y,p_z and 16 pairs of "
                      "{{Y00,Y10,Y11,Y20}}, order 64 = {:.2e} (limit 1e-10)",
                      worst)};
}

Outcome ac12(const std::filesystem::path& emit_dir) {
  const auto grid = symmetric_grid(4.0, 0.01);
  const auto cmp = sho_comparison(grid);
  const auto path = emit_dir / "sho_comparison.csv";
  std::ofstream file(path, std::ios::binary);
  CsvWriter csv(file, {"p", "density", "sho_density", "density_peak_norm", "sho_peak_norm"});
  for (const auto& r : cmp.rows)
    csv.values(r.p, r.density, r.sho_density, r.density_peak_norm, r.sho_peak_norm);
  return {cmp.max_peak_normalized_difference < 0.05,
          fmt::format("max peak-normalized difference on [-4,4] = {:.4f} (limit 0.05); raw {:.4f}; "
                      "table written to {}",
                      cmp.max_peak_normalized_difference, cmp.max_raw_difference, path.string())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  std::string emit_dir = ".";
  app.add_option("--criterion", selected, "Criterion numbers to run (default all)")
      ->check(CLI::Range(1, 12));
  app.add_option("--emit-dir", emit_dir, "Directory for emitted tables");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{
      ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11, [&] { return ac12(emit_dir); }};
  if (selected.empty())
    for (int k = 1; k <= 12; ++k) selected.push_back(k);

  int failures = 0;
  for (int k : selected) {
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << "AC" << k << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << o.summary << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
