#include "geomom/spectra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "geomom/errors.hpp"
#include "geomom/field.hpp"
#include "geomom/operators.hpp"

namespace geomom {

namespace {

using std::numbers::pi;

constexpr int kPanelPoints = 32;

double sech(double x) { return 1.0 / std::cosh(x); }

Complex eigenfunction(double p, double theta) {
  const double z = std::log(std::tan(0.5 * theta));
  return std::polar(1.0 / (2.0 * pi * std::sin(theta)), -p * z);
}

void require_window(double p_max, double dp) {
  if (!(p_max >= 10.0)) throw InvalidArgument("momentum window p_max must be >= 10");
  if (!(dp > 0.0 && dp <= 0.05)) throw InvalidArgument("momentum step dp must be in (0, 0.05]");
}

}  // namespace

double legendre_p(int l, double x) {
  if (l < 0 || l > kMaxLegendreDegree)
    throw InvalidArgument("Legendre degree " + std::to_string(l) + " outside [0, 64]");
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

Complex psi(double p, double theta, double /*phi*/) {
  if (!(theta > kPoleBand && theta < pi - kPoleBand)) {
    std::ostringstream os;
    os.precision(17);
    os << "eigenfunction evaluated at theta = " << theta << " within " << kPoleBand
       << " of a pole";
    throw PoleProximity(os.str());
  }
  return eigenfunction(p, theta);
}

ScalarField eigenfunction_field(double p) {
  return ScalarField("psi_" + std::to_string(p), [p](const RJet& theta, const RJet&) {
    return expi(-p * log(tan(0.5 * theta))) * reciprocal(2.0 * pi * sin(theta));
  });
}

double dirichlet_kernel(double dp, double theta_min) {
  const double window = -std::log(std::tan(0.5 * theta_min));
  if (dp == 0.0) return window / pi;
  return std::sin(dp * window) / (pi * dp);
}

Complex overlap_kernel(double p_prime, double p, double theta_min) {
  if (!(theta_min > 0.0 && theta_min < 0.5 * pi))
    throw InvalidArgument("theta_min must lie in (0, pi/2)");
  const double window = -std::log(std::tan(0.5 * theta_min));
  const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * window)));
  const QuadratureRule rule = composite_gauss_legendre(-window, window, panels, 20);
  // dOmega = sin(theta) dtheta dphi = 2 pi sin^2(theta) dz after the phi integral.
  return rule.integrate([&](double z) {
    const double theta = 2.0 * std::atan(std::exp(z));
    const double s = std::sin(theta);
    return 2.0 * pi * s * s * std::conj(eigenfunction(p_prime, theta)) * eigenfunction(p, theta);
  });
}

AmplitudeTransform::AmplitudeTransform(int l, const AmplitudeSettings& settings) : l_(l) {
  if (l < 0 || l > kMaxLegendreDegree)
    throw InvalidArgument("Legendre degree " + std::to_string(l) + " outside [0, 64]");
  if (!(settings.truncation > 0.0)) throw InvalidArgument("truncation Q must be positive");
  if (settings.nodes < kPanelPoints) throw InvalidArgument("need at least 32 quadrature nodes");
  const double tail = 2.0 * std::exp(-settings.truncation);
  if (tail > settings.tolerance) {
    std::ostringstream os;
    os << "truncation tail bound 2 exp(-Q) = " << tail << " exceeds tolerance "
       << settings.tolerance;
    throw TruncationError(os.str());
  }
  norm_ = std::sqrt((2.0 * l + 1.0) / (4.0 * pi));
  const int panels = (settings.nodes + kPanelPoints - 1) / kPanelPoints;
  rule_ = composite_gauss_legendre(-settings.truncation, settings.truncation, panels, kPanelPoints);
  kernel_.reserve(rule_.nodes.size());
  for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
    const double q = rule_.nodes[k];
    kernel_.push_back(rule_.weights[k] * legendre_p(l, std::tanh(q)) * sech(q));
  }
}

Complex AmplitudeTransform::operator()(double p) const {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < kernel_.size(); ++k) {
    const double arg = p * rule_.nodes[k];
    re += kernel_[k] * std::cos(arg);
    im -= kernel_[k] * std::sin(arg);
  }
  return norm_ * Complex(re, im);
}

Complex amplitude_quadrature(int l, double p, const AmplitudeSettings& settings) {
  return AmplitudeTransform(l, settings)(p);
}

Complex amplitude_closed(int l, double p) {
  const double s = sech(0.5 * pi * p);
  switch (l) {
    case 0:
      return std::sqrt(pi) / 2.0 * s;
    case 1:
      return Complex(0.0, std::sqrt(3.0 * pi) / 2.0 * p * s);
    case 2:
      return std::sqrt(5.0 * pi) / 8.0 * (3.0 * p * p - 1.0) * s;
    default:
      throw InvalidArgument("closed-form amplitude available for l = 0, 1, 2 only");
  }
}

int closed_form_sign(int l) {
  switch (l) {
    case 0:
      return 1;
    case 1:
    case 2:
      return -1;
    default:
      throw InvalidArgument("closed-form amplitude available for l = 0, 1, 2 only");
  }
}

std::vector<double> symmetric_grid(double p_max, double dp) {
  if (!(p_max >= 0.0) || !(dp > 0.0)) throw InvalidArgument("grid needs p_max >= 0 and dp > 0");
  const long n = std::lround(p_max / dp);
  std::vector<double> grid;
  grid.reserve(2 * n + 1);
  for (long k = -n; k <= n; ++k) grid.push_back(static_cast<double>(k) * dp);
  return grid;
}

const char* method_name(AmplitudeMethod m) {
  return m == AmplitudeMethod::quadrature ? "quadrature" : "closed_form";
}

DistributionTable distribution_table(int l, std::span<const double> p_grid,
                                     const AmplitudeSettings& settings, bool include_closed_form) {
  const AmplitudeTransform transform(l, settings);
  if (include_closed_form) closed_form_sign(l);  // validates l
  DistributionTable table;
  table.l = l;
  for (double p : p_grid) {
    const Complex a = transform(p);
    table.samples.push_back({p, a, std::norm(a), AmplitudeMethod::quadrature});
    if (include_closed_form) {
      const Complex c = amplitude_closed(l, p);
      table.samples.push_back({p, c, std::norm(c), AmplitudeMethod::closed_form});
    }
  }
  return table;
}

double momentum_integral(int l, int power, double p_max, double dp,
                         const AmplitudeSettings& settings) {
  const AmplitudeTransform transform(l, settings);
  const int panels = std::max(1, static_cast<int>(std::lround(2.0 * p_max / dp)));
  const QuadratureRule rule = composite_gauss_legendre(-p_max, p_max, panels, 8);
  return rule.integrate([&](double p) { return std::pow(p, power) * std::norm(transform(p)); });
}

double parseval_check(int l, double p_max, double dp, const AmplitudeSettings& settings) {
  require_window(p_max, dp);
  return momentum_integral(l, 0, p_max, dp, settings);
}

std::vector<double> moments(int l, int max_order, double p_max, double dp,
                            const AmplitudeSettings& settings) {
  require_window(p_max, dp);
  if (max_order < 0) throw InvalidArgument("moment order must be nonnegative");
  const AmplitudeTransform transform(l, settings);
  const int panels = std::max(1, static_cast<int>(std::lround(2.0 * p_max / dp)));
  const QuadratureRule rule = composite_gauss_legendre(-p_max, p_max, panels, 8);
  std::vector<double> out(max_order + 1, 0.0);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double p = rule.nodes[k];
    const double w = rule.weights[k] * std::norm(transform(p));
    double pk = 1.0;
    for (int order = 0; order <= max_order; ++order) {
      out[order] += w * pk;
      pk *= p;
    }
  }
  return out;
}

UncertaintyReport uncertainty_report(int l, int m, const AmplitudeSettings& settings) {
  if (l < 0 || l > 8) throw InvalidArgument("uncertainty report supports 0 <= l <= 8");
  if (std::abs(m) > l) throw InvalidArgument("uncertainty report requires |m| <= l");
  UncertaintyReport r;
  r.l = l;
  r.m = m;

  const ScalarField y = spherical_harmonic(l, m);
  constexpr int order = 64;
  const QuadratureRule theta_rule = composite_gauss_legendre(0.0, pi, 1, order);
  const QuadratureRule phi_rule = periodic_trapezoid(2 * order, 2.0 * pi);
  double pz_mean_surface = 0.0, pz2_surface = 0.0;
  for (std::size_t a = 0; a < theta_rule.nodes.size(); ++a) {
    const double theta = theta_rule.nodes[a];
    const double wt = theta_rule.weights[a] * std::sin(theta);
    for (std::size_t b = 0; b < phi_rule.nodes.size(); ++b) {
      const double phi = phi_rule.nodes[b];
      const double w = wt * phi_rule.weights[b];
      const Complex f = y(theta, phi);
      const double rho = std::norm(f);
      const std::array<double, 3> x{std::sin(theta) * std::cos(phi),
                                    std::sin(theta) * std::sin(phi), std::cos(theta)};
      for (int i = 0; i < 3; ++i) {
        r.mean_position[i] += w * rho * x[i];
        r.mean_position_squared[i] += w * rho * x[i] * x[i];
      }
      if (m != 0 && theta > kPoleBand && theta < pi - kPoleBand) {
        const Complex pf = sphere_momentum_component(Axis::z, y, theta, phi);
        pz_mean_surface += w * std::real(std::conj(f) * pf);
        pz2_surface += w * std::norm(pf);
      }
    }
  }

  if (m == 0) {
    const auto mom = moments(l, 2, 20.0, 0.05, settings);
    r.mean_pz = mom[1];
    r.mean_pz_squared = mom[2];
    r.momentum_source = "momentum_density";
  } else {
    // p_z f vanishes like sin^|m| theta at the poles, so skipping the pole
    // bands drops nothing measurable.
    r.mean_pz = pz_mean_surface;
    r.mean_pz_squared = pz2_surface;
    r.momentum_source = "surface_quadrature";
  }

  const double var_p = r.mean_pz_squared - r.mean_pz * r.mean_pz;
  auto product = [&](int i) {
    const double var_x =
        r.mean_position_squared[i] - r.mean_position[i] * r.mean_position[i];
    return std::sqrt(std::max(var_x, 0.0)) * std::sqrt(std::max(var_p, 0.0));
  };
  r.products[2] = product(2);
  if (l == 0) {
    r.products[0] = product(0);
    r.products[1] = product(1);
  }
  return r;
}

ShoComparison sho_comparison(std::span<const double> p_grid) {
  ShoComparison out;
  for (double p : p_grid) {
    ShoRow row;
    row.p = p;
    row.density = std::norm(amplitude_closed(0, p));
    row.sho_density = std::exp(-p * p) / std::sqrt(pi);
    row.density_peak_norm = row.density / (pi / 4.0);
    row.sho_peak_norm = std::exp(-p * p);
    out.max_raw_difference = std::max(out.max_raw_difference, std::abs(row.density - row.sho_density));
    out.max_peak_normalized_difference =
        std::max(out.max_peak_normalized_difference,
                 std::abs(row.density_peak_norm - row.sho_peak_norm));
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace geomom
