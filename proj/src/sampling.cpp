#include "geomom/sampling.hpp"

#include <numbers>

namespace geomom {

double radical_inverse(unsigned index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

std::vector<ParameterPoint> halton_points(const ChartDomain& domain, int n, double margin) {
  std::vector<ParameterPoint> pts;
  pts.reserve(n);
  for (int k = 1; k <= n; ++k)
    pts.push_back(domain.map_unit(radical_inverse(k, 2), radical_inverse(k, 3), margin));
  return pts;
}

std::vector<ParameterPoint> interior_points(const ParametricChart& chart, int n) {
  // 0.05 keeps sphere samples well clear of the 1e-3 pole bands.
  return halton_points(chart.domain(), n, 0.05);
}

std::vector<ParameterPoint> sphere_grid(int n_theta, int n_phi, double band) {
  using std::numbers::pi;
  std::vector<ParameterPoint> pts;
  pts.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  const double span = pi - 2.0 * band;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = band + (i + 0.5) * span / n_theta;
    for (int j = 0; j < n_phi; ++j) pts.push_back({theta, 2.0 * pi * (j + 0.5) / n_phi});
  }
  return pts;
}

}  // namespace geomom
