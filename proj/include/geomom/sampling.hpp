#pragma once

#include <array>
#include <vector>

#include "geomom/chart.hpp"

namespace geomom {

using ParameterPoint = std::array<double, 2>;

/// Radical-inverse (van der Corput) value of `index` in `base`.
double radical_inverse(unsigned index, unsigned base);

/// First n points of the (2, 3) Halton sequence mapped into the chart domain,
/// kept `margin` away from non-periodic edges.
std::vector<ParameterPoint> halton_points(const ChartDomain& domain, int n, double margin);

/// Points for a built-in chart: sphere points stay clear of the pole bands.
std::vector<ParameterPoint> interior_points(const ParametricChart& chart, int n);

/// n_theta x n_phi midpoint grid on the unit sphere with theta in
/// [band, pi - band]. Midpoints avoid phi = 0, and the equator when n_theta
/// is even.
std::vector<ParameterPoint> sphere_grid(int n_theta, int n_phi, double band);

}  // namespace geomom
