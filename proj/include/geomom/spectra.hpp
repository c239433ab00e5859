#pragma once

// Momentum distributions of spherical harmonics on the unit sphere (hbar = 1,
// radius 1).
//
// The p_z eigenfunctions psi_p(theta) = exp(-i p ln tan(theta/2)) / (2 pi sin theta)
// turn into plane waves in the stretched coordinate z = ln tan(theta/2), where
// sin(theta) = sech z and cos(theta) = -tanh z. The amplitude of Y_l0 is then a
// Fourier transform evaluated by composite Gauss-Legendre panels:
//
//   phi_l(p) = sqrt((2l+1)/(4 pi)) * integral P_l(tanh q) sech(q) exp(-i p q) dq.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geomom/field.hpp"
#include "geomom/jet.hpp"
#include "geomom/quadrature.hpp"

namespace geomom {

/// Legendre polynomial by upward three-term recurrence, 0 <= l <= 64.
double legendre_p(int l, double x);
inline constexpr int kMaxLegendreDegree = 64;

/// p_z eigenfunction (phi-independent). Throws PoleProximity near the poles.
Complex psi(double p, double theta, double phi = 0.0);

/// psi_p as a field on the (theta, phi) chart, for applying operators to it.
ScalarField eigenfunction_field(double p);

/// sin(dp L) / (pi dp) with L = -ln tan(theta_min / 2); L / pi at dp = 0.
double dirichlet_kernel(double dp, double theta_min);

/// Overlap of psi_{p'} and psi_p over theta in [theta_min, pi - theta_min],
/// integrated in z = ln tan(theta/2) with composite Gauss-Legendre panels.
Complex overlap_kernel(double p_prime, double p, double theta_min);

struct AmplitudeSettings {
  double truncation = 40.0;  // Q: integrate q over [-Q, Q]
  int nodes = 1280;          // total nodes, 32 per panel
  double tolerance = 1e-8;   // tail bound 2 exp(-Q) must not exceed this
};

/// Amplitude of Y_l0 by quadrature. Kernel samples P_l(tanh q) sech(q) are
/// cached, so evaluating many momenta for one l is cheap.
class AmplitudeTransform {
 public:
  explicit AmplitudeTransform(int l, const AmplitudeSettings& settings = {});
  Complex operator()(double p) const;
  int degree() const { return l_; }

 private:
  int l_;
  double norm_;
  QuadratureRule rule_;
  std::vector<double> kernel_;
};

/// Throws TruncationError when 2 exp(-Q) exceeds the tolerance.
Complex amplitude_quadrature(int l, double p, const AmplitudeSettings& settings = {});

/// Closed forms for l = 0, 1, 2, written exactly as published:
///   (sqrt(pi)/2) sech(pi p/2), i (sqrt(3 pi)/2) p sech(pi p/2),
///   (sqrt(5 pi)/8)(3 p^2 - 1) sech(pi p/2).
Complex amplitude_closed(int l, double p);

/// Global sign s with amplitude_quadrature = s * amplitude_closed, set by the
/// orientation cos(theta) = -tanh(q) of the stretched coordinate:
/// +1 for l = 0, -1 for l = 1 and for l = 2.
int closed_form_sign(int l);

/// Symmetric momentum grid p_k = k dp, k = -N..N with N = round(p_max / dp).
std::vector<double> symmetric_grid(double p_max, double dp);

enum class AmplitudeMethod { quadrature, closed_form };
const char* method_name(AmplitudeMethod m);

struct DistributionSample {
  double p = 0.0;
  Complex amplitude{};
  double density = 0.0;
  AmplitudeMethod method = AmplitudeMethod::quadrature;
};

struct DistributionTable {
  int l = 0;
  std::vector<DistributionSample> samples;  // ordered by p; closed_form after quadrature at equal p
};

DistributionTable distribution_table(int l, std::span<const double> p_grid,
                                     const AmplitudeSettings& settings = {},
                                     bool include_closed_form = false);

/// Integral of p^k |phi_l(p)|^2 over [-p_max, p_max], Gauss-Legendre panels of width dp.
double momentum_integral(int l, int power, double p_max, double dp,
                         const AmplitudeSettings& settings = {});

/// Integral of |phi_l|^2; 1 for a wide-enough window. Needs p_max >= 10, dp <= 0.05.
double parseval_check(int l, double p_max = 20.0, double dp = 0.05,
                      const AmplitudeSettings& settings = {});

/// <p^k> for k = 0..max_order.
std::vector<double> moments(int l, int max_order, double p_max = 20.0, double dp = 0.05,
                            const AmplitudeSettings& settings = {});

struct UncertaintyReport {
  int l = 0;
  int m = 0;
  std::array<double, 3> mean_position{};
  std::array<double, 3> mean_position_squared{};
  double mean_pz = 0.0;
  double mean_pz_squared = 0.0;
  std::string momentum_source;  // "momentum_density" or "surface_quadrature"
  /// Delta x_i Delta p_i; x and y only for l = 0 (rotational symmetry of Y_00).
  std::array<std::optional<double>, 3> products{};
};

/// Position moments by surface quadrature of |Y_lm|^2 x_i and |Y_lm|^2 x_i^2.
/// p_z moments from |phi_l|^2 when m = 0, else from <f, p_z f> and |p_z f|^2.
UncertaintyReport uncertainty_report(int l, int m, const AmplitudeSettings& settings = {});

struct ShoRow {
  double p = 0.0;
  double density = 0.0;            // |phi_0(p)|^2
  double sho_density = 0.0;        // pi^{-1/2} exp(-p^2)
  double density_peak_norm = 0.0;  // density / (pi/4)
  double sho_peak_norm = 0.0;      // exp(-p^2)
};

struct ShoComparison {
  std::vector<ShoRow> rows;
  double max_raw_difference = 0.0;
  double max_peak_normalized_difference = 0.0;
};

/// |phi_0|^2 against the 1D harmonic-oscillator ground-state momentum density.
ShoComparison sho_comparison(std::span<const double> p_grid);

}  // namespace geomom
