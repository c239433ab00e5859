#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "geomom/jet.hpp"

namespace geomom {

/// Complex function on a chart's parameter box with exact partials to second
/// order. Fields are stored as jet rules, so composing a field with any other
/// smooth map (a rotation, a coordinate change) differentiates through it.
class ScalarField {
 public:
  using Rule = std::function<CJet(const RJet&, const RJet&)>;

  ScalarField(std::string label, Rule rule) : label_(std::move(label)), rule_(std::move(rule)) {}

  /// Value and partials with (q1, q2) as the independent variables.
  CJet jet(double q1, double q2) const {
    return rule_(RJet::variable(0, q1), RJet::variable(1, q2));
  }
  CJet compose(const RJet& q1, const RJet& q2) const { return rule_(q1, q2); }
  Complex operator()(double q1, double q2) const { return rule_(RJet(q1), RJet(q2)).value; }

  const std::string& label() const { return label_; }

 private:
  std::string label_;
  Rule rule_;
};

/// Cartesian components of a point on the unit sphere, as jets.
using UnitVectorJet = std::array<RJet, 3>;

/// Field defined globally on the unit sphere through its Cartesian embedding.
using SphereFunction = std::function<CJet(const UnitVectorJet&)>;

UnitVectorJet unit_vector(const RJet& theta, const RJet& phi);

/// Pull a sphere function back to (q1, q2) = (theta, phi).
ScalarField field_on_sphere(std::string label, SphereFunction f);

/// Orthonormal Y_lm with the Condon-Shortley phase, written as the polynomial
/// N_lm (-1)^m P_l^(m)(z) (x + i y)^m (m >= 0), hence smooth through the poles.
SphereFunction spherical_harmonic_function(int l, int m);
ScalarField spherical_harmonic(int l, int m);

/// "Y_l_m", the label carried by spherical_harmonic(l, m).
std::string spherical_harmonic_label(int l, int m);

ScalarField constant_field(Complex c);

/// exp(i (k1 q1 + k2 q2)).
ScalarField plane_wave(double k1, double k2);

struct TrigTerm {
  Complex coefficient;
  int n1 = 0;
  int n2 = 0;
};

/// sum_k c_k exp(i (n1_k q1 + n2_k q2)).
ScalarField trigonometric_polynomial(std::string label, std::vector<TrigTerm> terms);

/// Deterministic random trigonometric polynomial (mt19937_64 seeded).
ScalarField random_trigonometric_polynomial(std::uint64_t seed, int terms = 5,
                                            int max_frequency = 3);

/// Y_lm for l <= 3 and all m, then three random trigonometric polynomials.
std::vector<ScalarField> field_library();

/// "Y_<l>_<m>", "const", "trig_<k>" (k = 0, 1, 2).
ScalarField named_field(std::string_view name);

}  // namespace geomom
