#include "geomom/field.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "geomom/errors.hpp"

namespace geomom {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Power-series coefficients of the m-th derivative of P_l, index = power of z.
std::vector<double> legendre_derivative_coefficients(int l, int m) {
  std::vector<double> c(l + 1, 0.0);
  for (int j = 0; 2 * j <= l; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    c[l - 2 * j] = sign * factorial(2 * l - 2 * j) /
                   (std::ldexp(1.0, l) * factorial(j) * factorial(l - j) * factorial(l - 2 * j));
  }
  for (int d = 0; d < m; ++d) {
    std::vector<double> next(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) next[k - 1] = static_cast<double>(k) * c[k];
    c = std::move(next);
  }
  return c;
}

}  // namespace

UnitVectorJet unit_vector(const RJet& theta, const RJet& phi) {
  const RJet s = sin(theta);
  return {s * cos(phi), s * sin(phi), cos(theta)};
}

ScalarField field_on_sphere(std::string label, SphereFunction f) {
  return ScalarField(std::move(label), [f = std::move(f)](const RJet& theta, const RJet& phi) {
    return f(unit_vector(theta, phi));
  });
}

SphereFunction spherical_harmonic_function(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw InvalidArgument("spherical harmonic requires 0 <= |m| <= l");
  const int am = std::abs(m);
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * factorial(l - am) /
                                factorial(l + am));
  // Y_{l,-m} = (-1)^m conj(Y_lm) turns (-1)^m (x+iy)^m into (x-iy)^m.
  const double prefactor = (m > 0 && am % 2 == 1) ? -norm : norm;
  const double ysign = m >= 0 ? 1.0 : -1.0;
  auto coeffs = legendre_derivative_coefficients(l, am);
  return [coeffs = std::move(coeffs), prefactor, ysign, am](const UnitVectorJet& x) {
    RJet poly(coeffs.back());
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) poly = poly * x[2] + coeffs[k];
    const CJet w = CJet(x[0]) + CJet(x[1]) * Complex(0.0, ysign);
    return prefactor * (poly * integer_power(w, am));
  };
}

std::string spherical_harmonic_label(int l, int m) {
  return "Y_" + std::to_string(l) + "_" + std::to_string(m);
}

ScalarField spherical_harmonic(int l, int m) {
  return field_on_sphere(spherical_harmonic_label(l, m), spherical_harmonic_function(l, m));
}

ScalarField constant_field(Complex c) {
  return ScalarField("const", [c](const RJet&, const RJet&) { return CJet(c); });
}

ScalarField plane_wave(double k1, double k2) {
  return ScalarField("plane_wave", [k1, k2](const RJet& q1, const RJet& q2) {
    return expi(k1 * q1 + k2 * q2);
  });
}

ScalarField trigonometric_polynomial(std::string label, std::vector<TrigTerm> terms) {
  return ScalarField(std::move(label), [terms = std::move(terms)](const RJet& q1, const RJet& q2) {
    CJet sum(Complex(0.0));
    for (const auto& t : terms) sum = sum + t.coefficient * expi(t.n1 * q1 + t.n2 * q2);
    return sum;
  });
}

ScalarField random_trigonometric_polynomial(std::uint64_t seed, int terms, int max_frequency) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
  std::uniform_int_distribution<int> frequency(-max_frequency, max_frequency);
  std::vector<TrigTerm> t;
  for (int k = 0; k < terms; ++k) {
    const double re = coefficient(rng);
    const double im = coefficient(rng);
    const int n1 = frequency(rng);
    const int n2 = frequency(rng);
    t.push_back({Complex(re, im), n1, n2});
  }
  return trigonometric_polynomial("trig_seed" + std::to_string(seed), std::move(t));
}

std::vector<ScalarField> field_library() {
  std::vector<ScalarField> fields;
  for (int l = 0; l <= 3; ++l)
    for (int m = -l; m <= l; ++m) fields.push_back(spherical_harmonic(l, m));
  for (int k = 0; k < 3; ++k) fields.push_back(named_field("trig_" + std::to_string(k)));
  return fields;
}

ScalarField named_field(std::string_view name) {
  auto parse_int = [&](std::string_view s, int& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  if (name == "const") return constant_field(1.0);
  if (name.starts_with("trig_")) {
    int k = -1;
    if (parse_int(name.substr(5), k) && k >= 0 && k < 3) {
      auto f = random_trigonometric_polynomial(1000 + static_cast<std::uint64_t>(k));
      return ScalarField("trig_" + std::to_string(k),
                         [f](const RJet& a, const RJet& b) { return f.compose(a, b); });
    }
  }
  if (name.starts_with("Y_")) {
    const auto rest = name.substr(2);
    const auto sep = rest.find('_');
    int l = -1, m = 0;
    if (sep != std::string_view::npos && parse_int(rest.substr(0, sep), l) &&
        parse_int(rest.substr(sep + 1), m) && l >= 0 && std::abs(m) <= l) {
      return spherical_harmonic(l, m);
    }
  }
  throw InvalidArgument("unknown field '" + std::string(name) + "'");
}

}  // namespace geomom
