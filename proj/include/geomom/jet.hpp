#pragma once

// Second-order forward-mode differentiation in two variables.
//
// A Jet carries a value together with its two first partials and the three
// independent second partials (11, 12, 22). Charts and fields are written
// once as ordinary formulas over Jet arguments; seeding the two parameters
// yields exact derivatives to rounding, and composing with another jet
// (e.g. a rotated unit vector) applies the chain rule automatically.

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace geomom {

using Complex = std::complex<double>;

template <class T>
struct Jet {
  T value{};
  std::array<T, 2> grad{};
  std::array<T, 3> hess{};  // (11, 12, 22)

  constexpr Jet() = default;
  constexpr Jet(T v) : value(v) {}  // NOLINT: constants promote implicitly
  constexpr Jet(T v, std::array<T, 2> g, std::array<T, 3> h) : value(v), grad(g), hess(h) {}

  template <class U>
    requires(!std::is_same_v<U, T> && std::is_convertible_v<U, T>)
  constexpr Jet(const Jet<U>& other)  // NOLINT: real -> complex promotion
      : value(other.value),
        grad{T(other.grad[0]), T(other.grad[1])},
        hess{T(other.hess[0]), T(other.hess[1]), T(other.hess[2])} {}

  /// Independent variable number `axis` (0 or 1) at `at`.
  static constexpr Jet variable(int axis, T at) {
    Jet j(at);
    j.grad[axis] = T(1);
    return j;
  }

  constexpr T second(int mu, int nu) const { return hess[mu + nu]; }
};

using RJet = Jet<double>;
using CJet = Jet<Complex>;

namespace detail {
template <class A, class B>
using Common = std::common_type_t<A, B>;

// f(x) with f, f', f'' supplied at x.value.
template <class T, class F>
constexpr Jet<T> chain(const Jet<T>& x, T f, F df, F ddf) {
  Jet<T> r(f);
  for (int i = 0; i < 2; ++i) r.grad[i] = df * x.grad[i];
  r.hess[0] = df * x.hess[0] + ddf * x.grad[0] * x.grad[0];
  r.hess[1] = df * x.hess[1] + ddf * x.grad[0] * x.grad[1];
  r.hess[2] = df * x.hess[2] + ddf * x.grad[1] * x.grad[1];
  return r;
}
}  // namespace detail

template <class A, class B>
constexpr auto operator+(const Jet<A>& a, const Jet<B>& b) {
  using T = detail::Common<A, B>;
  Jet<T> r(T(a.value) + T(b.value));
  for (int i = 0; i < 2; ++i) r.grad[i] = T(a.grad[i]) + T(b.grad[i]);
  for (int i = 0; i < 3; ++i) r.hess[i] = T(a.hess[i]) + T(b.hess[i]);
  return r;
}

template <class A, class B>
constexpr auto operator-(const Jet<A>& a, const Jet<B>& b) {
  using T = detail::Common<A, B>;
  Jet<T> r(T(a.value) - T(b.value));
  for (int i = 0; i < 2; ++i) r.grad[i] = T(a.grad[i]) - T(b.grad[i]);
  for (int i = 0; i < 3; ++i) r.hess[i] = T(a.hess[i]) - T(b.hess[i]);
  return r;
}

template <class T>
constexpr Jet<T> operator-(const Jet<T>& a) {
  Jet<T> r(-a.value);
  for (int i = 0; i < 2; ++i) r.grad[i] = -a.grad[i];
  for (int i = 0; i < 3; ++i) r.hess[i] = -a.hess[i];
  return r;
}

template <class A, class B>
constexpr auto operator*(const Jet<A>& a, const Jet<B>& b) {
  using T = detail::Common<A, B>;
  const T av = a.value, bv = b.value;
  const T a0 = a.grad[0], a1 = a.grad[1], b0 = b.grad[0], b1 = b.grad[1];
  Jet<T> r(av * bv);
  r.grad[0] = a0 * bv + av * b0;
  r.grad[1] = a1 * bv + av * b1;
  r.hess[0] = T(a.hess[0]) * bv + T(2) * a0 * b0 + av * T(b.hess[0]);
  r.hess[1] = T(a.hess[1]) * bv + a0 * b1 + a1 * b0 + av * T(b.hess[1]);
  r.hess[2] = T(a.hess[2]) * bv + T(2) * a1 * b1 + av * T(b.hess[2]);
  return r;
}

template <class T>
constexpr Jet<T> reciprocal(const Jet<T>& x) {
  const T inv = T(1) / x.value;
  return detail::chain(x, inv, -inv * inv, T(2) * inv * inv * inv);
}

template <class A, class B>
constexpr auto operator/(const Jet<A>& a, const Jet<B>& b) {
  return a * reciprocal(b);
}

// Scalar mixing; scalars are promoted to constant jets.
template <class A, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, Complex>
constexpr auto operator*(const Jet<A>& a, S s) {
  using T = detail::Common<A, S>;
  Jet<T> r(T(a.value) * T(s));
  for (int i = 0; i < 2; ++i) r.grad[i] = T(a.grad[i]) * T(s);
  for (int i = 0; i < 3; ++i) r.hess[i] = T(a.hess[i]) * T(s);
  return r;
}
template <class A, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, Complex>
constexpr auto operator*(S s, const Jet<A>& a) {
  return a * s;
}
template <class A, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, Complex>
constexpr auto operator/(const Jet<A>& a, S s) {
  using T = detail::Common<A, S>;
  return a * (T(1) / T(s));
}
template <class A, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, Complex>
constexpr auto operator+(const Jet<A>& a, S s) {
  using T = detail::Common<A, S>;
  Jet<T> r(a);
  r.value += T(s);
  return r;
}
template <class A, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, Complex>
constexpr auto operator+(S s, const Jet<A>& a) {
  return a + s;
}
template <class A, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, Complex>
constexpr auto operator-(const Jet<A>& a, S s) {
  return a + (-s);
}
template <class A, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, Complex>
constexpr auto operator-(S s, const Jet<A>& a) {
  return (-a) + s;
}

template <class T>
Jet<T> sin(const Jet<T>& x) {
  using std::cos, std::sin;
  const T s = sin(x.value), c = cos(x.value);
  return detail::chain(x, s, c, -s);
}

template <class T>
Jet<T> cos(const Jet<T>& x) {
  using std::cos, std::sin;
  const T s = sin(x.value), c = cos(x.value);
  return detail::chain(x, c, -s, -c);
}

template <class T>
Jet<T> exp(const Jet<T>& x) {
  using std::exp;
  const T e = exp(x.value);
  return detail::chain(x, e, e, e);
}

template <class T>
Jet<T> log(const Jet<T>& x) {
  using std::log;
  const T inv = T(1) / x.value;
  return detail::chain(x, log(x.value), inv, -inv * inv);
}

template <class T>
Jet<T> sqrt(const Jet<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.value);
  const T d = T(0.5) / s;
  return detail::chain(x, s, d, -d / (T(2) * x.value));
}

template <class T>
Jet<T> tan(const Jet<T>& x) {
  using std::tan;
  const T t = tan(x.value);
  const T sec2 = T(1) + t * t;
  return detail::chain(x, t, sec2, T(2) * t * sec2);
}

template <class T>
Jet<T> tanh(const Jet<T>& x) {
  using std::tanh;
  const T t = tanh(x.value);
  const T sech2 = T(1) - t * t;
  return detail::chain(x, t, sech2, T(-2) * t * sech2);
}

/// exp(i * x) for a real jet x.
inline CJet expi(const RJet& x) {
  const double c = std::cos(x.value), s = std::sin(x.value);
  const Complex e(c, s);
  const Complex i(0.0, 1.0);
  return detail::chain(CJet(x), e, i * e, -e);
}

template <class T>
Jet<T> integer_power(const Jet<T>& x, int n) {
  Jet<T> r(T(1));
  for (int k = 0; k < n; ++k) r = r * x;
  return r;
}

template <class T>
Jet<T> conj(const Jet<T>& x) {
  if constexpr (std::is_same_v<T, Complex>) {
    Jet<T> r(std::conj(x.value));
    for (int i = 0; i < 2; ++i) r.grad[i] = std::conj(x.grad[i]);
    for (int i = 0; i < 3; ++i) r.hess[i] = std::conj(x.hess[i]);
    return r;
  } else {
    return x;
  }
}

}  // namespace geomom
