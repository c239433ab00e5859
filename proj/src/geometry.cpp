#include "geomom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geomom/errors.hpp"

namespace geomom {

namespace {

std::string point_text(double q1, double q2) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << q1 << "," << q2 << ")";
  return os.str();
}

}  // namespace

GeometryFrame frame_from_sample(const ChartSample& sample, double q1, double q2) {
  GeometryFrame f;
  f.point = {q1, q2};
  f.embedding = sample;
  f.position = sample.position;
  f.tangent = sample.tangent;

  const Vec3 cross = sample.tangent[0].cross(sample.tangent[1]);
  const double scale =
      std::max(sample.tangent[0].squaredNorm(), sample.tangent[1].squaredNorm());
  const double cross_norm = cross.norm();
  if (!(cross_norm > 1e-10 * scale)) {
    throw ChartSingularity("degenerate tangents at " + point_text(q1, q2), q1, q2);
  }
  f.normal = cross / cross_norm;

  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) {
      f.metric(mu, nu) = sample.tangent[mu].dot(sample.tangent[nu]);
      f.second_fundamental_form(mu, nu) = f.normal.dot(sample.second_partial(mu, nu));
    }
  f.inverse_metric = f.metric.inverse();
  f.area_factor = std::sqrt(f.metric.determinant());
  for (int mu = 0; mu < 2; ++mu)
    f.dual_tangent[mu] =
        f.inverse_metric(mu, 0) * f.tangent[0] + f.inverse_metric(mu, 1) * f.tangent[1];

  f.weingarten = -f.second_fundamental_form * f.inverse_metric;
  f.mean_curvature = -0.5 * f.weingarten.trace();
  f.gaussian_curvature = f.weingarten.determinant();
  return f;
}

GeometryFrame evaluate_frame(const ParametricChart& chart, double q1, double q2) {
  if (!chart.domain().contains(q1, q2)) {
    throw ChartSingularity("point " + point_text(q1, q2) + " outside the " + chart.name() +
                               " chart domain",
                           q1, q2);
  }
  return frame_from_sample(chart.sample(q1, q2), q1, q2);
}

double geometric_potential(const GeometryFrame& frame, double hbar, double mass) {
  const double m = frame.mean_curvature;
  return -(hbar * hbar / (2.0 * mass)) * (m * m - frame.gaussian_curvature);
}

double shell_scale(const GeometryFrame& frame, double q3) {
  return 1.0 - 2.0 * frame.mean_curvature * q3 + frame.gaussian_curvature * q3 * q3;
}

ShellFrame shell_frame(const GeometryFrame& frame, double q3) {
  const double scale = shell_scale(frame, q3);
  // D = (1 + q3 k1)(1 + q3 k2) with k1, k2 the eigenvalues of alpha. The shell
  // folds once either factor reaches zero, even where D turns positive again.
  const double m = frame.mean_curvature;
  const double split = std::sqrt(std::max(m * m - frame.gaussian_curvature, 0.0));
  double worst = 1.0;
  for (double k : {-m - split, -m + split}) {
    const double factor = 1.0 + q3 * k;
    // Round-off sized factors at the focal distance itself count as folded.
    worst = std::min(worst, factor / (1.0 + std::abs(q3 * k)));
  }
  if (!(worst > 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "shell folds at q3 = " << q3 << " (1 - 2 M q3 + K q3^2 = " << scale << ")";
    throw ShellFold(os.str());
  }
  ShellFrame s;
  s.base = frame;
  s.offset = q3;
  const Mat2& a = frame.weingarten;
  const Mat2& g = frame.metric;
  const Mat2 ag = a * g;
  const Mat2 block = g + (ag + ag.transpose()) * q3 + (a * g * a.transpose()) * (q3 * q3);
  s.metric.setZero();
  s.metric.topLeftCorner<2, 2>() = block;
  s.metric(2, 2) = 1.0;
  s.determinant = g.determinant() * scale * scale;

  for (int mu = 0; mu < 2; ++mu)
    s.tangent[mu] = frame.tangent[mu] + q3 * (a(mu, 0) * frame.tangent[0] + a(mu, 1) * frame.tangent[1]);
  const Mat2 inv = block.inverse();
  for (int mu = 0; mu < 2; ++mu)
    s.dual_tangent[mu] = inv(mu, 0) * s.tangent[0] + inv(mu, 1) * s.tangent[1];
  return s;
}

std::array<Mat2, 2> christoffel(const GeometryFrame& frame) {
  std::array<Mat2, 2> gamma{Mat2::Zero(), Mat2::Zero()};
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) {
      const Vec3& rmn = frame.embedding.second_partial(mu, nu);
      for (int l = 0; l < 2; ++l) gamma[l](mu, nu) = frame.dual_tangent[l].dot(rmn);
    }
  return gamma;
}

namespace {

template <class T>
T laplace_beltrami_impl(const GeometryFrame& frame, const Jet<T>& f) {
  const auto gamma = christoffel(frame);
  T sum{};
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) {
      T term = f.second(mu, nu);
      for (int l = 0; l < 2; ++l) term -= gamma[l](mu, nu) * f.grad[l];
      sum += frame.inverse_metric(mu, nu) * term;
    }
  return sum;
}

}  // namespace

Complex laplace_beltrami(const GeometryFrame& frame, const CJet& f) {
  return laplace_beltrami_impl(frame, f);
}

double laplace_beltrami(const GeometryFrame& frame, const RJet& f) {
  return laplace_beltrami_impl(frame, f);
}

Complex laplace_beltrami(const ParametricChart& chart, const ScalarField& field, double q1,
                         double q2) {
  return laplace_beltrami(evaluate_frame(chart, q1, q2), field.jet(q1, q2));
}

Vec3 laplace_beltrami_of_position(const GeometryFrame& frame) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = laplace_beltrami(frame, frame.embedding.coordinate(i));
  return out;
}

CurvatureGradient curvature_gradient(const ParametricChart& chart, double q1, double q2) {
  const std::array<double, 2> q{q1, q2};
  CurvatureGradient out;
  for (int mu = 0; mu < 2; ++mu) {
    const double h = 1e-3 * (1.0 + std::abs(q[mu]));
    auto central = [&](double step) {
      const double d1 = mu == 0 ? step : 0.0;
      const double d2 = mu == 1 ? step : 0.0;
      const auto plus = frame_from_sample(chart.sample(q1 + d1, q2 + d2), q1 + d1, q2 + d2);
      const auto minus = frame_from_sample(chart.sample(q1 - d1, q2 - d2), q1 - d1, q2 - d2);
      return std::array<double, 2>{
          (plus.mean_curvature - minus.mean_curvature) / (2.0 * step),
          (plus.gaussian_curvature - minus.gaussian_curvature) / (2.0 * step)};
    };
    const auto coarse = central(h);
    const auto fine = central(0.5 * h);
    out.mean[mu] = (4.0 * fine[0] - coarse[0]) / 3.0;
    out.gaussian[mu] = (4.0 * fine[1] - coarse[1]) / 3.0;
  }
  return out;
}

}  // namespace geomom
