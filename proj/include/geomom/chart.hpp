#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "geomom/jet.hpp"

namespace geomom {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Position and its partials up to second order at one parameter point.
struct ChartSample {
  Vec3 position = Vec3::Zero();
  std::array<Vec3, 2> tangent{Vec3::Zero(), Vec3::Zero()};                  // d_mu r
  std::array<Vec3, 3> second{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};     // d11, d12, d22

  const Vec3& second_partial(int mu, int nu) const { return second[mu + nu]; }

  /// Cartesian coordinate x_i as a jet in the chart parameters.
  RJet coordinate(int i) const {
    return RJet(position[i], {tangent[0][i], tangent[1][i]},
                {second[0][i], second[1][i], second[2][i]});
  }
};

struct ParameterAxis {
  double lower = 0.0;
  double upper = 1.0;
  bool periodic = false;
};

/// Rectangular parameter box with per-axis periodicity.
struct ChartDomain {
  std::array<ParameterAxis, 2> axes;

  /// Non-periodic axes must be strictly inside; periodic axes accept anything.
  bool contains(double q1, double q2) const;

  /// Map (u, v) in [0,1]^2 into the box, keeping `margin` away from
  /// non-periodic edges.
  std::array<double, 2> map_unit(double u, double v, double margin) const;
};

using ParameterMap = std::map<std::string, double>;

/// A regular surface map r(q1, q2) with first and second partials.
///
/// Built-in charts are written over jets and so carry exact partials.
/// `from_position_map` wraps a plain position map with a Richardson-extrapolated
/// central-difference adaptor.
class ParametricChart {
 public:
  using Sampler = std::function<ChartSample(double, double)>;
  using JetMap = std::function<std::array<RJet, 3>(const RJet&, const RJet&)>;
  using PositionMap = std::function<Vec3(double, double)>;

  static ParametricChart from_jet_map(std::string name, ParameterMap parameters,
                                      ChartDomain domain, JetMap map);
  static ParametricChart from_position_map(std::string name, ParameterMap parameters,
                                           ChartDomain domain, PositionMap map);

  ChartSample sample(double q1, double q2) const { return sampler_(q1, q2); }
  Vec3 position(double q1, double q2) const { return position_(q1, q2); }

  const std::string& name() const { return name_; }
  const ParameterMap& parameters() const { return parameters_; }
  const ChartDomain& domain() const { return domain_; }
  bool exact_derivatives() const { return exact_; }

 private:
  ParametricChart(std::string name, ParameterMap parameters, ChartDomain domain,
                  Sampler sampler, PositionMap position, bool exact);

  std::string name_;
  ParameterMap parameters_;
  ChartDomain domain_;
  Sampler sampler_;
  PositionMap position_;
  bool exact_;
};

/// Unit-normal orientation of every built-in closed surface is outward.
ParametricChart make_sphere(double radius = 1.0);
ParametricChart make_cylinder(double radius = 1.0, double half_height = 2.0);
ParametricChart make_torus(double major_radius = 2.0, double tube_radius = 0.7);
ParametricChart make_plane(double half_width = 2.0);

/// Registry lookup: "sphere" {radius}, "cylinder" {radius, half_height},
/// "torus" {radius, tube_radius}, "plane" {half_width}. Missing parameters take
/// the defaults above; unknown names or parameters throw InvalidArgument.
ParametricChart make_builtin_chart(std::string_view name, const ParameterMap& parameters = {});
std::vector<std::string> builtin_chart_names();

}  // namespace geomom
