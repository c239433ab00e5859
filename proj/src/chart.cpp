#include "geomom/chart.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "geomom/errors.hpp"

namespace geomom {

bool ChartDomain::contains(double q1, double q2) const {
  const std::array<double, 2> q{q1, q2};
  for (int a = 0; a < 2; ++a) {
    if (axes[a].periodic) continue;
    if (!(q[a] > axes[a].lower && q[a] < axes[a].upper)) return false;
  }
  return true;
}

std::array<double, 2> ChartDomain::map_unit(double u, double v, double margin) const {
  const std::array<double, 2> t{u, v};
  std::array<double, 2> out{};
  for (int a = 0; a < 2; ++a) {
    const double m = axes[a].periodic ? 0.0 : margin;
    const double lo = axes[a].lower + m;
    const double hi = axes[a].upper - m;
    out[a] = lo + t[a] * (hi - lo);
  }
  return out;
}

ParametricChart::ParametricChart(std::string name, ParameterMap parameters, ChartDomain domain,
                                 Sampler sampler, PositionMap position, bool exact)
    : name_(std::move(name)),
      parameters_(std::move(parameters)),
      domain_(domain),
      sampler_(std::move(sampler)),
      position_(std::move(position)),
      exact_(exact) {}

ParametricChart ParametricChart::from_jet_map(std::string name, ParameterMap parameters,
                                              ChartDomain domain, JetMap map) {
  auto sampler = [map](double q1, double q2) {
    const auto r = map(RJet::variable(0, q1), RJet::variable(1, q2));
    ChartSample s;
    for (int i = 0; i < 3; ++i) {
      s.position[i] = r[i].value;
      for (int mu = 0; mu < 2; ++mu) s.tangent[mu][i] = r[i].grad[mu];
      for (int k = 0; k < 3; ++k) s.second[k][i] = r[i].hess[k];
    }
    return s;
  };
  auto position = [map](double q1, double q2) {
    const auto r = map(RJet(q1), RJet(q2));
    return Vec3(r[0].value, r[1].value, r[2].value);
  };
  return ParametricChart(std::move(name), std::move(parameters), domain, std::move(sampler),
                         std::move(position), true);
}

namespace {

// Central differences with one Richardson level, D = (4 D(h/2) - D(h)) / 3.
// Steps balance O(h^4) truncation against round-off: eps^(1/5) for first and
// eps^(1/6) for second partials.
ChartSample finite_difference_sample(const ParametricChart::PositionMap& f, double q1, double q2) {
  const double eps = std::numeric_limits<double>::epsilon();
  const std::array<double, 2> q{q1, q2};
  auto at = [&](double d1, double d2) { return f(q1 + d1, q2 + d2); };
  auto shift = [](int mu, double h) {
    return mu == 0 ? std::array<double, 2>{h, 0.0} : std::array<double, 2>{0.0, h};
  };

  ChartSample s;
  s.position = f(q1, q2);
  for (int mu = 0; mu < 2; ++mu) {
    const double h = std::pow(eps, 0.2) * (1.0 + std::abs(q[mu]));
    auto central = [&](double step) {
      const auto p = shift(mu, step);
      return Vec3((at(p[0], p[1]) - at(-p[0], -p[1])) / (2.0 * step));
    };
    s.tangent[mu] = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  }
  std::array<double, 2> h2{};
  for (int mu = 0; mu < 2; ++mu) h2[mu] = std::pow(eps, 1.0 / 6.0) * (1.0 + std::abs(q[mu]));
  for (int mu = 0; mu < 2; ++mu) {
    auto second = [&](double step) {
      const auto p = shift(mu, step);
      return Vec3((at(p[0], p[1]) - 2.0 * s.position + at(-p[0], -p[1])) / (step * step));
    };
    s.second[2 * mu] = (4.0 * second(0.5 * h2[mu]) - second(h2[mu])) / 3.0;
  }
  auto mixed = [&](double scale) {
    const double a = scale * h2[0], b = scale * h2[1];
    return Vec3((at(a, b) - at(a, -b) - at(-a, b) + at(-a, -b)) / (4.0 * a * b));
  };
  s.second[1] = (4.0 * mixed(0.5) - mixed(1.0)) / 3.0;
  return s;
}

double parameter_or(const ParameterMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void require_positive(const std::string& what, double v) {
  if (!(v > 0.0)) throw InvalidArgument(what + " must be positive");
}

}  // namespace

ParametricChart ParametricChart::from_position_map(std::string name, ParameterMap parameters,
                                                   ChartDomain domain, PositionMap map) {
  auto sampler = [map](double q1, double q2) { return finite_difference_sample(map, q1, q2); };
  return ParametricChart(std::move(name), std::move(parameters), domain, std::move(sampler),
                         std::move(map), false);
}

ParametricChart make_sphere(double radius) {
  require_positive("sphere radius", radius);
  using std::numbers::pi;
  ChartDomain domain{{ParameterAxis{0.0, pi, false}, ParameterAxis{0.0, 2.0 * pi, true}}};
  return ParametricChart::from_jet_map(
      "sphere", {{"radius", radius}}, domain, [radius](const RJet& theta, const RJet& phi) {
        const RJet s = sin(theta);
        return std::array<RJet, 3>{radius * s * cos(phi), radius * s * sin(phi),
                                   radius * cos(theta)};
      });
}

ParametricChart make_cylinder(double radius, double half_height) {
  require_positive("cylinder radius", radius);
  require_positive("cylinder half_height", half_height);
  using std::numbers::pi;
  ChartDomain domain{
      {ParameterAxis{0.0, 2.0 * pi, true}, ParameterAxis{-half_height, half_height, false}}};
  return ParametricChart::from_jet_map(
      "cylinder", {{"radius", radius}, {"half_height", half_height}}, domain,
      [radius](const RJet& phi, const RJet& z) {
        return std::array<RJet, 3>{radius * cos(phi), radius * sin(phi), z};
      });
}

ParametricChart make_torus(double major_radius, double tube_radius) {
  require_positive("torus radius", major_radius);
  require_positive("torus tube_radius", tube_radius);
  if (tube_radius >= major_radius) throw InvalidArgument("torus tube_radius must be below radius");
  using std::numbers::pi;
  ChartDomain domain{{ParameterAxis{0.0, 2.0 * pi, true}, ParameterAxis{0.0, 2.0 * pi, true}}};
  return ParametricChart::from_jet_map(
      "torus", {{"radius", major_radius}, {"tube_radius", tube_radius}}, domain,
      [major_radius, tube_radius](const RJet& u, const RJet& v) {
        const RJet ring = major_radius + tube_radius * cos(v);
        return std::array<RJet, 3>{ring * cos(u), ring * sin(u), tube_radius * sin(v)};
      });
}

ParametricChart make_plane(double half_width) {
  require_positive("plane half_width", half_width);
  ChartDomain domain{
      {ParameterAxis{-half_width, half_width, false}, ParameterAxis{-half_width, half_width, false}}};
  return ParametricChart::from_jet_map("plane", {{"half_width", half_width}}, domain,
                                       [](const RJet& u, const RJet& v) {
                                         return std::array<RJet, 3>{u, v, RJet(0.0)};
                                       });
}

ParametricChart make_builtin_chart(std::string_view name, const ParameterMap& parameters) {
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : parameters) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) throw InvalidArgument("unknown parameter '" + key + "' for surface " + std::string(name));
    }
  };
  if (name == "sphere") {
    check_keys({"radius"});
    return make_sphere(parameter_or(parameters, "radius", 1.0));
  }
  if (name == "cylinder") {
    check_keys({"radius", "half_height"});
    return make_cylinder(parameter_or(parameters, "radius", 1.0),
                         parameter_or(parameters, "half_height", 2.0));
  }
  if (name == "torus") {
    check_keys({"radius", "tube_radius"});
    return make_torus(parameter_or(parameters, "radius", 2.0),
                      parameter_or(parameters, "tube_radius", 0.7));
  }
  if (name == "plane") {
    check_keys({"half_width"});
    return make_plane(parameter_or(parameters, "half_width", 2.0));
  }
  throw InvalidArgument("unknown surface '" + std::string(name) + "'");
}

std::vector<std::string> builtin_chart_names() { return {"sphere", "cylinder", "torus", "plane"}; }

}  // namespace geomom
