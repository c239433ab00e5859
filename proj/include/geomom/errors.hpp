#pragma once

#include <stdexcept>
#include <string>

namespace geomom {

/// Base for every domain failure raised by the library. `kind()` is a short
/// machine-readable tag used by the CLI on standard error.
class GeomomError : public std::runtime_error {
 public:
  GeomomError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Tangent vectors are (nearly) parallel or vanishing at the point.
class ChartSingularity : public GeomomError {
 public:
  ChartSingularity(const std::string& what, double q1, double q2)
      : GeomomError("chart_singularity", what), q1_(q1), q2_(q2) {}
  double q1() const noexcept { return q1_; }
  double q2() const noexcept { return q2_; }

 private:
  double q1_;
  double q2_;
};

/// Sphere-specialized operator evaluated within the pole band.
class PoleProximity : public GeomomError {
 public:
  explicit PoleProximity(const std::string& what) : GeomomError("pole_proximity", what) {}
};

/// Normal offset at or beyond the focal distance: 1 - 2 M q3 + K q3^2 <= 0.
class ShellFold : public GeomomError {
 public:
  explicit ShellFold(const std::string& what) : GeomomError("shell_fold", what) {}
};

/// Quadrature truncation tail exceeds the requested tolerance.
class TruncationError : public GeomomError {
 public:
  explicit TruncationError(const std::string& what) : GeomomError("truncation", what) {}
};

/// Argument outside the supported range (l too large, unknown name, ...).
class InvalidArgument : public GeomomError {
 public:
  explicit InvalidArgument(const std::string& what) : GeomomError("invalid_argument", what) {}
};

}  // namespace geomom
