#pragma once

// Verification suites: every operator identity evaluated over the test matrix
// of charts, fields and points, reduced to one entry per (identity, chart,
// field) holding the largest residual seen.

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace geomom {

struct VerificationEntry {
  std::string identity_name;
  std::optional<std::string> chart;
  std::optional<std::string> field;
  std::optional<std::array<double, 2>> point;  // where the max residual occurred
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;

  bool all_passed() const;
  std::size_t failures() const;
};

/// Suite names accepted by VerificationOptions::only.
const std::vector<std::string>& verification_suites();

struct VerificationOptions {
  std::vector<std::string> only;         // empty runs every suite
  int lmax = 8;                          // highest l for parseval and moments
  std::optional<double> tolerance;       // replaces every default tolerance
  int points_per_chart = 50;
  double hbar = 1.0;
  double mass = 1.0;
};

/// Default tolerances per identity class.
inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kSecondOrderTolerance = 1e-9;
inline constexpr double kComponentTolerance = 1e-12;
inline constexpr double kQuadratureTolerance = 1e-8;
inline constexpr double kParsevalTolerance = 1e-5;
inline constexpr double kSlopeTolerance = 0.05;

/// Throws InvalidArgument for an unknown suite name or lmax outside [0, 64].
VerificationReport run_verification(const VerificationOptions& options = {});

}  // namespace geomom
