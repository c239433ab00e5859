#include "geomom/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "geomom/chart.hpp"
#include "geomom/errors.hpp"
#include "geomom/field.hpp"
#include "geomom/geometry.hpp"
#include "geomom/io.hpp"
#include "geomom/operators.hpp"
#include "geomom/spectra.hpp"
#include "geomom/verification.hpp"

namespace geomom {

namespace {

struct CommonConfig {
  std::string surface = "sphere";
  std::optional<double> radius;
  std::optional<double> tube_radius;
  std::optional<double> half_height;
  std::optional<double> half_width;
  double hbar = 1.0;
  double mass = 1.0;
  std::optional<double> tolerance;
  std::string out;
  std::string format;
};

struct GeomConfig {
  std::vector<std::string> points;
  std::string grid;
  std::string q1_range;
  std::string q2_range;
  std::vector<double> q3{0.0};
};

struct DistributionConfig {
  int l = 0;
  int m = 0;
  double p_max = 6.0;
  double dp = 0.05;
  double truncation = 40.0;
  int nodes = 1280;
  bool compare_closed = false;
  bool sho_overlay = false;
  std::string uncertainty_out;
};

struct ConfineConfig {
  std::string field = "Y_1_0";
  std::string point = "1.0,0.5";
  double thickness = 0.25;
  std::vector<double> q3;
};

struct VerifyConfig {
  std::vector<std::string> only;
  int lmax = 8;
  int points = 50;
};

// Data goes to --out when given (summaries then go to stdout), otherwise data
// goes to stdout and summaries to stderr as comment lines.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& data() { return file_ ? *file_ : out_; }
  void info(const std::string& line) {
    if (file_)
      out_ << line << '\n';
    else
      err_ << "# " << line << '\n';
  }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw std::runtime_error("failed writing output file");
    }
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
};

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value))
    throw InvalidArgument(fmt::format("{}: '{}' is not a finite number", what, text));
  return value;
}

std::array<double, 2> parse_pair(std::string_view text, std::string_view what) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw InvalidArgument(fmt::format("{}: expected 'a,b', got '{}'", what, text));
  return {parse_number(text.substr(0, comma), what), parse_number(text.substr(comma + 1), what)};
}

std::string resolve_format(const CommonConfig& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw InvalidArgument("format must be csv or json");
  return f;
}

ParametricChart build_chart(const CommonConfig& c) {
  ParameterMap params;
  if (c.radius) params["radius"] = *c.radius;
  if (c.tube_radius) params["tube_radius"] = *c.tube_radius;
  if (c.half_height) params["half_height"] = *c.half_height;
  if (c.half_width) params["half_width"] = *c.half_width;
  return make_builtin_chart(c.surface, params);
}

Json chart_json(const ParametricChart& chart) {
  Json params = Json::object();
  for (const auto& [k, v] : chart.parameters()) params[k] = v;
  return Json{{"name", chart.name()}, {"parameters", std::move(params)}};
}

void validate_common(const CommonConfig& c) {
  if (!(c.hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  if (!(c.mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (c.tolerance && !(*c.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
}

std::vector<ParameterPoint> geom_points(const GeomConfig& g, const ParametricChart& chart) {
  std::vector<ParameterPoint> points;
  for (const auto& p : g.points) points.push_back(parse_pair(p, "--point"));
  if (!g.grid.empty()) {
    const auto n = parse_pair(g.grid, "--grid");
    const int n1 = static_cast<int>(n[0]), n2 = static_cast<int>(n[1]);
    if (n1 != n[0] || n2 != n[1] || n1 < 1 || n2 < 1)
      throw InvalidArgument("--grid needs two positive integers");
    const auto& axes = chart.domain().axes;
    std::array<double, 2> lo{axes[0].lower, axes[1].lower};
    std::array<double, 2> hi{axes[0].upper, axes[1].upper};
    const std::string* ranges[2] = {&g.q1_range, &g.q2_range};
    for (int a = 0; a < 2; ++a)
      if (!ranges[a]->empty()) {
        const auto r = parse_pair(*ranges[a], a == 0 ? "--q1-range" : "--q2-range");
        if (!(r[0] < r[1])) throw InvalidArgument("grid range bounds must be increasing");
        lo[a] = r[0];
        hi[a] = r[1];
      }
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j)
        points.push_back({lo[0] + (i + 0.5) / n1 * (hi[0] - lo[0]),
                          lo[1] + (j + 0.5) / n2 * (hi[1] - lo[1])});
  } else if (!g.q1_range.empty() || !g.q2_range.empty()) {
    throw InvalidArgument("--q1-range/--q2-range need --grid");
  }
  if (points.empty()) throw InvalidArgument("geom needs --point or --grid");
  return points;
}

int cmd_geom(const CommonConfig& c, const GeomConfig& g, std::ostream& out, std::ostream& err) {
  validate_common(c);
  const ParametricChart chart = build_chart(c);
  const std::string format = resolve_format(c, "csv");
  const auto points = geom_points(g, chart);
  if (g.q3.empty()) throw InvalidArgument("--q3 needs at least one value");

  struct Row {
    double q1, q2, q3;
    GeometryFrame frame;
    double potential;
    double shell_det;
  };
  std::vector<Row> rows;
  for (const auto& q : points) {
    const GeometryFrame frame = evaluate_frame(chart, q[0], q[1]);
    const double potential = geometric_potential(frame, c.hbar, c.mass);
    for (double q3 : g.q3)
      rows.push_back({q[0], q[1], q3, frame, potential, shell_frame(frame, q3).determinant});
  }

  Sink sink(c.out, out, err);
  if (format == "csv") {
    CsvWriter csv(sink.data(), {"q1", "q2", "q3", "x", "y", "z", "nx", "ny", "nz", "sqrt_g", "M",
                                "K", "V_gp", "shell_det"});
    for (const auto& r : rows) {
      const auto& f = r.frame;
      csv.values(r.q1, r.q2, r.q3, f.position.x(), f.position.y(), f.position.z(), f.normal.x(),
                 f.normal.y(), f.normal.z(), f.area_factor, f.mean_curvature,
                 f.gaussian_curvature, r.potential, r.shell_det);
    }
  } else {
    Json j;
    j["command"] = "geom";
    j["surface"] = chart_json(chart);
    j["hbar"] = c.hbar;
    j["mass"] = c.mass;
    Json list = Json::array();
    for (const auto& r : rows) {
      const auto& f = r.frame;
      list.push_back(Json{{"q1", r.q1},
                          {"q2", r.q2},
                          {"q3", r.q3},
                          {"position", {f.position.x(), f.position.y(), f.position.z()}},
                          {"normal", {f.normal.x(), f.normal.y(), f.normal.z()}},
                          {"sqrt_g", f.area_factor},
                          {"M", f.mean_curvature},
                          {"K", f.gaussian_curvature},
                          {"V_gp", r.potential},
                          {"shell_det", r.shell_det}});
    }
    j["rows"] = std::move(list);
    write_json(sink.data(), j);
  }
  sink.close();
  return kExitOk;
}

int cmd_distribution(const CommonConfig& c, const DistributionConfig& d, std::ostream& out,
                     std::ostream& err) {
  validate_common(c);
  if (c.surface != "sphere") throw InvalidArgument("distribution is defined on the unit sphere");
  if (d.l < 0) throw InvalidArgument("l must be nonnegative");
  if (!(d.p_max > 0.0) || !(d.dp > 0.0)) throw InvalidArgument("pmax and dp must be positive");
  const std::string format = resolve_format(c, "csv");

  AmplitudeSettings settings;
  settings.truncation = d.truncation;
  settings.nodes = d.nodes;
  settings.tolerance = c.tolerance.value_or(settings.tolerance);

  const auto grid = symmetric_grid(d.p_max, d.dp);
  const DistributionTable table = distribution_table(d.l, grid, settings, d.compare_closed);
  std::optional<UncertaintyReport> uncertainty;
  if (!d.uncertainty_out.empty()) uncertainty = uncertainty_report(d.l, d.m, settings);

  // Peak of each method's density on this grid, for the shape-normalized overlay.
  double peak[2] = {0.0, 0.0};
  for (const auto& s : table.samples)
    peak[static_cast<int>(s.method)] = std::max(peak[static_cast<int>(s.method)], s.density);
  auto sho_density = [](double p) { return std::exp(-p * p) / std::sqrt(std::numbers::pi); };

  double max_density_dev = 0.0, max_amplitude_dev = 0.0;
  double max_raw_sho = 0.0, max_peak_sho = 0.0;
  for (std::size_t k = 0; k < table.samples.size(); ++k) {
    const auto& s = table.samples[k];
    if (s.method != AmplitudeMethod::quadrature) continue;
    if (d.compare_closed) {
      const auto& closed = table.samples[k + 1];
      max_density_dev = std::max(max_density_dev, std::abs(s.density - closed.density));
      max_amplitude_dev = std::max(
          max_amplitude_dev, std::abs(s.amplitude - double(closed_form_sign(d.l)) * closed.amplitude));
    }
    max_raw_sho = std::max(max_raw_sho, std::abs(s.density - sho_density(s.p)));
    max_peak_sho =
        std::max(max_peak_sho, std::abs(s.density / peak[0] - std::exp(-s.p * s.p)));
  }

  Sink sink(c.out, out, err);
  if (format == "csv") {
    std::vector<std::string> header{"p", "re_amp", "im_amp", "density", "method"};
    if (d.sho_overlay)
      header.insert(header.end(), {"sho_density", "density_peak_norm", "sho_peak_norm"});
    CsvWriter csv(sink.data(), header);
    for (const auto& s : table.samples) {
      std::vector<std::string> cells{format_number(s.p), format_number(s.amplitude.real()),
                                     format_number(s.amplitude.imag()), format_number(s.density),
                                     method_name(s.method)};
      if (d.sho_overlay) {
        cells.push_back(format_number(sho_density(s.p)));
        cells.push_back(format_number(s.density / peak[static_cast<int>(s.method)]));
        cells.push_back(format_number(std::exp(-s.p * s.p)));
      }
      csv.row(cells);
    }
  } else {
    Json j;
    j["command"] = "distribution";
    j["l"] = d.l;
    j["settings"] = {{"Q", settings.truncation},
                     {"nodes", settings.nodes},
                     {"tolerance", settings.tolerance},
                     {"pmax", d.p_max},
                     {"dp", d.dp}};
    Json samples = Json::array();
    for (const auto& s : table.samples) {
      Json row{{"p", s.p},
               {"re_amp", s.amplitude.real()},
               {"im_amp", s.amplitude.imag()},
               {"density", s.density},
               {"method", method_name(s.method)}};
      if (d.sho_overlay) {
        row["sho_density"] = sho_density(s.p);
        row["density_peak_norm"] = s.density / peak[static_cast<int>(s.method)];
        row["sho_peak_norm"] = std::exp(-s.p * s.p);
      }
      samples.push_back(std::move(row));
    }
    j["samples"] = std::move(samples);
    if (d.compare_closed)
      j["closed_form"] = {{"sign", closed_form_sign(d.l)},
                          {"max_density_deviation", max_density_dev},
                          {"max_amplitude_deviation", max_amplitude_dev}};
    if (d.sho_overlay)
      j["sho"] = {{"max_raw_difference", max_raw_sho},
                  {"max_peak_normalized_difference", max_peak_sho}};
    write_json(sink.data(), j);
  }
  sink.close();

  if (uncertainty) {
    std::ofstream file(d.uncertainty_out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + d.uncertainty_out + "'");
    write_json(file, to_json(*uncertainty));
    if (!file) throw std::runtime_error("failed writing output file");
  }
  if (d.compare_closed) {
    sink.info(fmt::format("max_density_deviation={}", format_number(max_density_dev)));
    sink.info(fmt::format("max_amplitude_deviation={} closed_form_sign={}",
                          format_number(max_amplitude_dev), closed_form_sign(d.l)));
  }
  if (d.sho_overlay) {
    sink.info(fmt::format("sho_max_raw_difference={}", format_number(max_raw_sho)));
    sink.info(fmt::format("sho_max_peak_normalized_difference={}", format_number(max_peak_sho)));
  }
  return kExitOk;
}

int cmd_confine(const CommonConfig& c, const ConfineConfig& k, std::ostream& out,
                std::ostream& err) {
  validate_common(c);
  const ParametricChart chart = build_chart(c);
  const std::string format = resolve_format(c, "csv");
  const ScalarField chi = named_field(k.field);
  const auto point = parse_pair(k.point, "--point");
  if (!(k.thickness > 0.0)) throw InvalidArgument("thickness must be positive");
  std::vector<double> offsets = k.q3;
  if (offsets.empty())
    for (int e = 0; e <= 12; ++e) offsets.push_back(std::pow(10.0, -4.0 + 0.25 * e));
  for (double q3 : offsets)
    if (q3 < 0.0 || q3 > k.thickness)
      throw InvalidArgument(fmt::format("q3 = {} outside the shell [0, {}]", q3, k.thickness));

  const ConvergenceStudy study =
      confinement_study(chart, chi, ground_state_profile(k.thickness), point[0], point[1], offsets);

  Sink sink(c.out, out, err);
  if (format == "csv") {
    CsvWriter csv(sink.data(), {"q3", "deviation"});
    for (const auto& [q3, dev] : study.rows) csv.values(q3, dev);
  } else {
    Json j;
    j["command"] = "confine";
    j["surface"] = chart_json(chart);
    j["field"] = chi.label();
    j["point"] = {point[0], point[1]};
    j["thickness"] = k.thickness;
    Json rows = Json::array();
    for (const auto& [q3, dev] : study.rows) rows.push_back(Json{{"q3", q3}, {"deviation", dev}});
    j["rows"] = std::move(rows);
    j["slope"] = std::isnan(study.slope) ? Json(nullptr) : Json(study.slope);
    write_json(sink.data(), j);
  }
  sink.close();
  sink.info(fmt::format("slope={}", std::isnan(study.slope) ? std::string("nan")
                                                             : format_number(study.slope)));
  return kExitOk;
}

int cmd_verify(const CommonConfig& c, const VerifyConfig& v, std::ostream& out, std::ostream& err) {
  validate_common(c);
  const std::string format = resolve_format(c, "json");
  VerificationOptions options;
  for (const auto& item : v.only) {
    std::stringstream ss(item);
    for (std::string name; std::getline(ss, name, ',');)
      if (!name.empty()) options.only.push_back(name);
  }
  options.lmax = v.lmax;
  options.tolerance = c.tolerance;
  options.points_per_chart = v.points;
  options.hbar = c.hbar;
  options.mass = c.mass;

  const VerificationReport report = run_verification(options);
  Sink sink(c.out, out, err);
  if (format == "json")
    write_json(sink.data(), to_json(report));
  else
    write_csv(sink.data(), report);
  sink.close();
  sink.info(fmt::format("verified {} identities, {} failed", report.entries.size(),
                        report.failures()));
  return report.all_passed() ? kExitOk : kExitIdentityFailed;
}

std::string one_line(std::string s) {
  for (char& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

int fail(std::ostream& err, std::string_view kind, const std::string& message, int code) {
  err << "error[" << kind << "]: " << one_line(message) << '\n';
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric momentum on curved surfaces", "geomom"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);

  CommonConfig common;
  app.add_option("--surface", common.surface, "Built-in surface")
      ->check(CLI::IsMember(builtin_chart_names()));
  app.add_option("--radius", common.radius, "Sphere/cylinder radius, torus major radius");
  app.add_option("--tube-radius", common.tube_radius, "Torus tube radius");
  app.add_option("--half-height", common.half_height, "Cylinder half height");
  app.add_option("--half-width", common.half_width, "Plane half width");
  app.add_option("--hbar", common.hbar, "Reduced Planck constant");
  app.add_option("--mass", common.mass, "Particle mass");
  app.add_option("--tolerance", common.tolerance, "Tolerance override");
  app.add_option("--out", common.out, "Output file (default stdout)");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  GeomConfig geom;
  auto* geom_cmd = app.add_subcommand("geom", "Per-point curvature, potential and shell data");
  geom_cmd->fallthrough();
  geom_cmd->add_option("--point", geom.points, "Parameter point q1,q2 (repeatable)");
  geom_cmd->add_option("--grid", geom.grid, "Midpoint grid n1,n2 over the chart domain");
  geom_cmd->add_option("--q1-range", geom.q1_range, "Grid bounds lo,hi for q1");
  geom_cmd->add_option("--q2-range", geom.q2_range, "Grid bounds lo,hi for q2");
  geom_cmd->add_option("--q3", geom.q3, "Shell offsets")->delimiter(',');

  DistributionConfig dist;
  auto* dist_cmd = app.add_subcommand("distribution", "Momentum distribution of Y_l0");
  dist_cmd->fallthrough();
  dist_cmd->add_option("--l", dist.l, "Angular quantum number");
  dist_cmd->add_option("--m", dist.m, "Magnetic quantum number for the uncertainty report");
  dist_cmd->add_option("--pmax", dist.p_max, "Grid half width");
  dist_cmd->add_option("--dp", dist.dp, "Grid step");
  dist_cmd->add_option("--Q", dist.truncation, "Truncation of the q integral");
  dist_cmd->add_option("--nodes", dist.nodes, "Total quadrature nodes (32 per panel)");
  dist_cmd->add_flag("--compare-closed", dist.compare_closed, "Add closed-form rows (l <= 2)");
  dist_cmd->add_flag("--sho-overlay", dist.sho_overlay, "Add harmonic-oscillator columns");
  dist_cmd->add_option("--uncertainty-out", dist.uncertainty_out,
                       "Write the uncertainty report (JSON) to this file");

  ConfineConfig confine;
  auto* confine_cmd = app.add_subcommand("confine", "Convergence of the confined gradient");
  confine_cmd->fallthrough();
  confine_cmd->add_option("--field", confine.field, "Field name (Y_l_m, const, trig_k)");
  confine_cmd->add_option("--point", confine.point, "Parameter point q1,q2");
  confine_cmd->add_option("--thickness", confine.thickness, "Shell thickness d");
  confine_cmd->add_option("--q3", confine.q3, "Offsets in [0, d]")->delimiter(',');

  VerifyConfig verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the identity verification suites");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--only", verify.only, "Suites to run (comma separated or repeated)");
  verify_cmd->add_option("--lmax", verify.lmax, "Highest l for parseval and moments");
  verify_cmd->add_option("--points", verify.points, "Interior points per chart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(err, "invalid_config", e.what(), kExitInvalidConfig);
  }

  try {
    if (*geom_cmd) return cmd_geom(common, geom, out, err);
    if (*dist_cmd) return cmd_distribution(common, dist, out, err);
    if (*confine_cmd) return cmd_confine(common, confine, out, err);
    return cmd_verify(common, verify, out, err);
  } catch (const ChartSingularity& e) {
    return fail(err, e.kind(), e.what(), kExitChartSingularity);
  } catch (const PoleProximity& e) {
    return fail(err, e.kind(), e.what(), kExitChartSingularity);
  } catch (const TruncationError& e) {
    return fail(err, e.kind(), e.what(), kExitTruncation);
  } catch (const ShellFold& e) {
    return fail(err, e.kind(), e.what(), kExitShellFold);
  } catch (const InvalidArgument& e) {
    return fail(err, e.kind(), e.what(), kExitInvalidConfig);
  } catch (const GeomomError& e) {
    return fail(err, e.kind(), e.what(), kExitInternal);
  } catch (const std::exception& e) {
    return fail(err, "internal", e.what(), kExitInternal);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"geomom"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace geomom
