#include "geomom/io.hpp"

#include <fmt/format.h>

#include "geomom/errors.hpp"

namespace geomom {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  return fmt::format("{:.17g}", x);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_)
    throw InvalidArgument(fmt::format("CSV row has {} cells, header has {}", cells.size(), width_));
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out_ << ',';
    out_ << cells[k];
  }
  out_ << '\n';
}

Json to_json(const VerificationEntry& e) {
  Json j;
  j["identity_name"] = e.identity_name;
  j["chart"] = e.chart ? Json(*e.chart) : Json(nullptr);
  j["field"] = e.field ? Json(*e.field) : Json(nullptr);
  j["point"] = e.point ? Json::array({(*e.point)[0], (*e.point)[1]}) : Json(nullptr);
  j["residual"] = e.residual;
  j["tolerance"] = e.tolerance;
  j["pass"] = e.pass;
  return j;
}

Json to_json(const VerificationReport& report) {
  Json j;
  j["passed"] = report.all_passed();
  j["entries_total"] = report.entries.size();
  j["failures"] = report.failures();
  Json entries = Json::array();
  for (const auto& e : report.entries) entries.push_back(to_json(e));
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const UncertaintyReport& r) {
  Json j;
  j["l"] = r.l;
  j["m"] = r.m;
  j["mean_position"] = r.mean_position;
  j["mean_position_squared"] = r.mean_position_squared;
  Json variance = Json::array();
  for (int i = 0; i < 3; ++i)
    variance.push_back(r.mean_position_squared[i] - r.mean_position[i] * r.mean_position[i]);
  j["position_variance"] = std::move(variance);
  j["mean_pz"] = r.mean_pz;
  j["mean_pz_squared"] = r.mean_pz_squared;
  j["pz_variance"] = r.mean_pz_squared - r.mean_pz * r.mean_pz;
  j["momentum_source"] = r.momentum_source;
  Json products = Json::array();
  for (const auto& p : r.products) products.push_back(p ? Json(*p) : Json(nullptr));
  j["uncertainty_products"] = std::move(products);
  return j;
}

void write_json(std::ostream& out, const Json& value) { out << value.dump(2) << '\n'; }

void write_csv(std::ostream& out, const VerificationReport& report) {
  CsvWriter csv(out, {"identity_name", "chart", "field", "q1", "q2", "residual", "tolerance",
                      "pass"});
  for (const auto& e : report.entries) {
    // Field labels of operator pairs contain a comma.
    const std::string field = e.field ? "\"" + *e.field + "\"" : "";
    csv.row({e.identity_name, e.chart.value_or(""), field,
             e.point ? format_number((*e.point)[0]) : "", e.point ? format_number((*e.point)[1]) : "",
             format_number(e.residual), format_number(e.tolerance), e.pass ? "true" : "false"});
  }
}

}  // namespace geomom
