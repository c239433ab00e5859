#pragma once

// Serialization of reports: CSV with '.' decimals, LF line endings and a header
// row, and JSON with keys in insertion order. Numbers are written with 17
// significant digits so identical inputs give byte-identical files.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geomom/spectra.hpp"
#include "geomom/verification.hpp"

namespace geomom {

using Json = nlohmann::ordered_json;

/// Round-trip decimal text, locale independent.
std::string format_number(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  /// Appends one row; throws InvalidArgument when the width differs from the header.
  void row(const std::vector<std::string>& cells);

  template <typename... Cells>
  void values(const Cells&... cells) {
    row({cell(cells)...});
  }

 private:
  static std::string cell(double x) { return format_number(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const char* s) { return s; }
  static std::string cell(const std::string& s) { return s; }

  std::ostream& out_;
  std::size_t width_;
};

Json to_json(const VerificationEntry& entry);
Json to_json(const VerificationReport& report);
Json to_json(const UncertaintyReport& report);

/// Two-space indentation followed by a single LF.
void write_json(std::ostream& out, const Json& value);

void write_csv(std::ostream& out, const VerificationReport& report);

}  // namespace geomom
