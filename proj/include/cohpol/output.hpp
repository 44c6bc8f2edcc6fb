#pragma once

// Deterministic CSV / JSON emission. Data sections never carry timestamps
// or machine state, so identical configs and builds produce byte-identical
// files. Floats are printed with 17 significant digits, enough for exact
// double round-trips.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "cohpol/config.hpp"
#include "cohpol/version.hpp"

namespace cohpol {

// Shortest exact decimal form: 17 significant digits round-trip any double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// `# key: value` metadata lines, then one comma-separated header row, then
// data rows. The config echo makes every file self-describing.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const RunConfig& cfg,
            const std::vector<std::string>& columns)
      : out_(out) {
    out_ << "# " << kToolName << " " << kToolVersion << "\n";
    out_ << "# mode: " << to_string(cfg.mode) << "\n";
    out_ << "# config: " << cfg.echo.dump() << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
      out_ << (i ? "," : "") << format_double(values[i]);
    out_ << "\n";
  }

 private:
  std::ostream& out_;
};

inline Json json_report_header(const RunConfig& cfg) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["mode"] = to_string(cfg.mode);
  j["config"] = cfg.echo;
  return j;
}

inline void write_json(std::ostream& out, const Json& j) {
  out << j.dump(2) << "\n";
}

}  // namespace cohpol
