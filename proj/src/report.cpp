#include "zll/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zll {
namespace {

void append_escaped(std::string& out, const std::string& s) {
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
}

void append_array(std::string& out, const std::vector<double>& vs) {
  out += '[';
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += format_sig17(vs[i]);
  }
  out += ']';
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace

std::string format_sig17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void FunctionalReport::validate() const {
  if (values.size() != grid.size() || residuals.size() != grid.size())
    throw std::invalid_argument("report: grid/values/residuals sizes differ");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("report: grid must be strictly increasing");
    if (!std::isfinite(values[i]) || !std::isfinite(residuals[i]))
      throw std::invalid_argument("report: values must be finite");
  }
}

std::string report_to_json(const FunctionalReport& report) {
  report.validate();
  std::string out = "{\"name\":\"";
  append_escaped(out, report.name);
  out += "\",\"constants\":{\"c\":";
  out += format_sig17(report.c);
  out += ",\"c0\":";
  out += format_sig17(report.c0);
  out += "},\"grid\":";
  append_array(out, report.grid);
  out += ",\"values\":";
  append_array(out, report.values);
  out += ",\"target\":";
  out += format_sig17(report.target);
  out += ",\"residuals\":";
  append_array(out, report.residuals);
  out += ",\"resolution_achieved\":\"";
  append_escaped(out, report.resolution_achieved);
  out += "\",\"cache_fingerprint\":\"";
  out += fingerprint_hex(report.cache_fingerprint);
  out += "\"}\n";
  return out;
}

std::string report_to_csv(const FunctionalReport& report) {
  report.validate();
  std::string out;
  out += "# name=" + report.name + "\n";
  out += "# c=" + format_sig17(report.c) + "\n";
  out += "# c0=" + format_sig17(report.c0) + "\n";
  out += "# cache_fingerprint=" + fingerprint_hex(report.cache_fingerprint) + "\n";
  out += "# resolution_achieved=" + report.resolution_achieved + "\n";
  out += "param,value,target,residual\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    out += format_sig17(report.grid[i]);
    out += ',';
    out += format_sig17(report.values[i]);
    out += ',';
    out += format_sig17(report.target);
    out += ',';
    out += format_sig17(report.residuals[i]);
    out += '\n';
  }
  return out;
}

void emit_report(const FunctionalReport& report, ReportFormat fmt,
                 const std::filesystem::path& path) {
  const std::string body =
      (fmt == ReportFormat::json) ? report_to_json(report) : report_to_csv(report);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path.string());
  out << body;
  if (!out)
    throw std::runtime_error("emit_report: write failed for " + path.string());
}

}  // namespace zll
