#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace zll {

// Convergence record for one functional: values over a parameter grid, the
// predicted limit, and the residuals values - target.
struct FunctionalReport {
  std::string name;
  double c = 0.0;   // Euler constant used
  double c0 = 0.0;  // additive constant used
  std::vector<double> grid;       // strictly increasing parameter values
  std::vector<double> values;     // functional evaluations, same length
  double target = 0.0;            // predicted limit
  std::vector<double> residuals;  // values - target
  std::string resolution_achieved;  // honest statement of what this scale shows
  std::uint64_t cache_fingerprint = 0;

  void validate() const;  // grid strictly increasing, sizes match, finite
};

enum class ReportFormat { csv, json };

// Deterministic serialization, 17 significant digits throughout.
std::string report_to_json(const FunctionalReport& report);
std::string report_to_csv(const FunctionalReport& report);

// Writes the chosen format; identical reports produce identical bytes.
void emit_report(const FunctionalReport& report, ReportFormat fmt,
                 const std::filesystem::path& path);

// 17-significant-digit shortest-faithful rendering used by all emitters.
std::string format_sig17(double v);

}  // namespace zll
