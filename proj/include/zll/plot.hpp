#pragma once

#include <filesystem>
#include <string>

#include "zll/oscillation.hpp"
#include "zll/report.hpp"

namespace zll {

// Static SVG rendering; output bytes are deterministic for fixed inputs.

// Value-vs-parameter curve with the target limit as a reference line.
std::string plot_report_svg(const FunctionalReport& report);

// Partition ribbon: + and - segments shaded distinctly under the overlaid
// curves y = ln t and y = Z(t)^2.
std::string plot_partition_svg(const SignedPartition& partition,
                               const EvaluatorConfig& cfg);

void emit_plot(const FunctionalReport& report, const std::filesystem::path& path);
void emit_plot(const SignedPartition& partition, const EvaluatorConfig& cfg,
               const std::filesystem::path& path);

}  // namespace zll
