#include "zll/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace zll {
namespace {

constexpr double kW = 800.0, kH = 400.0;
constexpr double kMargin = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

struct Mapper {
  double x0, x1, y0, y1;  // data ranges
  double px(double x) const {
    const double span = (x1 > x0) ? x1 - x0 : 1.0;
    return kMargin + (x - x0) / span * (kW - 2.0 * kMargin);
  }
  double py(double y) const {
    const double span = (y1 > y0) ? y1 - y0 : 1.0;
    return kH - kMargin - (y - y0) / span * (kH - 2.0 * kMargin);
  }
};

std::string svg_open() {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
                "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                kW, kH, kW, kH);
  return std::string(buf) +
         "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

void axes(std::string& out, const Mapper& m, const std::string& xlabel,
          const std::string& ylabel) {
  out += "<g stroke=\"#333333\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kH - kMargin) +
         "\" x2=\"" + num(kW - kMargin) + "\" y2=\"" + num(kH - kMargin) + "\"/>\n";
  out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" +
         num(kMargin) + "\" y2=\"" + num(kH - kMargin) + "\"/>\n";
  out += "</g>\n";
  out += "<g font-family=\"monospace\" font-size=\"11\" fill=\"#333333\">\n";
  out += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kH - kMargin + 28.0) +
         "\">" + num(m.x0) + "</text>\n";
  out += "<text x=\"" + num(kW - kMargin - 40.0) + "\" y=\"" +
         num(kH - kMargin + 28.0) + "\">" + num(m.x1) + "</text>\n";
  out += "<text x=\"4\" y=\"" + num(kH - kMargin) + "\">" + num(m.y0) +
         "</text>\n";
  out += "<text x=\"4\" y=\"" + num(kMargin + 8.0) + "\">" + num(m.y1) +
         "</text>\n";
  out += "<text x=\"" + num(kW / 2.0 - 30.0) + "\" y=\"" + num(kH - 8.0) +
         "\">" + xlabel + "</text>\n";
  out += "<text x=\"4\" y=\"16\">" + ylabel + "</text>\n";
  out += "</g>\n";
}

}  // namespace

std::string plot_report_svg(const FunctionalReport& report) {
  report.validate();
  std::string out = svg_open();
  Mapper m{0.0, 1.0, 0.0, 1.0};
  if (!report.grid.empty()) {
    m.x0 = report.grid.front();
    m.x1 = report.grid.back();
    double ymin = report.target, ymax = report.target;
    for (double v : report.values) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
    const double pad = 0.05 * std::max(1e-12, ymax - ymin);
    m.y0 = ymin - pad;
    m.y1 = ymax + pad;

    out += "<line x1=\"" + num(m.px(m.x0)) + "\" y1=\"" +
           num(m.py(report.target)) + "\" x2=\"" + num(m.px(m.x1)) +
           "\" y2=\"" + num(m.py(report.target)) +
           "\" stroke=\"#b22222\" stroke-dasharray=\"6 3\"/>\n";
    out += "<polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
      if (i) out += ' ';
      out += num(m.px(report.grid[i])) + "," + num(m.py(report.values[i]));
    }
    out += "\"/>\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
      out += "<circle cx=\"" + num(m.px(report.grid[i])) + "\" cy=\"" +
             num(m.py(report.values[i])) + "\" r=\"3\" fill=\"#1f4e8c\"/>\n";
    }
  }
  axes(out, m, "parameter", report.name.empty() ? "value" : report.name);
  out += "</svg>\n";
  return out;
}

std::string plot_partition_svg(const SignedPartition& partition,
                               const EvaluatorConfig& cfg) {
  partition.validate();
  const double T = partition.upper;
  const int n_samples = 700;
  std::vector<double> ts(n_samples);
  for (int i = 0; i < n_samples; ++i)
    ts[i] = T * (i + 1) / static_cast<double>(n_samples);
  const std::vector<CriticalLineSample> samples = zeta_sq_batch(ts, cfg);

  double ymin = 0.0, ymax = std::log(T);
  for (const auto& s : samples) ymax = std::max(ymax, s.zeta_sq);
  for (const auto& s : samples)
    ymin = std::min(ymin, std::log(s.t));
  ymin = std::max(ymin, -2.0);  // clip the log singularity for display
  Mapper m{0.0, T, ymin, ymax * 1.05};

  std::string out = svg_open();
  for (const SignedSegment& seg : partition.segments) {
    const double x = m.px(seg.a);
    const double w = m.px(seg.b) - x;
    out += "<rect x=\"" + num(x) + "\" y=\"" + num(kMargin) + "\" width=\"" +
           num(w) + "\" height=\"" + num(kH - 2.0 * kMargin) + "\" fill=\"" +
           (seg.sign > 0 ? "#f3e2cf" : "#d7e4f2") + "\"/>\n";
  }
  out += "<polyline fill=\"none\" stroke=\"#b22222\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i) out += ' ';
    const double y = std::max(std::log(samples[i].t), ymin);
    out += num(m.px(samples[i].t)) + "," + num(m.py(y));
  }
  out += "\"/>\n";
  out += "<polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i) out += ' ';
    const double y = std::min(samples[i].zeta_sq, m.y1);
    out += num(m.px(samples[i].t)) + "," + num(m.py(y));
  }
  out += "\"/>\n";
  axes(out, m, "t", "ln t (red) vs Z(t)^2 (blue)");
  out += "</svg>\n";
  return out;
}

void emit_plot(const FunctionalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path.string());
  out << plot_report_svg(report);
  if (!out) throw std::runtime_error("emit_plot: write failed for " + path.string());
}

void emit_plot(const SignedPartition& partition, const EvaluatorConfig& cfg,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path.string());
  out << plot_partition_svg(partition, cfg);
  if (!out) throw std::runtime_error("emit_plot: write failed for " + path.string());
}

}  // namespace zll
