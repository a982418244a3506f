#include "zll/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "zll/constants.hpp"
#include "zll/errors.hpp"

namespace zll {
namespace {

// Scan step: caller resolution capped by half the local mean zero spacing.
double scan_step(double t, double resolution) {
  const double lg = (t > 0.0) ? std::log(t / kTwoPi) : 1.0;
  const double half_spacing = 0.5 * kPi / std::max(1.0, lg);
  return std::min(resolution, half_spacing);
}

// ln t - Z(t)^2, the oscillation balance being partitioned.
double balance(double t, const EvaluatorConfig& cfg) {
  return std::log(t) - hardy_Z(t, cfg).zeta_sq;
}

// Bisection refinement of a bracketed sign change to width < 1e-8.
double refine_crossing(double lo, double f_lo, double hi,
                       const EvaluatorConfig& cfg) {
  for (int iter = 0; iter < 64 && (hi - lo) >= 1e-8; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = balance(mid, cfg);
    if (f_mid == 0.0) return mid;
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

constexpr double kTangencyThreshold = 1e-4;

}  // namespace

void SignedPartition::validate() const {
  if (!(upper > 0.0)) throw std::invalid_argument("partition: upper must be > 0");
  if (segments.empty()) throw std::invalid_argument("partition: no segments");
  if (segments.front().a != 0.0)
    throw std::invalid_argument("partition: must start at 0");
  if (segments.front().sign != -1)
    throw std::invalid_argument("partition: leading segment must be negative");
  if (segments.back().b != upper)
    throw std::invalid_argument("partition: must end at upper");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!(segments[i].a < segments[i].b))
      throw std::invalid_argument("partition: empty or reversed segment");
    if (segments[i].sign != 1 && segments[i].sign != -1)
      throw std::invalid_argument("partition: sign must be +1 or -1");
    if (i > 0) {
      if (segments[i].a != segments[i - 1].b)
        throw std::invalid_argument("partition: segments must tile");
      if (segments[i].sign == segments[i - 1].sign)
        throw std::invalid_argument("partition: signs must alternate");
    }
  }
  if (crossings.size() + 1 != segments.size())
    throw std::invalid_argument("partition: crossings/segments mismatch");
}

std::vector<double> find_crossings(double a, double b,
                                   const EvaluatorConfig& cfg,
                                   double resolution,
                                   std::vector<double>* warnings) {
  cfg.validate();
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument("find_crossings: requires 0 < a < b");
  if (!(resolution > 0.0))
    throw std::invalid_argument("find_crossings: resolution must be > 0");

  // Deterministic sample grid, then one batched evaluation.
  std::vector<double> ts;
  for (double t = a; t < b; t += scan_step(t, resolution)) ts.push_back(t);
  ts.push_back(b);
  const std::vector<CriticalLineSample> samples = zeta_sq_batch(ts, cfg);
  std::vector<double> fs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    fs[i] = std::log(ts[i]) - samples[i].zeta_sq;

  std::vector<double> crossings;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (fs[i - 1] == 0.0) continue;  // boundary counted when first bracketed
    if ((fs[i - 1] < 0.0) != (fs[i] < 0.0))
      crossings.push_back(refine_crossing(ts[i - 1], fs[i - 1], ts[i], cfg));
  }
  if (warnings) {
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
      const bool no_change = (fs[i - 1] < 0.0) == (fs[i + 1] < 0.0);
      const bool dip = std::abs(fs[i]) < kTangencyThreshold &&
                       std::abs(fs[i]) <= std::abs(fs[i - 1]) &&
                       std::abs(fs[i]) <= std::abs(fs[i + 1]);
      const bool same_as_neighbors = (fs[i] < 0.0) == (fs[i - 1] < 0.0) &&
                                     (fs[i] < 0.0) == (fs[i + 1] < 0.0);
      if (no_change && dip && same_as_neighbors) warnings->push_back(ts[i]);
    }
  }
  return crossings;
}

SignedPartition build_partition(double T, const EvaluatorConfig& cfg,
                                double resolution) {
  if (!(T > 1.0)) throw std::invalid_argument("build_partition: requires T > 1");
  SignedPartition part;
  part.upper = T;
  // On (0, 1], ln t <= 0 <= Z^2 analytically; scanning starts at 1.
  part.crossings = find_crossings(1.0, T, cfg, resolution,
                                  &part.tangential_warnings);
  // Drop a crossing coinciding with the upper end: it would create an empty
  // trailing segment.
  while (!part.crossings.empty() && part.crossings.back() >= T - 1e-10)
    part.crossings.pop_back();

  double left = 0.0;
  int sign = -1;
  for (double x : part.crossings) {
    part.segments.push_back({left, x, sign});
    left = x;
    sign = -sign;
  }
  part.segments.push_back({left, T, sign});
  part.validate();
  return part;
}

SignedAreas signed_areas(const SignedPartition& partition,
                         const EvaluatorConfig& cfg,
                         const QuadratureSpec& spec, IntegralCache& cache) {
  partition.validate();
  SignedAreas areas;
  for (const SignedSegment& seg : partition.segments) {
    // Exact antiderivative of ln t (t ln t - t -> 0 as t -> 0).
    const double ln_upper = seg.b * std::log(seg.b) - seg.b;
    const double ln_lower = (seg.a == 0.0) ? 0.0 : seg.a * std::log(seg.a) - seg.a;
    const double ln_part = ln_upper - ln_lower;
    const double z_part =
        (seg.a == 0.0)
            ? hardy_littlewood_J(seg.b, cfg, spec, cache)
            : integrate_abs_zeta_sq(seg.a, seg.b, cfg, spec, cache);
    const double contribution = ln_part - z_part;  // integral of ln t - Z^2
    if (seg.sign > 0)
      areas.plus += contribution;
    else
      areas.minus += -contribution;
  }
  return areas;
}

std::vector<std::pair<double, double>> omega_witnesses(
    double T, double alpha, int threshold_count, const EvaluatorConfig& cfg) {
  cfg.validate();
  if (!(alpha > 0.0) || !(alpha < 0.5))
    throw std::invalid_argument("omega_witnesses: alpha must lie in (0, 1/2)");
  if (threshold_count < 1)
    throw std::invalid_argument("omega_witnesses: threshold_count must be >= 1");
  const double start = std::exp(1.0);
  if (!(T > start)) return {};

  std::vector<double> ts;
  for (double t = start; t < T; t += scan_step(t, 0.05)) ts.push_back(t);
  ts.push_back(T);
  const std::vector<CriticalLineSample> samples = zeta_sq_batch(ts, cfg);

  std::vector<std::pair<double, double>> witnesses;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double prev = std::abs(samples[i - 1].z);
    const double here = std::abs(samples[i].z);
    const double next = std::abs(samples[i + 1].z);
    if (!(here > prev && here >= next)) continue;
    // Golden-section polish of the arch peak.
    double lo = ts[i - 1], hi = ts[i + 1];
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = std::abs(hardy_Z(x1, cfg).z);
    double f2 = std::abs(hardy_Z(x2, cfg).z);
    for (int iter = 0; iter < 40 && (hi - lo) > 1e-7; ++iter) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = std::abs(hardy_Z(x2, cfg).z);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = std::abs(hardy_Z(x1, cfg).z);
      }
    }
    const double t_peak = 0.5 * (lo + hi);
    const double z_peak = std::abs(hardy_Z(t_peak, cfg).z);
    if (z_peak > std::exp(std::pow(std::log(t_peak), alpha))) {
      witnesses.emplace_back(t_peak, z_peak);
      if (static_cast<int>(witnesses.size()) >= threshold_count) break;
    }
  }
  return witnesses;
}

AuditReport minus_set_bound_check(const SignedPartition& partition,
                                  const EvaluatorConfig& cfg) {
  partition.validate();
  AuditReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  int minus_checked = 0, plus_checked = 0;
  bool ok = true;
  for (const SignedSegment& seg : partition.segments) {
    const double lo = std::max(seg.a, 1.0);
    if (!(lo < seg.b)) continue;
    const int n = 20;
    for (int i = 0; i < n; ++i) {
      // strictly interior samples, away from the refined boundaries
      const double frac = 0.05 + 0.9 * (static_cast<double>(i) / (n - 1));
      const double t = lo + frac * (seg.b - lo);
      const double margin = (seg.sign < 0)
                                ? hardy_Z(t, cfg).zeta_sq - std::log(t)
                                : std::log(t) - hardy_Z(t, cfg).zeta_sq;
      report.worst_margin = std::min(report.worst_margin, margin);
      if (margin < -1e-6) ok = false;
      if (seg.sign < 0)
        ++minus_checked;
      else
        ++plus_checked;
    }
  }
  report.points_checked = minus_checked + plus_checked;
  report.passed = ok && report.points_checked > 0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "checked %d minus-set and %d plus-set samples; worst margin %.3e",
                minus_checked, plus_checked, report.worst_margin);
  report.detail = detail;
  return report;
}

}  // namespace zll
