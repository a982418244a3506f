#include "zll/laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "zll/constants.hpp"
#include "zll/errors.hpp"

namespace zll {
namespace {

double J1_of(double T, Lab& lab) {
  return log_modified_J1(T, lab.evaluator, lab.quad, lab.cache);
}

double segment_Z2(double a, double b, Lab& lab) {
  return integrate_abs_zeta_sq(a, b, lab.evaluator, lab.quad, lab.cache);
}

// x^n with overflow saturation flag (unsigned 128-bit).
bool pow_checked(unsigned long long base, long long exp, __uint128_t& out) {
  __uint128_t acc = 1;
  const __uint128_t limit = ~static_cast<__uint128_t>(0) / 2;
  for (long long i = 0; i < exp; ++i) {
    if (acc > limit / std::max<unsigned long long>(base, 1)) return false;
    acc *= base;
  }
  out = acc;
  return true;
}

}  // namespace

double FermatRational::value() const {
  validate();
  return (std::pow(static_cast<double>(x), static_cast<double>(n)) +
          std::pow(static_cast<double>(y), static_cast<double>(n))) /
         std::pow(static_cast<double>(z), static_cast<double>(n));
}

void FermatRational::validate() const {
  if (x < 1 || y < 1 || z < 1)
    throw std::invalid_argument("fermat rational: x, y, z must be positive");
  if (n < 3) throw std::invalid_argument("fermat rational: n must be >= 3");
}

double lemma1_residual(double T, int r, Lab& lab) {
  if (r < 1) throw std::invalid_argument("lemma1_residual: r must be >= 1");
  const double prev = reverse_iter(T, r - 1, lab);
  const double top = reverse_iter(prev, 1, lab);
  return J1_of(prev, lab) - segment_Z2(prev, top, lab) -
         kLn2PiMinus1MinusGamma * prev + lab.consts.c0;
}

double increment_integral(double T, int r, Lab& lab) {
  if (r < 1) throw std::invalid_argument("increment_integral: r must be >= 1");
  const double prev = reverse_iter(T, r - 1, lab);
  const double top = reverse_iter(prev, 1, lab);
  return segment_Z2(prev, top, lab);
}

double lemma2_residual(double rho, Lab& lab) {
  if (!(rho > 0.0)) throw std::invalid_argument("lemma2_residual: rho must be > 0");
  return J1_of(rho, lab) - kLn2PiMinus2Gamma * rho;
}

double scaled_limit_functional(double x, double tau, Lab& lab) {
  if (!(x > 0.0))
    throw std::invalid_argument("scaled_limit_functional: x must be > 0");
  const double inner = x * tau / (lab.consts.ln2pi - 2.0 * lab.consts.c);
  if (!(inner >= 10.0))
    throw std::invalid_argument(
        "scaled_limit_functional: tau too small (inner argument below 10)");
  return J1_of(inner, lab) / tau;
}

double fermat_functional(const FermatRational& fr, double tau, Lab& lab) {
  return scaled_limit_functional(fr.value(), tau, lab);
}

double conservation_law_residual(double T, int r, Lab& lab, double resolution) {
  if (r < 1)
    throw std::invalid_argument("conservation_law_residual: r must be >= 1");
  const double prev = reverse_iter(T, r - 1, lab);
  const double top = reverse_iter(prev, 1, lab);
  const SignedPartition part = build_partition(prev, lab.evaluator, resolution);
  const SignedAreas areas = signed_areas(part, lab.evaluator, lab.quad, lab.cache);
  return areas.plus - areas.minus - segment_Z2(prev, top, lab) -
         kLn2PiMinus1MinusGamma * prev;
}

double zero_limit_law_residual(double T, int r, Lab& lab, double resolution) {
  if (r < 1)
    throw std::invalid_argument("zero_limit_law_residual: r must be >= 1");
  const double prev = reverse_iter(T, r - 1, lab);
  const double mid = reverse_iter(prev, 1, lab);
  const double next = reverse_iter(mid, 1, lab);
  // Segment areas over (prev, mid]: differences of the cumulative partitions.
  const SignedPartition part_mid = build_partition(mid, lab.evaluator, resolution);
  const SignedPartition part_prev = build_partition(prev, lab.evaluator, resolution);
  const SignedAreas a_mid = signed_areas(part_mid, lab.evaluator, lab.quad, lab.cache);
  const SignedAreas a_prev =
      signed_areas(part_prev, lab.evaluator, lab.quad, lab.cache);
  const double seg_plus = a_mid.plus - a_prev.plus;
  const double seg_minus = a_mid.minus - a_prev.minus;
  return seg_plus - seg_minus + segment_Z2(prev, mid, lab) -
         segment_Z2(mid, next, lab) - kLn2PiMinus1MinusGamma * (mid - prev);
}

double formula_4_1_functional(double x, double tau, Lab& lab) {
  if (!(x > 0.0))
    throw std::invalid_argument("formula_4_1_functional: x must be > 0");
  const double a = x * tau / (1.0 - lab.consts.c);
  if (!(a >= 10.0))
    throw std::invalid_argument(
        "formula_4_1_functional: tau too small (lower endpoint below 10)");
  const double b = reverse_iter(a, 1, lab);
  return segment_Z2(a, b, lab) / tau;
}

double segment_limit_functional(double x, int N, double tau, Lab& lab) {
  if (N < 1)
    throw std::invalid_argument("segment_limit_functional: N must be >= 1");
  // Literally the telescoped difference, so the identity with the scaled
  // functional is exact.
  return scaled_limit_functional((N + 1) * x, tau, lab) -
         scaled_limit_functional(x, tau, lab);
}

std::vector<FermatRational> enumerate_fermat_rationals(double epsilon,
                                                       int n_max,
                                                       long long z_max) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("enumerate_fermat_rationals: epsilon must be > 0");
  if (n_max < 3)
    throw std::invalid_argument("enumerate_fermat_rationals: n_max must be >= 3");
  if (z_max < 1)
    throw std::invalid_argument("enumerate_fermat_rationals: z_max must be >= 1");

  // Exact window test: 1 - eps < (x^n + y^n)/z^n < 1 + eps, done in integers
  // against the binary rational eps = eps_num / 2^shift (doubles are dyadic).
  int exp2 = 0;
  const double mant = std::frexp(epsilon, &exp2);
  // epsilon = mant * 2^exp2, mant in [0.5, 1); mant * 2^53 is integral.
  const auto eps_num = static_cast<__uint128_t>(
      static_cast<unsigned long long>(std::ldexp(mant, 53)));
  const int shift = 53 - exp2;  // epsilon = eps_num / 2^shift

  std::vector<FermatRational> hits;
  for (long long n = 3; n <= n_max; ++n) {
    for (long long zc = 1; zc <= z_max; ++zc) {
      __uint128_t zn;
      if (!pow_checked(zc, n, zn))
        throw std::invalid_argument(
            "enumerate_fermat_rationals: bounds exceed the exact integer range");
      for (long long yc = 1; yc <= zc; ++yc) {
        __uint128_t yn;
        if (!pow_checked(yc, n, yn))
          throw std::invalid_argument(
              "enumerate_fermat_rationals: bounds exceed the exact integer range");
        for (long long xc = 1; xc <= yc; ++xc) {
          __uint128_t xn = 0;
          pow_checked(xc, n, xn);  // xc <= yc, so this cannot overflow past yn
          const __uint128_t num = xn + yn;
          // |num/zn - 1| < eps  <=>  |num - zn| * 2^shift < eps_num * zn,
          // evaluated without overflow via long double fallback when needed.
          const __uint128_t diff = (num > zn) ? num - zn : zn - num;
          bool inside;
          const __uint128_t lim = ~static_cast<__uint128_t>(0);
          if (shift < 64 && diff <= (lim >> shift) &&
              zn <= lim / std::max<__uint128_t>(eps_num, 1)) {
            inside = (diff << shift) < eps_num * zn;
          } else {
            inside = static_cast<long double>(diff) /
                         static_cast<long double>(zn) <
                     static_cast<long double>(epsilon);
          }
          if (inside) hits.push_back({xc, yc, zc, n});
        }
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const FermatRational& a,
                                         const FermatRational& b) {
    return std::tuple(a.n, a.z, a.y, a.x) < std::tuple(b.n, b.z, b.y, b.x);
  });
  return hits;
}

FunctionalReport localized_scan(double epsilon, int N, int n_max,
                                long long z_max, double tau, Lab& lab) {
  if (N < 1) throw std::invalid_argument("localized_scan: N must be >= 1");
  const double window = epsilon / static_cast<double>(N);
  const std::vector<FermatRational> rationals =
      enumerate_fermat_rationals(window, n_max, z_max);

  FunctionalReport report;
  report.name = "localized";
  report.c = lab.consts.c;
  report.c0 = lab.consts.c0;
  report.target = static_cast<double>(N);
  report.cache_fingerprint = lab.cache.cfg_fingerprint;
  // Grid indexes the enumerated rationals (1-based); values are the segment
  // functionals, residuals their distance from the integer target N.
  double idx = 1.0;
  double worst_gap = 0.0;
  for (const FermatRational& fr : rationals) {
    const double value = segment_limit_functional(fr.value(), N, tau, lab);
    report.grid.push_back(idx);
    report.values.push_back(value);
    report.residuals.push_back(value - report.target);
    worst_gap = std::max(worst_gap, std::abs(N * fr.value() - N));
    idx += 1.0;
  }
  char note[200];
  std::snprintf(note, sizeof(note),
                "window (1-eps/N, 1+eps/N) with eps/N=%.3g holds %zu rationals; "
                "largest |N*value-N| among them %.3g; tau=%.3g cannot separate "
                "gaps below ~%.1g",
                window, rationals.size(), worst_gap, tau, 10.0 / tau);
  report.resolution_achieved = note;
  report.cache_fingerprint = lab.cache.cfg_fingerprint;
  report.validate();
  return report;
}

FunctionalReport make_report(std::string name, std::vector<double> grid,
                             std::vector<double> values, double target,
                             Lab& lab) {
  FunctionalReport report;
  report.name = std::move(name);
  report.c = lab.consts.c;
  report.c0 = lab.consts.c0;
  report.grid = std::move(grid);
  report.values = std::move(values);
  report.target = target;
  report.residuals.reserve(report.values.size());
  for (double v : report.values) report.residuals.push_back(v - target);
  bool shrinking = true;
  for (std::size_t i = 1; i < report.residuals.size(); ++i)
    shrinking = shrinking && std::abs(report.residuals[i]) <=
                                 std::abs(report.residuals[i - 1]) + 1e-12;
  char note[160];
  if (report.residuals.empty()) {
    std::snprintf(note, sizeof(note), "empty grid");
  } else {
    std::snprintf(note, sizeof(note),
                  "final |residual| %.3e at grid end %.6g; trend %s",
                  std::abs(report.residuals.back()), report.grid.back(),
                  shrinking ? "non-increasing" : "not monotone");
  }
  report.resolution_achieved = note;
  report.cache_fingerprint = lab.cache.cfg_fingerprint;
  report.validate();
  return report;
}

}  // namespace zll
