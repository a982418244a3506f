// Acceptance gate: nine pass/fail checks covering the evaluator, the
// second-moment integrals, the ladder, the signed partition, and the limit
// functionals. Prints one line per criterion; exit code = number of failures.
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <zll/constants.hpp>
#include <zll/ladder.hpp>
#include <zll/laws.hpp>
#include <zll/oscillation.hpp>
#include <zll/quadrature.hpp>
#include <zll/special_functions.hpp>

#include "oracle.hpp"

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename Fn>
void criterion(int idx, const char* what, Fn&& fn) {
  bool ok = false;
  std::string detail;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(idx, ok, detail.empty() ? what : (std::string(what) + " [" + detail + "]"));
}

double J_of(double T, zll::Lab& lab) {
  return zll::hardy_littlewood_J(T, lab.evaluator, lab.quad, lab.cache);
}

double J1_of(double T, zll::Lab& lab) {
  return zll::log_modified_J1(T, lab.evaluator, lab.quad, lab.cache);
}

long long ipow(long long b, long long e) {
  long long acc = 1;
  for (long long i = 0; i < e; ++i) acc *= b;
  return acc;
}

char buf[256];

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

}  // namespace

int main() {
  zll::Lab lab;  // one shared cache for every criterion

  criterion(1, "evaluator accuracy vs independent oracle", [&](std::string& d) {
    std::mt19937_64 rng(0xACCE97ULL);
    std::uniform_real_distribution<double> pick(1.0, 1e4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = pick(rng);
      const double ref = static_cast<double>(oracle::hardy_Z_ld(t));
      worst = std::max(worst, std::abs(zll::hardy_Z(t, lab.evaluator).z - ref));
    }
    const double at_zero = std::abs(zll::hardy_Z(14.1347251417, lab.evaluator).z);
    const double at_origin = zll::hardy_Z(1e-12, lab.evaluator).z;
    d = fmt("worst |dZ|=%.3g over 100 random t, |Z(zero_1)|=%.3g", worst, at_zero);
    return worst < 1e-6 && at_zero < 1e-4 &&
           std::abs(at_origin - (-1.4603545)) < 1e-6;
  });

  criterion(2, "second-moment asymptotic envelope", [&](std::string& d) {
    bool ok = true;
    double worst_ratio = 0.0;
    for (double T : {1e3, 5e3, 1e4}) {
      const double asym =
          T * (std::log(T) - zll::kLnTwoPi) + (2.0 * lab.consts.c - 1.0) * T;
      const double dev = std::abs(J_of(T, lab) - asym);
      const double cap = 5.0 * std::cbrt(T);
      worst_ratio = std::max(worst_ratio, dev / cap);
      ok = ok && dev <= cap;
    }
    d = fmt("worst |J-asym| / (5 T^{1/3}) = %.3f", worst_ratio);
    return ok;
  });

  criterion(3, "J1 slope near ln2pi - 2c with tightening ratio",
            [&](std::string& d) {
    const double r1 = J1_of(1e3, lab) / 1e3;
    const double r2 = J1_of(5e3, lab) / 5e3;
    const double r3 = J1_of(1e4, lab) / 1e4;
    d = fmt("J1/rho = %.5f, %.5f, %.5f at 1e3, 5e3, 1e4", r1, r2, r3);
    const double d1 = std::abs(r1 - 0.6798);
    const double d2 = std::abs(r2 - 0.6798);
    const double d3 = std::abs(r3 - 0.6798);
    return r3 > 0.63 && r3 < 0.73 && d2 <= d1 + 1e-12 && d3 <= d2 + 1e-12;
  });

  criterion(4, "ladder inversion and strictly increasing towers",
            [&](std::string& d) {
    double worst = 0.0;
    for (double T : {1e2, 1e3, 1e4}) {
      const double up = zll::reverse_iter(T, 1, lab);
      worst = std::max(worst, std::abs(zll::phi1(up, lab) - T) / T);
    }
    const zll::IterationTower tower = zll::build_tower(1e4, 3, lab);
    bool increasing = tower.levels.size() == 4;
    for (std::size_t i = 1; i < tower.levels.size(); ++i)
      increasing = increasing && tower.levels[i] > tower.levels[i - 1];
    d = fmt("worst inversion rel err %.3g", worst);
    return worst < 1e-7 && increasing;
  });

  criterion(5, "tower step against (1-c) pi(1T)", [&](std::string& d) {
    auto ratio = [&](double T) {
      const double up = zll::reverse_iter(T, 1, lab);
      return (up - T) /
             ((1.0 - lab.consts.c) * static_cast<double>(zll::prime_pi(up)));
    };
    const double r_hi = ratio(1e4);
    const double r_lo = ratio(2e3);
    d = fmt("ratio %.4f at 2e3 -> %.4f at 1e4", r_lo, r_hi);
    return r_hi > 0.7 && r_hi < 1.3 &&
           std::abs(r_hi - 1.0) <= std::abs(r_lo - 1.0) + 1e-12;
  });

  criterion(6, "identity web across areas, conservation, and telescoping",
            [&](std::string& d) {
    bool ok = true;
    double worst_area = 0.0;
    for (double T : {1e2, 1e3}) {
      const zll::SignedPartition part = zll::build_partition(T, lab.evaluator);
      const zll::SignedAreas areas =
          zll::signed_areas(part, lab.evaluator, lab.quad, lab.cache);
      const double gap = std::abs(areas.plus - areas.minus - J1_of(T, lab));
      worst_area = std::max(worst_area, gap);
      ok = ok && gap <= 10.0 * lab.quad.abs_tol;

      const double cons = zll::conservation_law_residual(T, 1, lab);
      const double lem = zll::lemma1_residual(T, 1, lab);
      ok = ok && std::abs(cons - lem + lab.consts.c0) <= 10.0 * lab.quad.abs_tol;

      const double zl = zll::zero_limit_law_residual(T, 1, lab);
      const double c2 = zll::conservation_law_residual(T, 2, lab);
      ok = ok && std::abs(zl - (c2 - cons)) <= 2.0 * lab.quad.abs_tol;
    }
    const double lhs = zll::segment_limit_functional(0.7, 2, 3000.0, lab);
    const double rhs = zll::scaled_limit_functional(3 * 0.7, 3000.0, lab) -
                       zll::scaled_limit_functional(0.7, 3000.0, lab);
    ok = ok && lhs == rhs;  // telescopes exactly
    d = fmt("worst |area gap| %.2e", worst_area);
    return ok;
  });

  criterion(7, "limit functionals near their predicted values",
            [&](std::string& d) {
    const double taus[] = {2.5e3, 5e3, 1e4};
    double scaled_res[3], seg_res[3], f41_res[3];
    for (int i = 0; i < 3; ++i)
      scaled_res[i] = std::abs(zll::scaled_limit_functional(1.0, taus[i], lab) - 1.0);
    for (int i = 0; i < 3; ++i)
      seg_res[i] =
          std::abs(zll::segment_limit_functional(1.0, 2, taus[i], lab) - 2.0);
    for (int i = 0; i < 3; ++i)
      f41_res[i] = std::abs(zll::formula_4_1_functional(1.0, taus[i], lab) - 1.0);
    bool ok = scaled_res[2] < 0.1 && seg_res[2] < 0.2 && f41_res[2] < 0.15;
    bool trend = true;
    for (int i = 1; i < 3; ++i)
      trend = trend && scaled_res[i] <= scaled_res[i - 1] + 1e-12 &&
              seg_res[i] <= seg_res[i - 1] + 1e-12 &&
              f41_res[i] <= f41_res[i - 1] + 1e-12;
    d = fmt("residuals at tau=1e4: scaled %.3g, segment %.3g, formula41 %.3g",
            scaled_res[2], seg_res[2], f41_res[2]) +
        (trend ? ", trend non-increasing" : ", TREND NOT MONOTONE");
    return ok && trend;
  });

  criterion(8, "exact near-miss enumeration vs brute force", [&](std::string& d) {
    std::vector<zll::FermatRational> brute;
    bool no_exact = true;
    for (long long n = 3; n <= 5; ++n)
      for (long long z = 1; z <= 30; ++z)
        for (long long y = 1; y <= z; ++y)
          for (long long x = 1; x <= y; ++x) {
            const long long num = ipow(x, n) + ipow(y, n);
            const long long zn = ipow(z, n);
            no_exact = no_exact && num != zn;
            const long long diff = num > zn ? num - zn : zn - num;
            if (10 * diff < 3 * zn) brute.push_back({x, y, z, n});
          }
    const auto hits = zll::enumerate_fermat_rationals(0.3, 5, 30);
    bool equal = hits.size() == brute.size();
    for (std::size_t i = 0; equal && i < hits.size(); ++i)
      equal = hits[i].x == brute[i].x && hits[i].y == brute[i].y &&
              hits[i].z == brute[i].z && hits[i].n == brute[i].n;
    d = fmt("%g rationals in the window, no exact power sums",
            static_cast<double>(hits.size()));
    return equal && no_exact;
  });

  criterion(9, "partition stability under 4x refinement plus sign audit",
            [&](std::string& d) {
    const zll::SignedPartition coarse =
        zll::build_partition(1e3, lab.evaluator, 0.05);
    const zll::SignedPartition fine =
        zll::build_partition(1e3, lab.evaluator, 0.0125);
    bool kept = fine.crossings.size() >= coarse.crossings.size() &&
                (fine.crossings.size() - coarse.crossings.size()) % 2 == 0;
    for (double t : coarse.crossings) {
      bool found = false;
      for (double u : fine.crossings)
        if (std::abs(u - t) < 1e-6) {
          found = true;
          break;
        }
      kept = kept && found;
    }
    const zll::AuditReport audit = zll::minus_set_bound_check(coarse, lab.evaluator);
    d = fmt("%g -> %g crossings, audit margin %.2e",
            static_cast<double>(coarse.crossings.size()),
            static_cast<double>(fine.crossings.size()), audit.worst_margin) +
        (audit.passed ? "" : ", AUDIT FAILED");
    return kept && audit.passed;
  });

  std::printf("acceptance: %d of 9 criteria passed\n", 9 - failures);
  return failures;
}
