#include "zll/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "zll/errors.hpp"

namespace zll {
namespace {

// g(phi) = phi ln phi + (c - ln 2pi) phi; strictly increasing for phi >= 2.
double g_of(double phi, const LadderConstants& k) {
  return phi * std::log(phi) + (k.c - k.ln2pi) * phi;
}

double g_prime(double phi, const LadderConstants& k) {
  return std::log(phi) + 1.0 + k.c - k.ln2pi;
}

double J_of(double T, Lab& lab) {
  return hardy_littlewood_J(T, lab.evaluator, lab.quad, lab.cache);
}

// Solvers run two orders tighter than root_tol so that tower/round-trip
// residuals stay below the advertised tolerance after propagation.
double solve_tol(double rhs, const LadderConstants& k) {
  return 0.01 * k.root_tol * std::max(1.0, std::abs(rhs));
}

}  // namespace

void LadderConstants::validate() const {
  if (!(ln2pi - 2.0 * c > 0.0))
    throw std::invalid_argument("ladder constants require ln2pi - 2c > 0");
  if (!(root_tol > 0.0) || root_tol > 1e-6)
    throw std::invalid_argument("root_tol must lie in (0, 1e-6]");
}

double phi1(double T, Lab& lab) {
  lab.consts.validate();
  if (!(T >= 10.0))
    throw std::invalid_argument("phi1: requires T >= 10");
  const LadderConstants& k = lab.consts;
  const double rhs = J_of(T, lab) - k.c0;
  if (rhs <= g_of(2.0, k))
    throw numerical_error("phi1: target below the monotone branch (T too small)");

  // Expected location: phi ~ T - (1-c) T / ln T.
  double lo = 2.0;
  double hi = T;
  while (g_of(hi, k) < rhs) hi *= 1.5;  // J(T) < g(T)+c0 normally; stay safe
  double x = std::clamp(T - (1.0 - k.c) * T / std::max(2.0, std::log(T)),
                        lo + 1e-12, hi);
  const double tol = solve_tol(rhs, k);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = g_of(x, k) - rhs;
    if (std::abs(fx) <= tol) return x;
    if (fx > 0.0) hi = x;
    else lo = x;
    double next = x - fx / g_prime(x, k);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == x) return x;  // FP fixed point
    x = next;
  }
  throw numerical_error("phi1: solver failed to converge");
}

double phi1_direct_iter(double t, int k, Lab& lab) {
  if (k < 0) throw std::invalid_argument("phi1_direct_iter: k must be >= 0");
  double x = t;
  for (int stage = 1; stage <= k; ++stage) {
    if (!(x >= 10.0)) {
      char msg[100];
      std::snprintf(msg, sizeof(msg),
                    "phi1_direct_iter: guard violated at stage %d (value %.6g < 10)",
                    stage, x);
      throw numerical_error(msg);
    }
    x = phi1(x, lab);
  }
  return x;
}

namespace {

// One reverse step: the unique x > prev with J(x) = g(prev) + c0.
double reverse_step(double prev, Lab& lab) {
  const LadderConstants& k = lab.consts;
  const double rhs = g_of(prev, k) + k.c0;
  double lo = prev;
  double f_lo = J_of(lo, lab) - rhs;
  if (f_lo > 0.0)
    throw numerical_error("reverse_iter: J(T) already above the target");
  double width = 2.0 * (1.0 - k.c) * prev / std::max(2.0, std::log(prev));
  double hi = prev + width;
  int expansions = 0;
  while (J_of(hi, lab) < rhs) {
    width *= 2.0;
    hi = prev + width;
    if (++expansions > 60)
      throw numerical_error("reverse_iter: bracket expansion failed");
  }
  const double tol = solve_tol(rhs, k);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = J_of(x, lab) - rhs;
    if (std::abs(fx) <= tol) return x;
    if (fx > 0.0) hi = x;
    else lo = x;
    // Newton using J' = Z^2, guarded against the zeros of Z.
    const double deriv = hardy_Z(x, lab.evaluator).zeta_sq;
    double next = (deriv > 1e-8) ? x - fx / deriv : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == x) return x;
    x = next;
  }
  throw numerical_error("reverse_iter: solver failed to converge");
}

}  // namespace

double reverse_iter(double T, int r, Lab& lab) {
  lab.consts.validate();
  if (r < 0) throw std::invalid_argument("reverse_iter: r must be >= 0");
  if (r == 0) return T;
  if (!(T >= 10.0)) throw std::invalid_argument("reverse_iter: requires T >= 10");
  double x = T;
  for (int level = 1; level <= r; ++level) x = reverse_step(x, lab);
  return x;
}

IterationTower build_tower(double T, int k, Lab& lab) {
  if (k < 0) throw std::invalid_argument("build_tower: k must be >= 0");
  IterationTower tower;
  tower.base = T;
  tower.k = k;
  tower.levels.reserve(k + 1);
  tower.levels.push_back(T);
  for (int r = 1; r <= k; ++r)
    tower.levels.push_back(reverse_step(tower.levels.back(), lab));
  for (int r = 1; r <= k; ++r) {
    if (!(tower.levels[r] > tower.levels[r - 1]))
      throw numerical_error("build_tower: levels not strictly increasing");
    const double back = phi1(tower.levels[r], lab);
    if (std::abs(back - tower.levels[r - 1]) >
        lab.consts.root_tol * std::max(1.0, tower.levels[r - 1]))
      throw numerical_error("build_tower: inversion residual exceeds root_tol");
  }
  return tower;
}

std::int64_t prime_pi(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("prime_pi: x must be >= 0");
  if (x > 1e8) throw std::invalid_argument("prime_pi: sieve bound is 1e8");
  const auto n = static_cast<std::size_t>(std::floor(x));
  if (n < 2) return 0;
  std::vector<bool> composite(n + 1, false);
  std::int64_t count = 0;
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    ++count;
    for (std::size_t q = p * p; q <= n; q += p) composite[q] = true;
  }
  return count;
}

FunctionalReport tower_asymptotic_report(double T, int k, Lab& lab) {
  if (k < 1) throw std::invalid_argument("tower_asymptotic_report: k must be >= 1");
  const IterationTower tower = build_tower(T, k, lab);
  FunctionalReport report;
  report.name = "tower-asymptotics";
  report.c = lab.consts.c;
  report.c0 = lab.consts.c0;
  report.target = 1.0;
  report.cache_fingerprint = lab.cache.cfg_fingerprint;
  for (int r = 1; r <= k; ++r) {
    const double step = tower.levels[r] - tower.levels[r - 1];
    const double pi_r = static_cast<double>(prime_pi(tower.levels[r]));
    const double ratio = step / ((1.0 - lab.consts.c) * pi_r);
    report.grid.push_back(static_cast<double>(r));
    report.values.push_back(ratio);
    report.residuals.push_back(ratio - 1.0);
  }
  char note[128];
  std::snprintf(note, sizeof(note),
                "levels above base %.6g; finite-scale ratios, limit 1 not reachable",
                T);
  report.resolution_achieved = note;
  report.validate();
  return report;
}

C0Estimate estimate_c0(std::span<const double> delta_grid, Lab& lab) {
  if (delta_grid.size() < 1)
    throw std::invalid_argument("estimate_c0: empty delta grid");
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > 0.0))
      throw std::invalid_argument("estimate_c0: deltas must be positive");
    if (i > 0 && !(delta_grid[i] < delta_grid[i - 1]))
      throw std::invalid_argument("estimate_c0: deltas must decrease");
  }
  C0Estimate est;
  std::vector<double> deltas(delta_grid.begin(), delta_grid.end());
  for (double delta : deltas) {
    // Truncate where the envelope ln(t) e^{-2 delta t} integrates below ~5e-5.
    double t_cut = 10.0 / delta;
    t_cut = std::log(std::max(std::log(t_cut), 1.0) / (2.0 * delta * 5e-5)) /
            (2.0 * delta);
    const EvaluatorConfig cfg = lab.evaluator;
    const double d = delta;
    const double D = integrate_function(
        [&cfg, d](double t) {
          return hardy_Z(t, cfg).zeta_sq * std::exp(-2.0 * d * t);
        },
        0.0, t_cut, lab.quad);
    const double main_term =
        (lab.consts.c - std::log(4.0 * kPi * delta)) / (2.0 * std::sin(delta));
    est.remainders.push_back(D - main_term);
  }
  // Neville extrapolation of the remainders to delta = 0.
  std::vector<double> p = est.remainders;
  double prev_diag = p[0];
  double diag = p[0];
  for (std::size_t m = 1; m < p.size(); ++m) {
    for (std::size_t i = 0; i + m < p.size(); ++i) {
      p[i] = (-deltas[i + m] * p[i] + deltas[i] * p[i + 1]) /
             (deltas[i] - deltas[i + m]);
    }
    prev_diag = diag;
    diag = p[0];
  }
  est.value = diag;
  est.low_confidence = deltas.size() < 2 ||
                       std::abs(diag - prev_diag) >
                           0.1 * std::max(1e-12, std::abs(diag));
  return est;
}

}  // namespace zll
