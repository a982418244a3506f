#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zll/constants.hpp"
#include "zll/quadrature.hpp"
#include "zll/report.hpp"

namespace zll {

// Constants of the ladder equation J(T) = phi ln phi + (c - ln 2pi) phi + c0.
struct LadderConstants {
  double c = kEulerGamma;
  double ln2pi = kLnTwoPi;
  // Additive constant of the ladder equation; default produced by one
  // estimate_c0 run (delta grid {0.05, 0.02, 0.01}) and pinned here.
  double c0 = kDefaultC0;
  double root_tol = 1e-9;  // relative tolerance for implicit solves

  void validate() const;  // ln2pi - 2c > 0, root_tol in (0, 1e-6]
};

// Shared workbench: evaluator + quadrature settings, ladder constants, and
// the one integral cache everything reads through.
struct Lab {
  EvaluatorConfig evaluator{};
  QuadratureSpec quad{};
  LadderConstants consts{};
  IntegralCache cache{};

  std::uint64_t fingerprint() const {
    return config_fingerprint(evaluator, quad);
  }
};

// Reverse-iterate tower above base: levels[r] is the r-fold preimage of T
// under phi1, levels[0] = T.
struct IterationTower {
  double base = 0.0;
  std::vector<double> levels;
  int k = 0;
};

// The ladder: unique phi >= 2 with g(phi) = J(T) - c0 where
// g(phi) = phi ln phi + (c - ln2pi) phi (strictly increasing there).
// Requires T >= 10.
double phi1(double T, Lab& lab);

// k-fold composition phi1(phi1(...)); k = 0 is the identity.
double phi1_direct_iter(double t, int k, Lab& lab);

// r-fold preimage: solves J(rT) = g(T') + c0 level by level; r = 0 returns T.
double reverse_iter(double T, int r, Lab& lab);

// Tower of reverse iterates with both invariants (strict increase, inversion
// residual within root_tol) validated.
IterationTower build_tower(double T, int k, Lab& lab);

// Exact prime count via sieve; x <= 1e8.
std::int64_t prime_pi(double x);

// Per-level ratios (rT - r-1T) / ((1-c) * pi(rT)), expected to drift toward 1.
FunctionalReport tower_asymptotic_report(double T, int k, Lab& lab);

// Laplace-transform estimate of the additive constant: evaluates
// D(delta) = integral_0^inf Z^2 e^{-2 delta t} dt on the delta grid,
// subtracts the classical main term (c - ln(4 pi delta)) / (2 sin delta),
// and extrapolates the remainder to delta -> 0.
struct C0Estimate {
  double value = 0.0;
  bool low_confidence = false;   // successive estimates spread > 10%
  std::vector<double> remainders;  // per-delta remainder D - main term
};
C0Estimate estimate_c0(std::span<const double> delta_grid, Lab& lab);

}  // namespace zll
