#pragma once

#include <cstdint>
#include <vector>

#include "zll/ladder.hpp"
#include "zll/oscillation.hpp"
#include "zll/report.hpp"

namespace zll {

// (x^n + y^n) / z^n with 1 <= x <= y, z >= 1, n >= 3. Kept as integers so
// membership tests near 1 are exact.
struct FermatRational {
  long long x = 1, y = 1, z = 1, n = 3;

  double value() const;  // the rational as a double (may round)
  void validate() const;
};

// ---- residual and limit functionals -----------------------------------
// All of them read J / J1 through lab.cache, so the algebraic identities
// linking them hold to machine precision.

// L(T, r) = J1(T') - integral_{T'}^{rT} Z^2 - (ln2pi - 1 - c) T' + c0,
// with T' the (r-1)-th reverse iterate of T; tends to 0.
double lemma1_residual(double T, int r, Lab& lab);

// integral_{T'}^{rT} Z^2 dt, the almost-linear segment (compare (1-c) T').
double increment_integral(double T, int r, Lab& lab);

// J1(rho) - (ln2pi - 2c) rho.
double lemma2_residual(double rho, Lab& lab);

// (1/tau) J1(x tau / (ln2pi - 2c)); tends to x. Inner argument must be >= 10.
double scaled_limit_functional(double x, double tau, Lab& lab);

// scaled_limit_functional at x = fr.value (bit-exact delegation).
double fermat_functional(const FermatRational& fr, double tau, Lab& lab);

// area_plus(T') - area_minus(T') - integral_{T'}^{rT} Z^2
//   - (ln2pi - 1 - c) T'; tends to -c0.
double conservation_law_residual(double T, int r, Lab& lab,
                                 double resolution = 0.05);

// Segment balance over (T', rT]: segment area_plus - segment area_minus
//   + integral_{T'}^{rT} Z^2 - integral_{rT}^{(r+1)T} Z^2
//   - (ln2pi - 1 - c)(rT - T'); tends to 0.
double zero_limit_law_residual(double T, int r, Lab& lab,
                               double resolution = 0.05);

// (1/tau) integral_a^{1a} Z^2 with a = x tau / (1 - c) and 1a its first
// reverse iterate; tends to x.
double formula_4_1_functional(double x, double tau, Lab& lab);

// scaled((N+1)x, tau) - scaled(x, tau), computed literally as that
// difference so the telescoping identity is exact; tends to N x. N >= 1.
double segment_limit_functional(double x, int N, double tau, Lab& lab);

// All Fermat rationals with n in [3, n_max], x <= y <= z <= z_max whose
// value lies in (1 - eps, 1 + eps); exact integer classification.
std::vector<FermatRational> enumerate_fermat_rationals(double epsilon,
                                                       int n_max,
                                                       long long z_max);

// segment_limit_functional over every rational in the window shrunk to
// eps / N; reports each value's distance from N.
FunctionalReport localized_scan(double epsilon, int N, int n_max,
                                long long z_max, double tau, Lab& lab);

// Report assembly helper shared by the CLI: residuals = values - target,
// resolution_achieved derived from the residual trend.
FunctionalReport make_report(std::string name, std::vector<double> grid,
                             std::vector<double> values, double target,
                             Lab& lab);

}  // namespace zll
