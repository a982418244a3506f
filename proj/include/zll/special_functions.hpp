#pragma once

#include <complex>
#include <span>
#include <vector>

namespace zll {

// Parameters of the critical-line evaluator.
struct EvaluatorConfig {
  // Highest Riemann-Siegel correction term used (0 -> C0 only, ... 4 -> C0..C4).
  int rs_correction_terms = 3;
  // Below this ordinate Z(t) is evaluated by Euler-Maclaurin summation of
  // zeta(1/2+it) with the exact theta; at or above it by the Riemann-Siegel
  // main sum plus correction terms. 400 is where the Riemann-Siegel tail
  // bound with the default correction depth drops below target_abs_error.
  double method_switch_t = 400.0;
  // Number of Euler-Maclaurin correction terms (Bernoulli terms).
  int em_terms = 12;
  // Requested absolute error for Z(t); exceeding it sets the warning flag.
  double target_abs_error = 1e-6;

  void validate() const;  // throws std::invalid_argument
};

// One evaluation of the critical line at ordinate t.
struct CriticalLineSample {
  double t = 0.0;
  double theta = 0.0;     // Riemann-Siegel theta(t)
  double z = 0.0;         // Hardy Z(t)
  double zeta_sq = 0.0;   // |zeta(1/2+it)|^2 = Z(t)^2
  double err_bound = 0.0; // evaluator's absolute error estimate for z
  bool accuracy_warning = false;  // err_bound > cfg.target_abs_error
};

// theta(t) from the asymptotic expansion; requires t >= 1, abs error < 1e-10
// for t >= 10.
double riemann_siegel_theta(double t);

// theta(t) from the log-Gamma definition, valid down to t = 0.
double theta_exact(double t);

// log Gamma on the right half plane (principal branch).
std::complex<double> log_gamma(std::complex<double> z);

// Hardy Z(t) with method selection per cfg; t > 0 (tiny t follows the
// Euler-Maclaurin path and tends to zeta(1/2)).
CriticalLineSample hardy_Z(double t, const EvaluatorConfig& cfg);

// Element-wise hardy_Z over a strictly increasing grid; results are
// bit-identical to scalar calls. Work is split across threads for large
// batches with deterministic output ordering.
std::vector<CriticalLineSample> zeta_sq_batch(std::span<const double> ts,
                                              const EvaluatorConfig& cfg);

}  // namespace zll
