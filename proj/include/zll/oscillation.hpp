#pragma once

#include <utility>
#include <vector>

#include "zll/quadrature.hpp"
#include "zll/special_functions.hpp"

namespace zll {

// One sign-definite stretch of ln t - Z(t)^2: +1 where ln t > Z^2,
// -1 where ln t <= Z^2.
struct SignedSegment {
  double a = 0.0;
  double b = 0.0;
  int sign = 0;
};

// Alternating tiling of (0, T] by the sign of ln t - Z(t)^2. The leading
// segment is always negative: on (0, 1], ln t <= 0 <= Z^2.
struct SignedPartition {
  double upper = 0.0;
  std::vector<double> crossings;
  std::vector<SignedSegment> segments;
  // Ordinates where |ln t - Z^2| dips below the tangency threshold without a
  // sign change; diagnostics, not crossings.
  std::vector<double> tangential_warnings;

  void validate() const;  // tiling, alternation, crossing/segment coherence
};

// Sign changes of f(t) = ln t - Z(t)^2 on (a, b), refined by bisection to
// width < 1e-8. Sampling step = min(resolution, half mean zero spacing).
// Near-touches are appended to `warnings` when given.
std::vector<double> find_crossings(double a, double b,
                                   const EvaluatorConfig& cfg,
                                   double resolution,
                                   std::vector<double>* warnings = nullptr);

// Partition of (0, T]; scanning starts at t = 1, the (0, 1] sign is analytic.
SignedPartition build_partition(double T, const EvaluatorConfig& cfg,
                                double resolution = 0.05);

struct SignedAreas {
  double plus = 0.0;   // integral over + segments of (ln t - Z^2)
  double minus = 0.0;  // integral over - segments of (Z^2 - ln t)
};

// Both areas are >= 0 and plus - minus telescopes to J1(upper); the ln part
// uses the exact antiderivative t ln t - t (finite at 0), the Z^2 part the
// shared cache.
SignedAreas signed_areas(const SignedPartition& partition,
                         const EvaluatorConfig& cfg,
                         const QuadratureSpec& spec, IntegralCache& cache);

// Local maxima of |Z| on (e, T] exceeding exp(ln^alpha t), by t ascending,
// at most threshold_count entries. alpha must lie in (0, 1/2).
std::vector<std::pair<double, double>> omega_witnesses(
    double T, double alpha, int threshold_count, const EvaluatorConfig& cfg);

// Partition audit: Z^2 >= ln t must hold on sampled points of - segments
// (t > 1), and the reversed inequality on + segments.
struct AuditReport {
  bool passed = false;
  int points_checked = 0;
  double worst_margin = 0.0;  // most negative observed margin
  std::string detail;
};
AuditReport minus_set_bound_check(const SignedPartition& partition,
                                  const EvaluatorConfig& cfg);

}  // namespace zll
