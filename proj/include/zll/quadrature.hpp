#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "zll/special_functions.hpp"

namespace zll {

// Panel quadrature parameters.
struct QuadratureSpec {
  double abs_tol = 1e-6;    // absolute error target per unit length
  int panel_rule = 15;      // Gauss-Legendre nodes per panel (>= 7)
  int refinement_limit = 12;  // max bisection depth per panel

  void validate() const;  // throws std::invalid_argument
};

// Checkpointed cumulative second moment: cumulative[i] holds
// integral_0^{i*grid_step} Z(t)^2 dt. The prefix always starts at t = 0, so
// every cached value is a checkpoint of the same monotone function and
// segment values are prefix differences (shared panels cancel exactly).
struct IntegralCache {
  double grid_step = 1.0;
  std::uint64_t cfg_fingerprint = 0;  // 0 = not yet bound to a config
  std::vector<double> cumulative;

  std::size_t checkpoint_count() const { return cumulative.size(); }
  bool empty() const { return cumulative.empty(); }
  // Largest cached ordinate (0 when empty).
  double covered_t() const {
    return cumulative.empty() ? 0.0
                              : grid_step * static_cast<double>(cumulative.size() - 1);
  }
  void clear() { cumulative.clear(); }
};

// FNV-1a over the evaluator settings and the quadrature tolerance; caches
// built under different fingerprints never mix.
std::uint64_t config_fingerprint(const EvaluatorConfig& cfg,
                                 const QuadratureSpec& spec);

// Adaptive Gauss-Legendre integration of an arbitrary integrand on [a, b]
// (panels bisected until the per-panel estimate meets abs_tol * length).
// Throws numerical_error if the refinement limit is exhausted.
double integrate_function(const std::function<double(double)>& f, double a,
                          double b, const QuadratureSpec& spec);

// integral_a^b Z(t)^2 dt through the checkpoint cache; extends the cache to
// cover [0, b] on first use. 0 <= a < b required.
double integrate_abs_zeta_sq(double a, double b, const EvaluatorConfig& cfg,
                             const QuadratureSpec& spec, IntegralCache& cache);

// J(T) = integral_0^T Z(t)^2 dt.
double hardy_littlewood_J(double T, const EvaluatorConfig& cfg,
                          const QuadratureSpec& spec, IntegralCache& cache);

// J1(T) = T ln T - T - J(T)  (the log-vs-second-moment balance; the
// integrable log singularity at 0 is absorbed analytically).
double log_modified_J1(double T, const EvaluatorConfig& cfg,
                       const QuadratureSpec& spec, IntegralCache& cache);

// CSV persistence: header "# fingerprint=<hex>", then "t,J" rows with t
// ascending at 17 significant digits. Loading verifies the fingerprint
// against `expected` (pass 0 to accept any; allow_mismatch downgrades the
// conflict to adopting the file's own fingerprint).
void cache_save(const IntegralCache& cache, const std::filesystem::path& path);
IntegralCache cache_load(const std::filesystem::path& path,
                         std::uint64_t expected, bool allow_mismatch = false);

}  // namespace zll
