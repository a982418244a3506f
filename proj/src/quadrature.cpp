#include "zll/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "zll/constants.hpp"
#include "zll/errors.hpp"

namespace zll {
namespace {

struct GLRule {
  std::vector<double> x;  // nodes on (-1, 1)
  std::vector<double> w;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
GLRule make_gl_rule(int n) {
  GLRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = -p0 / pp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

const GLRule& gl_rule(int n) {
  static std::mutex mu;
  static std::map<int, GLRule> rules;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, make_gl_rule(n)).first;
  return it->second;
}

double gl_panel(const std::function<double(double)>& f, double a, double b,
                const GLRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    sum += rule.w[i] * f(mid + half * rule.x[i]);
  return sum * half;
}

double adapt_panel(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec, const GLRule& rule, int depth) {
  const double whole = gl_panel(f, a, b, rule);
  const double mid = 0.5 * (a + b);
  const double left = gl_panel(f, a, mid, rule);
  const double right = gl_panel(f, mid, b, rule);
  const double refined = left + right;
  const double err = std::abs(whole - refined);
  if (err <= spec.abs_tol * (b - a) || (b - a) < 1e-12) return refined;
  if (depth >= spec.refinement_limit) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "quadrature refinement limit %d exhausted on [%.6g, %.6g]; "
                  "achieved error estimate %.3e (target %.3e)",
                  spec.refinement_limit, a, b, err, spec.abs_tol * (b - a));
    throw numerical_error(msg);
  }
  return adapt_panel(f, a, mid, spec, rule, depth + 1) +
         adapt_panel(f, mid, b, spec, rule, depth + 1);
}

// Base panel length tied to the local oscillation scale: about half the mean
// zero spacing, clamped to 1 (and to 1 below the first zero region where the
// log is small or negative).
double panel_len(double t) {
  const double lg = (t > 0.0) ? std::log(t / kTwoPi) : -1.0;
  return std::min(1.0, kPi / std::max(1.0, lg));
}

// Deterministic panel walk over [a, b]: layout depends only on (a, b).
double integrate_range(const std::function<double(double)>& f, double a,
                       double b, const QuadratureSpec& spec, const GLRule& rule) {
  double total = 0.0;
  double t = a;
  while (t < b) {
    const double next = std::min(b, t + panel_len(t));
    total += adapt_panel(f, t, next, spec, rule, 0);
    if (next == t) break;  // paranoia against FP stagnation
    t = next;
  }
  return total;
}

void fnv1a_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

template <typename T>
void fnv1a_value(std::uint64_t& h, T v) {
  fnv1a_mix(h, &v, sizeof(v));
}

std::function<double(double)> zeta_sq_fn(const EvaluatorConfig& cfg) {
  return [cfg](double t) { return hardy_Z(t, cfg).zeta_sq; };
}

// Extends the cumulative checkpoint prefix to cover index `idx_needed`.
// Cell integrals are independent (computed in parallel for long extensions);
// the prefix sum is sequential and deterministic.
void ensure_cached(IntegralCache& cache, std::size_t idx_needed,
                   const EvaluatorConfig& cfg, const QuadratureSpec& spec) {
  if (cache.cumulative.empty()) cache.cumulative.push_back(0.0);
  const std::size_t have = cache.cumulative.size() - 1;
  if (idx_needed <= have) return;

  const std::size_t n_cells = idx_needed - have;
  std::vector<double> cells(n_cells);
  const auto f = zeta_sq_fn(cfg);
  const GLRule& rule = gl_rule(spec.panel_rule);
  const double step = cache.grid_step;

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double a = step * static_cast<double>(have + i);
      const double b = step * static_cast<double>(have + i + 1);
      cells[i] = integrate_range(f, a, b, spec, rule);
    }
  };

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>({hw, 8, 1 + n_cells / 64});
  if (n_threads <= 1) {
    work(0, n_cells);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (n_cells + n_threads - 1) / n_threads;
    for (std::size_t w = 0; w < n_threads; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(n_cells, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back(work, lo, hi);
    }
    for (auto& th : workers) th.join();
  }

  cache.cumulative.reserve(idx_needed + 1);
  for (std::size_t i = 0; i < n_cells; ++i)
    cache.cumulative.push_back(cache.cumulative.back() + cells[i]);
}

void bind_fingerprint(IntegralCache& cache, const EvaluatorConfig& cfg,
                      const QuadratureSpec& spec) {
  const std::uint64_t fp = config_fingerprint(cfg, spec);
  if (cache.cfg_fingerprint == 0 && cache.empty()) {
    cache.cfg_fingerprint = fp;
    return;
  }
  if (cache.cfg_fingerprint != fp) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "cache fingerprint %016llx does not match current config %016llx",
                  static_cast<unsigned long long>(cache.cfg_fingerprint),
                  static_cast<unsigned long long>(fp));
    throw cache_conflict_error(msg);
  }
}

// Cumulative value at an arbitrary ordinate: checkpoint prefix plus a short
// deterministic tail from the last checkpoint at or below x.
double cumulative_at(double x, const EvaluatorConfig& cfg,
                     const QuadratureSpec& spec, IntegralCache& cache) {
  if (x <= 0.0) return 0.0;
  const double step = cache.grid_step;
  const auto idx = static_cast<std::size_t>(std::floor(x / step));
  ensure_cached(cache, idx, cfg, spec);
  const double base_t = step * static_cast<double>(idx);
  double value = cache.cumulative[idx];
  if (x > base_t)
    value += integrate_range(zeta_sq_fn(cfg), base_t, x, spec,
                             gl_rule(spec.panel_rule));
  return value;
}

std::string format_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
  if (panel_rule < 7) throw std::invalid_argument("panel_rule must be >= 7");
  if (refinement_limit < 1)
    throw std::invalid_argument("refinement_limit must be >= 1");
}

std::uint64_t config_fingerprint(const EvaluatorConfig& cfg,
                                 const QuadratureSpec& spec) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
  fnv1a_value(h, static_cast<std::int64_t>(cfg.rs_correction_terms));
  fnv1a_value(h, cfg.method_switch_t);
  fnv1a_value(h, static_cast<std::int64_t>(cfg.em_terms));
  fnv1a_value(h, cfg.target_abs_error);
  fnv1a_value(h, spec.abs_tol);
  fnv1a_value(h, static_cast<std::int64_t>(spec.panel_rule));
  fnv1a_value(h, static_cast<std::int64_t>(spec.refinement_limit));
  if (h == 0) h = 1;  // 0 is reserved for "unbound"
  return h;
}

double integrate_function(const std::function<double(double)>& f, double a,
                          double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("integrate_function: requires a < b");
  return integrate_range(f, a, b, spec, gl_rule(spec.panel_rule));
}

double integrate_abs_zeta_sq(double a, double b, const EvaluatorConfig& cfg,
                             const QuadratureSpec& spec, IntegralCache& cache) {
  cfg.validate();
  spec.validate();
  if (!(a >= 0.0) || !(b > a))
    throw std::invalid_argument("integrate_abs_zeta_sq: requires 0 <= a < b");
  bind_fingerprint(cache, cfg, spec);
  const double upper = cumulative_at(b, cfg, spec, cache);
  const double lower = cumulative_at(a, cfg, spec, cache);
  return upper - lower;
}

double hardy_littlewood_J(double T, const EvaluatorConfig& cfg,
                          const QuadratureSpec& spec, IntegralCache& cache) {
  cfg.validate();
  spec.validate();
  if (!(T > 0.0)) throw std::invalid_argument("hardy_littlewood_J: requires T > 0");
  bind_fingerprint(cache, cfg, spec);
  return cumulative_at(T, cfg, spec, cache);
}

double log_modified_J1(double T, const EvaluatorConfig& cfg,
                       const QuadratureSpec& spec, IntegralCache& cache) {
  const double j = hardy_littlewood_J(T, cfg, spec, cache);
  return T * std::log(T) - T - j;
}

void cache_save(const IntegralCache& cache, const std::filesystem::path& path) {
  // An unstamped empty cache records nothing; writing it would only poison
  // later loads with a zero fingerprint.
  if (cache.cfg_fingerprint == 0 && cache.empty()) return;
  std::ofstream out(path, std::ios::binary);  // binary: stable newlines
  if (!out)
    throw std::runtime_error("cache_save: cannot open " + path.string());
  char head[40];
  std::snprintf(head, sizeof(head), "# fingerprint=%016llx\n",
                static_cast<unsigned long long>(cache.cfg_fingerprint));
  out << head;
  for (std::size_t i = 0; i < cache.cumulative.size(); ++i) {
    out << format_17(cache.grid_step * static_cast<double>(i)) << ','
        << format_17(cache.cumulative[i]) << '\n';
  }
  if (!out) throw std::runtime_error("cache_save: write failed for " + path.string());
}

IntegralCache cache_load(const std::filesystem::path& path,
                         std::uint64_t expected, bool allow_mismatch) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw cache_conflict_error("cache_load: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# fingerprint=", 0) != 0)
    throw cache_conflict_error("cache_load: missing fingerprint header in " +
                               path.string());
  IntegralCache cache;
  const char* hex = line.c_str() + std::strlen("# fingerprint=");
  char* hex_end = nullptr;
  cache.cfg_fingerprint = std::strtoull(hex, &hex_end, 16);
  if (hex_end != hex + 16 || *hex_end != '\0')
    throw cache_conflict_error("cache_load: malformed fingerprint in " +
                               path.string());
  std::vector<double> ts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw cache_conflict_error("cache_load: malformed row in " + path.string());
    const std::string left = line.substr(0, comma);
    char* t_end = nullptr;
    char* j_end = nullptr;
    const double t_val = std::strtod(left.c_str(), &t_end);
    const double j_val = std::strtod(line.c_str() + comma + 1, &j_end);
    if (t_end == left.c_str() || *t_end != '\0' ||
        j_end == line.c_str() + comma + 1 || *j_end != '\0' ||
        !std::isfinite(t_val) || !std::isfinite(j_val))
      throw cache_conflict_error("cache_load: malformed row in " + path.string());
    ts.push_back(t_val);
    cache.cumulative.push_back(j_val);
  }
  if (!ts.empty()) {
    if (ts.front() != 0.0 || cache.cumulative.front() != 0.0)
      throw cache_conflict_error("cache_load: prefix must start at t=0, J=0");
    cache.grid_step = (ts.size() >= 2) ? ts[1] - ts[0] : 1.0;
    if (!(cache.grid_step > 0.0))
      throw cache_conflict_error("cache_load: non-increasing grid");
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (std::abs(ts[i] - cache.grid_step * static_cast<double>(i)) >
          1e-9 * (1.0 + ts[i]))
        throw cache_conflict_error("cache_load: grid not contiguous from 0");
      if (cache.cumulative[i] < cache.cumulative[i - 1])
        throw cache_conflict_error("cache_load: cumulative values decrease");
    }
  }
  if (expected != 0 && cache.cfg_fingerprint != expected && !allow_mismatch) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "cache file fingerprint %016llx conflicts with expected %016llx",
                  static_cast<unsigned long long>(cache.cfg_fingerprint),
                  static_cast<unsigned long long>(expected));
    throw cache_conflict_error(msg);
  }
  return cache;
}

}  // namespace zll
