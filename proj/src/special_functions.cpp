#include "zll/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "zll/constants.hpp"
#include "rs_coefficients.hpp"

namespace zll {
namespace {

// B_{2k}/(2k(2k-1)) for the Stirling series of log Gamma.
constexpr double kStirling[] = {
    1.0 / 12.0,   -1.0 / 360.0,      1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
};

// B_{2k}/(2k)! for the Euler-Maclaurin tail, k = 1..15.
constexpr double kEmCoef[] = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.2044840173323944e23,
    8553103.0 / 6.0 / 4.0329146112660565e26,
    -23749461029.0 / 870.0 / 3.0488834461171386e29,
    8615841276005.0 / 14322.0 / 2.6525285981219106e32,
};
constexpr int kEmCoefCount = static_cast<int>(sizeof(kEmCoef) / sizeof(kEmCoef[0]));

const double* rs_table(int j) {
  static const double* tables[5] = {detail::kRsC0, detail::kRsC1, detail::kRsC2,
                                    detail::kRsC3, detail::kRsC4};
  return tables[j];
}

// sup |C_j| on [-1,1], bounded by the l1 norm of the Taylor table.
double rs_table_sup(int j) {
  static const auto sup = [] {
    std::array<double, 5> v{};
    for (int i = 0; i < 5; ++i) {
      double s = 0.0;
      for (int k = 0; k < detail::kRsSeriesLen; ++k) s += std::abs(rs_table(i)[k]);
      v[i] = s;
    }
    return v;
  }();
  return sup[j];
}

double eval_rs_series(const double* coeffs, double z) {
  double s = 0.0;
  for (int k = detail::kRsSeriesLen - 1; k >= 0; --k) s = s * z + coeffs[k];
  return s;
}

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Euler-Maclaurin evaluation of zeta(1/2 + it); fills an error estimate from
// the first omitted Bernoulli term.
std::complex<double> zeta_em(double t, int em_terms, double* err_out) {
  const std::complex<double> s(0.5, t);
  const int n_sum = std::max(32, static_cast<int>(std::ceil(0.75 * t)));
  KahanSum re, im;
  for (int n = 1; n < n_sum; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    re.add(amp * std::cos(t * ln));
    im.add(-amp * std::sin(t * ln));
  }
  const double lnN = std::log(static_cast<double>(n_sum));
  const std::complex<double> n_pow_ms =
      (1.0 / std::sqrt(static_cast<double>(n_sum))) *
      std::complex<double>(std::cos(t * lnN), -std::sin(t * lnN));
  std::complex<double> total(re.sum, im.sum);
  total += 0.5 * n_pow_ms;
  total += n_pow_ms * static_cast<double>(n_sum) / (s - 1.0);

  // Bernoulli tail: term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  std::complex<double> poch = s;
  std::complex<double> npow = n_pow_ms / static_cast<double>(n_sum);  // N^{-s-1}
  const double inv_n2 = 1.0 / (static_cast<double>(n_sum) * n_sum);
  for (int k = 1; k <= em_terms; ++k) {
    if (k > 1) {
      poch *= (s + std::complex<double>(2.0 * k - 3.0, 0.0)) *
              (s + std::complex<double>(2.0 * k - 2.0, 0.0));
      npow *= inv_n2;
    }
    total += kEmCoef[k - 1] * poch * npow;
  }
  if (err_out) {
    const int K = em_terms;
    const std::complex<double> poch_next =
        poch * (s + std::complex<double>(2.0 * K - 1.0, 0.0)) *
        (s + std::complex<double>(2.0 * K, 0.0));
    const double next_coef = (K < kEmCoefCount) ? std::abs(kEmCoef[K])
                                                : std::abs(kEmCoef[kEmCoefCount - 1]);
    const double next = next_coef * std::abs(poch_next) * std::abs(npow) * inv_n2;
    const double infl = std::abs(s + std::complex<double>(2.0 * K + 1.0, 0.0)) /
                        (0.5 + 2.0 * K + 1.0);
    *err_out = next * infl + 1e-15 * (1.0 + std::sqrt(static_cast<double>(n_sum)));
  }
  return total;
}

}  // namespace

void EvaluatorConfig::validate() const {
  if (rs_correction_terms < 0 || rs_correction_terms > 4)
    throw std::invalid_argument("rs_correction_terms must be in [0, 4]");
  if (!(method_switch_t > 0.0))
    throw std::invalid_argument("method_switch_t must be > 0");
  if (em_terms < 1 || em_terms > kEmCoefCount)
    throw std::invalid_argument("em_terms out of range");
  if (!(target_abs_error > 0.0))
    throw std::invalid_argument("target_abs_error must be > 0");
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() <= 0.0 && z.imag() == 0.0)
    throw std::domain_error("log_gamma: nonpositive real argument");
  std::complex<double> shift(0.0, 0.0);
  while (std::abs(z) < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const std::complex<double> lz = std::log(z);
  std::complex<double> res = (z - 0.5) * lz - z + 0.5 * kLnTwoPi;
  const std::complex<double> w = 1.0 / (z * z);
  std::complex<double> zp = 1.0 / z;
  for (double coeff : kStirling) {
    res += coeff * zp;
    zp *= w;
  }
  return res - shift;
}

double theta_exact(double t) {
  if (t < 0.0) throw std::domain_error("theta_exact: t must be >= 0");
  const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
  return lg.imag() - 0.5 * t * std::log(kPi);
}

double riemann_siegel_theta(double t) {
  if (!(t >= 1.0))
    throw std::domain_error("riemann_siegel_theta: requires t >= 1");
  const double u = t / kTwoPi;
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  const double tail =
      inv * (1.0 / 48.0 +
             inv2 * (7.0 / 5760.0 +
                     inv2 * (31.0 / 80640.0 + inv2 * 127.0 / 430080.0)));
  return 0.5 * t * std::log(u) - 0.5 * t - kPi / 8.0 + tail;
}

CriticalLineSample hardy_Z(double t, const EvaluatorConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) throw std::domain_error("hardy_Z: requires t > 0");

  CriticalLineSample out;
  out.t = t;

  if (t < cfg.method_switch_t) {
    double em_err = 0.0;
    const std::complex<double> zeta = zeta_em(t, cfg.em_terms, &em_err);
    const double theta = theta_exact(t);
    const std::complex<double> rotated =
        zeta * std::complex<double>(std::cos(theta), std::sin(theta));
    out.theta = theta;
    out.z = rotated.real();
    // Z is real: the residual imaginary part is a direct rounding witness.
    // Rounding floor: the summand phases are of size t ln n, so their ulps
    // propagate through the cosines at that scale.
    const double n_sum = std::max(32.0, std::ceil(0.75 * t));
    const double phase_fp =
        5e-16 * t * std::log(n_sum + 1.0) * 2.0 * std::sqrt(n_sum);
    out.err_bound =
        em_err + std::abs(rotated.imag()) + phase_fp + 1e-15 * (1.0 + t);
  } else {
    const double theta = riemann_siegel_theta(t);
    const double a = std::sqrt(t / kTwoPi);
    const int n_main = static_cast<int>(a);
    KahanSum main;
    double amp_sum = 0.0;
    for (int n = 1; n <= n_main; ++n) {
      const double amp = 1.0 / std::sqrt(static_cast<double>(n));
      main.add(amp * std::cos(theta - t * std::log(static_cast<double>(n))));
      amp_sum += amp;
    }
    const double p = a - n_main;
    const double zv = 2.0 * p - 1.0;
    double corr = 0.0;
    double apow = 1.0;
    for (int j = 0; j <= cfg.rs_correction_terms; ++j) {
      corr += eval_rs_series(rs_table(j), zv) * apow;
      apow /= a;
    }
    const double sign = (n_main % 2 == 0) ? -1.0 : 1.0;  // (-1)^(N-1)
    out.theta = theta;
    out.z = 2.0 * main.sum + sign * corr / std::sqrt(a);

    // First omitted correction term (empirical envelope past the last table),
    // doubled for the rest of the tail, plus a rounding floor driven by the
    // phase magnitude theta - t ln n at which the cosines are evaluated.
    const int k = cfg.rs_correction_terms;
    const double next_sup = (k < 4) ? rs_table_sup(k + 1) : 5e-4;
    const double phase_scale =
        std::abs(theta) + t * std::log(static_cast<double>(n_main) + 1.0);
    const double phase_fp = 1e-15 * phase_scale * (1.0 + amp_sum);
    out.err_bound = 2.0 * next_sup * std::pow(a, -(2.0 * k + 3.0) / 2.0) +
                    phase_fp + 1e-15 * (1.0 + t);
  }

  out.zeta_sq = out.z * out.z;
  out.accuracy_warning = out.err_bound > cfg.target_abs_error;
  return out;
}

std::vector<CriticalLineSample> zeta_sq_batch(std::span<const double> ts,
                                              const EvaluatorConfig& cfg) {
  cfg.validate();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0))
      throw std::invalid_argument("zeta_sq_batch: ordinates must be > 0");
    if (i > 0 && !(ts[i] > ts[i - 1]))
      throw std::invalid_argument(
          "zeta_sq_batch: ordinates must be strictly increasing");
  }
  std::vector<CriticalLineSample> out(ts.size());
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>({hw, 8, 1 + ts.size() / 512});
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = hardy_Z(ts[i], cfg);
    return out;
  }
  std::vector<std::thread> workers;
  const std::size_t chunk = (ts.size() + n_threads - 1) / n_threads;
  for (std::size_t w = 0; w < n_threads; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(ts.size(), lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&out, &ts, &cfg, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = hardy_Z(ts[i], cfg);
    });
  }
  for (auto& th : workers) th.join();
  return out;
}

}  // namespace zll
