#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include <zll/constants.hpp>
#include <zll/errors.hpp>
#include <zll/quadrature.hpp>

#include "oracle.hpp"

namespace {

using oracle::Frozen;
namespace fs = std::filesystem;

// Externally computed 25-digit value, frozen.
constexpr double kJ1000 = 5212.50776333778246;

struct Bench {
  zll::EvaluatorConfig cfg{};
  zll::QuadratureSpec spec{};
  zll::IntegralCache cache{};

  double J(double T) { return zll::hardy_littlewood_J(T, cfg, spec, cache); }
  double J1(double T) { return zll::log_modified_J1(T, cfg, spec, cache); }
  double seg(double a, double b) {
    return zll::integrate_abs_zeta_sq(a, b, cfg, spec, cache);
  }
};

fs::path temp_file(const char* stem) {
  return fs::temp_directory_path() / (std::string(stem) + ".csv");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("spec validation") {
  zll::QuadratureSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec = {};
  spec.abs_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = {};
  spec.panel_rule = 6;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = {};
  spec.refinement_limit = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("plain quadrature on a known integral") {
  zll::QuadratureSpec spec;
  const double s = zll::integrate_function(
      [](double x) { return std::sin(x); }, 0.0, zll::kPi, spec);
  CHECK(std::abs(s - 2.0) < 1e-12);
  CHECK_THROWS_AS(zll::integrate_function([](double) { return 1.0; }, 1.0, 1.0,
                                          spec),
                  std::invalid_argument);
}

TEST_CASE("refinement exhaustion reports a numerical error") {
  zll::QuadratureSpec strangled;
  strangled.abs_tol = 1e-300;
  strangled.refinement_limit = 1;
  CHECK_THROWS_AS(zll::integrate_function(
                      [](double x) { return std::exp(std::sin(7.0 * x)); }, 0.0,
                      3.0, strangled),
                  zll::numerical_error);
}

TEST_CASE("second moment against frozen values") {
  Bench b;
  CHECK(std::abs(b.J(1.0) - Frozen::int_Zsq_0_1) < 1e-8);
  CHECK(std::abs(b.J(10.0) - Frozen::J_10) < 1e-7);
  CHECK(std::abs(b.J(100.0) - Frozen::J_100) < 1e-5);
  CHECK(std::abs(b.J(1000.0) - kJ1000) < 1e-3);
}

TEST_CASE("short segments and degenerate input") {
  Bench b;
  const double z5 = zll::hardy_Z(5.0, b.cfg).zeta_sq;
  const double tiny = b.seg(5.0, 5.0 + 1e-9);
  CHECK(std::abs(tiny - z5 * 1e-9) < 1e-12 * (1.0 + std::abs(z5)));
  CHECK_THROWS_AS(b.seg(3.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(b.seg(-1.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(b.seg(4.0, 3.0), std::invalid_argument);
}

TEST_CASE("prefix additivity") {
  Bench b;
  const double whole = b.J(10.0);
  const double split = b.seg(0.0, 7.0) + b.seg(7.0, 10.0);
  CHECK(std::abs(whole - split) < 1e-9);  // shared checkpoints cancel exactly

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pick(0.0, 50.0);
  for (int i = 0; i < 8; ++i) {
    double a = pick(rng), c = pick(rng);
    if (a > c) std::swap(a, c);
    if (c - a < 1e-3) continue;
    const double m = 0.5 * (a + c);
    CHECK(std::abs(b.seg(a, c) - b.seg(a, m) - b.seg(m, c)) <
          b.spec.abs_tol * 50.0 * 4.0);
  }
}

TEST_CASE("monotone growth") {
  Bench b;
  double prev = 0.0;
  for (double T : {1.0, 5.0, 10.0, 50.0, 100.0}) {
    const double j = b.J(T);
    CHECK(j >= prev);
    prev = j;
  }
}

TEST_CASE("log modification identity and signs") {
  Bench b;
  for (double T : {1.0, 10.0, 100.0}) {
    const double lhs = b.J1(T) + b.J(T);
    const double rhs = T * std::log(T) - T;
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
  }
  // Below the mean-value crossover the moment dominates the logarithm.
  CHECK(b.J1(1.0) < 0.0);
  CHECK(std::abs(b.J1(1.0) - (-1.0 - Frozen::int_Zsq_0_1)) < 1e-7);
  // At height 1000 the balance has turned positive.
  CHECK(std::abs(b.J1(1000.0) - 695.24751564435459) < 1e-3);
}

TEST_CASE("asymptotic cross-check stays inside the envelope") {
  Bench b;
  for (double T : {100.0, 500.0, 1000.0}) {
    const double asym = T * std::log(T / zll::kTwoPi) +
                        (2.0 * zll::kEulerGamma - 1.0) * T;
    CHECK(std::abs(b.J(T) - asym) <= 5.0 * std::cbrt(T));
  }
}

TEST_CASE("repeated evaluation is bit-stable") {
  Bench b;
  const double first = b.J(123.456);
  const double second = b.J(123.456);
  CHECK(first == second);
  Bench fresh;  // same result from an empty cache
  CHECK(fresh.J(123.456) == first);
}

TEST_CASE("warm cache agrees with cold cache") {
  Bench cold;
  const double cold_v = cold.seg(3.0, 9.0);
  Bench warm;
  warm.J(20.0);  // prebuild checkpoints past the query
  const double warm_v = warm.seg(3.0, 9.0);
  CHECK(std::abs(cold_v - warm_v) < 2.0 * warm.spec.abs_tol * 6.0);
}

TEST_CASE("fingerprint separates configurations") {
  zll::EvaluatorConfig cfg;
  zll::QuadratureSpec spec;
  const auto base = zll::config_fingerprint(cfg, spec);
  CHECK(base != 0);

  auto cfg2 = cfg;
  cfg2.rs_correction_terms = 4;
  CHECK(zll::config_fingerprint(cfg2, spec) != base);
  auto spec2 = spec;
  spec2.abs_tol = 1e-4;
  CHECK(zll::config_fingerprint(cfg, spec2) != base);
}

TEST_CASE("cache rejects a foreign fingerprint") {
  zll::EvaluatorConfig cfg;
  zll::QuadratureSpec loose;
  loose.abs_tol = 1e-4;
  zll::IntegralCache cache;
  zll::hardy_littlewood_J(5.0, cfg, loose, cache);  // binds loose fingerprint

  zll::QuadratureSpec tight;  // default 1e-6
  CHECK_THROWS_AS(zll::hardy_littlewood_J(5.0, cfg, tight, cache),
                  zll::cache_conflict_error);
}

TEST_CASE("cache persistence round trip") {
  Bench b;
  b.J(12.0);
  const auto p = temp_file("zll_cache_roundtrip");
  zll::cache_save(b.cache, p);

  const auto loaded = zll::cache_load(p, b.cache.cfg_fingerprint);
  REQUIRE(loaded.checkpoint_count() == b.cache.checkpoint_count());
  CHECK(loaded.grid_step == b.cache.grid_step);
  for (std::size_t i = 0; i < loaded.cumulative.size(); ++i) {
    CHECK(loaded.cumulative[i] == b.cache.cumulative[i]);  // 17 digits round-trip
  }

  // Second save of the identical cache produces identical bytes.
  const auto p2 = temp_file("zll_cache_roundtrip2");
  zll::cache_save(loaded, p2);
  CHECK(slurp(p) == slurp(p2));
  fs::remove(p);
  fs::remove(p2);
}

TEST_CASE("cache load rejects conflicts and corruption") {
  Bench b;
  b.J(3.0);
  const auto p = temp_file("zll_cache_conflict");
  zll::cache_save(b.cache, p);

  CHECK_THROWS_AS(zll::cache_load(p, b.cache.cfg_fingerprint + 1),
                  zll::cache_conflict_error);
  const auto adopted = zll::cache_load(p, b.cache.cfg_fingerprint + 1,
                                       /*allow_mismatch=*/true);
  CHECK(adopted.cfg_fingerprint == b.cache.cfg_fingerprint);

  std::ofstream(p, std::ios::trunc) << "# fingerprint=zzzz\nnot,numbers\n";
  CHECK_THROWS_AS(zll::cache_load(p, 0), zll::cache_conflict_error);

  // A tampered prefix (non-monotone J) must not load.
  zll::cache_save(b.cache, p);
  auto text = slurp(p);
  zll::IntegralCache broken = b.cache;
  if (broken.cumulative.size() > 2) {
    broken.cumulative[1] = broken.cumulative.back() + 1.0;
    zll::cache_save(broken, p);
    CHECK_THROWS_AS(zll::cache_load(p, broken.cfg_fingerprint),
                    zll::cache_conflict_error);
  }
  fs::remove(p);
}

TEST_CASE("missing cache file raises the cache error") {
  CHECK_THROWS_AS(zll::cache_load("/nonexistent/zll/cache.csv", 0),
                  zll::cache_conflict_error);
}

TEST_CASE("saving an unstamped empty cache writes nothing") {
  // A lab that never walked a prefix integral holds a default cache; saving
  // it must not leave behind a zero-fingerprint file that later loads reject.
  zll::IntegralCache fresh;
  REQUIRE(fresh.cfg_fingerprint == 0);
  REQUIRE(fresh.empty());
  const auto p = temp_file("zll_cache_unstamped");
  zll::cache_save(fresh, p);
  CHECK(!fs::exists(p));

  // Once stamped (even with no checkpoints yet) the save goes through.
  zll::IntegralCache stamped;
  stamped.cfg_fingerprint = 0x1234;
  zll::cache_save(stamped, p);
  REQUIRE(fs::exists(p));
  const auto loaded = zll::cache_load(p, 0x1234);
  CHECK(loaded.cfg_fingerprint == 0x1234);
  CHECK(loaded.empty());
  fs::remove(p);
}
