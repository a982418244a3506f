#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <zll/constants.hpp>
#include <zll/errors.hpp>
#include <zll/ladder.hpp>
#include <zll/laws.hpp>
#include <zll/quadrature.hpp>

namespace {

// One lab per binary so every law reads the same integral cache.
zll::Lab& shared_lab() {
  static zll::Lab lab;
  return lab;
}

double J_of(double T, zll::Lab& lab) {
  return zll::hardy_littlewood_J(T, lab.evaluator, lab.quad, lab.cache);
}

double J1_of(double T, zll::Lab& lab) {
  return zll::log_modified_J1(T, lab.evaluator, lab.quad, lab.cache);
}

double g_of(double phi, const zll::LadderConstants& k) {
  return phi * std::log(phi) + (k.c - k.ln2pi) * phi;
}

bool contains(const std::vector<zll::FermatRational>& hits, long long x,
              long long y, long long z, long long n) {
  for (const auto& fr : hits)
    if (fr.x == x && fr.y == y && fr.z == z && fr.n == n) return true;
  return false;
}

long long ipow(long long b, long long e) {
  long long acc = 1;
  for (long long i = 0; i < e; ++i) acc *= b;
  return acc;
}

}  // namespace

TEST_CASE("fermat rational value and validation") {
  const zll::FermatRational fr{6, 8, 9, 3};
  CHECK(fr.value() == 728.0 / 729.0);
  CHECK_THROWS_AS((zll::FermatRational{0, 1, 1, 3}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((zll::FermatRational{1, 1, 0, 3}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((zll::FermatRational{1, 1, 1, 2}.validate()),
                  std::invalid_argument);
}

TEST_CASE("enumeration classifies dyadic boundaries exactly") {
  // 1/729 ~ 1.372e-3 sits between 2^-10 and 2^-9; both are exact doubles, so
  // the integer window test must flip between them.
  const auto wide = zll::enumerate_fermat_rationals(0.001953125, 3, 9);
  CHECK(contains(wide, 6, 8, 9, 3));
  CHECK(contains(wide, 1, 9, 9, 3));
  // 1/512 equals the half-width exactly; the window is open, so it is out.
  CHECK(!contains(wide, 1, 8, 8, 3));
  const auto narrow = zll::enumerate_fermat_rationals(0.0009765625, 3, 9);
  CHECK(!contains(narrow, 6, 8, 9, 3));

  for (const auto& fr : wide) {
    CHECK(std::abs(fr.value() - 1.0) < 0.001953125);
    CHECK(fr.value() != 1.0);
  }
  // Sorted by (n, z, y, x).
  for (std::size_t i = 1; i < wide.size(); ++i) {
    const auto& a = wide[i - 1];
    const auto& b = wide[i];
    CHECK(std::tuple(a.n, a.z, a.y, a.x) < std::tuple(b.n, b.z, b.y, b.x));
  }
}

TEST_CASE("enumeration agrees with a brute-force integer scan") {
  // value = 0.3 rounds below 3/10, and no ratio with z <= 16 can land in the
  // 1.9e-17 gap, so strict integer comparison against 3/10 is the same test.
  std::vector<zll::FermatRational> brute;
  for (long long n = 3; n <= 4; ++n)
    for (long long z = 1; z <= 16; ++z)
      for (long long y = 1; y <= z; ++y)
        for (long long x = 1; x <= y; ++x) {
          const long long num = ipow(x, n) + ipow(y, n);
          const long long zn = ipow(z, n);
          CHECK(num != zn);  // no exact solutions exist in this range
          const long long diff = num > zn ? num - zn : zn - num;
          if (10 * diff < 3 * zn) brute.push_back({x, y, z, n});
        }
  const auto hits = zll::enumerate_fermat_rationals(0.3, 4, 16);
  REQUIRE(hits.size() == brute.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    CHECK(hits[i].x == brute[i].x);
    CHECK(hits[i].y == brute[i].y);
    CHECK(hits[i].z == brute[i].z);
    CHECK(hits[i].n == brute[i].n);
  }
}

TEST_CASE("enumeration edge cases") {
  CHECK(zll::enumerate_fermat_rationals(1e-9, 5, 30).empty());
  CHECK_THROWS_AS(zll::enumerate_fermat_rationals(0.0, 3, 9),
                  std::invalid_argument);
  CHECK_THROWS_AS(zll::enumerate_fermat_rationals(0.3, 2, 9),
                  std::invalid_argument);
  CHECK_THROWS_AS(zll::enumerate_fermat_rationals(0.3, 3, 0),
                  std::invalid_argument);
  // 3^127 does not fit the exact integer window test.
  CHECK_THROWS_AS(zll::enumerate_fermat_rationals(0.3, 127, 3),
                  std::invalid_argument);
}

TEST_CASE("report assembly") {
  zll::Lab& lab = shared_lab();
  auto rep = zll::make_report("demo", {1.0, 2.0}, {1.5, 1.2}, 1.0, lab);
  CHECK(rep.residuals[0] == 0.5);
  CHECK(rep.residuals[1] == 1.2 - 1.0);
  CHECK(rep.target == 1.0);
  CHECK(rep.cache_fingerprint == lab.cache.cfg_fingerprint);
  CHECK(rep.resolution_achieved.find("non-increasing") != std::string::npos);

  auto wobbling = zll::make_report("demo", {1.0, 2.0}, {1.1, 1.4}, 1.0, lab);
  CHECK(wobbling.resolution_achieved.find("not monotone") != std::string::npos);

  auto empty = zll::make_report("demo", {}, {}, 1.0, lab);
  CHECK(empty.resolution_achieved == "empty grid");

  CHECK_THROWS_AS(zll::make_report("demo", {1.0}, {}, 0.0, lab),
                  std::invalid_argument);
  CHECK_THROWS_AS(zll::make_report("demo", {2.0, 1.0}, {0.0, 0.0}, 0.0, lab),
                  std::invalid_argument);
}

TEST_CASE("lemma1 residual vanishes to solver precision") {
  zll::Lab& lab = shared_lab();
  CHECK(std::abs(zll::lemma1_residual(1000.0, 1, lab)) < 1e-5);
  CHECK(std::abs(zll::lemma1_residual(500.0, 2, lab)) < 1e-5);
  CHECK_THROWS_AS(zll::lemma1_residual(1000.0, 0, lab), std::invalid_argument);
}

TEST_CASE("increment integral matches the ladder equation") {
  zll::Lab& lab = shared_lab();
  const double inc = zll::increment_integral(1000.0, 1, lab);
  // The reverse solve pins J(top) = g(1000) + c0, so the segment integral is
  // that combination minus J(1000), whatever c0 is.
  CHECK(std::abs(inc - (g_of(1000.0, lab.consts) + lab.consts.c0 -
                        J_of(1000.0, lab))) < 2e-5);
  // Equivalent identity through the lemma2 residual.
  CHECK(std::abs(inc - zll::lemma2_residual(1000.0, lab) -
                 zll::kOneMinusGamma * 1000.0 - lab.consts.c0) < 2e-5);
  // Near-linearity: the segment is (1-c) T up to the slow residual.
  CHECK(inc / (zll::kOneMinusGamma * 1000.0) ==
        doctest::Approx(1.0).epsilon(0.1));
  CHECK_THROWS_AS(zll::increment_integral(1000.0, 0, lab),
                  std::invalid_argument);
}

TEST_CASE("lemma2 residual: frozen value and growth envelope") {
  zll::Lab& lab = shared_lab();
  // J1(1000) = 695.24751564435459 (external 25-digit computation), minus
  // (ln 2pi - 2c) * 1000.
  CHECK(zll::lemma2_residual(1000.0, lab) ==
        doctest::Approx(11.8017790381).epsilon(1e-3));
  for (double rho : {100.0, 500.0, 1000.0}) {
    CAPTURE(rho);
    CHECK(std::abs(zll::lemma2_residual(rho, lab)) < 5.0 * std::pow(rho, 0.4));
  }
  CHECK_THROWS_AS(zll::lemma2_residual(0.0, lab), std::invalid_argument);
}

TEST_CASE("scaled functional is J1 over tau at the rescaled argument") {
  zll::Lab& lab = shared_lab();
  const double x_exact = lab.consts.ln2pi - 2.0 * lab.consts.c;
  CHECK(std::abs(zll::scaled_limit_functional(x_exact, 2000.0, lab) -
                 J1_of(2000.0, lab) / 2000.0) < 1e-8);
  const double s1 = zll::scaled_limit_functional(1.0, 2000.0, lab);
  CHECK(s1 > 0.85);
  CHECK(s1 < 1.15);
  CHECK_THROWS_AS(zll::scaled_limit_functional(1.0, 5.0, lab),
                  std::invalid_argument);
  CHECK_THROWS_AS(zll::scaled_limit_functional(-1.0, 2000.0, lab),
                  std::invalid_argument);
}

TEST_CASE("segment functional telescopes exactly") {
  zll::Lab& lab = shared_lab();
  const double lhs = zll::segment_limit_functional(0.9, 3, 1500.0, lab);
  const double rhs = zll::scaled_limit_functional(4.0 * 0.9, 1500.0, lab) -
                     zll::scaled_limit_functional(0.9, 1500.0, lab);
  CHECK(lhs == rhs);  // literally the same two calls, so bit-identical

  const double two = zll::segment_limit_functional(1.0, 2, 2000.0, lab);
  CHECK(two > 1.7);
  CHECK(two < 2.3);
  CHECK_THROWS_AS(zll::segment_limit_functional(1.0, 0, 2000.0, lab),
                  std::invalid_argument);
}

TEST_CASE("fermat functional delegates bit-exactly") {
  zll::Lab& lab = shared_lab();
  const zll::FermatRational fr{6, 8, 9, 3};
  CHECK(zll::fermat_functional(fr, 1500.0, lab) ==
        zll::scaled_limit_functional(728.0 / 729.0, 1500.0, lab));
}

TEST_CASE("formula 4.1 functional equals the solved segment") {
  zll::Lab& lab = shared_lab();
  const double f41 = zll::formula_4_1_functional(1.0, 500.0, lab);
  const double a = 1.0 * 500.0 / (1.0 - lab.consts.c);
  // Same identity as the increment: the reverse solve fixes the upper limit.
  CHECK(std::abs(f41 * 500.0 -
                 (g_of(a, lab.consts) + lab.consts.c0 - J_of(a, lab))) < 1e-5);
  const double b = zll::reverse_iter(a, 1, lab);
  CHECK(std::abs(f41 * 500.0 - (J_of(b, lab) - J_of(a, lab))) < 1e-9);
  CHECK(std::abs(f41 - 1.0) < 0.25);
  CHECK_THROWS_AS(zll::formula_4_1_functional(1.0, 4.0, lab),
                  std::invalid_argument);
  CHECK_THROWS_AS(zll::formula_4_1_functional(-1.0, 500.0, lab),
                  std::invalid_argument);
}

TEST_CASE("conservation law settles at minus c0") {
  zll::Lab& lab = shared_lab();
  const double cons = zll::conservation_law_residual(200.0, 1, lab);
  CHECK(std::abs(cons + lab.consts.c0) < 5e-3);
  CHECK_THROWS_AS(zll::conservation_law_residual(200.0, 0, lab),
                  std::invalid_argument);
}

TEST_CASE("zero-limit law is the conservation difference") {
  zll::Lab& lab = shared_lab();
  const double zl = zll::zero_limit_law_residual(200.0, 1, lab);
  const double c2 = zll::conservation_law_residual(200.0, 2, lab);
  const double c1 = zll::conservation_law_residual(200.0, 1, lab);
  CHECK(std::abs(zl - (c2 - c1)) < 1e-6);
  CHECK_THROWS_AS(zll::zero_limit_law_residual(200.0, 0, lab),
                  std::invalid_argument);
}

TEST_CASE("localized scan reports every rational in the window") {
  zll::Lab& lab = shared_lab();
  const auto rep = zll::localized_scan(0.3, 1, 3, 9, 500.0, lab);
  CHECK_NOTHROW(rep.validate());
  CHECK(rep.target == 1.0);
  const auto hits = zll::enumerate_fermat_rationals(0.3, 3, 9);
  REQUIRE(!hits.empty());
  REQUIRE(rep.grid.size() == hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    CHECK(rep.grid[i] == static_cast<double>(i + 1));
    // value = x + (E(a2) - E(a1))/tau, so it tracks the rational itself.
    CHECK(std::abs(rep.values[i] - hits[i].value()) < 0.2);
    CHECK(rep.residuals[i] == rep.values[i] - 1.0);
  }
  CHECK(rep.resolution_achieved.find("window") != std::string::npos);
  CHECK_THROWS_AS(zll::localized_scan(0.3, 0, 3, 9, 500.0, lab),
                  std::invalid_argument);
}
