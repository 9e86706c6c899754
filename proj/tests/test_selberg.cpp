#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "frobangle/interval.hpp"
#include "frobangle/rng.hpp"
#include "frobangle/selberg.hpp"

using namespace frobangle;

namespace {

constexpr double kPi = std::numbers::pi;

// direct cosine-sum evaluation, the slow route Clenshaw must reproduce
double eval_direct(const SelbergPolynomial& poly, double theta) {
  double s = 0.0;
  for (std::size_t m = 0; m < poly.coeffs.size(); ++m) s += poly.coeffs[m] * std::cos(m * theta);
  return s;
}

struct Config {
  AngleInterval interval;
  int M;
};

std::vector<Config> matrix() {
  std::vector<Config> out;
  const double widths[4][2] = {{0.6, 0.65}, {0.5, 1.0}, {1.0, 3.0}, {0.0, kPi}};
  for (const auto& ab : widths)
    for (int M : {8, 32, 128, 1024}) out.push_back({AngleInterval(ab[0], ab[1]), M});
  return out;
}

}  // namespace

TEST_CASE("AngleInterval validates its endpoints") {
  CHECK_THROWS_AS(AngleInterval(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(AngleInterval(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(AngleInterval(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(AngleInterval(0.0, kPi + 0.002), std::invalid_argument);
  AngleInterval full(0.0, kPi);
  CHECK(full.length() == doctest::Approx(kPi));
  CHECK(full.contains_half_pi());
  AngleInterval left(0.1, 1.5);
  CHECK_FALSE(left.contains_half_pi());
  CHECK(left.contains(0.1));
  CHECK(left.contains(1.5));
  CHECK(left.contains(1.5 + 1e-13));  // endpoint tolerance
  CHECK_FALSE(left.contains(1.6));
  CHECK_FALSE(left.contains(0.0));
}

TEST_CASE("majorants and minorants stay on the correct side on a fine grid") {
  for (const auto& cfg : matrix()) {
    for (PolySign sign : {PolySign::Majorant, PolySign::Minorant}) {
      auto poly = build_selberg(cfg.interval, cfg.M, sign);
      REQUIRE(poly.coeffs.size() == (std::size_t)cfg.M + 1);
      auto report = verify_extremal(poly, 10000);
      CAPTURE(cfg.interval.alpha);
      CAPTURE(cfg.interval.beta);
      CAPTURE(cfg.M);
      CAPTURE((int)sign);
      CHECK(report.holds);
      CHECK(report.max_violation <= 1e-9);
    }
  }
}

TEST_CASE("the constant coefficient misses the interval mass by exactly 2/(M+1)") {
  for (const auto& cfg : matrix()) {
    const double mass = cfg.interval.length() / kPi;
    const double gap = 2.0 / (cfg.M + 1);
    auto maj = build_selberg(cfg.interval, cfg.M, PolySign::Majorant);
    auto mnr = build_selberg(cfg.interval, cfg.M, PolySign::Minorant);
    CHECK(maj.coeffs[0] - mass == doctest::Approx(gap).epsilon(1e-12));
    CHECK(mass - mnr.coeffs[0] == doctest::Approx(gap).epsilon(1e-12));
    CHECK(std::abs(maj.coeffs[0] - mass) <= gap + 1e-14);
    CHECK(std::abs(mass - mnr.coeffs[0]) <= gap + 1e-14);
    CHECK(mnr.coeffs[0] <= mass + 1e-15);
    CHECK(maj.coeffs[0] >= mass - 1e-15);
  }
}

TEST_CASE("coefficients decay like min(|I|, 1/m) + 1/M") {
  CHECK(kSelbergDecayC == 4.0);
  for (const auto& cfg : matrix()) {
    for (PolySign sign : {PolySign::Majorant, PolySign::Minorant}) {
      auto poly = build_selberg(cfg.interval, cfg.M, sign);
      CAPTURE(cfg.interval.alpha);
      CAPTURE(cfg.M);
      CHECK(max_decay_ratio(poly) <= kSelbergDecayC);
    }
  }
}

TEST_CASE("full-circle majorant at degree ten") {
  auto poly = build_selberg(AngleInterval(0.0, kPi), 10, PolySign::Majorant);
  CHECK(poly.coeffs[0] >= 1.0 - 2.0 / 11 - 1e-15);
  CHECK(poly.coeffs[0] <= 1.0 + 2.0 / 11 + 1e-15);
  for (int i = 0; i <= 1000; ++i) {
    double theta = kPi * i / 1000.0;
    CHECK(evaluate(poly, theta) >= 1.0 - 1e-9);
  }
}

TEST_CASE("pointwise sides for a mid-range interval") {
  AngleInterval I(0.5, 1.0);
  auto maj = build_selberg(I, 32, PolySign::Majorant);
  auto mnr = build_selberg(I, 32, PolySign::Minorant);
  CHECK(evaluate(maj, 0.75) >= 1.0 - 1e-9);
  CHECK(evaluate(mnr, 0.75) <= 1.0 + 1e-9);
  CHECK(evaluate(maj, 2.0) >= -1e-9);
  CHECK(evaluate(mnr, 2.0) <= 1e-9);
  CHECK(evaluate(maj, 0.0) >= -1e-9);
  CHECK(evaluate(mnr, kPi) <= 1e-9);
}

TEST_CASE("a corrupted polynomial is caught by the grid check") {
  AngleInterval I(0.5, 1.0);
  auto maj = build_selberg(I, 32, PolySign::Majorant);
  maj.coeffs[0] -= 0.05;
  auto r1 = verify_extremal(maj, 10000);
  CHECK_FALSE(r1.holds);
  CHECK(r1.max_violation > 1e-9);
  auto mnr = build_selberg(I, 32, PolySign::Minorant);
  mnr.coeffs[0] += 0.05;
  auto r2 = verify_extremal(mnr, 10000);
  CHECK_FALSE(r2.holds);
}

TEST_CASE("Clenshaw evaluation matches the direct cosine sum") {
  SplitMix64 rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    SelbergPolynomial poly{PolySign::Majorant, 40, AngleInterval(0.5, 1.0), {}};
    for (int m = 0; m <= 40; ++m)
      poly.coeffs.push_back(((double)rng.below(2000001) - 1000000.0) / 1000000.0);
    for (int i = 0; i <= 200; ++i) {
      double theta = kPi * i / 200.0;
      CHECK(evaluate(poly, theta) == doctest::Approx(eval_direct(poly, theta)).epsilon(1e-12));
    }
  }
  // a pure constant evaluates to itself
  SelbergPolynomial c{PolySign::Minorant, 2, AngleInterval(0.5, 1.0), {0.25, 0.0, 0.0}};
  CHECK(evaluate(c, 0.3) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("build and evaluate reject out-of-domain requests") {
  AngleInterval I(0.5, 1.0);
  CHECK_THROWS_AS((void)build_selberg(I, 0, PolySign::Majorant), std::invalid_argument);
  CHECK_THROWS_AS((void)build_selberg(I, -3, PolySign::Majorant), std::invalid_argument);
  CHECK_THROWS_AS((void)build_selberg(I, 1000001, PolySign::Majorant), std::invalid_argument);
  auto poly = build_selberg(I, 8, PolySign::Majorant);
  CHECK_THROWS_AS((void)evaluate(poly, -0.001), std::invalid_argument);
  CHECK_THROWS_AS((void)evaluate(poly, kPi + 0.001), std::invalid_argument);
  CHECK_NOTHROW((void)evaluate(poly, 0.0));
  CHECK_NOTHROW((void)evaluate(poly, kPi));
  CHECK_THROWS_AS((void)verify_extremal(poly, 50), std::invalid_argument);
}

TEST_CASE("degree one is the tightest legal build") {
  auto poly = build_selberg(AngleInterval(0.5, 1.0), 1, PolySign::Majorant);
  CHECK(poly.coeffs.size() == 2);
  CHECK(verify_extremal(poly, 10000).holds);
}
