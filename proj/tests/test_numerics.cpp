#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ncmult/calculus.hpp"
#include "ncmult/error.hpp"
#include "ncmult/rational.hpp"

using namespace ncmult;

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 5) * Rational(5, 8), Rational(1, 4));
  EXPECT_EQ(Rational(1) - Rational(2, 5), Rational(3, 5));
  EXPECT_LT(Rational(61, 55), Rational(10, 9));
  EXPECT_EQ(Rational(7, 21).to_string(), "1/3");
  EXPECT_THROW(Rational(1, 0), Error);
}

TEST(Rational, OverflowIsReported) {
  const Rational big(std::numeric_limits<std::int64_t>::max() / 2 + 1);
  EXPECT_THROW(big * Rational(4), Error);
  // Cancellation through 128-bit intermediates stays exact.
  const Rational a(std::int64_t{1} << 40, 3), b(3, std::int64_t{1} << 40);
  EXPECT_EQ(a * b, Rational(1));
}

TEST(Quadrature, EndpointSingularity) {
  const auto r = integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1);
  EXPECT_NEAR(r.value, 2.0, 1e-10);
  const auto inf = integrate_to_infinity([](double x) { return std::exp(-x) * x; }, 0);
  EXPECT_NEAR(inf.value, 1.0, 1e-12);
  const auto smooth = integrate_smooth([](double x) { return std::cos(40 * x); }, 0, 1);
  EXPECT_NEAR(smooth.value, std::sin(40.0) / 40, 1e-13);
  const auto fixed = integrate_fixed([](double x) { return std::exp(x); }, 0, 1);
  EXPECT_NEAR(fixed.value, std::numbers::e - 1, 1e-14);
}

TEST(FiniteDifference, PolynomialAndExp) {
  for (int order = 1; order <= 4; ++order) {
    const auto d = finite_difference([](double t) { return std::exp(2 * t); }, 0.3, order, 0.05, 1);
    EXPECT_NEAR(d.value, std::pow(2, order) * std::exp(0.6), 1e-6 * std::pow(2, order));
  }
  EXPECT_THROW(finite_difference([](double t) { return std::abs(t); }, 0.0, 2, 0.1, 1e-12), Error);
}

TEST(Combinatorics, BellLahBinomial) {
  EXPECT_EQ(binomial(6, 2), 15);
  EXPECT_EQ(binomial(10, 0), 1);
  EXPECT_EQ(lah_number(4, 2), 36);
  EXPECT_EQ(lah_number(3, 1), 6);
  EXPECT_EQ(lah_number(4, 4), 1);
  // B_{n,k}(1,1,...) are Stirling numbers of the second kind.
  const std::vector<double> ones(6, 1.0);
  EXPECT_DOUBLE_EQ(bell_polynomial(5, 2, ones), 15);
  EXPECT_DOUBLE_EQ(bell_polynomial(4, 2, ones), 7);
  // B_{n,k}(1!,2!,3!,...) are Lah numbers.
  const std::vector<double> fact{1, 2, 6, 24, 120};
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) EXPECT_DOUBLE_EQ(bell_polynomial(n, k, fact), static_cast<double>(lah_number(n, k)));
}

TEST(Combinatorics, FaaDiBrunoChainRule) {
  // F = exp, u = sin at t = 0.4; compare with finite differences of exp(sin t).
  const double t = 0.4;
  for (int n = 1; n <= 4; ++n) {
    std::vector<double> outer(static_cast<std::size_t>(n) + 1, std::exp(std::sin(t)));
    std::vector<double> inner;
    for (int j = 1; j <= n; ++j) {
      const double derivs[4] = {std::cos(t), -std::sin(t), -std::cos(t), std::sin(t)};
      inner.push_back(derivs[(j - 1) % 4]);
    }
    const auto fd = finite_difference([](double s) { return std::exp(std::sin(s)); }, t, n, 0.05, 1);
    EXPECT_NEAR(faa_di_bruno(n, outer, inner), fd.value, 1e-6);
  }
}

TEST(Grid, Geometric) {
  const auto g = geometric_grid(1, 8, 2);
  EXPECT_EQ(g, (std::vector<double>{1, 2, 4, 8}));
  EXPECT_EQ(geometric_grid(5, 80, std::pow(2.0, 0.25)).size(), 17u);
}
