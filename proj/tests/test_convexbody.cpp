#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ncmult/calculus.hpp"
#include "ncmult/convexbody.hpp"
#include "ncmult/error.hpp"

using namespace ncmult;
using std::numbers::pi;

namespace {

double sinc(double x) { return x == 0 ? 1.0 : std::sin(pi * x) / (pi * x); }

double ball_radius(int d) { return std::pow(std::tgamma(d / 2.0 + 1) / std::pow(pi, d / 2.0), 1.0 / d); }

// Fourier transform of the unit-volume ball through the Bessel function.
double ball_ft(int d, double r) {
  const double nu = d / 2.0;
  const double a = 2 * pi * ball_radius(d) * r;
  if (a == 0) return 1;
  return std::tgamma(nu + 1) * std::pow(2 / a, nu) * std::cyl_bessel_j(nu, a);
}

bool within(const SymbolEstimate& a, double exact, double sigmas = 3) {
  return std::abs(a.value - exact) <= sigmas * a.stderr_;
}

bool within(const SymbolEstimate& a, const SymbolEstimate& b, double sigmas = 3) {
  return std::abs(a.value - b.value) <= sigmas * std::hypot(a.stderr_, b.stderr_);
}

}  // namespace

TEST(ConvexBody, ValueAtOriginIsOne) {
  for (const auto& B : {BodySpec::cube(3), BodySpec::ball(5), BodySpec::lq(4, 3)}) {
    McOptions mc;
    mc.samples = 20000;
    EXPECT_NEAR(indicator_ft(B, std::vector<double>(static_cast<std::size_t>(B.d), 0.0), mc).value, 1.0, 1e-13) << B.label();
  }
}

TEST(ConvexBody, CubeProductFormula) {
  EXPECT_NEAR(indicator_ft(BodySpec::cube(2), {1, 0}).value, 0, 1e-15);
  for (const auto& xi : std::vector<std::vector<double>>{{0.3, -0.7, 1.9}, {2.5, 0.1, 0.4}}) {
    double prod = 1;
    for (double x : xi) {
      const auto q = integrate_smooth([x](double u) { return std::cos(2 * pi * x * u); }, -0.5, 0.5);
      prod *= q.value;
      EXPECT_NEAR(q.value, sinc(x), 1e-12);
    }
    EXPECT_NEAR(indicator_ft(BodySpec::cube(3), xi).value, prod, 1e-10);
  }
}

TEST(ConvexBody, BallMatchesBessel) {
  for (int d : {2, 3, 5, 8})
    for (double r : {0.05, 0.4, 1.3, 3.7}) {
      std::vector<double> xi(static_cast<std::size_t>(d), 0.0);
      xi[0] = r;
      EXPECT_NEAR(indicator_ft(BodySpec::ball(d), xi).value, ball_ft(d, r), 1e-10) << d << " " << r;
    }
}

TEST(ConvexBody, BallQuadratureAgreesWithMonteCarlo) {
  const auto B = BodySpec::ball(3);
  McOptions mc;
  mc.samples = 400000;
  mc.seed = 17;
  mc.force_monte_carlo = true;
  for (const auto& xi : std::vector<std::vector<double>>{{0.4, 0, 0}, {0.3, 0.3, 0.2}, {1.1, 0, 0.2}}) {
    const auto exact = indicator_ft(B, xi);
    EXPECT_EQ(exact.method, "quadrature");
    const auto sampled = indicator_ft(B, xi, mc);
    EXPECT_EQ(sampled.method, "monte-carlo");
    EXPECT_TRUE(within(sampled, exact.value)) << sampled.value << " vs " << exact.value;
  }
}

TEST(ConvexBody, EvenAndBounded) {
  McOptions mc;
  mc.samples = 20000;
  for (const auto& B : {BodySpec::cube(2), BodySpec::ball(2), BodySpec::lq(4, 2)})
    for (const auto& xi : std::vector<std::vector<double>>{{0.3, -0.2}, {1.7, 0.9}}) {
      const auto a = indicator_ft(B, xi, mc);
      const auto b = indicator_ft(B, {-xi[0], -xi[1]}, mc);
      EXPECT_NEAR(a.value, b.value, 1e-12);
      EXPECT_LE(std::abs(a.value), 1 + 1e-12);
    }
}

TEST(ConvexBody, IsotropicConstants) {
  EXPECT_NEAR(isotropic_constant(BodySpec::cube(4)).value, 1 / std::sqrt(12.0), 1e-10);
  for (int d : {2, 3, 7, 16})
    EXPECT_NEAR(isotropic_constant(BodySpec::ball(d)).value, ball_radius(d) / std::sqrt(d + 2.0), 1e-10);

  McOptions low, high;
  low.samples = 100000;
  low.seed = 3;
  high.samples = 2000000;
  high.seed = 99;
  const auto B = BodySpec::lq(4, 4);
  const auto a = isotropic_constant(B, low);
  const auto b = isotropic_constant(B, high);
  EXPECT_EQ(a.method, "monte-carlo");
  EXPECT_TRUE(within(a, b)) << a.value << " " << b.value;
}

TEST(ConvexBody, SamplesLieInsideUnitVolumeBody) {
  std::vector<double> xs;
  for (const auto& B : {BodySpec::ball(6), BodySpec::lq(4, 5), BodySpec::lq(6, 3)}) {
    sample_block(B, 5, 0, 2000, xs);
    const std::size_t d = static_cast<std::size_t>(B.d);
    ASSERT_EQ(xs.size(), 2000 * d);
    for (std::size_t s = 0; s < 2000; ++s) {
      double n = 0;
      for (std::size_t j = 0; j < d; ++j) n += std::pow(std::abs(xs[s * d + j]), B.q);
      EXPECT_LE(std::pow(n, 1.0 / B.q), B.scale() * (1 + 1e-12));
    }
  }
  std::vector<double> again;
  sample_block(BodySpec::lq(4, 5), 5, 3, 100, xs);
  sample_block(BodySpec::lq(4, 5), 5, 3, 100, again);
  EXPECT_EQ(xs, again);
}

TEST(ConvexBody, LqBatchMeansAreConsistent) {
  const auto B = BodySpec::lq(4, 3);
  McOptions ref;
  ref.samples = 1000000;
  ref.seed = 1000;
  const std::vector<double> xi{0.35, -0.2, 0.1};
  const auto target = indicator_ft(B, xi, ref);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    McOptions mc;
    mc.samples = 50000;
    mc.seed = seed;
    EXPECT_TRUE(within(indicator_ft(B, xi, mc), target)) << seed;
  }
}

TEST(ConvexBody, LahCoefficientTable) {
  // d^v/dt^v h(1/t) = Σ_k a(v,k) t^{-(v+k)} h^(k)(1/t); differentiate the monomials.
  std::array<std::array<std::int64_t, 5>, 5> a{};
  a[0][0] = 1;
  for (int v = 0; v < 4; ++v)
    for (int k = 0; k <= v + 1; ++k) {
      std::int64_t next = 0;
      if (k <= v) next -= (v + k) * a[v][k];
      if (k >= 1) next -= a[v][k - 1];
      a[v + 1][k] = next;
    }
  const auto& table = radial_coefficients();
  for (int v = 0; v <= 4; ++v)
    for (int k = 0; k <= 4; ++k) {
      EXPECT_EQ(table[v][k], a[v][k]) << v << "," << k;
      if (k >= 1) {
        EXPECT_EQ(std::abs(table[v][k]), lah_number(v, k));
      }
    }
}

TEST(ConvexBody, RadialDerivatives) {
  const auto B = BodySpec::ball(3);
  for (int v = 1; v <= 4; ++v) EXPECT_NEAR(radial_derivative_bound(B, {0, 0, 0}, v).value, 0, 1e-14);
  EXPECT_THROW(radial_derivative_bound(B, {0.1, 0, 0}, 5), Error);

  for (const auto& body : {BodySpec::ball(3), BodySpec::cube(3)})
    for (const auto& xi : std::vector<std::vector<double>>{{0.2, 0.1, 0}, {0.9, -0.4, 0.3}}) {
      const auto est = evaluate_body(body, {xi}, 2).front();
      EXPECT_NEAR(est.t_derivatives[0].value, -est.gradient_pairing.value, 1e-10);
      EXPECT_NEAR(est.t_derivatives[0].value, est.fd_first.value, 1e-4 * std::max(1.0, std::abs(est.fd_first.value)));
      // Second derivative against a central difference in t of m̂(ξ/t).
      auto m = [&](double t) {
        std::vector<double> s(xi);
        for (double& x : s) x /= t;
        return indicator_ft(body, s).value;
      };
      const double h = 1e-3;
      const double fd2 = (m(1 + h) - 2 * m(1) + m(1 - h)) / (h * h);
      EXPECT_NEAR(est.t_derivatives[1].value, fd2, 1e-4 * std::max(1.0, std::abs(fd2)));
    }
}

TEST(ConvexBody, SymbolBoundAudit) {
  const auto B = BodySpec::cube(2);
  const double L = isotropic_constant(B).value;
  const auto r = symbol_bound_audit(B, default_xi_samples(B, L));
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(std::isfinite(r.extra("approach")));
  EXPECT_NEAR(r.extra("L"), L, 1e-15);

  // Large axis frequency: |m̂| |ξ| L stays below the sinc envelope L/π.
  std::vector<std::vector<double>> far{{7.5, 0}, {12.25, 0}, {30.5, 0}};
  const auto rf = symbol_bound_audit(B, far);
  EXPECT_LE(rf.extra("decay"), L / pi + 1e-12);
}

TEST(ConvexBody, CubeAxisConstantsIndependentOfDimension) {
  std::vector<double> first;
  for (int d : {2, 4, 8}) {
    const auto B = BodySpec::cube(d);
    std::vector<std::vector<double>> axis;
    for (const auto& xi : default_xi_samples(B, isotropic_constant(B).value))
      if (std::count(xi.begin(), xi.end(), 0.0) == d - 1) axis.push_back(xi);
    const auto r = symbol_bound_audit(B, axis);
    EXPECT_TRUE(r.pass);
    const std::vector<double> c{r.extra("decay"), r.extra("approach"), r.extra("gradient")};
    if (first.empty()) first = c;
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i], first[i], 1e-9 * std::max(1.0, first[i]));
  }
  const auto t = dimension_sweep(BodyFamily::cube, 0, {2, 4, 8}, 1, 0, 1);
  EXPECT_TRUE(t.chain_rule_ok);
}

TEST(ConvexBody, LqSweepFinite) {
  const auto t = dimension_sweep(BodyFamily::lq_ball, 4, {2, 4, 8, 16}, 2, 100000, 7);
  for (const auto& row : t.rows) EXPECT_TRUE(std::isfinite(row.constant));
  for (const auto& ratio : t.ratios) EXPECT_TRUE(std::isfinite(ratio.ratio));
  const auto csv = sweep_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,q,d,bound,order,constant,stderr,samples,seed");
}

TEST(ConvexBody, ZeroBudgetIsParameterError) {
  McOptions mc;
  mc.samples = 0;
  try {
    indicator_ft(BodySpec::lq(4, 2), {0.1, 0.1}, mc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parameter);
  }
}
