#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "ncmult/audits.hpp"
#include "ncmult/error.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/identities.hpp"
#include "ncmult/symbols.hpp"

using namespace ncmult;

TEST(Fejer, IdentityIsOne) {
  for (const auto& G : {GroupSpec::free(2), GroupSpec::heisenberg3(), GroupSpec::free_abelian(2)})
    for (int N : {0, 1, 3}) EXPECT_EQ(fejer_symbol(G, BallFamily::word, N, identity(G)), Rational(1));
}

TEST(Fejer, IntegerCubeClosedForm) {
  const auto Z = GroupSpec::free_abelian(1);
  EXPECT_EQ(fejer_symbol(Z, BallFamily::cube, 2, vector_element(Z, {3})), Rational(2, 5));
  for (int N = 0; N <= 32; N += 4)
    for (int k = -64; k <= 64; k += 7) {
      const std::int64_t overlap = std::max<std::int64_t>(0, 2 * N + 1 - std::abs(k));
      EXPECT_EQ(fejer_symbol(Z, BallFamily::cube, N, vector_element(Z, {k})), Rational(overlap, 2 * N + 1));
    }
}

TEST(Fejer, HeisenbergFromCounts) {
  const auto H = GroupSpec::heisenberg3();
  const auto ab = multiply(H, heisenberg_element(1, 0, 0), heisenberg_element(0, 1, 0));
  const auto K = ball(H, 3);
  const Rational expected(static_cast<std::int64_t>(ball_intersection_count(K, ab)),
                          static_cast<std::int64_t>(K.size()));
  EXPECT_EQ(fejer_symbol(H, BallFamily::word, 3, ab), expected);
  EXPECT_GT(expected, Rational(0));
  EXPECT_LT(expected, Rational(1));
}

TEST(Fejer, FieldMatchesDirectEvaluation) {
  const auto H = GroupSpec::heisenberg3();
  auto field = std::make_shared<FejerField>(ball(H, 3), BallOptions{}, 6);
  EXPECT_TRUE(field->uses_interval_table());
  for (int N : {1, 2, 5})
    for (std::size_t p = 0; p < field->domain().size(); p += 5) {
      const auto direct = fejer_symbol(H, BallFamily::word, N, field->domain()[p]);
      EXPECT_EQ(field->exact(N, p), direct);
      EXPECT_EQ(field->in_support(N, p), direct > Rational(0));
    }
}

TEST(BochnerRiesz, Values) {
  EXPECT_DOUBLE_EQ(bochner_riesz_symbol(4, 1, 0), 1.0);
  EXPECT_DOUBLE_EQ(bochner_riesz_symbol(4, 1, 4), 0.0);
  EXPECT_DOUBLE_EQ(bochner_riesz_symbol(4, 1, 2), 0.75);
  EXPECT_DOUBLE_EQ(bochner_riesz_symbol(4, 2, 6), 0.0);
}

TEST(RadialKernel, Values) {
  EXPECT_DOUBLE_EQ(radial_kernel_symbol(dirac_measure(0), 5, 0), 1.0);
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(radial_kernel_symbol(dirac_measure(0), 5, k), std::exp(-2.0 * k / 5), 1e-15);
  AtomicMeasure two;
  two.atoms = {{-1, 0.5}, {1, 0.5}};
  const double e = std::exp(-0.4);
  EXPECT_NEAR(radial_kernel_symbol(two, 5, 2), 0.5 * ((e + 0.2) * (e + 0.2) + (e - 0.2) * (e - 0.2)), 1e-15);
}

TEST(RadialKernel, BelowT0IsDomainError) {
  try {
    radial_kernel_symbol(dirac_measure(0), 1.0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(RadialKernel, AnalyticDerivativeMatchesDifferenceQuotient) {
  const auto nu = grid_measure(5);
  for (int k : {1, 3, 6}) {
    const double t = 7, h = 1e-4;
    const double fd = (radial_kernel_symbol(nu, t + h, k) - radial_kernel_symbol(nu, t - h, k)) / (2 * h);
    EXPECT_NEAR(radial_kernel_derivative(nu, t, k, 1), fd, 1e-7);
  }
}

TEST(MinT0, Inequalities) {
  const auto r = min_t0();
  EXPECT_TRUE(r.holds_at_t0);
  EXPECT_TRUE(r.holds_at_double);
  EXPECT_GE(r.gap_first, 0);
  EXPECT_GE(r.gap_second, 0);
  EXPECT_LE(r.t0, 5.0);
  // Slightly below the bisection result one of the inequalities fails.
  EXPECT_TRUE(t0_gap_first(r.t0 - 1e-5) < 0 || t0_gap_second(r.t0 - 1e-5) < 0);
  EXPECT_GE(t0_gap_first(5), 0);
  EXPECT_GE(t0_gap_second(5), 0);
  EXPECT_GT(1 + std::exp(-2.0), std::exp(-2.0 / 3));
  EXPECT_LT(t0_gap_second(1), 0);
  for (double t = r.t0; t <= 100; t *= 1.05) {
    EXPECT_GE(t0_gap_first(t), -1e-12) << t;
    EXPECT_GE(t0_gap_second(t), -1e-12) << t;
  }
}

TEST(Semigroup, Values) {
  EXPECT_EQ(semigroup_symbol(3.0, 0, SemigroupKind::heat), 1.0);
  EXPECT_EQ(semigroup_symbol(0, 2.0, SemigroupKind::poisson), 1.0);
  EXPECT_NEAR(semigroup_symbol(4.0, 0.5, SemigroupKind::poisson), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(semigroup_symbol(4.0, 0.5, SemigroupKind::heat), std::exp(-2.0), 1e-15);
}

TEST(Subordination, LaplaceTransform) {
  EXPECT_NEAR(subordination_integral(1.0), std::exp(-1.0), 1e-8);
  for (double u : {0.25, 2.0, 9.0}) EXPECT_NEAR(subordination_integral(u), std::exp(-std::sqrt(u)), 1e-8);
}

TEST(Multiorder, FirstOrderOfReciprocal) {
  SymbolFamily fam;
  fam.kind = IndexKind::continuous;
  fam.value = [](double t, std::size_t) { return 1 / t; };
  for (int s : {0, 1, 3})
    for (double t : {1.0, 2.5, 40.0}) {
      const double rho = std::pow(2.0, std::pow(2.0, -s - 1));
      EXPECT_NEAR(multiorder_ratio(s), rho, 1e-15);
      EXPECT_NEAR(multiorder_difference(fam, {s}, t, 0), (1 / rho - 1) / t, 1e-14);
    }
}

TEST(Multiorder, ConstantFamilyVanishes) {
  const auto fam = constant_family(0.7, IndexKind::continuous);
  for (const auto& s : std::vector<std::vector<int>>{{0}, {1, 0}, {2, 1, 0}})
    EXPECT_EQ(multiorder_difference(fam, s, 3.0, 0), 0.0);
}

TEST(Multiorder, ExpansionMatchesRecursionForRadialKernel) {
  const auto fam = radial_kernel_family(grid_measure(5), {0, 1, 2, 3, 4, 5, 6, 7, 8}, 4);
  for (const auto& s : std::vector<std::vector<int>>{{1, 0}, {2, 1}, {3, 1, 0}})
    for (double t : {5.0, 9.0, 33.0})
      for (std::size_t p = 0; p < 9; ++p)
        EXPECT_NEAR(multiorder_difference(fam, s, t, p), multiorder_difference_recursive(fam, s, t, p), 1e-12);
}

TEST(Identities, BochnerRieszComposition) {
  EXPECT_NEAR(bochner_riesz_composed(1, 2, 0), 1.0, 1e-10);
  EXPECT_NEAR(bochner_riesz_composed(1, 2, 1), 0.0, 1e-12);
  EXPECT_NEAR(bochner_riesz_composed(1, 2, 0.5), std::pow(0.75, 3), 1e-8);
  const auto check = bochner_riesz_composition_check(0.5, 1.5, default_composition_grid());
  EXPECT_LE(check.max_error, 1e-8);
  EXPECT_EQ(check.errors.size(), default_composition_grid().size());
}

TEST(Identities, SquareFunctionConstant) {
  const auto r0 = square_function_constant(0, 1);
  EXPECT_NEAR(r0.value, 0.25, 1e-8);
  EXPECT_NEAR(r0.closed_form, 0.25, 1e-15);
  double prev = 1;
  for (double alpha : {0.0, 0.5, 1.0, 2.5, 6.0}) {
    const double v1 = square_function_constant(alpha, 1).value;
    EXPECT_NEAR(v1, square_function_constant(alpha, 7).value, 1e-8);
    EXPECT_NEAR(v1, 1 / (2 * (2 * alpha + 1) * (2 * alpha + 2)), 1e-8);
    EXPECT_LT(v1, prev);
    prev = v1;
  }
  EXPECT_THROW(square_function_constant(-0.5, 1), Error);
}

TEST(Identities, RapidDecayTail) {
  double oracle = 0;
  for (int r = 2; r < 200; ++r) oracle += std::exp(-r) * (r + 1);
  EXPECT_NEAR(rapid_decay_truncation_bound(1).tail, oracle, 1e-14);
  for (int N : {2, 5, 11}) {
    long double sum = 0;
    for (long r = static_cast<long>(N) * N + 1; r < 200L * N + N * N; ++r)
      sum += std::exp(-static_cast<long double>(r) / N) * (r + 1);
    const auto t = rapid_decay_truncation_bound(N);
    EXPECT_NEAR(t.tail, static_cast<double>(sum), 1e-12 * std::max(1.0, t.tail));
    EXPECT_NEAR(t.normalized, N * N * t.tail, 1e-12 * t.normalized);
  }
  const double a = rapid_decay_truncation_bound(48).normalized;
  const double b = rapid_decay_truncation_bound(64).normalized;
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_LT(b, a);
}
