#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ncmult/error.hpp"
#include "ncmult/fourier.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/positivity.hpp"
#include "ncmult/symbols.hpp"

using namespace ncmult;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double hs_norm(const GroupAlgebraMatrix& A) {
  double s = 0;
  for (const auto& z : A.entries) s += std::norm(z);
  return std::sqrt(s / static_cast<double>(A.n));
}

FourierCoeffs random_coeffs(const GroupSpec& G, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  FourierCoeffs x(G);
  for (const auto& g : enumerate_finite_group(G)) x.set(g, {n01(rng), n01(rng)});
  return x;
}

}  // namespace

TEST(Fourier, MultiplierExamples) {
  const auto Z = GroupSpec::free_abelian(1);
  FourierCoeffs x(Z);
  x.set(vector_element(Z, {0}), 2.0);
  x.set(vector_element(Z, {3}), {1.0, -1.0});
  const auto one = apply_multiplier([](const GroupElement&) { return 1.0; }, x);
  EXPECT_EQ(one.terms(), x.terms());
  const auto proj = apply_multiplier([](const GroupElement& g) { return g[0] == 0 ? 1.0 : 0.0; }, x);
  EXPECT_EQ(proj.at(vector_element(Z, {0})), Complex(2.0));
  EXPECT_EQ(proj.at(vector_element(Z, {3})), Complex(0.0));

  const auto delta3 = lambda(Z, vector_element(Z, {3}));
  const auto fejer = apply_multiplier(
      [&](const GroupElement& g) { return fejer_symbol(Z, BallFamily::cube, 2, g).to_double(); }, delta3);
  EXPECT_NEAR(fejer.at(vector_element(Z, {3})).real(), 0.4, 1e-15);
}

TEST(Fourier, SupportOutsideDomain) {
  const auto Z = GroupSpec::free_abelian(1);
  const auto B = ball(Z, 2);
  try {
    apply_multiplier([](const GroupElement&) { return 1.0; }, lambda(Z, vector_element(Z, {5})), &B);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(Fourier, Plancherel) {
  const auto F = GroupSpec::free(2);
  EXPECT_DOUBLE_EQ(plancherel_norm(lambda(F, identity(F))), 1.0);
  auto x = lambda(F, identity(F));
  x.add(generators(F)[0], 1.0);
  EXPECT_NEAR(plancherel_norm(x), std::sqrt(2.0), 1e-15);

  const auto G = GroupSpec::cyclic_power(8, 1);
  const auto y = random_coeffs(G, 11);
  EXPECT_NEAR(plancherel_norm(y), hs_norm(regular_representation(G, y)), 1e-12);
}

TEST(Fourier, RegularRepresentation) {
  const auto Z3 = GroupSpec::cyclic_power(3, 1);
  const auto I = regular_representation(Z3, lambda(Z3, identity(Z3)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(I(i, j), Complex(i == j ? 1.0 : 0.0));

  const auto S = regular_representation(Z3, lambda(Z3, vector_element(Z3, {1})));
  for (std::size_t j = 0; j < 3; ++j) {
    const auto target = multiply(Z3, vector_element(Z3, {1}), S.basis[j]);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(S(i, j), Complex(S.basis[i] == target ? 1.0 : 0.0));
  }

  const auto D = GroupSpec::dihedral(3);
  const auto r = dihedral_element(D, 1, 0);
  const auto s = dihedral_element(D, 0, 1);
  auto x = lambda(D, r);
  x.add(s, 1.0);
  const auto A = regular_representation(D, x);
  ASSERT_EQ(A.n, 6u);
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t i = 0; i < 6; ++i) {
      const double expected = (A.basis[i] == multiply(D, r, A.basis[j])) + (A.basis[i] == multiply(D, s, A.basis[j]));
      EXPECT_EQ(A(i, j), Complex(expected));
    }
}

TEST(Fourier, InfiniteGroupRejected) {
  const auto Z = GroupSpec::free_abelian(1);
  EXPECT_THROW(regular_representation(Z, lambda(Z, identity(Z))), Error);
}

TEST(Schatten, Examples) {
  const auto G = GroupSpec::cyclic_power(6, 1);
  const auto I = regular_representation(G, lambda(G, identity(G)));
  for (double p : {1.0, 2.0, 3.5, kInf}) EXPECT_NEAR(schatten_norm(I, p), 1.0, 1e-12);

  FourierCoeffs avg(G);
  for (const auto& g : enumerate_finite_group(G)) avg.set(g, 1.0 / 6);
  const auto P = regular_representation(G, avg);
  for (double p : {1.0, 2.0, 4.0}) EXPECT_NEAR(schatten_norm(P, p), std::pow(6.0, -1 / p), 1e-12);
  EXPECT_NEAR(schatten_norm(P, kInf), 1.0, 1e-12);

  const auto Z8 = GroupSpec::cyclic_power(8, 1);
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto x = random_coeffs(Z8, seed);
    EXPECT_NEAR(schatten_norm(regular_representation(Z8, x), 2), plancherel_norm(x), 1e-12);
  }
}

TEST(CrNorm, Examples) {
  const auto D = GroupSpec::dihedral(4);
  const auto x = regular_representation(D, random_coeffs(D, 5));
  const auto single = cr_sequence_norm({x}, 3);
  EXPECT_NEAR(single.column, schatten_norm(x, 3), 1e-10);
  EXPECT_NEAR(single.row, schatten_norm(x, 3), 1e-10);

  const auto rep = cr_sequence_norm({x, x, x, x}, 3);
  EXPECT_NEAR(rep.column, 2 * schatten_norm(x, 3), 1e-10);

  std::vector<GroupAlgebraMatrix> xs;
  double sq = 0;
  for (std::uint64_t s = 10; s < 14; ++s) {
    xs.push_back(regular_representation(D, random_coeffs(D, s)));
    sq += std::pow(schatten_norm(xs.back(), 2), 2);
  }
  const auto two = cr_sequence_norm(xs, 2);
  EXPECT_NEAR(two.value, std::sqrt(sq), 1e-12);
  EXPECT_NEAR(two.column, std::sqrt(sq), 1e-12);
  EXPECT_NEAR(two.row, std::sqrt(sq), 1e-12);

  const auto low = cr_sequence_norm(xs, 1.5);
  EXPECT_LE(low.value, std::min(low.column, low.row) + 1e-12);
  EXPECT_FALSE(low.splitting.empty());
}

TEST(CommutativeMaximal, Examples) {
  const auto G = GroupSpec::cyclic_power(16, 1);
  std::vector<Complex> f(16);
  for (std::size_t i = 0; i < 16; ++i) f[i] = static_cast<double>(i % 5);
  EXPECT_NEAR(commutative_maximal_norm(G, {f}, 3), lp_norm(f, 3), 1e-14);

  std::vector<std::vector<Complex>> nested;
  for (int r = 1; r <= 4; ++r) {
    std::vector<Complex> ind(16, 0.0);
    for (int i = 0; i < 3 * r; ++i) ind[i] = 1.0;
    nested.push_back(ind);
  }
  EXPECT_NEAR(commutative_maximal_norm(G, nested, 2), lp_norm(nested.back(), 2), 1e-14);

  const auto D = GroupSpec::dihedral(3);
  EXPECT_THROW(commutative_maximal_norm(D, {std::vector<Complex>(6, 1.0)}, 2), Error);
}

TEST(CommutativeMaximal, FejerMeansDominateEachMean) {
  const auto G = GroupSpec::cyclic_power(64, 1);
  const auto f = gaussian_sample(64, 3, 0);
  const auto means = fejer_means(64, 1, f);
  const double M = commutative_maximal_norm(G, means, 2);
  double sum = 0;
  for (const auto& F : means) {
    EXPECT_GE(M + 1e-12, lp_norm(F, 2));
    sum += lp_norm(F, 2);
  }
  EXPECT_LE(M, sum);
}

TEST(CyclicFejer, MatchesIntegerFormulaWhenNoWrap) {
  for (int N = 0; N <= 5; ++N)
    for (int k = -12; k <= 12; ++k)
      EXPECT_NEAR(cyclic_fejer_symbol(64, N, k), std::max(0.0, 1 - std::abs(k) / (2.0 * N + 1)), 1e-15);
}

TEST(MaximalExperiment, ConstantAndDelta) {
  const auto means = fejer_means(32, 1, std::vector<Complex>(32, 2.5));
  for (const auto& F : means)
    for (const auto& v : F) EXPECT_NEAR(std::abs(v - Complex(2.5)), 0, 1e-12);

  std::vector<Complex> delta(32, 0.0);
  delta[0] = 1.0;
  const auto dm = fejer_means(32, 1, delta);
  std::vector<Complex> sup(32, 0.0);
  for (const auto& F : dm)
    for (std::size_t i = 0; i < 32; ++i) sup[i] = std::max(std::abs(sup[i]), std::abs(F[i]));
  EXPECT_NEAR(lp_norm(sup, kInf) / lp_norm(delta, kInf), 1.0, 1e-12);
}

TEST(MaximalExperiment, SeededAndStableInSize) {
  const auto a = fejer_maximal_experiment(64, 1, 2, 20, 42);
  const auto b = fejer_maximal_experiment(64, 1, 2, 20, 42);
  EXPECT_EQ(a.ratios, b.ratios);
  EXPECT_GE(a.min_ratio, 1.0 - 1e-12);
  const auto c = fejer_maximal_experiment(128, 1, 2, 20, 42);
  EXPECT_LE(std::max(a.max_ratio, c.max_ratio) / std::min(a.max_ratio, c.max_ratio), 1.25);
}
