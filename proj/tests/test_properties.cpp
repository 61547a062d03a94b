#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "ncmult/audits.hpp"
#include "ncmult/fourier.hpp"
#include "ncmult/fusion.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/positivity.hpp"
#include "ncmult/symbols.hpp"

using namespace ncmult;

namespace {

const std::vector<GroupSpec>& sample_groups() {
  static const std::vector<GroupSpec> groups{GroupSpec::free(2),         GroupSpec::free_abelian(2),
                                             GroupSpec::heisenberg3(),   GroupSpec::cyclic_power(6, 2),
                                             GroupSpec::dihedral(7)};
  return groups;
}

PointSymbol fejer_point_symbol(const GroupSpec& G, int N) {
  return memoize([G, N](const GroupElement& g) { return fejer_symbol(G, BallFamily::word, N, g).to_double(); });
}

}  // namespace

TEST(Property, WordLengthIsSubadditive) {
  std::mt19937_64 rng(1);
  for (const auto& G : sample_groups()) {
    const auto B = ball(G, 4);
    std::uniform_int_distribution<std::size_t> pick(0, B.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& g = B[pick(rng)];
      const auto& h = B[pick(rng)];
      EXPECT_LE(word_length(G, multiply(G, g, h)), word_length(G, g) + word_length(G, h)) << G.label();
    }
  }
}

TEST(Property, BallsAreNested) {
  for (const auto& G : sample_groups()) {
    const auto small = ball(G, 3);
    const auto large = ball(G, 4);
    ASSERT_LE(small.size(), large.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      EXPECT_TRUE(large.contains(small[i]));
      EXPECT_EQ(large[i], small[i]) << "prefix ordering, " << G.label();
    }
  }
}

TEST(Property, BfsAgreesWithNormalFormLength) {
  for (const auto& G : {GroupSpec::free(3), GroupSpec::free_abelian(3), GroupSpec::cyclic_power(5, 2)}) {
    const auto B = ball(G, 3);
    for (std::size_t i = 0; i < B.size(); ++i) EXPECT_EQ(bfs_distance(G, B[i]), B.length(i)) << G.label();
  }
}

TEST(Property, FejerSymbolRange) {
  for (const auto& G : sample_groups()) {
    const auto D = ball(G, 5);
    for (int N : {1, 2}) {
      for (std::size_t i = 0; i < D.size(); ++i) {
        const auto m = fejer_symbol(G, BallFamily::word, N, D[i]);
        EXPECT_GE(m, Rational(0));
        EXPECT_LE(m, Rational(1));
        EXPECT_EQ(m, fejer_symbol(G, BallFamily::word, N, inverse(G, D[i])));
        if (D.length(i) > 2 * N) {
          EXPECT_EQ(m, Rational(0));
        }
      }
    }
  }
}

TEST(Property, MultiorderExpansionEqualsRecursion) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> len(0.1, 30), tdist(0.5, 50);
  std::uniform_int_distribution<int> sdist(0, 4);
  std::vector<double> lengths(6);
  for (double& l : lengths) l = len(rng);
  for (auto kind : {SemigroupKind::heat, SemigroupKind::poisson}) {
    const auto fam = semigroup_family(lengths, kind);
    for (int trial = 0; trial < 60; ++trial) {
      std::set<int, std::greater<>> picked;
      while (picked.size() < static_cast<std::size_t>(1 + trial % 3)) picked.insert(sdist(rng));
      const std::vector<int> s(picked.begin(), picked.end());
      const double t = tdist(rng);
      for (std::size_t p = 0; p < lengths.size(); ++p)
        EXPECT_NEAR(multiorder_difference(fam, s, t, p), multiorder_difference_recursive(fam, s, t, p), 1e-12);
    }
  }
}

TEST(Property, AuditConstantsGrowWithDomain) {
  const auto G = GroupSpec::free(2);
  double prev = 0;
  for (int R = 1; R <= 4; ++R) {
    const auto B = ball(G, R);
    auto field = std::make_shared<FejerField>(B, BallOptions{}, 5);
    const auto fam = fejer_family(field, [](int N) { return N; }, "fejer");
    const double beta = audit_A1(fam, word_length_on(B), 1, ball_domain(B), {1, 5}).best_constant;
    EXPECT_GE(beta, prev);
    prev = beta;
  }
}

TEST(Property, FejerSymbolsArePositiveDefinite) {
  for (const auto& G : sample_groups()) {
    const int R = G.kind == GroupKind::free ? 3 : 4;
    const auto B = ball(G, R);
    for (int N : {1, 2, 3}) EXPECT_GE(is_positive_definite(fejer_point_symbol(G, N), B).min_eigenvalue, -1e-10);
  }
}

TEST(Property, SchurProductsAndConvexCombinations) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  const auto G = GroupSpec::heisenberg3();
  const auto B = ball(G, 3);
  const auto a = fejer_point_symbol(G, 1);
  const auto b = fejer_point_symbol(G, 3);
  for (int trial = 0; trial < 4; ++trial) {
    const double w = u(rng);
    EXPECT_TRUE(is_positive_definite([&](const GroupElement& g) { return a(g) * b(g); }, B).positive);
    EXPECT_TRUE(
        is_positive_definite([&](const GroupElement& g) { return w * a(g) + (1 - w) * b(g); }, B).positive);
  }
  const auto F = GroupSpec::free(2);
  const auto BF = ball(F, 3);
  const PointSymbol fheat = [F](const GroupElement& g) { return std::exp(-0.4 * word_length(F, g)); };
  const auto fa = fejer_point_symbol(F, 2);
  EXPECT_TRUE(is_positive_definite([&](const GroupElement& g) { return fa(g) * fheat(g); }, BF).positive);
}

TEST(Property, RadialKernelsPositiveDefiniteOnFreeGroup) {
  const auto F = GroupSpec::free(2);
  const auto B = ball(F, 3);
  const double t0 = min_t0().t0;
  for (const auto& nu : {dirac_measure(0), grid_measure(5)})
    for (double t : {t0, 2 * t0, 4 * t0}) {
      const PointSymbol m = [&nu, t](const GroupElement& g) {
        return radial_kernel_symbol(nu, t, static_cast<int>(g.size()));
      };
      EXPECT_TRUE(is_positive_definite(m, B).positive) << nu.description << " t=" << t;
    }
}

TEST(Property, SchoenbergForward) {
  const std::vector<double> grid{0.125, 0.5, 2, 8};
  const auto F = GroupSpec::free(2);
  EXPECT_TRUE(schoenberg_check([F](const GroupElement& g) { return double(word_length(F, g)); }, ball(F, 3), grid).pass);
  const auto Z = GroupSpec::free_abelian(2);
  EXPECT_TRUE(schoenberg_check([Z](const GroupElement& g) { return double(word_length(Z, g)); }, ball(Z, 3), grid).pass);
  const auto Z1 = GroupSpec::free_abelian(1);
  EXPECT_TRUE(schoenberg_check([](const GroupElement& g) { return double(g[0] * g[0]); }, ball(Z1, 6), grid).pass);
}

TEST(Property, MultipliersContractPlancherel) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u(-1, 1);
  const auto G = GroupSpec::free(2);
  const auto B = ball(G, 3);
  for (int trial = 0; trial < 20; ++trial) {
    FourierCoeffs x(G);
    for (std::size_t i = 0; i < B.size(); ++i) x.set(B[i], {n01(rng), n01(rng)});
    std::map<GroupElement, double> table;
    for (std::size_t i = 0; i < B.size(); ++i) table[B[i]] = u(rng);
    const auto y = apply_multiplier([&](const GroupElement& g) { return table.at(g); }, x, &B);
    EXPECT_LE(plancherel_norm(y), plancherel_norm(x) + 1e-12);
  }
}

TEST(Property, PositiveDefiniteMultipliersPreservePositivity) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (const auto& G : {GroupSpec::cyclic_power(8, 1), GroupSpec::dihedral(4)}) {
    const auto elems = enumerate_finite_group(G);
    const auto m = fejer_point_symbol(G, 1);
    for (int trial = 0; trial < 5; ++trial) {
      // x = y* y has positive regular representation.
      FourierCoeffs y(G);
      for (const auto& g : elems) y.set(g, {n01(rng), n01(rng)});
      FourierCoeffs x(G);
      for (const auto& [g, a] : y.terms())
        for (const auto& [h, b] : y.terms()) x.add(multiply(G, inverse(G, g), h), std::conj(a) * b);
      const auto Tx = regular_representation(G, apply_multiplier(m, x));
      HermitianMatrix H(Tx.n);
      for (std::size_t i = 0; i < Tx.n; ++i)
        for (std::size_t j = i; j < Tx.n; ++j) H.set(i, j, 0.5 * (Tx(i, j) + std::conj(Tx(j, i))));
      EXPECT_GE(eigen_decompose(H).eigenvalues.front(), -1e-9 * H.max_abs()) << G.label();
    }
  }
}

TEST(Property, CommutativeMaximalSandwich) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n01;
  const auto G = GroupSpec::cyclic_power(32, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<Complex>> fs(4, std::vector<Complex>(32));
    for (auto& f : fs)
      for (auto& v : f) v = {n01(rng), n01(rng)};
    for (double p : {1.0, 2.0, 3.0}) {
      const double M = commutative_maximal_norm(G, fs, p);
      double mx = 0, sum = 0;
      for (const auto& f : fs) {
        mx = std::max(mx, lp_norm(f, p));
        sum += lp_norm(f, p);
      }
      EXPECT_GE(M + 1e-12, mx);
      EXPECT_LE(M, sum + 1e-12);
    }
  }
}

TEST(Property, QuantumFejerChainOnRandomInstances) {
  std::mt19937_64 rng(7);
  const auto R = su2_fusion_ring(60);
  std::uniform_int_distribution<int> ndist(0, 25);
  std::uniform_int_distribution<std::size_t> pdist(0, 30);
  for (int trial = 0; trial < 60; ++trial) {
    const auto K = folner_set(R, ndist(rng));
    const Label pi = pdist(rng);
    if (!boundary_resolvable(R, K, pi)) continue;
    const auto phi = quantum_fejer(R, K, pi);
    EXPECT_GE(phi, Rational(0));
    EXPECT_LE(phi, Rational(1));
    EXPECT_LE(Rational(1) - phi, folner_ratio(R, K, pi));
  }
}
