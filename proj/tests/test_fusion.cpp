#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ncmult/error.hpp"
#include "ncmult/fourier.hpp"
#include "ncmult/fusion.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/parse.hpp"
#include "ncmult/symbols.hpp"

using namespace ncmult;

namespace {

Label label_of(const FusionRing& ring, const GroupSpec& G, const GroupElement& g) {
  const auto l = ring.find(format_element(G, g));
  EXPECT_TRUE(l.has_value()) << format_element(G, g);
  return l.value_or(0);
}

}  // namespace

TEST(Su2, ClebschGordan) {
  const auto R = su2_fusion_ring(10);
  EXPECT_EQ(R.N(1, 1, 0), 1);
  EXPECT_EQ(R.N(1, 1, 1), 0);
  EXPECT_EQ(R.N(1, 1, 2), 1);
  std::int64_t s = 0;
  for (Label c = 0; c < R.size(); ++c) s += R.N(1, 1, c) * R.dim(c);
  EXPECT_EQ(s, R.dim(1) * R.dim(1));
  EXPECT_EQ(s, 4);
  for (Label b = 0; b < R.size(); ++b)
    for (Label c = 0; c < R.size(); ++c) EXPECT_EQ(R.N(0, b, c), b == c ? 1 : 0);
  for (Label a = 0; a <= 10; ++a) EXPECT_EQ(R.dim(a), static_cast<std::int64_t>(a) + 1);
}

TEST(GroupDual, FiniteGroups) {
  const auto Z3 = GroupSpec::cyclic_power(3, 1);
  const auto R = group_dual_ring(Z3);
  const auto one = label_of(R, Z3, vector_element(Z3, {1}));
  const auto two = label_of(R, Z3, vector_element(Z3, {2}));
  EXPECT_EQ(R.N(one, one, two), 1);

  const auto D = GroupSpec::dihedral(3);
  const auto RD = group_dual_ring(D);
  for (const auto& g : enumerate_finite_group(D)) {
    const Label a = label_of(RD, D, g);
    for (Label x = 0; x < RD.size(); ++x) EXPECT_EQ(RD.N(RD.conjugate(a), a, x), x == RD.trivial() ? 1 : 0);
    for (const auto& h : enumerate_finite_group(D)) {
      const Label b = label_of(RD, D, h);
      const Label c = label_of(RD, D, multiply(D, g, h));
      for (Label x = 0; x < RD.size(); ++x) EXPECT_EQ(RD.N(a, b, x), x == c ? 1 : 0);
    }
  }
}

TEST(WeightedCardinality, Examples) {
  const auto R = su2_fusion_ring(8);
  EXPECT_EQ(weighted_cardinality(R, {0, 1}), 5);
  EXPECT_EQ(weighted_cardinality(R, {}), 0);
  const auto G = group_dual_ring(GroupSpec::cyclic_power(12, 1));
  EXPECT_EQ(weighted_cardinality(G, {0, 3, 5, 7}), 4);
}

TEST(Boundary, Examples) {
  const auto R = su2_fusion_ring(8);
  EXPECT_EQ(boundary(R, {0, 1}, 1), (LabelSet{1, 2}));
  EXPECT_TRUE(boundary(R, {0, 1, 2}, 0).empty());
  EXPECT_EQ(folner_ratio(R, {0, 1, 2}, 0), Rational(0));

  const auto Z = GroupSpec::free_abelian(1);
  const auto W = group_dual_ring(Z, 20);
  const int N = 5;
  LabelSet F;
  for (int k = -N; k <= N; ++k) F.push_back(label_of(W, Z, vector_element(Z, {k})));
  std::sort(F.begin(), F.end());
  const Label plus = label_of(W, Z, vector_element(Z, {1}));
  const Label minus = label_of(W, Z, vector_element(Z, {-1}));
  std::set<Label> both;
  for (Label l : boundary(W, F, plus)) both.insert(l);
  EXPECT_EQ(both, (std::set<Label>{label_of(W, Z, vector_element(Z, {N})), label_of(W, Z, vector_element(Z, {-N - 1}))}));
  for (Label l : boundary(W, F, minus)) both.insert(l);
  std::set<Label> expected;
  for (int k : {N, -N, N + 1, -N - 1}) expected.insert(label_of(W, Z, vector_element(Z, {k})));
  EXPECT_EQ(both, expected);
}

TEST(Boundary, WindowErrorNamesOffender) {
  const auto R = su2_fusion_ring(5);
  try {
    boundary(R, {0, 1, 2, 3, 4, 5}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::window);
    EXPECT_NE(std::string(e.what()).find("5"), std::string::npos);
  }
  EXPECT_FALSE(boundary_resolvable(R, {0, 1, 2, 3, 4, 5}, 1));
}

TEST(FolnerRatio, Su2) {
  const auto R = su2_fusion_ring(40);
  EXPECT_EQ(folner_ratio(R, folner_set(R, 4), 1), Rational(25 + 36, 55));
  EXPECT_LT(folner_ratio(R, folner_set(R, 32), 1), folner_ratio(R, folner_set(R, 8), 1));
}

TEST(QuantumFejer, Examples) {
  const auto R = su2_fusion_ring(12);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(quantum_fejer(R, folner_set(R, n), 0), Rational(1));
  EXPECT_EQ(quantum_fejer(R, {0, 1}, 1), Rational(2, 5));
}

TEST(QuantumFejer, GroupDualEqualsFejerSymbol) {
  for (std::int64_t m : {7, 12}) {
    const auto G = GroupSpec::cyclic_power(m, 1);
    const auto R = group_dual_ring(G);
    for (int n = 0; n <= 4; ++n)
      for (const auto& g : enumerate_finite_group(G))
        EXPECT_EQ(quantum_fejer(R, folner_set(R, n), label_of(R, G, g)), fejer_symbol(G, BallFamily::word, n, g));
  }
  const auto Z = GroupSpec::free_abelian(1);
  const auto W = group_dual_ring(Z, 20);
  for (int n = 0; n <= 8; ++n)
    for (int k = -8; k <= 8; ++k) {
      const auto g = vector_element(Z, {k});
      EXPECT_EQ(quantum_fejer(W, folner_set(W, n), label_of(W, Z, g)), fejer_symbol(Z, BallFamily::word, n, g));
    }
}

TEST(ValidateRing, CleanRings) {
  EXPECT_TRUE(validate_ring(su2_fusion_ring(40)).pass);
  EXPECT_EQ(validate_ring(su2_fusion_ring(40)).best_constant, 0.0);
  EXPECT_TRUE(validate_ring(group_dual_ring(GroupSpec::cyclic_power(12, 1))).pass);
  EXPECT_TRUE(validate_ring(make_ring(parse_ring("groupdual:dihedral:6"))).pass);
}

TEST(ValidateRing, FaultInjectionFlagsExactlyTheOrbit) {
  auto R = su2_fusion_ring(20);
  R.set_N(1, 1, 2, 0);
  const auto r = validate_ring(R);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.extra("reciprocity_orbits"), 1.0);
  EXPECT_EQ(r.extra("conjugation"), 0.0);
  EXPECT_EQ(r.extra("unit"), 0.0);
  const bool named = std::any_of(r.notes.begin(), r.notes.end(),
                                 [](const std::string& s) { return s.find("reciprocity orbit") != std::string::npos; });
  EXPECT_TRUE(named);

  auto G = group_dual_ring(GroupSpec::cyclic_power(12, 1));
  const Label a = 3, b = 4;
  Label c = 0;
  while (G.N(a, b, c) != 0 || c == G.trivial()) ++c;
  G.set_N(a, b, c, 1);
  const auto rg = validate_ring(G);
  EXPECT_EQ(rg.extra("reciprocity_orbits"), 1.0);
  EXPECT_EQ(rg.extra("dimension_pairs"), 1.0);
}

TEST(FusionChain, HoldsOnSu2) {
  const auto R = su2_fusion_ring(48);
  const auto rep = fusion_chain(R, 24);
  EXPECT_TRUE(rep.all_hold);
  EXPECT_TRUE(rep.trivial_is_one);
  EXPECT_FALSE(rep.rows.empty());
  for (const auto& row : rep.rows) {
    EXPECT_GE(row.phi, Rational(0));
    EXPECT_LE(row.phi, Rational(1));
  }
}

TEST(FusionChain, FejerIncreasesTowardOne) {
  const auto R = su2_fusion_ring(64);
  for (Label pi : {1, 2, 5}) {
    Rational prev(0);
    for (int n = 8; n <= 48; n += 8) {
      const auto v = quantum_fejer(R, folner_set(R, n), pi);
      EXPECT_GE(v, prev);
      prev = v;
    }
    EXPECT_GT(prev.to_double(), 0.9);
  }
}
