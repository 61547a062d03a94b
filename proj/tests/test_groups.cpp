#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "ncmult/error.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/heisenberg.hpp"
#include "ncmult/parse.hpp"

using namespace ncmult;

namespace {

// Plain BFS over the Cayley graph, independent of the library's ball routine.
std::map<GroupElement, int> bfs_ball(const GroupSpec& G, int N) {
  std::map<GroupElement, int> dist;
  std::deque<GroupElement> queue;
  dist[identity(G)] = 0;
  queue.push_back(identity(G));
  const auto gens = generators(G);
  while (!queue.empty()) {
    GroupElement g = queue.front();
    queue.pop_front();
    const int d = dist[g];
    if (d == N) continue;
    for (const auto& s : gens) {
      GroupElement h = multiply(G, g, s);
      h.set_cached_length(-1);
      if (dist.emplace(h, d + 1).second) queue.push_back(h);
    }
  }
  return dist;
}

GroupElement word(const GroupSpec& G, std::vector<std::int64_t> letters) { return free_word(G, letters); }

}  // namespace

TEST(Groups, FreeInverseCancels) {
  const auto G = GroupSpec::free(2);
  EXPECT_TRUE(is_identity(G, multiply(G, word(G, {1}), word(G, {-1}))));
}

TEST(Groups, HeisenbergCommutatorTimesReverseIsIdentity) {
  const auto G = GroupSpec::heisenberg3();
  const auto a = heisenberg_element(1, 0, 0);
  const auto b = heisenberg_element(0, 1, 0);
  EXPECT_TRUE(is_identity(G, multiply(G, commutator(G, a, b), commutator(G, b, a))));
}

TEST(Groups, CyclicArithmetic) {
  const auto G = GroupSpec::cyclic_power(5, 1);
  const auto r = multiply(G, vector_element(G, {3}), vector_element(G, {4}));
  EXPECT_EQ(r.normal_form(), std::vector<std::int64_t>{(3 + 4) % 5});
}

TEST(Groups, HeisenbergMatchesMatrixProduct) {
  const auto G = GroupSpec::heisenberg3();
  // (x, y, w) matrix coordinates with w = z + xy.
  auto mat = [](const GroupElement& g) {
    return std::array<std::int64_t, 3>{g[0], g[1], g[2] + g[0] * g[1]};
  };
  for (int x1 = -2; x1 <= 2; ++x1)
    for (int y1 = -2; y1 <= 2; ++y1)
      for (int z1 = -2; z1 <= 2; z1 += 2)
        for (int x2 = -2; x2 <= 2; ++x2)
          for (int y2 = -2; y2 <= 2; y2 += 2) {
            const auto g = heisenberg_element(x1, y1, z1);
            const auto h = heisenberg_element(x2, y2, -z1);
            const auto A = mat(g), B = mat(h), P = mat(multiply(G, g, h));
            EXPECT_EQ(P[0], A[0] + B[0]);
            EXPECT_EQ(P[1], A[1] + B[1]);
            EXPECT_EQ(P[2], A[2] + B[2] + A[0] * B[1]);
          }
}

TEST(Groups, BallSizes) {
  for (int N = 0; N <= 5; ++N) {
    EXPECT_EQ(ball(GroupSpec::free(2), N).size(), static_cast<std::size_t>(2 * std::pow(3, N) - 1));
    EXPECT_EQ(ball(GroupSpec::free_abelian(2), N).size(), static_cast<std::size_t>(2 * N * N + 2 * N + 1));
  }
  EXPECT_EQ(ball(GroupSpec::free(2), 1).size(), 5u);
  EXPECT_EQ(ball(GroupSpec::free_abelian(2), 2).size(), 13u);
  for (const auto& G : {GroupSpec::free(3), GroupSpec::heisenberg3(), GroupSpec::dihedral(5)}) {
    const auto B = ball(G, 0);
    ASSERT_EQ(B.size(), 1u);
    EXPECT_TRUE(is_identity(G, B[0]));
  }
}

TEST(Groups, BallAgreesWithBfs) {
  for (const auto& G : {GroupSpec::free(2), GroupSpec::free_abelian(3), GroupSpec::heisenberg3(),
                        GroupSpec::cyclic_power(4, 2), GroupSpec::dihedral(6)}) {
    const int N = G.kind == GroupKind::heisenberg3 ? 5 : 3;
    const auto B = ball(G, N);
    const auto oracle = bfs_ball(G, N);
    ASSERT_EQ(B.size(), oracle.size()) << G.label();
    for (std::size_t i = 0; i < B.size(); ++i) EXPECT_EQ(B.length(i), oracle.at(B[i])) << G.label();
  }
}

TEST(Groups, CubeFamily) {
  const auto B = ball(GroupSpec::free_abelian(2), 2, {kDefaultBallCap, BallFamily::cube});
  EXPECT_EQ(B.size(), 25u);
  EXPECT_THROW(ball(GroupSpec::free(2), 2, {kDefaultBallCap, BallFamily::cube}), Error);
}

TEST(Groups, BallCapNamesRadius) {
  try {
    ball(GroupSpec::free(3), 12, {1000, BallFamily::word});
    FAIL() << "expected a resource error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource);
    EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
  }
}

TEST(Groups, WordLengths) {
  const auto F = GroupSpec::free(2);
  EXPECT_EQ(word_length(F, identity(F)), 0);
  EXPECT_EQ(word_length(F, word(F, {1, 2, -1})), 3);
  const auto H = GroupSpec::heisenberg3();
  EXPECT_EQ(word_length(H, heisenberg_element(0, 0, 1)), 4);
  EXPECT_EQ(bfs_distance(H, heisenberg_element(0, 0, 1)), 4);
}

TEST(Groups, MalformedNormalForm) {
  const auto F = GroupSpec::free(2);
  EXPECT_THROW(validate(F, GroupElement({1, -1})), Error);
  EXPECT_THROW(validate(F, GroupElement({3})), Error);
  const auto Z = GroupSpec::cyclic_power(5, 1);
  EXPECT_THROW(validate(Z, GroupElement({5})), Error);
}

TEST(Groups, IntersectionCounts) {
  const auto Z = GroupSpec::free_abelian(1);
  EXPECT_EQ(ball_intersection_count(Z, 2, vector_element(Z, {1})), 4u);
  const auto F = GroupSpec::free(2);
  const auto B = ball(F, 2);
  EXPECT_EQ(ball_intersection_count(B, identity(F)), B.size());
  EXPECT_EQ(ball_intersection_count(B, word(F, {1, 2, 1, 2, 1})), 0u);
}

TEST(Groups, HeisenbergTableMatchesBfs) {
  const auto H = GroupSpec::heisenberg3();
  const HeisenbergBallTable T(6);
  EXPECT_TRUE(T.fibers_are_intervals());
  const auto oracle = bfs_ball(H, 6);
  for (int N = 0; N <= 6; ++N) {
    std::size_t count = 0;
    for (const auto& [g, d] : oracle) count += d <= N;
    EXPECT_EQ(T.ball_size(N), count);
  }
  for (const auto& [g, d] : oracle) EXPECT_EQ(T.distance(g[0], g[1], g[2]), d);

  const auto domain = ball(H, 4);
  const auto counts = T.intersection_counts(3, domain);
  const auto K3 = ball(H, 3);
  for (std::size_t i = 0; i < domain.size(); ++i) EXPECT_EQ(counts[i], ball_intersection_count(K3, domain[i]));
}

TEST(Groups, HeisenbergGrowthIsQuartic) {
  const HeisenbergBallTable T(24);
  double c1 = 1e300, c2 = 0;
  for (int N = 4; N <= 24; ++N) {
    const double r = static_cast<double>(T.ball_size(N)) / std::pow(N, 4);
    c1 = std::min(c1, r);
    c2 = std::max(c2, r);
  }
  // Frozen from the interval table, itself checked against BFS above.
  EXPECT_DOUBLE_EQ(c1, 0.42549375);
  EXPECT_DOUBLE_EQ(c2, 0.52734375);
  EXPECT_EQ(T.ball_size(24), 141225u);

  const auto B = ball(GroupSpec::heisenberg3(), 10);
  const auto fit = growth_constants(B, 4, 4, 10);
  for (int N = 4; N <= 10; ++N) {
    const double r = static_cast<double>(T.ball_size(N)) / std::pow(N, 4);
    EXPECT_GE(r, fit.c1 - 1e-12);
    EXPECT_LE(r, fit.c2 + 1e-12);
  }
}

TEST(Parse, GroupGrammar) {
  EXPECT_EQ(parse_group("free:2"), GroupSpec::free(2));
  EXPECT_EQ(parse_group("zd:3"), GroupSpec::free_abelian(3));
  EXPECT_EQ(parse_group("heis3"), GroupSpec::heisenberg3());
  EXPECT_EQ(parse_group("zmod:8^2"), GroupSpec::cyclic_power(8, 2));
  EXPECT_EQ(parse_group("dihedral:6"), GroupSpec::dihedral(6));
  EXPECT_EQ(parse_group("zmod:8^2").label(), "zmod:8^2");
}

TEST(Parse, GrammarErrorsCarryPosition) {
  try {
    parse_group("free:x");
    FAIL();
  } catch (const GrammarError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::grammar);
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_group("heis4"), GrammarError);
  EXPECT_THROW(parse_symbol("fejer:round"), GrammarError);
  EXPECT_THROW(parse_measure("atoms:[(-1,0.5)"), GrammarError);
  EXPECT_THROW(parse_body("lq:q=4"), GrammarError);
}

TEST(Parse, SymbolsRingsBodies) {
  EXPECT_EQ(parse_symbol("br:delta=2").delta, 2.0);
  EXPECT_EQ(parse_symbol("fejer:cube").family, BallFamily::cube);
  const auto radial = parse_symbol("radial:atoms:[(-1,0.5),(1,0.5)]");
  ASSERT_EQ(radial.measure.atoms.size(), 2u);
  EXPECT_DOUBLE_EQ(radial.measure.atoms[0].first, -1.0);
  EXPECT_EQ(parse_measure("grid:5").atoms.size(), 5u);
  EXPECT_EQ(parse_ring("su2:40").max_label, 40);
  const auto dual = parse_ring("groupdual:zd:1@20");
  EXPECT_FALSE(dual.su2);
  EXPECT_EQ(dual.radius, 20);
  const auto body = parse_body("lq:q=4,d=16");
  EXPECT_EQ(body.q, 4);
  EXPECT_EQ(body.d, 16);
  EXPECT_EQ(body.label(), "lq:q=4,d=16");
}
