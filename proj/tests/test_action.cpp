#include <gtest/gtest.h>

#include <sstream>

#include "acyl/action.hpp"
#include "acyl/error.hpp"
#include "oracles.hpp"

using namespace acyl;

namespace {

std::int64_t tree_dist(const std::string& u, const std::string& v) {
  return static_cast<std::int64_t>(oracle::reduce(oracle::inverse(u) + v).size());
}

std::string mul(const std::string& u, const std::string& v) { return oracle::reduce(u + v); }

std::vector<std::uint64_t> cumulative(const std::vector<int>& lengths, int L) {
  std::vector<std::uint64_t> c(L, 0);
  for (int len : lengths)
    for (int l = std::max(len, 1); l <= L; ++l) ++c[l - 1];
  return c;
}

}  // namespace

TEST(FinitenessProbe, StabilizationWindow) {
  EXPECT_TRUE(is_stabilized({1, 3, 3, 3, 3}, 3));
  EXPECT_FALSE(is_stabilized({1, 3, 3, 3, 4}, 3));
  EXPECT_FALSE(is_stabilized({3, 3}, 3));
  auto p = make_probe("x", {0, 1, 1, 2}, 4, 2);
  EXPECT_EQ(p.counts, (std::vector<std::uint64_t>{3, 4, 4, 4}));
  EXPECT_TRUE(p.stabilized);
  EXPECT_TRUE(p.monotone());
}

TEST(BoundaryAction, EnumerationCountsReducedWords) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  EXPECT_EQ(act.enumerate(1).size(), 5u);
  EXPECT_EQ(act.enumerate(2).size(), 17u);
  EXPECT_EQ(act.enumerate(4).size(), oracle::words_up_to(4).size());
  // a, A, b, B, ab and its inverse BA are six distinct maps besides the identity.
  BoundaryAction redundant(m, {"a", "b", "ab"});
  EXPECT_EQ(redundant.enumerate(1).size(), 7u);
  BoundaryAction trivial(m, {});
  EXPECT_EQ(trivial.enumerate(5).size(), 1u);
}

TEST(BoundaryAction, ApplyPointMatchesPrefixOracle) {
  BoundaryModel m(3, 9);
  BoundaryAction act(m);
  for (const auto& g : oracle::words_up_to(2)) {
    for (std::size_t i = 0; i < m.points().size(); ++i) {
      const auto& p = m.points()[i];
      oracle::Ray r{p, std::string(1, p.back())};
      EXPECT_EQ(act.apply_point(g, i), oracle::act_prefix(g, r, 3));
    }
  }
}

TEST(PermutationAction, TorusTranslationsFormZ4xZ4) {
  auto torus = instances::torus(4, 4);
  auto act = torus_translations(torus, 4, 4);
  for (int l = 0; l <= 5; ++l) {
    // (dx, dy) in Z4 x Z4 with cyclic |dx| + |dy| <= l.
    std::size_t expect = 0;
    for (int dx = 0; dx < 4; ++dx)
      for (int dy = 0; dy < 4; ++dy) expect += std::min(dx, 4 - dx) + std::min(dy, 4 - dy) <= l ? 1 : 0;
    EXPECT_EQ(act.enumerate(l).size(), expect) << l;
  }
  auto el = act.evaluate("x.y^-1");
  EXPECT_EQ(el.map[torus.index("0")], torus.index("13"));
}

TEST(PermutationAction, RejectsNonIsometries) {
  auto c = instances::cycle(5);
  std::vector<Vertex> swap{1, 0, 2, 3, 4};
  EXPECT_THROW(PermutationAction(c, {{"s", swap}}), Error);
  std::vector<Vertex> collapse{0, 0, 2, 3, 4};
  EXPECT_THROW(PermutationAction(c, {{"s", collapse}}), Error);
}

TEST(ActionSpec, ParseAndWrite) {
  std::istringstream in("r=perm:0->1,1->2,2->3,3->4,4->0\nt=translate:1,-2\nm=leftmul:ab\n");
  auto spec = ActionSpec::parse(in);
  ASSERT_EQ(spec.generators.size(), 3u);
  EXPECT_EQ(spec.generators[1].dy, -2);
  EXPECT_EQ(spec.generators[2].word, "ab");
  std::ostringstream out;
  spec.write(out);
  std::istringstream back(out.str());
  EXPECT_EQ(ActionSpec::parse(back).generators.size(), 3u);
  std::istringstream bad("x=rotate:1\n");
  EXPECT_THROW(ActionSpec::parse(bad), Error);
  auto cyc = instances::cycle(5);
  ActionSpec rot;
  rot.generators.push_back(spec.generators[0]);
  EXPECT_EQ(PermutationAction::from_spec(cyc, rot).enumerate(5).size(), 5u);
}

TEST(TreeProbes, AcylindricityMatchesBruteForce) {
  const int L = 6;
  for (int eps = 0; eps <= 2; ++eps) {
    const std::string y = "aaaaaa";
    std::vector<int> lengths;
    for (const auto& h : oracle::words_up_to(L)) {
      if (tree_dist("", h) <= eps && tree_dist(y, mul(h, y)) <= eps) lengths.push_back(static_cast<int>(h.size()));
    }
    auto p = free_group_acylindricity_probe(Rational(eps), Rational(6), "", y, L);
    EXPECT_EQ(p.counts, cumulative(lengths, L)) << eps;
    EXPECT_TRUE(p.stabilized);
  }
  EXPECT_THROW(free_group_acylindricity_probe(Rational(1), Rational(8), "", "aa", 4), Error);
}

TEST(TreeProbes, WpdMatchesBruteForce) {
  const int L = 6;
  for (const std::string g : {"a", "ab"}) {
    for (int K : {1, 3}) {
      const std::string gk = f2::power(g, K);
      std::vector<int> lengths;
      for (const auto& h : oracle::words_up_to(L)) {
        if (tree_dist("", h) <= 1 && tree_dist(gk, mul(h, gk)) <= 1) lengths.push_back(static_cast<int>(h.size()));
      }
      auto p = free_group_wpd_probe(g, "", Rational(1), K, L);
      EXPECT_EQ(p.base.counts, cumulative(lengths, L)) << g << " K=" << K;
    }
  }
  auto moved = free_group_wpd_probe("a", "", Rational(3), 4, L, 3, std::string("b"));
  ASSERT_TRUE(moved.moved.has_value());
  EXPECT_EQ(moved.moved_epsilon, Rational(1));
  EXPECT_TRUE(moved.transfer_holds);
}

TEST(TreeProbes, GraphWpdOnTorusCountsStabilizer) {
  // Translations of a torus: every element moves every vertex by the same amount.
  auto torus = instances::torus(4, 4);
  auto act = torus_translations(torus, 4, 4);
  auto p = wpd_probe(act, "x", torus.index("0"), Rational(1), 2, 6);
  EXPECT_EQ(p.base.final_count(), 5u);  // identity and the four unit moves
}

TEST(NorthSouth, LeastNMatchesPointOracle) {
  BoundaryModel m(5, 14);
  const int n_max = 8;
  auto cert = detect_north_south(m, "a", {1, 2, 3}, n_max);
  ASSERT_EQ(cert.kind, DynamicsCertificate::Kind::kNorthSouth);
  EXPECT_EQ(cert.fixed_points, (std::vector<std::string>{"aaaaa", "AAAAA"}));
  ASSERT_EQ(cert.pairs.size(), 3u);
  for (const auto& pair : cert.pairs) {
    const int d = pair.depth;
    EXPECT_EQ(pair.repelling_cylinder, std::string(d, 'A'));
    EXPECT_EQ(pair.attracting_cylinder, std::string(d, 'a'));
    // Least N such that a^n pushes every point outside Cyl(A^d) into Cyl(a^d) for N <= n <= n_max.
    int oracle_n = n_max + 1;
    for (int N = n_max; N >= 1; --N) {
      bool ok = true;
      for (const auto& p : m.points()) {
        if (p.compare(0, d, std::string(d, 'A')) == 0) continue;
        oracle::Ray r{p, std::string(1, p.back())};
        ok = ok && oracle::act_prefix(std::string(N, 'a'), r, d) == std::string(d, 'a');
      }
      if (!ok) break;
      oracle_n = N;
    }
    ASSERT_TRUE(pair.N.has_value());
    EXPECT_EQ(*pair.N, oracle_n);
    EXPECT_EQ(*pair.N, 2 * d - 1);
  }
}

TEST(NorthSouth, FixedLeavesOfConjugates) {
  BoundaryModel m(4, 12);
  EXPECT_EQ(fixed_leaves(m, "a").size(), 2u);
  EXPECT_EQ(fixed_leaves(m, "bab").size(), 2u);
  auto conj = fixed_leaves(m, "baB");
  std::sort(conj.begin(), conj.end());
  EXPECT_EQ(conj, (std::vector<std::string>{"bAAA", "baaa"}));
  EXPECT_THROW(detect_north_south(m, "", {1}, 4), Error);
}

TEST(Classification, FreeGroupElements) {
  BoundaryModel m(4, 12);
  EXPECT_EQ(classify_element(m, "").kind, ElementKind::kElliptic);
  for (const auto& g : oracle::words_up_to(2)) {
    if (g.empty()) continue;
    EXPECT_EQ(classify_element(m, g).kind, ElementKind::kLoxodromic) << g;
  }
}

TEST(ProperDiscontinuity, StabilizesForSmallSeparation) {
  BoundaryModel m(3, 10);
  BoundaryAction act(m);
  auto p = proper_discontinuity_probe(act, 1, 6);
  EXPECT_TRUE(p.stabilized);
  EXPECT_TRUE(p.monotone());
}

TEST(LatticeAction, CountsAndFixedPoints) {
  LatticeAction z2;
  auto els = z2.enumerate(2);
  EXPECT_EQ(els.size(), 13u);  // |dx| + |dy| <= 2
  for (const auto& e : els) {
    auto fixed = LatticeAction::fixed_point_count(e);
    if (e.dx == 0 && e.dy == 0) EXPECT_FALSE(fixed.has_value());
    else EXPECT_EQ(fixed, std::optional<std::uint64_t>(0));
  }
  Box a{{0, 0}, Rational(1, 2)}, u{{1, 0}, Rational(1, 2)};
  EXPECT_FALSE(LatticeAction::meets({0, 0, 0, ""}, a, u));
  EXPECT_TRUE(LatticeAction::meets({1, 0, 1, "x"}, a, u));
}
