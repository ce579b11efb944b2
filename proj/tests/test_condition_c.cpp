#include <gtest/gtest.h>

#include <cstdlib>
#include <map>

#include "acyl/condition_c.hpp"
#include "acyl/error.hpp"
#include "oracles.hpp"

using namespace acyl;

namespace {

// g Cyl(x) meets Cyl(y) iff some depth-R cylinder inside Cyl(y) lies in g Cyl(x), with
// R = max(|y|, |g| + |x|). Tested on one ray per depth-R word below y.
bool meets(const std::string& g, const std::string& x, const std::string& y) {
  const int R = std::max<int>(static_cast<int>(y.size()), static_cast<int>(g.size() + x.size()));
  static std::map<std::pair<std::string, int>, std::vector<oracle::Ray>> cache;
  auto& rays = cache[{y, R}];
  if (rays.empty()) {
    for (const auto& w : oracle::words(R))
      if (w.compare(0, y.size(), y) == 0) rays.push_back({w, std::string(1, w.back())});
  }
  const std::string gi = oracle::inverse(g);
  for (const auto& r : rays)
    if (oracle::act_prefix(gi, r, x.size()) == x) return true;
  return false;
}

// Exhaustive violator counts over reduced words of length <= L.
std::vector<std::uint64_t> violator_counts(const ConditionCWitness& w, const std::string& x,
                                           const std::string& y, int L) {
  const std::string U = x.substr(0, w.neighborhood_depth), V = y.substr(0, w.neighborhood_depth);
  std::vector<std::string> sets;
  for (const auto& t : w.targets) sets.push_back(t.substr(0, w.target_depth));
  std::vector<std::pair<int, std::string>> req;
  if (w.condition == 1) req = {{0, U}, {0, V}, {1, U}, {1, V}};
  if (w.condition == 2) req = {{0, U}, {1, V}, {2, U}, {2, V}};
  if (w.condition == 3) req = {{0, U}, {1, U}, {2, V}, {3, V}};
  std::vector<std::uint64_t> c(L, 0);
  for (const auto& g : oracle::words_up_to(L)) {
    bool all = true;
    for (const auto& [i, target] : req) all = all && meets(g, sets[i], target);
    if (!all) continue;
    for (int l = std::max<int>(1, static_cast<int>(g.size())); l <= L; ++l) ++c[l - 1];
  }
  return c;
}

}  // namespace

TEST(ConditionC, C1AxisAgainstPerpendicularAxis) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  auto w = check_c1(act, "aaaa", "AAAA", "bbbb", "BBBB", DepthSchedule::up_to(4, 6, 3));
  ASSERT_TRUE(w.found) << w.failure;
  EXPECT_EQ(w.condition, 1);
  EXPECT_EQ(w.violators.counts, violator_counts(w, "aaaa", "AAAA", 6));
  EXPECT_TRUE(w.violators.stabilized);
}

TEST(ConditionC, DistinctGeneratorCylinders) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  auto sched = DepthSchedule::up_to(1, 6, 3);
  auto w = check_c1(act, "aaab", "bbba", "AAAb", "BBBa", sched);
  ASSERT_TRUE(w.found) << w.failure;
  EXPECT_EQ(w.neighborhood_depth, 1);
  EXPECT_EQ(w.violators.counts, violator_counts(w, "aaab", "bbba", 6));
}

TEST(ConditionC, C2AndC3MatchOracle) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  auto sched = DepthSchedule::up_to(3, 6, 3);
  auto w2 = check_c2(act, "aaaa", "AAAA", "bbbb", "BBBB", "abab", sched);
  ASSERT_TRUE(w2.found) << w2.failure;
  EXPECT_EQ(w2.violators.counts, violator_counts(w2, "aaaa", "AAAA", 6));
  auto w3 = check_c3(act, "aaaa", "AAAA", "bbbb", "BBBB", "abab", "BABA", sched);
  ASSERT_TRUE(w3.found) << w3.failure;
  EXPECT_EQ(w3.violators.counts, violator_counts(w3, "aaaa", "AAAA", 6));
  // Targets near x and y.
  auto diag = check_c3(act, "aaaa", "AAAA", "aaab", "aabb", "AAAb", "AABB", sched);
  EXPECT_EQ(diag.violators.counts, violator_counts(diag, "aaaa", "AAAA", 6));
}

TEST(ConditionC, OrbitTargets) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  auto sched = DepthSchedule::up_to(3, 6, 3);
  // p = a^k b^inf for k = 1, 2 truncated at depth 4.
  auto w = check_c3(act, "aaaa", "AAAA", "abbb", "aabb", "Abbb", "AAbb", sched);
  EXPECT_EQ(w.violators.counts, violator_counts(w, "aaaa", "AAAA", 6));
}

TEST(ConditionC, TrivialGroupHasAtMostOneViolator) {
  BoundaryModel m(4, 12);
  BoundaryAction trivial(m, {});
  auto w = check_c1(trivial, "aaaa", "AAAA", "bbbb", "BBBB", DepthSchedule::up_to(3, 6, 3));
  EXPECT_LE(w.violators.final_count(), 1u);
  EXPECT_TRUE(w.found);
}

TEST(ConditionC, Preconditions) {
  BoundaryModel m(3, 10);
  BoundaryAction act(m);
  auto sched = DepthSchedule::up_to(2, 4, 2);
  EXPECT_THROW(check_c1(act, "aaa", "aaa", "bbb", "BBB", sched), Error);
  EXPECT_THROW(check_c1(act, "aaa", "AAA", "bbb", "bbb", sched), Error);
  EXPECT_THROW(check_c1(act, "aa", "AAA", "bbb", "BBB", sched), Error);
  EXPECT_THROW(check_targets(act, "aaa", "AAA", {"bbb"}, sched), Error);
}

TEST(ConditionC, ShrinkingNeverIncreasesCounts) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  DepthSchedule shallow = DepthSchedule::up_to(1, 6, 3);
  DepthSchedule deep = shallow;
  deep.neighborhood_depths = {2};
  deep.target_depths = {2};
  auto a = check_c1(act, "aaaa", "AAAA", "bbbb", "BBBB", shallow);
  auto b = check_c1(act, "aaaa", "AAAA", "bbbb", "BBBB", deep);
  for (std::size_t l = 0; l < a.violators.counts.size(); ++l) EXPECT_LE(b.violators.counts[l], a.violators.counts[l]);
}

TEST(ConditionC, SymmetryUnderSwap) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  auto sched = DepthSchedule::up_to(2, 6, 3);
  auto w = check_c1(act, "aaaa", "AAAA", "bbbb", "BBBB", sched);
  auto s = check_c1(act, "AAAA", "aaaa", "bbbb", "BBBB", sched);
  EXPECT_EQ(w.violators.counts, s.violators.counts);
}

TEST(ConditionC, EquivarianceUnderConjugation) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  auto w = check_c2(act, "aaaa", "AAAA", "bbbb", "BBBB", "abab", DepthSchedule::up_to(3, 6, 3));
  for (const std::string h : {"a", "b", "ab", "BA"}) {
    auto [original, moved] = equivariance_check(act, "aaaa", "AAAA", w, h);
    EXPECT_EQ(original.counts, moved.counts) << h;
  }
}

TEST(ConditionC, SummaryOnSampledTuples) {
  BoundaryModel m(4, 12);
  BoundaryAction act(m);
  auto tuples = sample_target_tuples(m, 9, 5);
  ASSERT_EQ(tuples.size(), 9u);
  for (std::size_t i = 0; i < tuples.size(); ++i) EXPECT_EQ(tuples[i].size(), 2 + i % 3);
  auto s = check_condition_c(act, "aaaa", "AAAA", tuples, DepthSchedule::up_to(4, 6, 3));
  EXPECT_TRUE(s.all_passed()) << s.failure;
  for (const auto& w : s.targets) {
    EXPECT_EQ(w.neighborhood_depth, s.neighborhood_depth);
    EXPECT_EQ(w.violators.counts, violator_counts(w, "aaaa", "AAAA", 6));
  }
  auto starved = check_condition_c(act, "aaaa", "AAAA", tuples, DepthSchedule::up_to(4, 6, 3), 2);
  EXPECT_TRUE(starved.budget_exhausted);
  EXPECT_FALSE(starved.all_passed());
}

TEST(ConditionC, LatticeTranslations) {
  LatticeAction z2;
  auto tuples = sample_lattice_tuples(20, 3);
  auto s = check_condition_c(z2, {0, 0}, {1, 0}, tuples, DepthSchedule::up_to(6, 6, 3));
  EXPECT_TRUE(s.all_passed()) << s.failure;
  // Exhaustive recount for the first tuple over every translation of length <= 6.
  const auto& w = s.targets.front();
  const Rational r(1, std::int64_t{1} << w.neighborhood_depth), rt(1, std::int64_t{1} << w.target_depth);
  std::uint64_t count = 0;
  for (int dx = -6; dx <= 6; ++dx) {
    for (int dy = -6; dy <= 6; ++dy) {
      if (std::abs(dx) + std::abs(dy) > 6) continue;
      auto near = [&](const LatticePoint& t, const LatticePoint& c) {
        auto ax = t.x + dx - c.x, ay = t.y + dy - c.y;
        return (ax < 0 ? -ax : ax) < r + rt && (ay < 0 ? -ay : ay) < r + rt;
      };
      const auto& t = tuples.front();
      LatticePoint x{0, 0}, y{1, 0};
      bool all = false;
      if (t.size() == 2) all = near(t[0], x) && near(t[0], y) && near(t[1], x) && near(t[1], y);
      if (t.size() == 3) all = near(t[0], x) && near(t[1], y) && near(t[2], x) && near(t[2], y);
      if (t.size() == 4) all = near(t[0], x) && near(t[1], x) && near(t[2], y) && near(t[3], y);
      count += all ? 1 : 0;
    }
  }
  EXPECT_EQ(w.violators.final_count(), count);
}
