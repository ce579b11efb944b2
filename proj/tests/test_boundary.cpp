#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "acyl/boundary.hpp"
#include "acyl/error.hpp"
#include "oracles.hpp"

using namespace acyl;

namespace {

// A clopen set of resolution <= R is a union of depth-R cylinders, and the ray
// w * last(w)^inf lies in Cyl(w); so one ray per depth-R word decides everything.
std::vector<f2::Ray> witnesses(int R) {
  std::vector<f2::Ray> out;
  for (const auto& w : oracle::words(R)) out.push_back(f2::Ray::from_point(w));
  return out;
}

bool brute_contains(const std::vector<std::pair<std::string, bool>>& terms, const f2::Ray& r) {
  for (const auto& [w, complement] : terms) {
    bool in = r.prefix(w.size()) == w;
    if (in != complement) return true;
  }
  return false;
}

ClopenSet build(const std::vector<std::pair<std::string, bool>>& terms) {
  ClopenSet s;
  for (const auto& [w, complement] : terms) {
    s = s.unite(complement ? ClopenSet::cylinder(w).complement() : ClopenSet::cylinder(w));
  }
  return s;
}

std::vector<std::pair<std::string, bool>> random_terms(std::mt19937& rng) {
  auto pool = oracle::words_up_to(2);
  std::vector<std::pair<std::string, bool>> t;
  int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) t.push_back({pool[1 + rng() % (pool.size() - 1)], rng() % 5 == 0});
  return t;
}

}  // namespace

TEST(ClopenSet, MembershipMatchesTerms) {
  std::mt19937 rng(17);
  auto rays = witnesses(4);
  for (int i = 0; i < 200; ++i) {
    auto t = random_terms(rng);
    auto s = build(t);
    for (const auto& r : rays) ASSERT_EQ(s.contains(r), brute_contains(t, r));
  }
}

TEST(ClopenSet, RelationsMatchBruteForce) {
  std::mt19937 rng(23);
  auto rays = witnesses(4);
  for (int i = 0; i < 300; ++i) {
    auto ta = random_terms(rng), tb = random_terms(rng);
    auto a = build(ta), b = build(tb);
    bool meet = false, sub = true, cover = true;
    for (const auto& r : rays) {
      bool ia = brute_contains(ta, r), ib = brute_contains(tb, r);
      meet = meet || (ia && ib);
      sub = sub && (!ia || ib);
      cover = cover && (ia || ib);
    }
    EXPECT_EQ(a.intersects(b), meet);
    EXPECT_EQ(a.subset_of(b), sub);
    EXPECT_EQ(a.covers_with(b), cover);
    for (const auto& w : oracle::words_up_to(2)) {
      bool all = true, any = false;
      for (const auto& r : rays) {
        if (r.prefix(w.size()) != w) continue;
        bool in = brute_contains(ta, r);
        all = all && in;
        any = any || in;
      }
      EXPECT_EQ(a.covers(w), all);
      EXPECT_EQ(a.meets_cylinder(w), any);
    }
  }
}

TEST(ClopenSet, ComplementAndWordsAt) {
  auto rays = witnesses(4);
  std::mt19937 rng(29);
  for (int i = 0; i < 100; ++i) {
    auto t = random_terms(rng);
    auto s = build(t);
    auto c = s.complement();
    for (const auto& r : rays) EXPECT_NE(c.contains(r), s.contains(r));
    auto words = s.words_at(3);
    for (const auto& w : oracle::words(3)) {
      bool listed = std::find(words.begin(), words.end(), w) != words.end();
      EXPECT_EQ(listed, brute_contains(t, f2::Ray::from_point(w)));
    }
  }
  EXPECT_TRUE(ClopenSet::whole().is_whole());
  EXPECT_TRUE(ClopenSet::cylinders({"a", "A", "b", "B"}).is_whole());
  EXPECT_TRUE(ClopenSet().empty());
}

TEST(ClopenSet, TranslateMovesMembership) {
  std::mt19937 rng(31);
  auto rays = witnesses(5);
  for (int i = 0; i < 100; ++i) {
    auto t = random_terms(rng);
    auto s = build(t);
    for (const auto& g : oracle::words_up_to(2)) {
      auto moved = s.translate(g);
      for (const auto& r : rays) {
        // r in gS iff g^-1 r in S.
        ASSERT_EQ(moved.contains(r), brute_contains(t, f2::act(oracle::inverse(g), r)))
            << g << " " << s.to_string() << " " << r.to_string();
      }
    }
  }
}

TEST(BoundaryModel, PointsAndProducts) {
  BoundaryModel m(4, 6);
  EXPECT_EQ(m.points().size(), 108u);
  for (std::size_t i = 0; i < m.points().size(); ++i) {
    for (std::size_t j = 0; j < m.points().size(); ++j) {
      auto lcp = oracle::Ray{m.points()[i], std::string(1, m.points()[i].back())}.prefix(6);
      auto other = oracle::Ray{m.points()[j], std::string(1, m.points()[j].back())}.prefix(6);
      int k = 0;
      while (k < 6 && lcp[k] == other[k]) ++k;
      EXPECT_EQ(m.gromov_product(m.points()[i], m.points()[j]), k);
    }
  }
  EXPECT_EQ(m.visual_weight(3), Rational(1, 8));
  EXPECT_EQ(m.cylinder_members({"ab"}).size(), 9u);
  EXPECT_THROW(m.point_index("ab"), Error);
}

TEST(BoundaryModel, ChainMetricEqualsVisualMetricOnTrees) {
  // d' is an ultrametric, so no chain can beat the direct step and rho = d'.
  BoundaryModel m(3, 6);
  auto rho = m.chain_metric_matrix();
  for (std::size_t i = 0; i < m.points().size(); ++i)
    for (std::size_t j = 0; j < m.points().size(); ++j)
      EXPECT_EQ(rho[i][j], i == j ? Rational(0) : m.visual_metric(m.points()[i], m.points()[j]));
  EXPECT_EQ(m.chain_metric("aaa", "abb", 3), Rational(1, 2));
  auto rep = m.sandwich_report();
  EXPECT_TRUE(rep.asserted);
  EXPECT_TRUE(rep.holds());
  EXPECT_EQ(rep.pairs, 36u * 35u);
  EXPECT_EQ(rep.upper_margin, Rational(0));
}

TEST(BoundaryModel, RationalZetaReportsWithoutAsserting) {
  BoundaryModel m(2, 4, Zeta::parse("1/2"));
  auto rep = m.sandwich_report();
  EXPECT_FALSE(rep.asserted);
  EXPECT_EQ(m.zeta().to_string(), "1/2");
}

TEST(BoundaryModel, FileRoundTrip) {
  std::istringstream in("alphabet=f2\ndepth=3\nbuffer=7\nzeta=ln2\n");
  auto m = BoundaryModel::parse(in);
  EXPECT_EQ(m.depth(), 3);
  EXPECT_EQ(m.buffer(), 7);
  std::ostringstream out;
  m.write(out);
  std::istringstream back(out.str());
  EXPECT_EQ(BoundaryModel::parse(back).buffer(), 7);
  std::istringstream bad("alphabet=z3\ndepth=3\n");
  EXPECT_THROW(BoundaryModel::parse(bad), Error);
}
