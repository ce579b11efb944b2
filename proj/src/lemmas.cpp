#include "acyl/lemmas.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace acyl {

namespace {

// All quantities below are doubled so that Gromov products stay integral.
class Suite {
 public:
  Suite(const MetricGraph& s, const DeltaReport& delta, const LemmaOptions& opt)
      : s_(s), e_(s.basepoint()), rng_(opt.seed), opt_(opt) {
    two_delta_ = (delta.delta_4pt * 2).numerator();
    const std::uint64_t n = s.size();
    all_pairs_ = n * n <= opt.exhaustive_pairs;
  }

  std::int64_t bound(int multiple) const { return multiple * two_delta_; }
  bool all_pairs() const { return all_pairs_; }

  std::int64_t p2(Vertex x, Vertex y) const { return s_.twice_gromov_product(x, y, e_); }
  std::int64_t d2(Vertex x, Vertex y) const { return 2 * s_.distance(x, y); }
  Geodesic seg(Vertex u, Vertex v) const { return s_.geodesic(std::min(u, v), std::max(u, v)); }
  std::int64_t d2_to(Vertex p, const Geodesic& g) const { return 2 * s_.distance_to(p, g); }

  Vertex random_vertex() {
    return std::uniform_int_distribution<Vertex>(0, s_.size() - 1)(rng_);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }
  std::int64_t random_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  // {s : 2(x.s)_e > k2}
  std::vector<Vertex> u_set(Vertex x, std::int64_t k2) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < s_.size(); ++v) {
      if (p2(x, v) > k2) out.push_back(v);
    }
    return out;
  }

  Vertex nearest_to_base(const Geodesic& g) const {
    Vertex best = g.path.front();
    for (Vertex z : g.path) {
      if (s_.distance(e_, z) < s_.distance(e_, best)) best = z;
    }
    return best;
  }

  // Calls f(u, v) on every unordered pair (u <= v), or on `samples` random pairs.
  template <class F>
  void for_pairs(F&& f) {
    if (all_pairs_) {
      for (Vertex u = 0; u < s_.size(); ++u) {
        for (Vertex v = u; v < s_.size(); ++v) f(u, v);
      }
    } else {
      for (std::uint64_t i = 0; i < opt_.samples * 64; ++i) f(random_vertex(), random_vertex());
    }
  }

  const MetricGraph& space() const { return s_; }
  Vertex base() const { return e_; }
  std::uint64_t samples() const { return opt_.samples; }

 private:
  const MetricGraph& s_;
  Vertex e_;
  std::mt19937_64 rng_;
  LemmaOptions opt_;
  std::int64_t two_delta_ = 0;
  bool all_pairs_ = false;
};

struct Tally {
  std::int64_t worst = std::numeric_limits<std::int64_t>::min();
  std::uint64_t evaluated = 0;
  std::uint64_t vacuous = 0;

  void see(std::int64_t defect2) {
    worst = std::max(worst, defect2);
    ++evaluated;
  }
};

LemmaCheck finish(const Suite& suite, std::string name, std::string statement, int multiple,
                  const Tally& t, bool exhaustive) {
  LemmaCheck c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.multiple = multiple;
  c.bound = half(suite.bound(multiple));
  c.measured = t.evaluated == 0 ? Rational(0) : half(std::max<std::int64_t>(t.worst, 0));
  c.evaluated = t.evaluated;
  c.vacuous = t.vacuous;
  c.exhaustive = exhaustive;
  c.passed = t.evaluated == 0 || t.worst <= suite.bound(multiple);
  return c;
}

}  // namespace

bool LemmaReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !has_boundary || boundary.holds();
}

LemmaReport verify_constant_lemmas(const MetricGraph& space, const BoundaryModel* boundary,
                                   const LemmaOptions& options) {
  LemmaReport report;
  const bool small = space.size() <= 48;
  report.delta = measure_delta(space, small ? SampleMode::kExhaustive : SampleMode::kSampled,
                               options.samples * 256, options.seed);
  Suite suite(space, report.delta, options);
  const Vertex e = suite.base();
  const bool pairs_exhaustive = suite.all_pairs();

  {
    LemmaCheck c;
    c.name = "four_point";
    c.statement = "(x.y)_w >= min{(x.z)_w, (y.z)_w} - 4 delta";
    c.multiple = 4;
    c.bound = report.delta.delta_4pt * 4;
    c.measured = report.delta.delta_4pt;
    c.evaluated = report.delta.quadruples;
    c.exhaustive = report.delta.exhaustive;
    c.passed = c.measured <= c.bound;
    report.checks.push_back(c);
  }

  // Checks driven by one segment [u,v].
  Tally upper, lower, along, diameter, separated, horoball;
  suite.for_pairs([&](Vertex u, Vertex v) {
    const Geodesic g = suite.seg(u, v);
    const std::int64_t dg = suite.d2_to(e, g);
    const std::int64_t p = suite.p2(u, v);
    upper.see(p - dg);
    lower.see(dg - p);
    for (Vertex w : g.path) {
      along.see(p - suite.p2(u, w));
      along.see(p - suite.p2(v, w));
    }
    const std::int64_t cutoff = dg + suite.bound(42);
    std::vector<Vertex> near;
    for (Vertex z : g.path) {
      if (suite.d2(e, z) <= cutoff) near.push_back(z);
    }
    std::int64_t diam = 0;
    for (Vertex a : near) {
      for (Vertex b : near) diam = std::max(diam, suite.d2(a, b));
    }
    diameter.see(diam);
    separated.see(suite.d2(e, u) - dg - suite.d2(u, v));
    separated.see(suite.d2(e, v) - dg - suite.d2(u, v));
    horoball.see(p - suite.d2(e, v));
    horoball.see(p - suite.d2(e, u));
  });
  report.checks.push_back(finish(suite, "product_geodesic_upper", "(u.v)_e <= d(e,[u,v])", 0,
                                 upper, pairs_exhaustive));
  report.checks.push_back(finish(suite, "product_geodesic_lower",
                                 "d(e,[u,v]) - 8 delta <= (u.v)_e", 8, lower, pairs_exhaustive));
  report.checks.push_back(finish(suite, "product_along_geodesic",
                                 "(u.w)_e >= (u.v)_e - 8 delta for w on [u,v]", 8, along,
                                 pairs_exhaustive));
  report.checks.push_back(finish(suite, "separated_neighborhoods",
                                 "d(u,v) >= d(e,u) - d(e,[u,v])", 0, separated, pairs_exhaustive));
  report.checks.push_back(finish(suite, "horoball_distance", "(x.z)_e <= d(e,z)", 0, horoball,
                                 pairs_exhaustive));

  // A point x_n on [e,x] sees y at least as well as x does, up to the depth of x_n.
  Tally tail;
  suite.for_pairs([&](Vertex x, Vertex y) {
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
      const std::int64_t pxy = suite.p2(a, b);
      for (Vertex xn : space.geodesic(e, a).path) {
        tail.see(std::min(suite.d2(e, xn), pxy) - suite.p2(xn, b));
      }
    }
  });
  report.checks.push_back(finish(suite, "sequence_tail_product",
                                 "(x_n.y)_e >= min{d(e,x_n), (x.y)_e} - 4 delta for x_n on [e,x]",
                                 4, tail, pairs_exhaustive));

  // Neighborhood stability: u in U_K(x), v in U_K(y) with K = (x.y)_e + 8 delta.
  Tally stability, distance_stability;
  constexpr std::size_t kInnerBudget = 4096;
  for (std::uint64_t i = 0; i < suite.samples(); ++i) {
    const Vertex x = suite.random_vertex();
    const Vertex y = suite.random_vertex();
    const std::int64_t pxy = suite.p2(x, y);
    const auto ux = suite.u_set(x, pxy + suite.bound(8));
    const auto uy = suite.u_set(y, pxy + suite.bound(8));
    if (ux.empty() || uy.empty()) {
      ++stability.vacuous;
      ++distance_stability.vacuous;
      continue;
    }
    auto visit = [&](Vertex u, Vertex v) {
      const std::int64_t p = suite.p2(u, v);
      stability.see(std::max(p - pxy, pxy - p));
      const std::int64_t dg = suite.d2_to(e, suite.seg(u, v));
      distance_stability.see(std::max(dg - pxy, pxy - dg));
    };
    if (ux.size() * uy.size() <= kInnerBudget) {
      for (Vertex u : ux) {
        for (Vertex v : uy) visit(u, v);
      }
    } else {
      for (std::size_t k = 0; k < kInnerBudget; ++k) visit(suite.pick(ux), suite.pick(uy));
    }
  }
  report.checks.push_back(finish(suite, "product_stability",
                                 "|(u.v)_e - (x.y)_e| <= 12 delta for u in U_K(x), v in U_K(y)",
                                 12, stability, false));
  report.checks.push_back(finish(suite, "geodesic_distance_stability",
                                 "|d(e,[u,v]) - (x.y)_e| <= 20 delta for u in U_K(x), v in U_K(y)",
                                 20, distance_stability, false));

  // Segments between points close to x stay close to x.
  Tally segment;
  for (std::uint64_t i = 0; i < suite.samples() * 16; ++i) {
    const Vertex x = suite.random_vertex();
    const Vertex u1 = suite.random_vertex();
    const Vertex u2 = suite.random_vertex();
    const std::int64_t m = std::min(suite.p2(u1, x), suite.p2(u2, x));
    for (Vertex t : suite.seg(u1, u2).path) segment.see(m - suite.p2(t, x));
  }
  report.checks.push_back(finish(suite, "segment_in_neighborhood",
                                 "(t.x)_e >= min{(u1.x)_e, (u2.x)_e} - 17 delta for t on [u1,u2]",
                                 17, segment, false));

  // Far points of [u,v] lean towards x or y.
  Tally far;
  for (std::uint64_t i = 0; i < suite.samples() * 16; ++i) {
    const Vertex u = suite.random_vertex();
    const Vertex v = suite.random_vertex();
    const bool own = i % 2 == 0;  // half the samples use x = u, y = v
    const Vertex x = own ? u : suite.random_vertex();
    const Vertex y = own ? v : suite.random_vertex();
    const Geodesic g = suite.seg(u, v);
    const std::int64_t dg = suite.d2_to(e, g);
    const std::uint64_t before = far.evaluated;
    for (Vertex t : g.path) {
      const std::int64_t dt = suite.d2(e, t);
      if (suite.p2(u, x) < dt || suite.p2(v, y) < dt) continue;
      far.see(dt - dg - std::max(suite.p2(t, x), suite.p2(t, y)));
    }
    if (far.evaluated == before) ++far.vacuous;
  }
  report.checks.push_back(finish(
      suite, "far_point_direction",
      "max{(t.x)_e, (t.y)_e} >= d(e,t) - d(e,[u,v]) - 12 delta when (u.x)_e, (v.y)_e >= d(e,t)", 12,
      far, false));

  // Two segments with endpoints near x and near y fellow-travel inside B(e,K).
  Tally quad;
  const std::int64_t diam2 = 2 * space.diameter();
  for (std::uint64_t i = 0; i < suite.samples(); ++i) {
    const Vertex x = suite.random_vertex();
    const Vertex y = suite.random_vertex();
    const std::int64_t k2 = suite.random_int(0, std::max<std::int64_t>(diam2, 0));
    const auto ux = suite.u_set(x, k2 + suite.bound(6));
    const auto uy = suite.u_set(y, k2 + suite.bound(6));
    if (ux.empty() || uy.empty()) {
      ++quad.vacuous;
      continue;
    }
    for (int k = 0; k < 16; ++k) {
      const Vertex u1 = suite.pick(ux), u2 = suite.pick(ux);
      const Vertex v1 = suite.pick(uy), v2 = suite.pick(uy);
      const Geodesic other = suite.seg(u2, v2);
      for (Vertex t : suite.seg(u1, v1).path) {
        if (suite.d2(e, t) < k2) quad.see(suite.d2_to(t, other));
      }
    }
  }
  report.checks.push_back(finish(suite, "quadrilateral_fellow_travel",
                                 "[u1,v1] within B(e,K) lies in the 2 delta-neighborhood of [u2,v2]",
                                 2, quad, false));

  // Points of [u,v] nearly as close to e as the segment itself form a short piece.
  report.checks.push_back(finish(
      suite, "near_point_diameter",
      "diam{z in [u,v] : d(e,z) <= d(e,[u,v]) + 42 delta} <= 88 delta", 88, diameter,
      pairs_exhaustive));

  // Nearest points of segments between four neighborhoods stabilize.
  Tally projection;
  for (std::uint64_t i = 0; i < suite.samples(); ++i) {
    const Vertex p = suite.random_vertex(), q = suite.random_vertex();
    const Vertex r = suite.random_vertex(), s = suite.random_vertex();
    const std::int64_t k2 = std::max(suite.p2(p, q), suite.p2(r, s)) + suite.bound(26);
    const auto up = suite.u_set(p, k2), uq = suite.u_set(q, k2);
    const auto ur = suite.u_set(r, k2), us = suite.u_set(s, k2);
    if (up.empty() || uq.empty() || ur.empty() || us.empty()) {
      ++projection.vacuous;
      continue;
    }
    for (int k = 0; k < 8; ++k) {
      const Vertex a1 = suite.nearest_to_base(suite.seg(suite.pick(up), suite.pick(uq)));
      const Vertex a2 = suite.nearest_to_base(suite.seg(suite.pick(up), suite.pick(uq)));
      const Vertex b1 = suite.nearest_to_base(suite.seg(suite.pick(ur), suite.pick(us)));
      const Vertex b2 = suite.nearest_to_base(suite.seg(suite.pick(ur), suite.pick(us)));
      const Geodesic other = suite.seg(a2, b2);
      for (Vertex z : suite.seg(a1, b1).path) projection.see(suite.d2_to(z, other));
    }
  }
  report.checks.push_back(finish(suite, "projection_fellow_travel",
                                 "[a_m,b_m] lies in the 92 delta-neighborhood of [a_n,b_n]", 92,
                                 projection, false));

  if (boundary != nullptr) {
    report.has_boundary = true;
    report.boundary = boundary->sandwich_report();
  }
  return report;
}

}  // namespace acyl
