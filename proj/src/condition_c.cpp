#include "acyl/condition_c.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "acyl/error.hpp"

namespace acyl {

DepthSchedule DepthSchedule::up_to(int levels, int word_bound, int tail_window) {
  DepthSchedule s;
  for (int d = 1; d <= levels; ++d) {
    s.neighborhood_depths.push_back(d);
    s.target_depths.push_back(d);
  }
  s.word_bound = word_bound;
  s.tail_window = tail_window;
  return s;
}

std::size_t ConditionCSummary::passed() const {
  return static_cast<std::size_t>(
      std::count_if(targets.begin(), targets.end(), [](const auto& w) { return w.found; }));
}

std::string to_string(const LatticePoint& p) {
  return "(" + to_string(p.x) + "," + to_string(p.y) + ")";
}

namespace {

struct BoundaryOps {
  using Point = std::string;
  using Set = ClopenSet;
  using Element = BoundaryAction::Element;

  const BoundaryAction& action;

  std::vector<Element> elements(int l) const { return action.enumerate(l); }
  int max_depth() const { return action.model().depth(); }
  void validate(const Point& p) const { action.model().point_index(p); }
  Set neighborhood(const Point& p, int depth) const {
    return ClopenSet::cylinder(std::string_view(p).substr(0, static_cast<std::size_t>(depth)));
  }
  Set image(const Element& g, const Set& a) const { return a.translate(g.word); }
  static bool meet(const Set& a, const Set& b) { return a.intersects(b); }
  static std::string show(const Point& p) { return p; }
  static std::string show_set(const Set& s) { return s.to_string(); }
};

struct LatticeOps {
  using Point = LatticePoint;
  using Set = Box;
  using Element = LatticeAction::Element;

  const LatticeAction& action;
  int levels;

  std::vector<Element> elements(int l) const { return action.enumerate(l); }
  int max_depth() const { return levels; }
  void validate(const Point&) const {}
  Set neighborhood(const Point& p, int depth) const {
    return Box{p, Rational(1, std::int64_t{1} << depth)};
  }
  Set image(const Element& g, const Set& a) const {
    return Box{{a.center.x + g.dx, a.center.y + g.dy}, a.radius};
  }
  static bool meet(const Set& a, const Set& b) {
    const Rational reach = a.radius + b.radius;
    const Rational dx = a.center.x - b.center.x;
    const Rational dy = a.center.y - b.center.y;
    return (dx < 0 ? -dx : dx) < reach && (dy < 0 ? -dy : dy) < reach;
  }
  static std::string show(const Point& p) { return to_string(p); }
  static std::string show_set(const Set& s) {
    return "box" + to_string(s.center) + "r" + to_string(s.radius);
  }
};

// (target index, true for U / false for V) pairs whose intersections must be nonempty.
std::vector<std::pair<int, bool>> requirements(int condition) {
  switch (condition) {
    case 1: return {{0, true}, {0, false}, {1, true}, {1, false}};
    case 2: return {{0, true}, {1, false}, {2, true}, {2, false}};
    case 3: return {{0, true}, {1, true}, {2, false}, {3, false}};
  }
  throw Error(ErrorCode::kInvalidArgument, "condition must be 1, 2 or 3");
}

template <class Ops>
class Checker {
 public:
  using Point = typename Ops::Point;
  using Set = typename Ops::Set;

  Checker(Ops ops, const DepthSchedule& schedule)
      : ops_(ops), schedule_(schedule), elements_(ops.elements(schedule.word_bound)) {
    for (int d : schedule.neighborhood_depths) check_depth(d);
    for (int d : schedule.target_depths) check_depth(d);
  }

  std::uint64_t probes_run = 0;

  FinitenessProbe violators(const Set& U, const Set& V, const std::vector<Set>& sets, int condition) const {
    const auto reqs = requirements(condition);
    std::vector<int> lengths;
    for (const auto& g : elements_) {
      bool all = true;
      std::vector<std::optional<Set>> moved(sets.size());
      for (auto [i, to_u] : reqs) {
        if (!moved[i]) moved[i] = ops_.image(g, sets[i]);
        if (!Ops::meet(*moved[i], to_u ? U : V)) {
          all = false;
          break;
        }
      }
      if (all) lengths.push_back(g.length);
    }
    return make_probe("C" + std::to_string(condition), lengths, schedule_.word_bound,
                      schedule_.tail_window);
  }

  void validate(const Point& x, const Point& y, const std::vector<Point>& targets) const {
    ops_.validate(x);
    ops_.validate(y);
    if (x == y) throw Error(ErrorCode::kPrecondition, "x and y must be distinct");
    if (targets.size() < 2 || targets.size() > 4) {
      throw Error(ErrorCode::kInvalidArgument, "target tuples have 2, 3 or 4 points");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      ops_.validate(targets[i]);
      for (std::size_t j = 0; j < i; ++j) {
        if (targets[i] == targets[j]) throw Error(ErrorCode::kPrecondition, "targets must be distinct");
      }
    }
  }

  // Witness with U,V at depth `du`, trying target depths shallowest first.
  ConditionCWitness at_depth(const Point& x, const Point& y, const std::vector<Point>& targets, int du) {
    ConditionCWitness w;
    w.condition = static_cast<int>(targets.size()) - 1;
    for (const auto& t : targets) w.targets.push_back(Ops::show(t));
    w.neighborhood_depth = du;
    const Set U = ops_.neighborhood(x, du);
    const Set V = ops_.neighborhood(y, du);
    w.U = Ops::show_set(U);
    w.V = Ops::show_set(V);
    if (Ops::meet(U, V)) {
      w.failure = "U and V intersect at depth " + std::to_string(du);
      return w;
    }
    bool tried = false;
    for (int dt : schedule_.target_depths) {
      std::vector<Set> sets;
      for (const auto& t : targets) sets.push_back(ops_.neighborhood(t, dt));
      bool disjoint = true;
      for (std::size_t i = 0; i < sets.size() && disjoint; ++i) {
        for (std::size_t j = 0; j < i && disjoint; ++j) disjoint = !Ops::meet(sets[i], sets[j]);
      }
      if (!disjoint) continue;
      tried = true;
      ++probes_run;
      w.violators = violators(U, V, sets, w.condition);
      w.target_depth = dt;
      w.target_sets.clear();
      for (const auto& s : sets) w.target_sets.push_back(Ops::show_set(s));
      if (w.violators.stabilized) {
        w.found = true;
        w.failure.clear();
        return w;
      }
    }
    w.failure = tried ? "violator counts did not stabilize at any target depth"
                      : "targets not separated by the depth schedule";
    return w;
  }

  ConditionCWitness search(const Point& x, const Point& y, const std::vector<Point>& targets) {
    validate(x, y, targets);
    ConditionCWitness last;
    for (int du : schedule_.neighborhood_depths) {
      last = at_depth(x, y, targets, du);
      if (last.found) return last;
    }
    if (last.failure.empty()) last.failure = "empty depth schedule";
    return last;
  }

  ConditionCSummary summary(const Point& x, const Point& y,
                            const std::vector<std::vector<Point>>& tuples, std::uint64_t budget) {
    ConditionCSummary s;
    s.x = Ops::show(x);
    s.y = Ops::show(y);
    for (const auto& t : tuples) validate(x, y, t);
    auto out_of_budget = [&] {
      if (probes_run >= budget) s.budget_exhausted = true;
      return s.budget_exhausted;
    };
    // Shallowest U,V depth serving all tuples of each kind.
    int du = 0;
    bool ok = true;
    for (int kind = 1; kind <= 3 && ok; ++kind) {
      bool any = false;
      for (const auto& t : tuples) any = any || static_cast<int>(t.size()) == kind + 1;
      if (!any) continue;
      int found = 0;
      for (int d : schedule_.neighborhood_depths) {
        bool all = true;
        for (const auto& t : tuples) {
          if (static_cast<int>(t.size()) != kind + 1) continue;
          if (out_of_budget() || !at_depth(x, y, t, d).found) {
            all = false;
            break;
          }
        }
        if (all) {
          found = d;
          break;
        }
        if (s.budget_exhausted) break;
      }
      s.per_condition_depth[kind - 1] = found;
      if (found == 0) {
        ok = false;
        s.failure = "no neighborhood depth serves every (C" + std::to_string(kind) + ") tuple";
      }
      du = std::max(du, found);
    }
    if (!ok) {
      s.probes_run = probes_run;
      return s;
    }
    if (du == 0) {
      // No tuples: any separating depth is a valid (vacuous) witness.
      for (int d : schedule_.neighborhood_depths) {
        if (!Ops::meet(ops_.neighborhood(x, d), ops_.neighborhood(y, d))) {
          du = d;
          break;
        }
      }
    }
    s.neighborhood_depth = du;
    if (du > 0) {
      s.found = true;
      s.U = Ops::show_set(ops_.neighborhood(x, du));
      s.V = Ops::show_set(ops_.neighborhood(y, du));
    } else {
      s.failure = "x and y are not separated by the depth schedule";
    }
    for (const auto& t : tuples) {
      if (out_of_budget() || !s.found) break;
      s.targets.push_back(at_depth(x, y, t, du));
    }
    s.probes_run = probes_run;
    return s;
  }

 private:
  void check_depth(int d) const {
    if (d < 1 || d > ops_.max_depth()) throw Error(ErrorCode::kInvalidArgument, "depth schedule out of range");
  }

  Ops ops_;
  DepthSchedule schedule_;
  std::vector<typename Ops::Element> elements_;
};

}  // namespace

ConditionCWitness check_targets(const BoundaryAction& action, const std::string& x,
                                const std::string& y, const std::vector<std::string>& targets,
                                const DepthSchedule& schedule) {
  Checker<BoundaryOps> c(BoundaryOps{action}, schedule);
  return c.search(x, y, targets);
}

ConditionCWitness check_c1(const BoundaryAction& action, const std::string& x, const std::string& y,
                           const std::string& p, const std::string& q, const DepthSchedule& schedule) {
  return check_targets(action, x, y, {p, q}, schedule);
}

ConditionCWitness check_c2(const BoundaryAction& action, const std::string& x, const std::string& y,
                           const std::string& p, const std::string& q, const std::string& r,
                           const DepthSchedule& schedule) {
  return check_targets(action, x, y, {p, q, r}, schedule);
}

ConditionCWitness check_c3(const BoundaryAction& action, const std::string& x, const std::string& y,
                           const std::string& p, const std::string& q, const std::string& r,
                           const std::string& s, const DepthSchedule& schedule) {
  return check_targets(action, x, y, {p, q, r, s}, schedule);
}

std::vector<std::vector<std::string>> sample_target_tuples(const BoundaryModel& model,
                                                           std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& pts = model.points();
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = 2 + i % 3;
    std::set<std::size_t> chosen;
    while (chosen.size() < size) chosen.insert(pick(rng));
    std::vector<std::size_t> order(chosen.begin(), chosen.end());
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> tuple;
    for (auto k : order) tuple.push_back(pts[k]);
    out.push_back(std::move(tuple));
  }
  return out;
}

ConditionCSummary check_condition_c(const BoundaryAction& action, const std::string& x,
                                    const std::string& y,
                                    const std::vector<std::vector<std::string>>& tuples,
                                    const DepthSchedule& schedule, std::uint64_t budget) {
  Checker<BoundaryOps> c(BoundaryOps{action}, schedule);
  return c.summary(x, y, tuples, budget);
}

std::pair<FinitenessProbe, FinitenessProbe> equivariance_check(const BoundaryAction& action,
                                                               const std::string& x,
                                                               const std::string& y,
                                                               const ConditionCWitness& w,
                                                               const std::string& h) {
  if (!w.found) throw Error(ErrorCode::kPrecondition, "equivariance check needs a found witness");
  const std::string hw = f2::parse(h);
  auto cyl = [](const std::string& p, int d) {
    return ClopenSet::cylinder(std::string_view(p).substr(0, static_cast<std::size_t>(d)));
  };
  std::vector<ClopenSet> sets;
  for (const auto& t : w.targets) sets.push_back(cyl(t, w.target_depth));
  const ClopenSet U = cyl(x, w.neighborhood_depth);
  const ClopenSet V = cyl(y, w.neighborhood_depth);
  const auto reqs = requirements(w.condition);
  const auto elements = action.enumerate(w.violators.word_bound());
  // Counts g with g(hA) meeting hU etc., where g runs over h W h^-1.
  auto count = [&](const std::string& mover) {
    const std::string mover_inv = f2::inverse(mover);
    std::vector<ClopenSet> moved;
    for (const auto& s : sets) moved.push_back(s.translate(mover));
    const ClopenSet mu = U.translate(mover), mv = V.translate(mover);
    std::vector<int> lengths;
    for (const auto& g : elements) {
      const std::string conj = f2::multiply(f2::multiply(mover, g.word), mover_inv);
      bool all = true;
      for (auto [i, to_u] : reqs) {
        if (!moved[i].translate(conj).intersects(to_u ? mu : mv)) {
          all = false;
          break;
        }
      }
      if (all) lengths.push_back(g.length);
    }
    return make_probe(w.violators.condition, lengths, w.violators.word_bound(), w.violators.tail_window);
  };
  return {count(""), count(hw)};
}

ConditionCWitness check_targets(const LatticeAction& action, const LatticePoint& x,
                                const LatticePoint& y, const std::vector<LatticePoint>& targets,
                                const DepthSchedule& schedule) {
  int levels = 0;
  for (int d : schedule.neighborhood_depths) levels = std::max(levels, d);
  for (int d : schedule.target_depths) levels = std::max(levels, d);
  Checker<LatticeOps> c(LatticeOps{action, levels}, schedule);
  return c.search(x, y, targets);
}

ConditionCSummary check_condition_c(const LatticeAction& action, const LatticePoint& x,
                                    const LatticePoint& y,
                                    const std::vector<std::vector<LatticePoint>>& tuples,
                                    const DepthSchedule& schedule, std::uint64_t budget) {
  int levels = 0;
  for (int d : schedule.neighborhood_depths) levels = std::max(levels, d);
  for (int d : schedule.target_depths) levels = std::max(levels, d);
  Checker<LatticeOps> c(LatticeOps{action, levels}, schedule);
  return c.summary(x, y, tuples, budget);
}

std::vector<std::vector<LatticePoint>> sample_lattice_tuples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Points on the quarter grid of [-3,3]^2.
  std::uniform_int_distribution<int> coord(-12, 12);
  std::vector<std::vector<LatticePoint>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = 2 + i % 3;
    std::vector<LatticePoint> tuple;
    while (tuple.size() < size) {
      LatticePoint p{Rational(coord(rng), 4), Rational(coord(rng), 4)};
      if (std::find(tuple.begin(), tuple.end(), p) == tuple.end()) tuple.push_back(p);
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace acyl
