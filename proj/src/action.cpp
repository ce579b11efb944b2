#include "acyl/action.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "acyl/error.hpp"

namespace acyl {

bool FinitenessProbe::monotone() const {
  return std::is_sorted(counts.begin(), counts.end());
}

bool is_stabilized(const std::vector<std::uint64_t>& counts, int tail_window) {
  if (tail_window < 1) throw Error(ErrorCode::kInvalidArgument, "tail window must be positive");
  if (counts.size() < static_cast<std::size_t>(tail_window) + 1) return false;
  return std::all_of(counts.end() - tail_window - 1, counts.end(),
                     [&](std::uint64_t c) { return c == counts.back(); });
}

FinitenessProbe make_probe(std::string condition, const std::vector<int>& satisfying_lengths,
                           int word_bound, int tail_window) {
  if (word_bound < 1) throw Error(ErrorCode::kInvalidArgument, "word bound must be positive");
  FinitenessProbe p;
  p.condition = std::move(condition);
  p.tail_window = tail_window;
  p.counts.assign(static_cast<std::size_t>(word_bound), 0);
  for (int len : satisfying_lengths) {
    for (int l = std::max(len, 1); l <= word_bound; ++l) ++p.counts[l - 1];
  }
  p.stabilized = is_stabilized(p.counts, tail_window);
  return p;
}

// ---------------------------------------------------------------------------
// Spec files

namespace {

std::string trim(std::string s) {
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& s) {
  Rational r = parse_rational(s);
  if (r.denominator() != 1) throw Error(ErrorCode::kParse, "expected an integer, got " + s);
  return r.numerator();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

ActionSpec ActionSpec::parse(std::istream& in) {
  ActionSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    auto colon = line.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
      throw Error(ErrorCode::kParse, "expected name=kind:payload, got " + line);
    }
    GeneratorSpec g;
    g.name = trim(line.substr(0, eq));
    const std::string kind = line.substr(eq + 1, colon - eq - 1);
    const std::string payload = line.substr(colon + 1);
    if (g.name.empty()) throw Error(ErrorCode::kParse, "generator without a name");
    if (kind == "perm") {
      g.kind = GeneratorSpec::Kind::kPermutation;
      for (const auto& item : split(payload, ',')) {
        if (item.empty()) continue;
        auto arrow = item.find("->");
        if (arrow == std::string::npos) throw Error(ErrorCode::kParse, "expected u->v, got " + item);
        g.mapping.emplace_back(trim(item.substr(0, arrow)), trim(item.substr(arrow + 2)));
      }
    } else if (kind == "leftmul") {
      g.kind = GeneratorSpec::Kind::kLeftMultiplication;
      g.word = f2::parse(trim(payload));
    } else if (kind == "translate") {
      g.kind = GeneratorSpec::Kind::kTranslation;
      auto parts = split(payload, ',');
      if (parts.size() != 2) throw Error(ErrorCode::kParse, "expected translate:dx,dy");
      g.dx = parse_int(parts[0]);
      g.dy = parse_int(parts[1]);
    } else {
      throw Error(ErrorCode::kParse, "unknown generator kind " + kind);
    }
    spec.generators.push_back(std::move(g));
  }
  return spec;
}

ActionSpec ActionSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open action spec " + path);
  return parse(in);
}

void ActionSpec::write(std::ostream& out) const {
  for (const auto& g : generators) {
    out << g.name << '=';
    switch (g.kind) {
      case GeneratorSpec::Kind::kPermutation: {
        out << "perm:";
        for (std::size_t i = 0; i < g.mapping.size(); ++i) {
          out << (i ? "," : "") << g.mapping[i].first << "->" << g.mapping[i].second;
        }
        break;
      }
      case GeneratorSpec::Kind::kLeftMultiplication:
        out << "leftmul:" << f2::display(g.word);
        break;
      case GeneratorSpec::Kind::kTranslation:
        out << "translate:" << g.dx << ',' << g.dy;
        break;
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Permutation actions

PermutationAction::PermutationAction(
    const MetricGraph& space, std::vector<std::pair<std::string, std::vector<Vertex>>> generators)
    : space_(&space) {
  const std::size_t n = space.size();
  for (auto& [name, map] : generators) {
    if (map.size() != n) throw Error(ErrorCode::kInvalidArgument, "generator " + name + " has wrong size");
    std::vector<Vertex> inv(n, n);
    for (Vertex v = 0; v < n; ++v) {
      if (map[v] >= n || inv[map[v]] != n) {
        throw Error(ErrorCode::kInvalidArgument, "generator " + name + " is not a bijection");
      }
      inv[map[v]] = v;
    }
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (space.distance(u, v) != space.distance(map[u], map[v])) {
          throw Error(ErrorCode::kInvalidArgument, "generator " + name + " is not an isometry");
        }
      }
    }
    names_.push_back(name);
    generators_.push_back(std::move(map));
    inverses_.push_back(std::move(inv));
  }
}

PermutationAction PermutationAction::from_spec(const MetricGraph& space, const ActionSpec& spec) {
  std::vector<std::pair<std::string, std::vector<Vertex>>> gens;
  for (const auto& g : spec.generators) {
    if (g.kind != GeneratorSpec::Kind::kPermutation) {
      throw Error(ErrorCode::kInvalidArgument, "graph actions need perm: generators");
    }
    std::vector<Vertex> map(space.size());
    for (Vertex v = 0; v < space.size(); ++v) map[v] = v;
    for (const auto& [u, v] : g.mapping) map[space.index(u)] = space.index(v);
    gens.emplace_back(g.name, std::move(map));
  }
  return PermutationAction(space, std::move(gens));
}

std::vector<PermutationAction::Element> PermutationAction::enumerate(int max_length) const {
  const std::size_t n = space_->size();
  Element id{"e", 0, std::vector<Vertex>(n)};
  for (Vertex v = 0; v < n; ++v) id.map[v] = v;
  std::vector<Element> out{id};
  std::set<std::vector<Vertex>> seen{id.map};
  std::size_t frontier_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (std::size_t k = 0; k < generators_.size(); ++k) {
        for (int sign = 0; sign < 2; ++sign) {
          const auto& s = sign == 0 ? generators_[k] : inverses_[k];
          Element next;
          next.length = len;
          next.map.resize(n);
          for (Vertex v = 0; v < n; ++v) next.map[v] = s[out[i].map[v]];
          if (!seen.insert(next.map).second) continue;
          next.word = names_[k] + (sign ? "^-1" : "") + (out[i].length ? "." + out[i].word : "");
          out.push_back(std::move(next));
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

PermutationAction::Element PermutationAction::evaluate(const std::string& word) const {
  const std::size_t n = space_->size();
  Element el{word, 0, std::vector<Vertex>(n)};
  for (Vertex v = 0; v < n; ++v) el.map[v] = v;
  if (word == "e" || word.empty()) return el;
  auto tokens = split(word, '.');
  // The rightmost letter acts first.
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    std::string name = *it;
    bool inverse = false;
    if (name.size() > 3 && name.compare(name.size() - 3, 3, "^-1") == 0) {
      inverse = true;
      name.resize(name.size() - 3);
    }
    auto pos = std::find(names_.begin(), names_.end(), name);
    if (pos == names_.end()) throw Error(ErrorCode::kInvalidArgument, "unknown generator " + name);
    const auto& s = inverse ? inverses_[pos - names_.begin()] : generators_[pos - names_.begin()];
    for (Vertex v = 0; v < n; ++v) el.map[v] = s[el.map[v]];
    ++el.length;
  }
  return el;
}

PermutationAction torus_translations(const MetricGraph& torus, int rows, int cols) {
  if (torus.size() != static_cast<std::size_t>(rows) * cols) {
    throw Error(ErrorCode::kInvalidArgument, "torus size does not match rows x cols");
  }
  std::vector<Vertex> right(torus.size()), up(torus.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Vertex v = torus.index(std::to_string(r * cols + c));
      right[v] = torus.index(std::to_string(r * cols + (c + 1) % cols));
      up[v] = torus.index(std::to_string(((r + 1) % rows) * cols + c));
    }
  }
  return PermutationAction(torus, {{"x", std::move(right)}, {"y", std::move(up)}});
}

FinitenessProbe acylindricity_probe(const PermutationAction& action, const Rational& epsilon,
                                    const Rational& R, Vertex x, Vertex y, int word_bound,
                                    int tail_window) {
  const MetricGraph& s = action.space();
  if (Rational(s.distance(x, y)) < R) {
    throw Error(ErrorCode::kPrecondition, "acylindricity probe needs d(x,y) >= R");
  }
  std::vector<int> lengths;
  for (const auto& g : action.enumerate(word_bound)) {
    if (Rational(s.distance(x, g.map[x])) <= epsilon && Rational(s.distance(y, g.map[y])) <= epsilon) {
      lengths.push_back(g.length);
    }
  }
  return make_probe("acylindricity", lengths, word_bound, tail_window);
}

// ---------------------------------------------------------------------------
// Free group on its tree

std::int64_t f2::tree_distance(std::string_view u, std::string_view v) {
  const std::size_t c = f2::common_prefix(u, v);
  return static_cast<std::int64_t>(u.size() + v.size() - 2 * c);
}

namespace {

std::int64_t tree_displacement(std::string_view h, std::string_view s) {
  return f2::tree_distance(s, f2::multiply(h, s));
}

FinitenessProbe tree_wpd_counts(const std::string& gk, const std::string& s, const Rational& eps,
                                int word_bound, int tail_window) {
  const std::string gks = f2::multiply(gk, s);
  std::vector<int> lengths;
  for (const auto& h : f2::words_up_to(word_bound)) {
    if (Rational(tree_displacement(h, s)) <= eps && Rational(tree_displacement(h, gks)) <= eps) {
      lengths.push_back(static_cast<int>(h.size()));
    }
  }
  return make_probe("wpd", lengths, word_bound, tail_window);
}

void compare_transfer(WpdProbe& w) {
  w.transfer_holds = true;
  if (!w.moved) return;
  for (std::size_t l = 0; l < w.base.counts.size(); ++l) {
    if (w.moved->counts[l] > w.base.counts[l]) w.transfer_holds = false;
  }
}

}  // namespace

FinitenessProbe free_group_acylindricity_probe(const Rational& epsilon, const Rational& R,
                                               const std::string& x, const std::string& y,
                                               int word_bound, int tail_window) {
  const std::string px = f2::parse(x);
  const std::string py = f2::parse(y);
  if (Rational(f2::tree_distance(px, py)) < R) {
    throw Error(ErrorCode::kPrecondition, "acylindricity probe needs d(x,y) >= R");
  }
  std::vector<int> lengths;
  for (const auto& g : f2::words_up_to(word_bound)) {
    if (Rational(tree_displacement(g, px)) <= epsilon && Rational(tree_displacement(g, py)) <= epsilon) {
      lengths.push_back(static_cast<int>(g.size()));
    }
  }
  return make_probe("acylindricity", lengths, word_bound, tail_window);
}

WpdProbe free_group_wpd_probe(const std::string& g, const std::string& s, const Rational& epsilon,
                              int K, int word_bound, int tail_window,
                              const std::optional<std::string>& s1) {
  if (K < 1) throw Error(ErrorCode::kInvalidArgument, "K must be at least 1");
  const std::string gk = f2::power(f2::parse(g), K);
  const std::string s0 = f2::parse(s);
  WpdProbe w;
  w.base = tree_wpd_counts(gk, s0, epsilon, word_bound, tail_window);
  if (s1) {
    const std::string t = f2::parse(*s1);
    w.moved_epsilon = epsilon - Rational(2 * f2::tree_distance(s0, t));
    if (w.moved_epsilon > 0) w.moved = tree_wpd_counts(gk, t, w.moved_epsilon, word_bound, tail_window);
  }
  compare_transfer(w);
  return w;
}

WpdProbe wpd_probe(const PermutationAction& action, const std::string& g, Vertex s,
                   const Rational& epsilon, int K, int word_bound, int tail_window,
                   std::optional<Vertex> s1) {
  if (K < 1) throw Error(ErrorCode::kInvalidArgument, "K must be at least 1");
  const MetricGraph& space = action.space();
  const auto gmap = action.evaluate(g).map;
  auto power_of = [&](Vertex v) {
    for (int i = 0; i < K; ++i) v = gmap[v];
    return v;
  };
  const auto elements = action.enumerate(word_bound);
  auto counts = [&](Vertex p, const Rational& eps) {
    const Vertex q = power_of(p);
    std::vector<int> lengths;
    for (const auto& h : elements) {
      if (Rational(space.distance(p, h.map[p])) <= eps && Rational(space.distance(q, h.map[q])) <= eps) {
        lengths.push_back(h.length);
      }
    }
    return make_probe("wpd", lengths, word_bound, tail_window);
  };
  WpdProbe w;
  w.base = counts(s, epsilon);
  if (s1) {
    w.moved_epsilon = epsilon - Rational(2 * space.distance(s, *s1));
    if (w.moved_epsilon > 0) w.moved = counts(*s1, w.moved_epsilon);
  }
  compare_transfer(w);
  return w;
}

// ---------------------------------------------------------------------------
// Boundary action

BoundaryAction::BoundaryAction(const BoundaryModel& model, std::vector<std::string> generators)
    : model_(&model) {
  for (auto& g : generators) {
    g = f2::parse(g);
    if (g.empty()) throw Error(ErrorCode::kInvalidArgument, "generator must be nontrivial");
  }
  generators_ = std::move(generators);
}

BoundaryAction BoundaryAction::from_spec(const BoundaryModel& model, const ActionSpec& spec) {
  std::vector<std::string> gens;
  for (const auto& g : spec.generators) {
    if (g.kind != GeneratorSpec::Kind::kLeftMultiplication) {
      throw Error(ErrorCode::kInvalidArgument, "boundary actions need leftmul: generators");
    }
    gens.push_back(g.word);
  }
  return BoundaryAction(model, std::move(gens));
}

std::vector<BoundaryAction::Element> BoundaryAction::enumerate(int max_length) const {
  const std::size_t n = model_->points().size();
  auto footprint = [&](const std::string& g) {
    std::vector<f2::Ray> fp;
    fp.reserve(n);
    for (std::size_t i = 0; i < n; ++i) fp.push_back(f2::act(g, model_->ray(i)));
    return fp;
  };
  std::vector<Element> out{{"", 0}};
  std::set<std::vector<f2::Ray>> seen{footprint("")};
  std::size_t frontier_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& s : generators_) {
        for (const auto& letter : {s, f2::inverse(s)}) {
          std::string w = f2::multiply(letter, out[i].word);
          if (!seen.insert(footprint(w)).second) continue;
          out.push_back({std::move(w), len});
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

std::string BoundaryAction::apply_point(std::string_view g, std::size_t i) const {
  return model_->locate(f2::act(g, model_->ray(i)));
}

std::vector<std::string> fixed_leaves(const BoundaryModel& model, std::string_view g) {
  std::vector<std::string> out;
  for (const auto& p : model.points()) {
    CylinderTerm img = translate_term(g, {p, false});
    const std::size_t c = f2::common_prefix(img.word, p);
    const bool nested = img.complement ? c < std::min(img.word.size(), p.size())
                                       : c == std::min(img.word.size(), p.size());
    if (nested) out.push_back(p);
  }
  return out;
}

DynamicsCertificate detect_north_south(const BoundaryModel& model, const std::string& g,
                                       const std::vector<int>& cylinder_depths, int n_max) {
  DynamicsCertificate cert;
  const std::string w = f2::parse(g);
  if (w.empty()) throw Error(ErrorCode::kPrecondition, "north-south detection needs g nontrivial");
  if (n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be positive");
  cert.element = f2::display(w);
  cert.n_max = n_max;
  if (static_cast<int>(w.size()) >= model.depth()) {
    cert.diagnostic = "|g| >= depth: fixed leaves cannot be resolved at this depth";
    return cert;
  }
  cert.fixed_points = fixed_leaves(model, w);
  for (const auto& p : cert.fixed_points) {
    CylinderTerm img = translate_term(w, {p, false});
    if (img.complement || img.word.size() == p.size()) continue;
    (img.word.size() > p.size() ? cert.attracting : cert.repelling) = p;
  }
  if (cert.fixed_points.size() != 2 || cert.attracting.empty() || cert.repelling.empty()) {
    cert.diagnostic = "expected one attracting and one repelling fixed leaf, found " +
                      std::to_string(cert.fixed_points.size()) + " fixed leaves";
    return cert;
  }
  bool all = true;
  for (int d : cylinder_depths) {
    if (d < 1 || d > model.depth()) throw Error(ErrorCode::kInvalidArgument, "cylinder depth out of range");
    NorthSouthPair pair;
    pair.depth = d;
    pair.repelling_cylinder = cert.repelling.substr(0, d);
    pair.attracting_cylinder = cert.attracting.substr(0, d);
    const ClopenSet outside = ClopenSet::cylinder(pair.repelling_cylinder).complement();
    const ClopenSet target = ClopenSet::cylinder(pair.attracting_cylinder);
    int first_good = -1;
    std::string gn;
    for (int n = 1; n <= n_max; ++n) {
      gn = f2::multiply(w, gn);
      if (outside.translate(gn).subset_of(target)) {
        if (first_good < 0) first_good = n;
      } else {
        first_good = -1;
      }
    }
    if (first_good > 0) pair.N = first_good;
    all = all && pair.N.has_value();
    cert.pairs.push_back(pair);
  }
  if (all) cert.kind = DynamicsCertificate::Kind::kNorthSouth;
  return cert;
}

std::string to_string(ElementKind k) {
  switch (k) {
    case ElementKind::kElliptic: return "elliptic";
    case ElementKind::kParabolic: return "parabolic";
    case ElementKind::kLoxodromic: return "loxodromic";
    case ElementKind::kUnresolved: return "unresolved";
  }
  return "unresolved";
}

Classification classify_element(const BoundaryModel& model, const std::string& g) {
  Classification c;
  const std::string w = f2::parse(g);
  const std::size_t n = model.points().size();
  // g has finite order on the footprint iff some power up to 2|points| is the identity there.
  std::vector<f2::Ray> cur;
  for (std::size_t i = 0; i < n; ++i) cur.push_back(model.ray(i));
  const std::uint64_t limit = 2 * n;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    bool identity = true;
    for (std::size_t i = 0; i < n; ++i) {
      cur[i] = f2::act(w, cur[i]);
      identity = identity && cur[i] == model.ray(i);
    }
    c.order_tested = k;
    if (identity) {
      c.kind = ElementKind::kElliptic;
      return c;
    }
  }
  if (static_cast<int>(w.size()) >= model.depth()) {
    c.diagnostic = "|g| >= depth: fixed leaves cannot be resolved at this depth";
    return c;
  }
  c.fixed = fixed_leaves(model, w).size();
  if (c.fixed == 2) {
    c.kind = ElementKind::kLoxodromic;
  } else if (c.fixed == 1) {
    c.kind = ElementKind::kParabolic;
  } else {
    c.diagnostic = std::to_string(c.fixed) + " fixed leaves at depth " + std::to_string(model.depth());
  }
  return c;
}

namespace {

class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1;
  }
  bool rows_meet(std::size_t i, std::size_t j) const {
    for (std::size_t k = 0; k < words_; ++k) {
      if (bits_[i * words_ + k] & bits_[j * words_ + k]) return true;
    }
    return false;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

FinitenessProbe proper_discontinuity_probe(const BoundaryAction& action, int c, int word_bound,
                                           int tail_window) {
  const BoundaryModel& m = action.model();
  if (c < 0 || c >= m.depth()) throw Error(ErrorCode::kPrecondition, "separation must satisfy 0 <= c < depth");
  const std::size_t n = m.points().size();
  const auto cap = static_cast<std::size_t>(m.depth());
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      base[i][j] = i != j && f2::common_prefix(m.ray(i), m.ray(j), cap) <= static_cast<std::size_t>(c);
    }
  }
  std::vector<int> lengths;
  std::vector<f2::Ray> img(n);
  for (const auto& h : action.enumerate(word_bound)) {
    for (std::size_t i = 0; i < n; ++i) img[i] = f2::act(h.word, m.ray(i));
    // Triangle in (base AND image) graph <=> some triple of K is mapped into K.
    BitMatrix both(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (base[i][j] && f2::common_prefix(img[i], img[j], cap) <= static_cast<std::size_t>(c)) {
          both.set(i, j);
        }
      }
    }
    bool hit = false;
    for (std::size_t i = 0; i < n && !hit; ++i) {
      for (std::size_t j = i + 1; j < n && !hit; ++j) {
        if (both.get(i, j) && both.rows_meet(i, j)) hit = true;
      }
    }
    if (hit) lengths.push_back(h.length);
  }
  return make_probe("proper_discontinuity", lengths, word_bound, tail_window);
}

// ---------------------------------------------------------------------------
// Lattice action

LatticeAction::LatticeAction(std::vector<std::pair<std::int64_t, std::int64_t>> generators)
    : generators_(std::move(generators)) {}

LatticeAction LatticeAction::from_spec(const ActionSpec& spec) {
  std::vector<std::pair<std::int64_t, std::int64_t>> gens;
  for (const auto& g : spec.generators) {
    if (g.kind != GeneratorSpec::Kind::kTranslation) {
      throw Error(ErrorCode::kInvalidArgument, "lattice actions need translate: generators");
    }
    gens.emplace_back(g.dx, g.dy);
  }
  return LatticeAction(std::move(gens));
}

std::vector<LatticeAction::Element> LatticeAction::enumerate(int max_length) const {
  std::vector<Element> out{{0, 0, 0, "(0,0)"}};
  std::set<std::pair<std::int64_t, std::int64_t>> seen{{0, 0}};
  std::size_t frontier_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (auto [gx, gy] : generators_) {
        for (int sign : {1, -1}) {
          Element e{out[i].dx + sign * gx, out[i].dy + sign * gy, len, {}};
          if (!seen.insert({e.dx, e.dy}).second) continue;
          e.word = "(" + std::to_string(e.dx) + "," + std::to_string(e.dy) + ")";
          out.push_back(std::move(e));
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

bool LatticeAction::meets(const Element& g, const Box& a, const Box& u) {
  const Rational reach = a.radius + u.radius;
  const Rational dx = a.center.x + g.dx - u.center.x;
  const Rational dy = a.center.y + g.dy - u.center.y;
  return (dx < 0 ? -dx : dx) < reach && (dy < 0 ? -dy : dy) < reach;
}

std::optional<std::uint64_t> LatticeAction::fixed_point_count(const Element& g) {
  if (g.dx == 0 && g.dy == 0) return std::nullopt;
  return 0;
}

}  // namespace acyl
