#include "acyl/annulus.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "acyl/error.hpp"

namespace acyl {

namespace {

ClopenSet parse_prefix_list(std::string_view list) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    auto item = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (item.empty()) throw Error(ErrorCode::kParse, "empty cylinder prefix in annulus spec");
    words.push_back(f2::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ClopenSet::cylinders(words);
}

std::vector<f2::Ray> distinct(std::vector<f2::Ray> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool sides_meet(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l) {
  for (const auto& p : k) {
    if (std::find(l.begin(), l.end(), p) != l.end()) return true;
  }
  return false;
}

std::size_t side_prefix_length(const std::vector<f2::Ray>& side, std::size_t cap) {
  std::size_t k = cap;
  for (std::size_t i = 1; i < side.size(); ++i) k = std::min(k, f2::common_prefix(side[0], side[i], k));
  return k;
}

constexpr std::size_t kLcpCap = 4096;

std::string quad_label(const BoundaryModel& m, std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
  const auto& p = m.points();
  return "(" + p[x] + "," + p[y] + "|" + p[z] + "," + p[w] + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// Annuli

Annulus Annulus::make(ClopenSet minus, ClopenSet plus) {
  if (minus.empty() || plus.empty()) throw Error(ErrorCode::kInvalidArgument, "annulus sides must be nonempty");
  if (minus.intersects(plus)) throw Error(ErrorCode::kInvalidArgument, "annulus sides must be disjoint");
  if (minus.unite(plus).is_whole()) {
    throw Error(ErrorCode::kInvalidArgument, "annulus sides must leave part of the boundary uncovered");
  }
  return Annulus{std::move(minus), std::move(plus)};
}

Annulus Annulus::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::optional<ClopenSet> minus, plus;
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParse, "expected key=value in annulus spec: " + token);
    auto key = token.substr(0, eq);
    auto value = std::string_view(token).substr(eq + 1);
    if (key == "minus") {
      minus = parse_prefix_list(value);
    } else if (key == "plus") {
      plus = parse_prefix_list(value);
    } else {
      throw Error(ErrorCode::kParse, "unknown annulus key: " + key);
    }
  }
  if (!minus || !plus) throw Error(ErrorCode::kParse, "annulus spec needs minus= and plus=");
  return make(std::move(*minus), std::move(*plus));
}

std::string Annulus::to_string() const { return "(" + minus.to_string() + " ; " + plus.to_string() + ")"; }

bool same_annulus(const Annulus& a, const Annulus& b) {
  return equal_sets(a.minus, b.minus) && equal_sets(a.plus, b.plus);
}

bool nests(const Annulus& a, const Annulus& b) { return a.plus.covers_with(b.minus); }

bool precedes(const std::vector<f2::Ray>& k, const Annulus& a) {
  return std::all_of(k.begin(), k.end(), [&](const f2::Ray& r) { return a.minus.contains(r); });
}

bool precedes(const Annulus& a, const std::vector<f2::Ray>& l) {
  return std::all_of(l.begin(), l.end(), [&](const f2::Ray& r) { return a.plus.contains(r); });
}

std::string RealizedAnnulus::label() const { return f2::display(h) + (negated ? "(-A)" : "(A)"); }

// ---------------------------------------------------------------------------
// System

AnnulusSystem::AnnulusSystem(const BoundaryModel& model, Annulus base, int word_bound)
    : model_(&model), base_(std::move(base)), word_bound_(word_bound) {
  if (word_bound < 0) throw Error(ErrorCode::kInvalidArgument, "word bound must be nonnegative");
  resolution_ = static_cast<int>(base_.resolution());
}

const Annulus& AnnulusSystem::translated(const std::string& h) const {
  auto it = cache_.find(h);
  if (it == cache_.end()) it = cache_.emplace(h, base_.translate(h)).first;
  return it->second;
}

Annulus AnnulusSystem::realize(std::string_view h, bool negated) const {
  const Annulus& a = translated(f2::parse(h));
  return negated ? a.negated() : a;
}

std::vector<RealizedAnnulus> AnnulusSystem::realized() const {
  std::vector<RealizedAnnulus> out;
  for (const auto& h : f2::words_up_to(word_bound_)) {
    for (bool neg : {false, true}) {
      Annulus a = realize(h, neg);
      bool seen = std::any_of(out.begin(), out.end(), [&](const RealizedAnnulus& r) { return same_annulus(r.annulus, a); });
      if (!seen) out.push_back({h, neg, std::move(a)});
    }
  }
  return out;
}

std::optional<int> AnnulusSystem::exact_bound(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l) const {
  if (sides_meet(k, l)) return 0;
  auto dk = distinct(k);
  auto dl = distinct(l);
  if (dk.size() < 2 || dl.size() < 2) return std::nullopt;
  auto p = std::max(side_prefix_length(dk, kLcpCap), side_prefix_length(dl, kLcpCap));
  return static_cast<int>(p) + resolution_;
}

Crossratio AnnulusSystem::crossratio(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l, int bound) const {
  if (k.empty() || l.empty()) throw Error(ErrorCode::kInvalidArgument, "crossratio sides must be nonempty");
  Crossratio out;
  out.word_bound = bound;
  auto eb = exact_bound(k, l);
  out.exact = eb && bound >= *eb;
  if (sides_meet(k, l)) return out;

  // Candidate centers: prefixes of a side's common prefix, extended by at most r letters.
  std::set<std::string> centers;
  const auto small = f2::words_up_to(resolution_);
  for (const auto* side : {&k, &l}) {
    auto d = distinct(*side);
    std::string p = d[0].prefix(side_prefix_length(d, static_cast<std::size_t>(bound)));
    for (std::size_t len = 0; len <= p.size(); ++len) {
      std::string_view pi(p.data(), len);
      for (const auto& t : small) {
        if (len + t.size() > static_cast<std::size_t>(bound)) continue;
        if (len > 0 && !t.empty() && pi.back() == f2::inverse(t.front())) continue;
        centers.insert(std::string(pi) + t);
      }
    }
  }

  std::vector<RealizedAnnulus> nodes;
  for (const auto& h : centers) {
    const Annulus& a = translated(h);
    for (bool neg : {false, true}) {
      Annulus b = neg ? a.negated() : a;
      if (!precedes(k, b) || !precedes(b, l)) continue;
      bool seen = std::any_of(nodes.begin(), nodes.end(), [&](const RealizedAnnulus& r) { return same_annulus(r.annulus, b); });
      if (!seen) nodes.push_back({h, neg, std::move(b)});
    }
  }
  out.admissible = nodes.size();
  const std::size_t n = nodes.size();
  if (n == 0) return out;

  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && nests(nodes[i].annulus, nodes[j].annulus)) succ[i].push_back(j);
    }
  }

  // Longest chain by memoized DFS; a back edge means a cycle and an infinite value.
  std::vector<int> best(n, 0), color(n, 0);
  std::vector<std::size_t> next(n, n), parent(n, n);
  std::function<void(std::size_t)> visit = [&](std::size_t u) {
    color[u] = 1;
    best[u] = 1;
    for (auto v : succ[u]) {
      if (!out.cycle.empty()) break;
      if (color[v] == 1) {
        for (std::size_t w = u; w != v && w != n; w = parent[w]) out.cycle.push_back(nodes[w]);
        out.cycle.push_back(nodes[v]);
        std::reverse(out.cycle.begin(), out.cycle.end());
        break;
      }
      if (color[v] == 0) {
        parent[v] = u;
        visit(v);
      }
      if (best[v] + 1 > best[u]) {
        best[u] = best[v] + 1;
        next[u] = v;
      }
    }
    color[u] = 2;
  };
  for (std::size_t i = 0; i < n && out.cycle.empty(); ++i) {
    if (color[i] == 0) visit(i);
  }
  if (!out.cycle.empty()) {
    out.infinite = true;
    out.exact = false;
    return out;
  }
  std::size_t start = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
  out.value = best[start];
  for (std::size_t u = start; u != n; u = next[u]) out.chain.push_back(nodes[u]);
  return out;
}

Crossratio AnnulusSystem::crossratio_exact(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l) const {
  auto eb = exact_bound(k, l);
  if (!eb) throw Error(ErrorCode::kPrecondition, "crossratio has no exact bound: a side has a single point");
  return crossratio(k, l, std::max(word_bound_, *eb));
}

namespace {

void require_distinct(const Triple& t) {
  if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
    throw Error(ErrorCode::kPrecondition, "triple has a repeated point: " + to_string(t));
  }
}

constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

}  // namespace

int AnnulusSystem::rho(const Triple& x, const Triple& y) const {
  require_distinct(x);
  require_distinct(y);
  int best = 0;
  for (auto [i, j] : kPairs) {
    for (auto [k, l] : kPairs) {
      auto c = crossratio_exact({x[i], x[j]}, {y[k], y[l]});
      if (c.infinite) throw Error(ErrorCode::kPrecondition, "infinite crossratio inside rho");
      best = std::max(best, c.value);
    }
  }
  return best;
}

bool AnnulusSystem::rho_at_most(const Triple& x, const Triple& y, int bound) const {
  require_distinct(x);
  require_distinct(y);
  for (auto [i, j] : kPairs) {
    for (auto [k, l] : kPairs) {
      auto c = crossratio_exact({x[i], x[j]}, {y[k], y[l]});
      if (c.infinite || c.value > bound) return false;
    }
  }
  return true;
}

Triple act(std::string_view g, const Triple& t) { return {f2::act(g, t[0]), f2::act(g, t[1]), f2::act(g, t[2])}; }

std::string to_string(const Triple& t) {
  return "(" + t[0].to_string() + ", " + t[1].to_string() + ", " + t[2].to_string() + ")";
}

// ---------------------------------------------------------------------------
// Axioms

AxiomReport verify_axioms(const AnnulusSystem& system, int samples, int tail_window, std::uint64_t seed,
                          const std::vector<std::array<std::size_t, 4>>& extra) {
  const auto& m = system.model();
  const std::size_t n = m.points().size();
  if (n < 4) throw Error(ErrorCode::kPrecondition, "axiom sampling needs at least four model points");
  AxiomReport rep;
  rep.word_bound = system.word_bound();
  rep.tail_window = tail_window;

  std::vector<std::array<std::size_t, 4>> quads = extra;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int s = 0; s < samples; ++s) {
    std::array<std::size_t, 4> q;
    for (std::size_t i = 0; i < 4; ++i) {
      do {
        q[i] = pick(rng);
      } while (std::find(q.begin(), q.begin() + i, q[i]) != q.begin() + i);
    }
    quads.push_back(q);
  }

  for (const auto& [x, y, z, w] : quads) {
    if (x == y || z == w) {
      ++rep.degenerate_rejected;
      continue;
    }
    ++rep.quadruples;
    std::vector<f2::Ray> k{m.ray(x), m.ray(y)}, l{m.ray(z), m.ray(w)};
    std::vector<std::uint64_t> values;
    bool infinite = false;
    Crossratio last;
    for (int b = 1; b <= system.word_bound(); ++b) {
      last = system.crossratio(k, l, b);
      infinite = infinite || last.infinite;
      values.push_back(static_cast<std::uint64_t>(last.value));
    }
    if (infinite) ++rep.a1_infinite;
    if (!infinite && is_stabilized(values, tail_window)) {
      ++rep.a1_stable;
    } else if (!rep.a1_witness) {
      rep.a1_witness = quad_label(m, x, y, z, w);
    }
    if (last.exact) ++rep.a1_exact;
    if (rep.value_histogram.size() <= values.back()) rep.value_histogram.resize(values.back() + 1);
    ++rep.value_histogram[values.back()];

    auto other = system.crossratio({m.ray(x), m.ray(z)}, {m.ray(y), m.ray(w)});
    int low = std::min(last.value, other.value);
    if (low > rep.a2_k) {
      rep.a2_k = low;
      rep.a2_witness = quad_label(m, x, y, z, w) + " and " + quad_label(m, x, z, y, w);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Certificates

std::pair<f2::Ray, f2::Ray> fixed_rays(std::string_view g) {
  std::string w = f2::parse(g);
  if (w.empty()) throw Error(ErrorCode::kInvalidArgument, "the identity has no fixed rays");
  std::string u;
  while (w.size() >= 2 && w.front() == f2::inverse(w.back())) {
    u.push_back(w.front());
    w = w.substr(1, w.size() - 2);
  }
  return {f2::act(u, f2::Ray::make("", w)), f2::act(u, f2::Ray::make("", f2::inverse(w)))};
}

std::optional<f2::Ray> default_third_point(const Annulus& a) {
  std::vector<f2::Ray> candidates;
  for (char c : f2::kLetters) candidates.push_back(f2::Ray::make("", c));
  for (const auto& w : f2::words_of_length(2)) candidates.push_back(f2::Ray::from_point(w));
  for (const auto& r : candidates) {
    if (!a.minus.contains(r) && !a.plus.contains(r)) return r;
  }
  return std::nullopt;
}

bool LoxodromicCertificate::passed() const {
  if (!N || !failure.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const ChainCheck& c) { return c.holds; }) &&
         std::all_of(rows.begin(), rows.end(), [](const DisplacementRow& r) { return r.holds(); });
}

LoxodromicCertificate certify_loxodromic(const AnnulusSystem& system, std::string_view g,
                                         std::optional<f2::Ray> z, int n_max, int n_budget) {
  LoxodromicCertificate cert;
  cert.element = f2::parse(g);
  cert.n_budget = n_budget;
  if (n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be positive");
  auto [attracting, repelling] = fixed_rays(cert.element);
  cert.attracting = attracting;
  cert.repelling = repelling;
  const Annulus& a = system.base();
  if (!z) z = default_third_point(a);
  if (!z) {
    cert.failure = "no third point outside both sides of the annulus";
    return cert;
  }
  cert.third = *z;
  const auto& x = cert.repelling;
  const auto& y = cert.attracting;
  if (!a.minus.contains(x) || !a.plus.contains(y)) {
    cert.failure = "the repelling point must lie in A- and the attracting point in A+";
    return cert;
  }
  if (a.minus.contains(*z) || a.plus.contains(*z)) {
    cert.failure = "third point lies inside A- or A+";
    return cert;
  }

  const ClopenSet outside_minus = a.minus.complement();
  for (int n = 1; n <= n_budget; ++n) {
    if (outside_minus.translate(f2::power(cert.element, n)).subset_of(a.plus)) {
      cert.N = n;
      break;
    }
  }
  if (!cert.N) {
    cert.failure = "no N within budget with g^N(M \\ A-) inside A+";
    return cert;
  }
  const int N = *cert.N;
  auto gpow = [&](int i) { return f2::power(cert.element, static_cast<std::int64_t>(i) * N); };
  auto translate = [&](int i) { return a.translate(gpow(i)); };

  cert.checks.push_back({"fixed_points", "g x = x, g y = y",
                         f2::act(cert.element, x) == x && f2::act(cert.element, y) == y});
  bool ok = precedes({x}, translate(1));
  cert.checks.push_back({"repelling_before_translate", "{x} < g^N A", ok});
  ok = true;
  for (int n = 1; n <= n_max; ++n) ok = ok && precedes(translate(n - 1), {y});
  cert.checks.push_back({"translates_before_attracting", "g^{(n-1)N} A < {y} for n <= n_max", ok});
  ok = true;
  for (int i = 0; i + 1 < n_max; ++i) ok = ok && nests(translate(i), translate(i + 1));
  cert.checks.push_back({"translates_nest", "g^{iN} A < g^{(i+1)N} A for i < n_max - 1", ok});
  cert.checks.push_back({"third_before_translate", "{z} < g^N A", precedes({*z}, translate(1))});
  cert.checks.push_back({"annulus_before_image_of_third", "A < {g^N z}", precedes(a, {f2::act(gpow(1), *z)})});
  ok = true;
  for (int n = 1; n <= n_max; ++n) ok = ok && precedes(translate(n - 1), {f2::act(gpow(n), *z)});
  cert.checks.push_back({"translate_before_image_of_third", "g^{(n-1)N} A < {g^{nN} z} for n <= n_max", ok});

  const Triple t = cert.triple();
  for (int n = 1; n <= n_max; ++n) {
    DisplacementRow row;
    row.n = n;
    row.lower_bound = n - 1;
    const auto gn = gpow(n);
    auto c = system.crossratio_exact({x, *z}, {f2::act(gn, *z), y});
    row.crossratio = c.infinite ? -1 : c.value;
    row.word_bound = c.word_bound;
    row.exact = c.exact;
    for (const auto& r : c.chain) row.chain.push_back(r.label());
    row.rho = system.rho(t, act(gn, t));
    cert.rows.push_back(std::move(row));
  }
  return cert;
}

WpdCertificate certify_wpd(const AnnulusSystem& system, std::string_view g, std::optional<f2::Ray> z,
                           int epsilon, int words, int tail_window, int samples, std::uint64_t seed) {
  if (epsilon < 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be nonnegative");
  WpdCertificate cert;
  cert.epsilon = epsilon;
  cert.L = epsilon + 3;
  // The chain must reach A_1 < ... < A_{2L}, which is the displacement row n = 2L + 1.
  cert.loxodromic = certify_loxodromic(system, g, z, 2 * cert.L + 1);
  if (!cert.loxodromic.N) return cert;
  const int N = *cert.loxodromic.N;
  cert.K = (2 * cert.L + 1) * N;
  const std::string gk = f2::power(cert.loxodromic.element, cert.K);
  const Triple a = cert.loxodromic.triple();
  const Triple gka = act(gk, a);
  const Annulus al = system.base().translate(f2::power(cert.loxodromic.element, static_cast<std::int64_t>(cert.L) * N));

  auto count_in = [](const ClopenSet& s, const Triple& w) {
    return std::count_if(w.begin(), w.end(), [&](const f2::Ray& r) { return s.contains(r); });
  };
  auto check_lemma = [&](const Triple& w) {
    ++cert.sampled;
    if (system.rho_at_most(a, w, epsilon)) {
      ++cert.premise_near_a;
      if (count_in(al.minus, w) < 2) {
        ++cert.lemma_failures;
        if (!cert.lemma_witness) cert.lemma_witness = "rho(a,w)<=eps but fewer than two of w in A_L-: " + to_string(w);
      }
    }
    if (system.rho_at_most(gka, w, epsilon)) {
      ++cert.premise_near_gka;
      if (count_in(al.plus, w) < 2) {
        ++cert.lemma_failures;
        if (!cert.lemma_witness) cert.lemma_witness = "rho(g^K a,w)<=eps but fewer than two of w in A_L+: " + to_string(w);
      }
    }
  };

  std::vector<int> lengths;
  for (const auto& h : f2::words_up_to(words)) {
    const Triple ha = act(h, a);
    const Triple hgka = act(h, gka);
    check_lemma(ha);
    check_lemma(hgka);
    if (system.rho_at_most(a, ha, epsilon) && system.rho_at_most(gka, hgka, epsilon)) {
      lengths.push_back(static_cast<int>(h.size()));
      cert.survivors.push_back(f2::display(h));
    }
  }

  // Random triples: model points, and model points mixed with the coordinates of a and g^K a.
  const auto& m = system.model();
  std::vector<f2::Ray> pool;
  for (std::size_t i = 0; i < m.points().size(); ++i) pool.push_back(m.ray(i));
  std::vector<f2::Ray> anchors{a[0], a[1], a[2], gka[0], gka[1], gka[2]};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> from_pool(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> from_anchor(0, anchors.size() - 1);
  for (int s = 0; s < samples; ++s) {
    Triple w;
    int fixed = s % 3;  // number of anchor coordinates
    for (int i = 0; i < 3; ++i) w[i] = i < fixed ? anchors[from_anchor(rng)] : pool[from_pool(rng)];
    if (w[0] == w[1] || w[1] == w[2] || w[0] == w[2]) continue;
    check_lemma(w);
  }

  cert.probe = make_probe("rho(a,ha) <= eps and rho(g^K a, h g^K a) <= eps", lengths, words, tail_window);
  return cert;
}

}  // namespace acyl
