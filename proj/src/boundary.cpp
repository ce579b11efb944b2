#include "acyl/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "acyl/error.hpp"

namespace acyl {

Zeta Zeta::rational(const Rational& v) {
  if (v <= 0) throw Error(ErrorCode::kInvalidArgument, "zeta must be positive");
  return Zeta{false, v};
}

Zeta Zeta::parse(const std::string& text) {
  if (text == "ln2") return ln2();
  return rational(parse_rational(text));
}

std::string Zeta::to_string() const { return is_ln2 ? "ln2" : acyl::to_string(value); }

// ---------------------------------------------------------------------------
// Clopen sets

CylinderTerm translate_term(std::string_view g, const CylinderTerm& t) {
  CylinderTerm image;
  const std::string_view p = t.word;
  if (p.empty()) {
    image = t;  // the whole space and the empty set are invariant
    return image;
  }
  std::size_t k = 0;
  while (k < g.size() && k < p.size() && p[k] == f2::inverse(g[g.size() - 1 - k])) ++k;
  if (k < p.size()) {
    image.word = f2::multiply(g, p);
    image.complement = t.complement;
  } else {
    // g = g' p^-1 swallows the whole prefix: the image of Cyl(p) is everything
    // outside Cyl(g' last(p)^-1).
    std::string head(g.substr(0, g.size() - p.size()));
    head.push_back(f2::inverse(p.back()));
    image.word = std::move(head);
    image.complement = !t.complement;
  }
  return image;
}

namespace {

bool comparable(std::string_view u, std::string_view v) {
  std::size_t n = std::min(u.size(), v.size());
  return u.substr(0, n) == v.substr(0, n);
}

bool is_prefix(std::string_view p, std::string_view w) {
  return p.size() <= w.size() && w.substr(0, p.size()) == p;
}

bool terms_intersect(const CylinderTerm& x, const CylinderTerm& y) {
  if (!x.complement && !y.complement) return comparable(x.word, y.word);
  if (x.complement && y.complement) return true;  // both nonempty; two cylinders never cover
  const auto& cyl = x.complement ? y : x;
  const auto& co = x.complement ? x : y;
  return !is_prefix(co.word, cyl.word);
}

}  // namespace

void ClopenSet::add(CylinderTerm t) {
  if (t.complement && t.word.empty()) return;  // empty set
  if (std::find(terms_.begin(), terms_.end(), t) == terms_.end()) terms_.push_back(std::move(t));
}

ClopenSet ClopenSet::cylinder(std::string_view prefix) {
  if (!f2::is_reduced(prefix)) {
    throw Error(ErrorCode::kInvalidArgument, "cylinder prefix is not reduced: " + std::string(prefix));
  }
  ClopenSet s;
  s.add({std::string(prefix), false});
  return s;
}

ClopenSet ClopenSet::cylinders(const std::vector<std::string>& prefixes) {
  ClopenSet s;
  for (const auto& p : prefixes) s = s.unite(cylinder(p));
  return s;
}

std::size_t ClopenSet::resolution() const {
  std::size_t r = 0;
  for (const auto& t : terms_) r = std::max(r, t.word.size());
  return r;
}

bool ClopenSet::contains(const f2::Ray& r) const {
  for (const auto& t : terms_) {
    if (f2::has_prefix(r, t.word) != t.complement) return true;
  }
  return false;
}

bool ClopenSet::covers(std::string_view prefix) const {
  bool undecided = false;
  for (const auto& t : terms_) {
    if (!t.complement) {
      if (is_prefix(t.word, prefix)) return true;
      if (is_prefix(prefix, t.word)) undecided = true;
    } else {
      if (!comparable(t.word, prefix)) return true;
      if (is_prefix(prefix, t.word) && prefix.size() < t.word.size()) undecided = true;
    }
  }
  if (!undecided) return false;
  std::string child(prefix);
  child.push_back('a');
  for (char c : f2::kLetters) {
    if (!prefix.empty() && c == f2::inverse(prefix.back())) continue;
    child.back() = c;
    if (!covers(child)) return false;
  }
  return true;
}

bool ClopenSet::meets_cylinder(std::string_view prefix) const {
  CylinderTerm c{std::string(prefix), false};
  for (const auto& t : terms_) {
    if (terms_intersect(t, c)) return true;
  }
  return false;
}

bool ClopenSet::intersects(const ClopenSet& other) const {
  for (const auto& x : terms_) {
    for (const auto& y : other.terms_) {
      if (terms_intersect(x, y)) return true;
    }
  }
  return false;
}

bool ClopenSet::subset_of(const ClopenSet& other) const {
  for (const auto& t : terms_) {
    if (!t.complement) {
      if (!other.covers(t.word)) return false;
    } else {
      ClopenSet widened = other;
      widened.add({t.word, false});
      if (!widened.covers("")) return false;
    }
  }
  return true;
}

bool ClopenSet::covers_with(const ClopenSet& other) const { return unite(other).covers(""); }

ClopenSet ClopenSet::unite(const ClopenSet& other) const {
  ClopenSet s = *this;
  for (const auto& t : other.terms_) s.add(t);
  return s;
}

ClopenSet ClopenSet::translate(std::string_view g) const {
  ClopenSet s;
  for (const auto& t : terms_) s.add(translate_term(g, t));
  return s;
}

std::vector<std::string> ClopenSet::words_at(int d) const {
  if (d < static_cast<int>(resolution())) {
    throw Error(ErrorCode::kInvalidArgument, "depth below clopen resolution");
  }
  std::vector<std::string> out;
  for (auto& w : f2::words_of_length(d)) {
    if (covers(w)) out.push_back(std::move(w));
  }
  return out;
}

ClopenSet ClopenSet::complement() const {
  int d = std::max<int>(1, static_cast<int>(resolution()));
  ClopenSet s;
  for (auto& w : f2::words_of_length(d)) {
    if (!covers(w)) s.add({std::move(w), false});
  }
  return s;
}

std::string ClopenSet::to_string() const {
  if (terms_.empty()) return "{}";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " | ";
    out += (t.complement ? "~Cyl(" : "Cyl(") + f2::display(t.word) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary model

BoundaryModel::BoundaryModel(int depth, int buffer, Zeta zeta)
    : depth_(depth), buffer_(buffer), zeta_(zeta) {
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be positive");
  if (buffer < depth) throw Error(ErrorCode::kInvalidArgument, "buffer must be at least depth");
  if (buffer > 60) throw Error(ErrorCode::kInvalidArgument, "buffer must be at most 60");
  if (depth > 12) throw Error(ErrorCode::kInvalidArgument, "depth must be at most 12");
  points_ = f2::words_of_length(depth);
  rays_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    rays_.push_back(f2::Ray::from_point(points_[i]));
    index_.emplace(points_[i], i);
  }
}

BoundaryModel BoundaryModel::parse(std::istream& in) {
  int depth = 0;
  int buffer = -1;
  Zeta zeta = Zeta::ln2();
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    for (std::string tok; ls >> tok;) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::kParse, "expected key=value, got " + tok);
      std::string key = tok.substr(0, eq);
      std::string value = tok.substr(eq + 1);
      if (key == "alphabet") {
        if (value != "f2") throw Error(ErrorCode::kParse, "only alphabet=f2 is supported");
      } else if (key == "depth") {
        depth = static_cast<int>(parse_rational(value).numerator());
      } else if (key == "buffer") {
        buffer = static_cast<int>(parse_rational(value).numerator());
      } else if (key == "zeta") {
        zeta = Zeta::parse(value);
      } else {
        throw Error(ErrorCode::kParse, "unknown boundary key " + key);
      }
    }
  }
  if (depth <= 0) throw Error(ErrorCode::kParse, "boundary spec needs depth=D");
  return BoundaryModel(depth, buffer < 0 ? depth : buffer, zeta);
}

BoundaryModel BoundaryModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open boundary spec " + path);
  return parse(in);
}

void BoundaryModel::write(std::ostream& out) const {
  out << "alphabet=f2\ndepth=" << depth_ << "\nbuffer=" << buffer_ << "\nzeta=" << zeta_.to_string()
      << "\n";
}

std::size_t BoundaryModel::point_index(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "not a depth-" + std::to_string(depth_) +
                                                 " boundary point: " + std::string(word));
  }
  return it->second;
}

int BoundaryModel::gromov_product(const f2::Ray& s, const f2::Ray& t) const {
  return static_cast<int>(f2::common_prefix(s, t, static_cast<std::size_t>(buffer_)));
}

int BoundaryModel::gromov_product(std::string_view s, std::string_view t) const {
  return gromov_product(f2::Ray::from_point(s), f2::Ray::from_point(t));
}

Rational BoundaryModel::visual_weight(int product) const {
  if (zeta_.is_ln2) return Rational(1, std::int64_t{1} << product);
  constexpr std::int64_t kScale = 1'000'000'000'000;  // 1e-12 precision
  double zeta = boost::rational_cast<double>(zeta_.value);
  auto num = static_cast<std::int64_t>(std::llround(std::exp(-zeta * product) * kScale));
  return Rational(num, kScale);
}

Rational BoundaryModel::visual_metric(std::string_view s, std::string_view t) const {
  return visual_weight(gromov_product(s, t));
}

Rational BoundaryModel::chain_metric(std::string_view s, std::string_view t, int max_chain_len) const {
  if (max_chain_len < 1) throw Error(ErrorCode::kInvalidArgument, "max_chain_len must be >= 1");
  const std::size_t src = point_index(s);
  const std::size_t dst = point_index(t);
  if (src == dst) return Rational(0);
  const std::size_t n = points_.size();
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = visual_weight(gromov_product(rays_[i], rays_[j]));
  }
  // best[v]: cheapest chain from src to v with at most k steps.
  std::vector<Rational> best = w[src];
  best[src] = 0;
  const int rounds = std::min<int>(max_chain_len, static_cast<int>(n));
  for (int k = 1; k < rounds; ++k) {
    std::vector<Rational> next = best;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        Rational c = best[u] + w[u][v];
        if (c < next[v]) next[v] = c;
      }
    }
    if (next == best) break;
    best = std::move(next);
  }
  return best[dst];
}

std::vector<std::vector<Rational>> BoundaryModel::chain_metric_matrix() const {
  const std::size_t n = points_.size();
  std::vector<std::vector<Rational>> rho(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rho[i][j] = i == j ? Rational(0) : visual_weight(gromov_product(rays_[i], rays_[j]));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational c = rho[i][k] + rho[k][j];
        if (c < rho[i][j]) rho[i][j] = c;
      }
    }
  }
  return rho;
}

std::vector<std::string> BoundaryModel::cylinder_members(const Cylinder& c) const {
  if (!f2::is_reduced(c.prefix)) {
    throw Error(ErrorCode::kInvalidArgument, "cylinder prefix is not reduced: " + c.prefix);
  }
  if (static_cast<int>(c.prefix.size()) > depth_) {
    throw Error(ErrorCode::kInvalidArgument, "cylinder prefix longer than model depth");
  }
  std::vector<std::string> out;
  for (const auto& p : points_) {
    if (p.compare(0, c.prefix.size(), c.prefix) == 0) out.push_back(p);
  }
  return out;
}

BoundaryMetricReport BoundaryModel::sandwich_report() const {
  BoundaryMetricReport r;
  r.asserted = zeta_.is_ln2;
  const auto rho = chain_metric_matrix();
  const std::size_t n = points_.size();
  bool first = true;
  BoundaryPairRecord worst_lower;
  BoundaryPairRecord worst_upper;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      int k = gromov_product(rays_[i], rays_[j]);
      Rational d = visual_weight(k);
      Rational lower = rho[i][j] - d / 2;
      Rational upper = d - rho[i][j];
      BoundaryPairRecord rec{points_[i], points_[j], k, d, rho[i][j]};
      if (first || lower < r.lower_margin) {
        r.lower_margin = lower;
        worst_lower = rec;
      }
      if (first || upper < r.upper_margin) {
        r.upper_margin = upper;
        worst_upper = rec;
      }
      first = false;
      if (lower < 0 || upper < 0) ++r.sandwich_violations;
      ++r.pairs;
      for (std::size_t m = 0; m < n; ++m) {
        if (rho[i][j] > rho[i][m] + rho[m][j]) ++r.triangle_violations;
      }
    }
  }
  if (!first) r.worst = {worst_lower, worst_upper};
  return r;
}

}  // namespace acyl
