#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acyl/free_word.hpp"
#include "acyl/rational.hpp"

namespace acyl {

/// Visual parameter of the boundary metric: either exactly ln 2 or a positive rational.
struct Zeta {
  bool is_ln2 = true;
  Rational value{0};

  static Zeta ln2() { return {}; }
  static Zeta rational(const Rational& v);
  static Zeta parse(const std::string& text);
  std::string to_string() const;
};

/// Cyl(word), or its complement when `complement` is set.
struct CylinderTerm {
  std::string word;
  bool complement = false;

  friend bool operator==(const CylinderTerm&, const CylinderTerm&) = default;
};

/// A clopen subset of the boundary of F2, stored as a finite union of cylinders
/// and cylinder complements. Every operation is exact.
class ClopenSet {
 public:
  ClopenSet() = default;
  static ClopenSet cylinder(std::string_view prefix);
  static ClopenSet cylinders(const std::vector<std::string>& prefixes);
  static ClopenSet whole() { return cylinder(""); }

  const std::vector<CylinderTerm>& terms() const { return terms_; }
  /// Longest word appearing in a term.
  std::size_t resolution() const;

  bool contains(const f2::Ray& r) const;
  bool empty() const { return terms_.empty(); }
  bool is_whole() const { return covers(""); }
  /// True iff Cyl(prefix) is contained in this set.
  bool covers(std::string_view prefix) const;
  /// True iff Cyl(prefix) meets this set.
  bool meets_cylinder(std::string_view prefix) const;
  bool intersects(const ClopenSet& other) const;
  bool subset_of(const ClopenSet& other) const;
  /// True iff this set and `other` together cover the whole boundary.
  bool covers_with(const ClopenSet& other) const;

  ClopenSet unite(const ClopenSet& other) const;
  /// Image under left multiplication by g.
  ClopenSet translate(std::string_view g) const;
  /// Complement, written as a union of cylinders at depth max(resolution, 1).
  ClopenSet complement() const;
  /// Depth-d words whose cylinders lie in the set; requires d >= resolution().
  std::vector<std::string> words_at(int d) const;

  std::string to_string() const;

  friend bool equal_sets(const ClopenSet& a, const ClopenSet& b) {
    return a.subset_of(b) && b.subset_of(a);
  }

 private:
  void add(CylinderTerm t);
  std::vector<CylinderTerm> terms_;
};

/// Image of Cyl(prefix) (or its complement) under left multiplication by g.
CylinderTerm translate_term(std::string_view g, const CylinderTerm& t);

struct Cylinder {
  std::string prefix;
};

struct BoundaryPairRecord {
  std::string s;
  std::string t;
  int product = 0;
  Rational dprime;
  Rational rho;
};

struct BoundaryMetricReport {
  std::uint64_t pairs = 0;
  /// min over pairs of rho - d'/2 and of d' - rho.
  Rational lower_margin;
  Rational upper_margin;
  std::uint64_t sandwich_violations = 0;
  std::uint64_t triangle_violations = 0;
  bool asserted = false;  // false when zeta is not ln 2: margins are reported only
  std::vector<BoundaryPairRecord> worst;  // pairs attaining the margins

  bool holds() const { return sandwich_violations == 0 && triangle_violations == 0; }
};

/// Truncated model of the Gromov boundary of F2.
///
/// The visible points are the reduced words of length `depth`; the word p stands
/// for the ray p * last(p)^infinity, so the group acts exactly on them. Gromov
/// products of rays are common-prefix lengths capped at `buffer`.
class BoundaryModel {
 public:
  BoundaryModel(int depth, int buffer, Zeta zeta = Zeta::ln2());

  static BoundaryModel parse(std::istream& in);
  static BoundaryModel load(const std::string& path);
  void write(std::ostream& out) const;

  int depth() const { return depth_; }
  int buffer() const { return buffer_; }
  const Zeta& zeta() const { return zeta_; }

  const std::vector<std::string>& points() const { return points_; }
  std::size_t point_index(std::string_view word) const;
  const f2::Ray& ray(std::size_t i) const { return rays_[i]; }
  /// Depth-D point whose cylinder contains the ray.
  std::string locate(const f2::Ray& r) const { return r.prefix(depth_); }

  int gromov_product(std::string_view s, std::string_view t) const;
  int gromov_product(const f2::Ray& s, const f2::Ray& t) const;

  /// exp(-zeta * k): exact power of 1/2 for ln 2, otherwise rounded to 1e-12.
  Rational visual_weight(int product) const;
  Rational visual_metric(std::string_view s, std::string_view t) const;

  /// Infimum of chain sums through model points using at most `max_chain_len` steps.
  Rational chain_metric(std::string_view s, std::string_view t, int max_chain_len) const;
  /// All-pairs chain metric with unbounded chains (Floyd-Warshall over model points).
  std::vector<std::vector<Rational>> chain_metric_matrix() const;

  std::vector<std::string> cylinder_members(const Cylinder& c) const;

  /// Checks d'/2 <= rho <= d' and the triangle inequality for rho on all distinct pairs.
  BoundaryMetricReport sandwich_report() const;

 private:
  int depth_;
  int buffer_;
  Zeta zeta_;
  std::vector<std::string> points_;
  std::vector<f2::Ray> rays_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace acyl
