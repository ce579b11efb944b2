#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acyl/boundary.hpp"
#include "acyl/metric_graph.hpp"

namespace acyl {

/// Desk-scale stand-in for "this set is finite": c(l) counts the elements of word
/// length <= l that satisfy the condition, for l = 1..L.
struct FinitenessProbe {
  std::string condition;
  std::vector<std::uint64_t> counts;  // counts[l - 1] = c(l)
  int tail_window = 3;
  bool stabilized = false;

  int word_bound() const { return static_cast<int>(counts.size()); }
  std::uint64_t final_count() const { return counts.empty() ? 0 : counts.back(); }
  bool monotone() const;
};

/// Stabilized means the last `tail_window` increments of c are all zero.
bool is_stabilized(const std::vector<std::uint64_t>& counts, int tail_window);

/// Builds c(1..L) from the word lengths of the elements satisfying the condition.
FinitenessProbe make_probe(std::string condition, const std::vector<int>& satisfying_lengths,
                           int word_bound, int tail_window);

// ---------------------------------------------------------------------------
// Action spec files: one generator per line, `name=perm:u->v,...`,
// `name=leftmul:<word>` or `name=translate:dx,dy`.

struct GeneratorSpec {
  enum class Kind { kPermutation, kLeftMultiplication, kTranslation };
  std::string name;
  Kind kind = Kind::kPermutation;
  std::vector<std::pair<std::string, std::string>> mapping;  // perm
  std::string word;                                          // leftmul
  std::int64_t dx = 0, dy = 0;                               // translate
};

struct ActionSpec {
  std::vector<GeneratorSpec> generators;

  static ActionSpec parse(std::istream& in);
  static ActionSpec load(const std::string& path);
  void write(std::ostream& out) const;
};

// ---------------------------------------------------------------------------
// Isometric actions on finite graphs by vertex permutations.

class PermutationAction {
 public:
  struct Element {
    std::string word;  // generator names joined by '.', inverses marked '^-1'; "e" for identity
    int length = 0;
    std::vector<Vertex> map;
  };

  /// Throws unless every generator is a bijection preserving all distances.
  PermutationAction(const MetricGraph& space,
                    std::vector<std::pair<std::string, std::vector<Vertex>>> generators);
  static PermutationAction from_spec(const MetricGraph& space, const ActionSpec& spec);

  const MetricGraph& space() const { return *space_; }
  std::size_t generator_count() const { return generators_.size(); }

  /// One representative (shortest, then first found) per distinct map.
  std::vector<Element> enumerate(int max_length) const;
  /// Evaluates a word such as "t1.t2^-1".
  Element evaluate(const std::string& word) const;

 private:
  const MetricGraph* space_;
  std::vector<std::string> names_;
  std::vector<std::vector<Vertex>> generators_;  // forward maps
  std::vector<std::vector<Vertex>> inverses_;
};

/// Translations of a rows x cols torus by the two coordinate directions.
PermutationAction torus_translations(const MetricGraph& torus, int rows, int cols);

/// Elements of word length <= L moving both x and y by at most epsilon.
FinitenessProbe acylindricity_probe(const PermutationAction& action, const Rational& epsilon,
                                    const Rational& R, Vertex x, Vertex y, int word_bound,
                                    int tail_window = 3);

// ---------------------------------------------------------------------------
// The free group acting on its Cayley tree; points are reduced words and the
// distance is the word metric, so no truncation of the tree is involved.

namespace f2 {
std::int64_t tree_distance(std::string_view u, std::string_view v);
}

FinitenessProbe free_group_acylindricity_probe(const Rational& epsilon, const Rational& R,
                                               const std::string& x, const std::string& y,
                                               int word_bound, int tail_window = 3);

struct WpdProbe {
  FinitenessProbe base;  // at s0 with epsilon
  std::optional<FinitenessProbe> moved;  // at s1 with epsilon - 2 d(s0,s1), when positive
  Rational moved_epsilon;
  /// c_moved(l) <= c_base(l) for every l; vacuously true without a moved probe.
  bool transfer_holds = true;
};

/// {h : d(s,hs) <= eps, d(g^K s, h g^K s) <= eps} on the tree, optionally repeated at s1.
WpdProbe free_group_wpd_probe(const std::string& g, const std::string& s, const Rational& epsilon,
                              int K, int word_bound, int tail_window = 3,
                              const std::optional<std::string>& s1 = std::nullopt);

/// Same count for a permutation action on a finite graph.
WpdProbe wpd_probe(const PermutationAction& action, const std::string& g, Vertex s,
                   const Rational& epsilon, int K, int word_bound, int tail_window = 3,
                   std::optional<Vertex> s1 = std::nullopt);

// ---------------------------------------------------------------------------
// The free group acting on the boundary model by left multiplication.

class BoundaryAction {
 public:
  struct Element {
    std::string word;  // reduced word in F2
    int length = 0;    // length in the generating set
  };

  /// `generators` are leftmul words; the default is the free basis {a, b}.
  explicit BoundaryAction(const BoundaryModel& model,
                          std::vector<std::string> generators = {"a", "b"});
  explicit BoundaryAction(BoundaryModel&&, std::vector<std::string> = {}) = delete;
  static BoundaryAction from_spec(const BoundaryModel& model, const ActionSpec& spec);

  const BoundaryModel& model() const { return *model_; }
  const std::vector<std::string>& generators() const { return generators_; }

  /// One element per distinct map on the model points (as rays).
  std::vector<Element> enumerate(int max_length) const;

  f2::Ray apply(std::string_view g, const f2::Ray& r) const { return f2::act(g, r); }
  /// Depth-D point containing g applied to the ray of point i.
  std::string apply_point(std::string_view g, std::size_t i) const;

 private:
  const BoundaryModel* model_;
  std::vector<std::string> generators_;
};

struct NorthSouthPair {
  int depth = 0;
  std::string repelling_cylinder;
  std::string attracting_cylinder;
  std::optional<int> N;  // least N with g^n(M \ U) in V for all n in [N, n_max]
};

struct DynamicsCertificate {
  std::string element;
  enum class Kind { kNone, kNorthSouth } kind = Kind::kNone;
  std::vector<std::string> fixed_points;  // depth-D leaves
  std::string attracting;
  std::string repelling;
  std::vector<NorthSouthPair> pairs;
  int n_max = 0;
  std::string diagnostic;
};

/// Depth-D leaves p with Cyl(p) and g Cyl(p) nested.
std::vector<std::string> fixed_leaves(const BoundaryModel& model, std::string_view g);

DynamicsCertificate detect_north_south(const BoundaryModel& model, const std::string& g,
                                       const std::vector<int>& cylinder_depths, int n_max);

enum class ElementKind { kElliptic, kParabolic, kLoxodromic, kUnresolved };
std::string to_string(ElementKind k);

struct Classification {
  ElementKind kind = ElementKind::kUnresolved;
  std::uint64_t order_tested = 0;
  std::size_t fixed = 0;
  std::string diagnostic;
};

Classification classify_element(const BoundaryModel& model, const std::string& g);

/// K = triples of depth-D points with pairwise common prefix <= c; counts h with hK meeting K.
FinitenessProbe proper_discontinuity_probe(const BoundaryAction& action, int c, int word_bound,
                                           int tail_window = 3);

// ---------------------------------------------------------------------------
// Z^2 acting on R^2 by integer translations; open sets are open boxes.

struct LatticePoint {
  Rational x, y;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct Box {
  LatticePoint center;
  Rational radius;  // open sup-norm ball
};

class LatticeAction {
 public:
  struct Element {
    std::int64_t dx = 0, dy = 0;
    int length = 0;
    std::string word;
  };

  /// Generators are translation vectors; the default is the standard basis.
  explicit LatticeAction(std::vector<std::pair<std::int64_t, std::int64_t>> generators = {{1, 0},
                                                                                         {0, 1}});
  static LatticeAction from_spec(const ActionSpec& spec);

  std::vector<Element> enumerate(int max_length) const;
  static bool meets(const Element& g, const Box& a, const Box& u);
  /// Fixed points in R^2: none for a nontrivial translation, nullopt (all of R^2) otherwise.
  static std::optional<std::uint64_t> fixed_point_count(const Element& g);

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> generators_;
};

}  // namespace acyl
