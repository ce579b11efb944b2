#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acyl/action.hpp"
#include "acyl/boundary.hpp"
#include "acyl/free_word.hpp"
#include "acyl/rational.hpp"

namespace acyl {

/// Ordered pair (A-, A+) of disjoint clopen sets whose union misses some point.
/// In the clopen model interiors and closures are the sets themselves.
struct Annulus {
  ClopenSet minus;
  ClopenSet plus;

  /// Validates disjointness, nonemptiness and the nonempty complement.
  static Annulus make(ClopenSet minus, ClopenSet plus);
  /// Reads `minus=<w1,w2,...> plus=<w1,...>`, each list a union of cylinders.
  static Annulus parse(std::string_view text);

  /// -A = (A+, A-).
  Annulus negated() const { return Annulus{plus, minus}; }
  Annulus translate(std::string_view h) const { return Annulus{minus.translate(h), plus.translate(h)}; }
  std::size_t resolution() const { return std::max(minus.resolution(), plus.resolution()); }
  std::string to_string() const;
};

bool same_annulus(const Annulus& a, const Annulus& b);
/// A < B iff A+ and B- together cover the boundary.
bool nests(const Annulus& a, const Annulus& b);
/// K < A iff every point of K lies in A-.
bool precedes(const std::vector<f2::Ray>& k, const Annulus& a);
/// A < L iff every point of L lies in A+.
bool precedes(const Annulus& a, const std::vector<f2::Ray>& l);

/// h(A) when `negated` is false, h(-A) otherwise.
struct RealizedAnnulus {
  std::string h;
  bool negated = false;
  Annulus annulus;

  std::string label() const;
};

struct Crossratio {
  int value = 0;
  bool infinite = false;
  int word_bound = 0;
  /// Set when the word bound provably reaches every annulus of the infinite system
  /// that can separate the two sides.
  bool exact = false;
  std::size_t admissible = 0;  // distinct annuli A with K < A < L in the window
  std::vector<RealizedAnnulus> chain;  // K < chain[0] < ... < chain[n-1] < L
  std::vector<RealizedAnnulus> cycle;  // nonempty iff infinite
};

using Triple = std::array<f2::Ray, 3>;

/// The symmetric F2-invariant system {h(+-A)} truncated to reduced words |h| <= word bound.
///
/// Crossratios are computed query-directed: an annulus h(+-A) separating K from L needs
/// h with its first |h| - r letters a common prefix of K or of L, where r is the
/// resolution of A. Every other center is skipped without loss.
class AnnulusSystem {
 public:
  AnnulusSystem(const BoundaryModel& model, Annulus base, int word_bound);
  AnnulusSystem(BoundaryModel&&, Annulus, int) = delete;  // keeps a pointer to the model

  const BoundaryModel& model() const { return *model_; }
  const Annulus& base() const { return base_; }
  int word_bound() const { return word_bound_; }
  int resolution() const { return resolution_; }

  Annulus realize(std::string_view h, bool negated) const;
  /// Every distinct annulus of the window, deduplicated by set equality.
  std::vector<RealizedAnnulus> realized() const;

  Crossratio crossratio(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l) const {
    return crossratio(k, l, word_bound_);
  }
  Crossratio crossratio(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l, int bound) const;
  /// Smallest word bound at which the value equals the untruncated crossratio, when the
  /// argument above gives one: both sides need two distinct points, or the sides meet.
  std::optional<int> exact_bound(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l) const;
  /// Crossratio at max(word bound, exact bound); throws kPrecondition without an exact bound.
  Crossratio crossratio_exact(const std::vector<f2::Ray>& k, const std::vector<f2::Ray>& l) const;

  /// max over i != j, k != l of (x_i, x_j | y_k, y_l), every term computed exactly.
  int rho(const Triple& x, const Triple& y) const;
  /// Same with early exit: true iff rho(x, y) <= bound.
  bool rho_at_most(const Triple& x, const Triple& y, int bound) const;

 private:
  const Annulus& translated(const std::string& h) const;

  const BoundaryModel* model_;
  Annulus base_;
  int word_bound_;
  int resolution_;
  mutable std::unordered_map<std::string, Annulus> cache_;
};

Triple act(std::string_view g, const Triple& t);
std::string to_string(const Triple& t);

struct AxiomReport {
  int word_bound = 0;
  int tail_window = 0;
  std::uint64_t quadruples = 0;
  std::uint64_t degenerate_rejected = 0;
  // Finiteness of (x,y|z,w) for x != y, z != w.
  std::uint64_t a1_stable = 0;
  std::uint64_t a1_exact = 0;
  std::uint64_t a1_infinite = 0;
  std::optional<std::string> a1_witness;  // first unstable or infinite quadruple
  // Least k with no sampled quadruple having (x,y|z,w) > k and (x,z|y,w) > k.
  int a2_k = 0;
  std::optional<std::string> a2_witness;
  std::vector<std::uint64_t> value_histogram;

  bool a1_holds() const { return a1_stable == quadruples && a1_infinite == 0; }
};

/// Samples quadruples of distinct model points. Quadruples with x = y or z = w are
/// precondition failures and only counted.
AxiomReport verify_axioms(const AnnulusSystem& system, int samples, int tail_window, std::uint64_t seed,
                          const std::vector<std::array<std::size_t, 4>>& extra = {});

struct ChainCheck {
  std::string name;
  std::string formula;
  bool holds = false;
};

struct DisplacementRow {
  int n = 0;
  int lower_bound = 0;   // n - 1
  int crossratio = 0;    // (x, z | g^{nN} z, y)
  int rho = 0;           // rho(a, g^{nN} a)
  int word_bound = 0;
  bool exact = false;
  std::vector<std::string> chain;
  bool holds() const { return crossratio >= lower_bound && rho >= crossratio; }
};

struct LoxodromicCertificate {
  std::string element;
  f2::Ray repelling;
  f2::Ray attracting;
  f2::Ray third;
  std::optional<int> N;
  int n_budget = 0;
  std::vector<ChainCheck> checks;
  std::vector<DisplacementRow> rows;
  std::string failure;

  Triple triple() const { return {repelling, attracting, third}; }
  bool passed() const;
};

/// Attracting and repelling fixed rays of a nontrivial g.
std::pair<f2::Ray, f2::Ray> fixed_rays(std::string_view g);

/// Picks the first ray of a fixed list (letter rays, then depth-2 points) outside A- and A+.
std::optional<f2::Ray> default_third_point(const Annulus& a);

LoxodromicCertificate certify_loxodromic(const AnnulusSystem& system, std::string_view g,
                                         std::optional<f2::Ray> z, int n_max, int n_budget = 64);

struct WpdCertificate {
  LoxodromicCertificate loxodromic;
  int epsilon = 0;
  int L = 0;
  int K = 0;
  std::uint64_t sampled = 0;
  std::uint64_t premise_near_a = 0;    // sampled w with rho(a, w) <= epsilon
  std::uint64_t premise_near_gka = 0;  // sampled w with rho(g^K a, w) <= epsilon
  std::uint64_t lemma_failures = 0;
  std::optional<std::string> lemma_witness;
  FinitenessProbe probe;
  std::vector<std::string> survivors;  // elements counted at the full word bound

  bool passed() const { return loxodromic.passed() && lemma_failures == 0 && probe.stabilized; }
};

/// Non-strict rho <= epsilon throughout; the integer L is floor(epsilon) + 3.
WpdCertificate certify_wpd(const AnnulusSystem& system, std::string_view g, std::optional<f2::Ray> z,
                           int epsilon, int words, int tail_window, int samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// The graph on distinct triples of model points with edges where rho <= s + 1.

struct SigmaOptions {
  std::optional<int> s;
  int geodesic_pairs = 100;
  int geodesic_max_rho = 6;
  double coverage_target = 0.95;
  int geodesic_budget = 4000;
  std::uint64_t defect_samples = 200000;
  int delta_sources = 24;
  int equivariance_pairs = 100;
  int equivariance_radius = 2;
  std::uint64_t seed = 1;
};

struct TripleSpaceGraph {
  int depth = 0;
  std::size_t points = 0;
  std::uint64_t ordered_vertices = 0;
  std::size_t classes = 0;  // unordered triples; permutations of one triple are at rho 0
  std::vector<std::array<std::uint16_t, 3>> manifest;

  int s = 0;
  bool s_auto = true;
  std::vector<std::pair<int, double>> coverage_by_s;
  double geodesic_coverage = 0;

  int max_rho = 0;
  std::vector<std::uint64_t> rho_histogram;  // over ordered pairs of classes
  bool diagonal_zero = false;
  bool symmetric = false;
  int r_defect = 0;
  std::uint64_t defect_samples = 0;

  std::uint64_t class_edges = 0;
  std::uint64_t ordered_edges = 0;
  std::vector<std::size_t> component_sizes;
  int diameter_lower = 0;
  Rational delta{0};
  std::uint64_t delta_quadruples = 0;

  std::uint64_t equivariance_checks = 0;
  std::uint64_t equivariance_failures = 0;
  std::optional<std::string> equivariance_witness;

  std::vector<std::uint64_t> adjacency;  // class adjacency bitset, row-major
  std::size_t row_words = 0;

  bool connected() const { return component_sizes.size() == 1; }
  bool adjacent(std::size_t i, std::size_t j) const {
    return (adjacency[i * row_words + j / 64] >> (j % 64)) & 1u;
  }
};

TripleSpaceGraph build_triple_graph(const AnnulusSystem& system, const SigmaOptions& options);
/// Manifest lines `v <index> <p> <q> <r>` followed by edge lines `e <i> <j>` with i < j.
void write_edge_list(const TripleSpaceGraph& graph, const BoundaryModel& model, std::ostream& out);

}  // namespace acyl
