#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acyl/boundary.hpp"
#include "acyl/metric_graph.hpp"

namespace acyl {

/// One finite inequality: `measured` is the worst defect found, `bound` is
/// `multiple` times the four-point delta of the space.
struct LemmaCheck {
  std::string name;
  std::string statement;
  Rational measured;
  int multiple = 0;
  Rational bound;
  std::uint64_t evaluated = 0;  // inequality instances actually tested
  std::uint64_t vacuous = 0;    // sampled configurations with nothing to test
  bool exhaustive = false;
  bool passed = false;
};

struct LemmaReport {
  DeltaReport delta;
  std::vector<LemmaCheck> checks;
  bool has_boundary = false;
  BoundaryMetricReport boundary;

  bool all_passed() const;
};

struct LemmaOptions {
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  /// Pair-based checks run over all vertex pairs when |V|^2 is at most this.
  std::uint64_t exhaustive_pairs = 1u << 20;
};

/// Runs the finite, explicit-constant forms of the hyperbolic estimates on `space`,
/// with delta measured on the same space. When `boundary` is given, also checks
/// the visual/chain metric sandwich on it.
LemmaReport verify_constant_lemmas(const MetricGraph& space, const BoundaryModel* boundary,
                                   const LemmaOptions& options = {});

}  // namespace acyl
