#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acyl/action.hpp"

namespace acyl {

/// Depths tried for U,V and for the target neighborhoods, shallowest first.
struct DepthSchedule {
  std::vector<int> neighborhood_depths;
  std::vector<int> target_depths;
  int word_bound = 6;
  int tail_window = 3;

  /// Depths 1..levels for both.
  static DepthSchedule up_to(int levels, int word_bound = 6, int tail_window = 3);
};

/// Result of one (C1)/(C2)/(C3) query. Two targets mean (C1), three (C2), four (C3).
struct ConditionCWitness {
  int condition = 0;  // 1, 2 or 3
  std::vector<std::string> targets;
  int neighborhood_depth = 0;
  std::string U, V;
  bool found = false;
  int target_depth = 0;
  std::vector<std::string> target_sets;
  FinitenessProbe violators;  // at target_depth when found, else at the deepest attempt
  std::string failure;
};

struct ConditionCSummary {
  std::string x, y;
  bool found = false;  // a single U,V serving every target tuple
  int neighborhood_depth = 0;
  int per_condition_depth[3] = {0, 0, 0};  // 0 = no tuples of that kind or none found
  std::string U, V;
  std::vector<ConditionCWitness> targets;
  std::uint64_t probes_run = 0;
  bool budget_exhausted = false;
  std::string failure;

  std::size_t passed() const;
  bool all_passed() const { return found && !budget_exhausted && passed() == targets.size(); }
};

// --- Free group on its boundary model; points are depth-D words. ---

ConditionCWitness check_c1(const BoundaryAction& action, const std::string& x, const std::string& y,
                           const std::string& p, const std::string& q, const DepthSchedule& schedule);
ConditionCWitness check_c2(const BoundaryAction& action, const std::string& x, const std::string& y,
                           const std::string& p, const std::string& q, const std::string& r,
                           const DepthSchedule& schedule);
ConditionCWitness check_c3(const BoundaryAction& action, const std::string& x, const std::string& y,
                           const std::string& p, const std::string& q, const std::string& r,
                           const std::string& s, const DepthSchedule& schedule);
/// Dispatches on the number of targets (2, 3 or 4).
ConditionCWitness check_targets(const BoundaryAction& action, const std::string& x,
                                const std::string& y, const std::vector<std::string>& targets,
                                const DepthSchedule& schedule);

/// Random tuples of distinct depth-D points, cycling through sizes 2, 3, 4.
std::vector<std::vector<std::string>> sample_target_tuples(const BoundaryModel& model,
                                                           std::size_t count, std::uint64_t seed);

/// Finds one U,V (the deepest of the per-condition depths) and re-verifies every
/// tuple with it. `budget` caps the number of violator probes.
ConditionCSummary check_condition_c(const BoundaryAction& action, const std::string& x,
                                    const std::string& y,
                                    const std::vector<std::vector<std::string>>& tuples,
                                    const DepthSchedule& schedule, std::uint64_t budget = 1u << 20);

/// Violator counts for the witness sets, and again with every set moved by h
/// while the window is conjugated by h. The two probes agree exactly.
std::pair<FinitenessProbe, FinitenessProbe> equivariance_check(const BoundaryAction& action,
                                                               const std::string& x,
                                                               const std::string& y,
                                                               const ConditionCWitness& witness,
                                                               const std::string& h);

// --- Z^2 translating R^2; neighborhoods at level k are open boxes of radius 2^-k. ---

ConditionCWitness check_targets(const LatticeAction& action, const LatticePoint& x,
                                const LatticePoint& y, const std::vector<LatticePoint>& targets,
                                const DepthSchedule& schedule);

ConditionCSummary check_condition_c(const LatticeAction& action, const LatticePoint& x,
                                    const LatticePoint& y,
                                    const std::vector<std::vector<LatticePoint>>& tuples,
                                    const DepthSchedule& schedule, std::uint64_t budget = 1u << 20);

std::vector<std::vector<LatticePoint>> sample_lattice_tuples(std::size_t count, std::uint64_t seed);

std::string to_string(const LatticePoint& p);

}  // namespace acyl
