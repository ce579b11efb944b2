#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace acyl {

/// Settings shared by every subcommand. Paths left empty fall back to generated
/// instances built from the numeric parameters.
struct RunConfig {
  std::string command;
  std::string instance;  // gen: f2-tree | f2-boundary | cycle | grid | torus | z2-action
  std::string graph;
  std::string boundary;
  std::string action;
  std::string annulus;
  std::string out;
  std::string sigma_out;

  int depth = 3;
  int buffer = 0;  // 0 means 2 * depth + 4
  int words = 6;
  int tail_window = 3;
  std::uint64_t seed = 1;
  std::optional<int> s;
  int epsilon = 1;
  int K = 4;
  int n_max = 6;
  int n = 8;
  int rows = 6;
  int cols = 6;
  int samples = 200;
  int tuples = 60;
  int sigma_depth = 3;  // 0 skips the triple graph
  std::string element = "a";

  /// Sets one field from its textual form; throws kParse on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  int effective_buffer() const { return buffer > 0 ? buffer : 2 * depth + 4; }
  std::vector<std::pair<std::string, std::string>> echo() const;
};

enum class Status { kPass, kFail, kMeasured };
std::string to_string(Status s);

struct Record {
  std::string name;
  std::string anchor;  // the inequality or statement the record checks
  std::string measured;
  std::string bound;
  Status status = Status::kMeasured;
  int word_bound = 0;  // 0 when no word window is involved
  int window = 0;      // tail window, 0 when not applicable
  std::string note;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Record> records;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  std::string to_json() const;
  /// One `key=value` line per config entry, then one tab-separated line per record.
  std::string to_text() const;
};

/// Runs one subcommand: gen, verify-lemmas, condition-c, dynamics, annulus or full.
Report run(const RunConfig& config);

}  // namespace acyl
