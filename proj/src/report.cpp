#include <charconv>
#include <sstream>

#include "json.hpp"

#include "acyl/error.hpp"
#include "acyl/pipeline.hpp"

namespace acyl {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kParse, "bad value for " + key + ": " + value);
  }
  return out;
}

int positive(const std::string& key, const std::string& value) {
  int v = parse_number<int>(key, value);
  if (v <= 0) throw Error(ErrorCode::kInvalidArgument, key + " must be positive");
  return v;
}

int nonnegative(const std::string& key, const std::string& value) {
  int v = parse_number<int>(key, value);
  if (v < 0) throw Error(ErrorCode::kInvalidArgument, key + " must be nonnegative");
  return v;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "command") command = value;
  else if (key == "instance") instance = value;
  else if (key == "graph") graph = value;
  else if (key == "boundary") boundary = value;
  else if (key == "action") action = value;
  else if (key == "annulus") annulus = value;
  else if (key == "out") out = value;
  else if (key == "sigma-out") sigma_out = value;
  else if (key == "element") element = value;
  else if (key == "depth") depth = positive(key, value);
  else if (key == "buffer") buffer = nonnegative(key, value);
  else if (key == "words") words = positive(key, value);
  else if (key == "tail-window") tail_window = positive(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "s") s = nonnegative(key, value);
  else if (key == "epsilon") epsilon = nonnegative(key, value);
  else if (key == "K") K = nonnegative(key, value);
  else if (key == "n-max") n_max = positive(key, value);
  else if (key == "n") n = positive(key, value);
  else if (key == "rows") rows = positive(key, value);
  else if (key == "cols") cols = positive(key, value);
  else if (key == "samples") samples = nonnegative(key, value);
  else if (key == "tuples") tuples = nonnegative(key, value);
  else if (key == "sigma-depth") sigma_depth = nonnegative(key, value);
  else throw Error(ErrorCode::kParse, "unknown setting: " + key);
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e{
      {"command", command},
      {"instance", instance},
      {"graph", graph},
      {"boundary", boundary},
      {"action", action},
      {"annulus", annulus},
      {"depth", std::to_string(depth)},
      {"buffer", std::to_string(effective_buffer())},
      {"words", std::to_string(words)},
      {"tail-window", std::to_string(tail_window)},
      {"seed", std::to_string(seed)},
      {"s", s ? std::to_string(*s) : "auto"},
      {"epsilon", std::to_string(epsilon)},
      {"K", std::to_string(K)},
      {"n-max", std::to_string(n_max)},
      {"element", element},
      {"samples", std::to_string(samples)},
      {"tuples", std::to_string(tuples)},
      {"sigma-depth", std::to_string(sigma_depth)},
  };
  if (command == "gen") {
    e.push_back({"n", std::to_string(n)});
    e.push_back({"rows", std::to_string(rows)});
    e.push_back({"cols", std::to_string(cols)});
  }
  return e;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kMeasured: return "measured";
  }
  return "measured";
}

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.status == Status::kFail ? 1 : 0;
  return n;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) j["config"][k] = v;
  std::size_t passed = 0, measured = 0;
  for (const auto& r : records) {
    passed += r.status == Status::kPass ? 1 : 0;
    measured += r.status == Status::kMeasured ? 1 : 0;
  }
  j["summary"] = {{"records", records.size()}, {"passed", passed}, {"failed", failures()}, {"measured", measured}};
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json rec;
    rec["name"] = r.name;
    rec["anchor"] = r.anchor;
    rec["measured"] = r.measured;
    rec["bound"] = r.bound;
    rec["status"] = to_string(r.status);
    rec["word_bound"] = r.word_bound > 0 ? nlohmann::ordered_json(r.word_bound) : nlohmann::ordered_json(nullptr);
    rec["window"] = r.window > 0 ? nlohmann::ordered_json(r.window) : nlohmann::ordered_json(nullptr);
    rec["note"] = r.note;
    j["records"].push_back(std::move(rec));
  }
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : config) out << k << '=' << v << '\n';
  for (const auto& r : records) {
    out << to_string(r.status) << '\t' << r.name << "\tmeasured=" << r.measured << "\tbound=" << r.bound;
    if (r.word_bound > 0) out << "\twords=" << r.word_bound;
    if (r.window > 0) out << "\twindow=" << r.window;
    if (!r.note.empty()) out << '\t' << r.note;
    out << '\n';
  }
  out << "records=" << records.size() << " failed=" << failures() << '\n';
  return out.str();
}

}  // namespace acyl
