#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "acyl/error.hpp"
#include "acyl/metric_graph.hpp"
#include "acyl/pipeline.hpp"
#include "json.hpp"

using namespace acyl;

namespace {

RunConfig config(const std::string& command, std::initializer_list<std::pair<const char*, const char*>> kv = {}) {
  RunConfig c;
  c.command = command;
  for (const auto& [k, v] : kv) c.set(k, v);
  return c;
}

const Record* find(const Report& r, const std::string& name) {
  for (const auto& rec : r.records)
    if (rec.name == name) return &rec;
  return nullptr;
}

}  // namespace

TEST(Pipeline, GenWritesLoadableInstances) {
  const std::string path = testing::TempDir() + "pipeline_tree.txt";
  auto rep = run(config("gen", {{"instance", "f2-tree"}, {"depth", "3"}, {"out", path.c_str()}}));
  ASSERT_TRUE(rep.ok());
  EXPECT_EQ(find(rep, "vertices")->measured, "53");
  EXPECT_EQ(MetricGraph::load(path).size(), 53u);
  auto bad = config("gen", {{"instance", "sphere"}, {"out", path.c_str()}});
  EXPECT_THROW(run(bad), Error);
  EXPECT_THROW(run(config("gen", {{"instance", "cycle"}})), Error);
  std::remove(path.c_str());
}

TEST(Pipeline, VerifyLemmasOnTree) {
  auto rep = run(config("verify-lemmas", {{"instance", "f2-tree"}, {"depth", "3"}}));
  EXPECT_TRUE(rep.ok());
  ASSERT_NE(find(rep, "tree_defects_zero"), nullptr);
  EXPECT_EQ(find(rep, "tree_defects_zero")->status, Status::kPass);
  EXPECT_EQ(find(rep, "boundary_sandwich")->status, Status::kPass);
}

TEST(Pipeline, CycleReportsVacuousChecksAsMeasured) {
  auto rep = run(config("verify-lemmas", {{"instance", "cycle"}, {"n", "8"}}));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(find(rep, "delta")->measured, "2");
  for (const auto& r : rep.records)
    if (r.status == Status::kMeasured && r.name != "delta") EXPECT_NE(r.note.find("no configuration"), std::string::npos);
}

TEST(Pipeline, LatticeNegativeControl) {
  auto cc = run(config("condition-c", {{"instance", "z2-action"}, {"tuples", "12"}}));
  EXPECT_TRUE(cc.ok());
  auto dyn = run(config("dynamics", {{"instance", "z2-action"}}));
  ASSERT_NE(find(dyn, "no_north_south_element"), nullptr);
  EXPECT_EQ(find(dyn, "no_north_south_element")->status, Status::kPass);
}

TEST(Pipeline, ReportsAreDeterministic) {
  auto c = config("condition-c", {{"depth", "3"}, {"tuples", "9"}, {"seed", "4"}});
  EXPECT_EQ(run(c).to_json(), run(c).to_json());
  auto json = nlohmann::json::parse(run(c).to_json());
  EXPECT_EQ(json["config"]["seed"], "4");
  EXPECT_EQ(json["records"][0]["name"], "witness_pair");
  EXPECT_TRUE(json["records"][0]["word_bound"].is_number());
}

TEST(Pipeline, AnnulusFromSpecFile) {
  const std::string path = testing::TempDir() + "pipeline_annulus.txt";
  {
    std::ofstream f(path);
    f << "minus=B plus=b\n";
  }
  auto rep = run(config("annulus", {{"annulus", path.c_str()}, {"element", "b"}, {"depth", "3"}, {"sigma-depth", "0"},
                                    {"samples", "40"}, {"n-max", "3"}}));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(find(rep, "loxodromic_N")->measured, "1");
  EXPECT_EQ(find(rep, "sigma_vertices"), nullptr);
  std::remove(path.c_str());
}

TEST(Pipeline, TextReportFormat) {
  auto rep = run(config("dynamics", {{"depth", "3"}}));
  auto text = rep.to_text();
  EXPECT_EQ(text.rfind("command=dynamics\n", 0), 0u);
  EXPECT_NE(text.find("\nrecords=" + std::to_string(rep.records.size()) + " failed=0\n"), std::string::npos);
}

TEST(Pipeline, BadSettings) {
  RunConfig c;
  EXPECT_THROW(c.set("depth", "0"), Error);
  EXPECT_THROW(c.set("unknown", "1"), Error);
  EXPECT_THROW(c.set("seed", "1.5"), Error);
  c.set("s", "2");
  EXPECT_EQ(c.s, std::optional<int>(2));
  EXPECT_EQ(c.effective_buffer(), 10);
  EXPECT_THROW(run(config("annulus", {{"element", "e"}})), Error);
}
