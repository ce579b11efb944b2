#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "acyl/acyl.h"
#include "json.hpp"

namespace {

std::string temp_path(const char* name) { return testing::TempDir() + name; }

}  // namespace

TEST(CApi, GraphDistancesAndDelta) {
  acyl_graph* g = nullptr;
  ASSERT_EQ(acyl_graph_generate("cycle", 8, 0, &g), ACYL_OK);
  EXPECT_EQ(acyl_graph_size(g), 8u);
  int64_t d = -1;
  ASSERT_EQ(acyl_graph_distance(g, "0", "5", &d), ACYL_OK);
  EXPECT_EQ(d, 3);
  int64_t num = 0, den = 0;
  ASSERT_EQ(acyl_graph_delta(g, &num, &den), ACYL_OK);
  EXPECT_EQ(num, 2);  // vertices 0, 2, 4, 6: pair sums 8, 4, 4
  EXPECT_EQ(den, 1);
  EXPECT_EQ(acyl_graph_distance(g, "0", "99", &d), ACYL_UNKNOWN_VERTEX);
  EXPECT_NE(std::string(acyl_last_error()), "");
  acyl_graph_free(g);
}

TEST(CApi, GraphFileAndErrors) {
  const auto path = temp_path("capi_graph.txt");
  {
    std::ofstream f(path);
    f << "base a\na b 2\nb c\n";
  }
  acyl_graph* g = nullptr;
  ASSERT_EQ(acyl_graph_load(path.c_str(), &g), ACYL_OK);
  int64_t d = 0;
  ASSERT_EQ(acyl_graph_distance(g, "a", "c", &d), ACYL_OK);
  EXPECT_EQ(d, 3);
  EXPECT_STREQ(acyl_last_error(), "");
  acyl_graph_free(g);
  EXPECT_EQ(acyl_graph_load("/nonexistent/file", &g), ACYL_IO_ERROR);
  EXPECT_EQ(acyl_graph_generate("hexagon", 3, 0, &g), ACYL_INVALID_ARGUMENT);
  EXPECT_EQ(acyl_graph_generate("cycle", 3, 0, nullptr), ACYL_INVALID_ARGUMENT);
  EXPECT_EQ(acyl_graph_size(nullptr), 0u);
  std::remove(path.c_str());
}

TEST(CApi, BoundaryQueries) {
  acyl_boundary* b = nullptr;
  ASSERT_EQ(acyl_boundary_new(4, 12, &b), ACYL_OK);
  EXPECT_EQ(acyl_boundary_point_count(b), 108u);
  int k = -1;
  ASSERT_EQ(acyl_boundary_gromov_product(b, "abab", "abAB", &k), ACYL_OK);
  EXPECT_EQ(k, 2);
  EXPECT_EQ(acyl_boundary_gromov_product(b, "ab", "abAB", &k), ACYL_INVALID_ARGUMENT);
  int fixed = 0, ns = 0;
  ASSERT_EQ(acyl_boundary_north_south(b, "a", 6, &fixed, &ns), ACYL_OK);
  EXPECT_EQ(fixed, 2);
  EXPECT_EQ(ns, 1);
  EXPECT_EQ(acyl_boundary_north_south(b, "aA", 6, &fixed, &ns), ACYL_INVALID_ARGUMENT);
  EXPECT_EQ(acyl_boundary_new(0, 4, &b), ACYL_INVALID_ARGUMENT);
  acyl_boundary_free(b);
}

TEST(CApi, Crossratio) {
  acyl_boundary* b = nullptr;
  ASSERT_EQ(acyl_boundary_new(3, 10, &b), ACYL_OK);
  acyl_annulus_system* s = nullptr;
  ASSERT_EQ(acyl_annulus_system_new(b, "minus=A plus=a", 6, &s), ACYL_OK);
  const char* k[] = {"~A", "~b"};
  const char* l[] = {"aaa~a", "~a"};
  int value = -1, infinite = -1, exact = -1;
  ASSERT_EQ(acyl_crossratio(s, k, 2, l, 2, &value, &infinite, &exact), ACYL_OK);
  EXPECT_EQ(infinite, 0);
  EXPECT_GE(value, 1);
  const char* bad[] = {"~aA"};
  EXPECT_NE(acyl_crossratio(s, bad, 1, l, 2, &value, nullptr, nullptr), ACYL_OK);
  EXPECT_EQ(acyl_crossratio(s, k, 0, l, 2, &value, nullptr, nullptr), ACYL_INVALID_ARGUMENT);
  acyl_annulus_system* overlap = nullptr;
  EXPECT_EQ(acyl_annulus_system_new(b, "minus=a plus=a", 6, &overlap), ACYL_INVALID_ARGUMENT);
  acyl_annulus_system_free(s);
  acyl_boundary_free(b);
}

TEST(CApi, RunAndReport) {
  acyl_config* c = nullptr;
  ASSERT_EQ(acyl_config_new(&c), ACYL_OK);
  ASSERT_EQ(acyl_config_set(c, "depth", "3"), ACYL_OK);
  ASSERT_EQ(acyl_config_set(c, "n-max", "5"), ACYL_OK);
  EXPECT_EQ(acyl_config_set(c, "depth", "-1"), ACYL_INVALID_ARGUMENT);
  EXPECT_EQ(acyl_config_set(c, "depth", "x"), ACYL_PARSE_ERROR);
  EXPECT_EQ(acyl_config_set(c, "colour", "red"), ACYL_PARSE_ERROR);
  acyl_report* r = nullptr;
  ASSERT_EQ(acyl_run("dynamics", c, &r), ACYL_OK);
  EXPECT_GT(acyl_report_record_count(r), 3u);
  EXPECT_EQ(acyl_report_failures(r), 0u);
  acyl_record rec{};
  ASSERT_EQ(acyl_report_record(r, 0, &rec), ACYL_OK);
  EXPECT_STREQ(rec.name, "north_south");
  EXPECT_EQ(rec.status, ACYL_RECORD_PASS);
  EXPECT_EQ(acyl_report_record(r, 1000, &rec), ACYL_INVALID_ARGUMENT);
  char* json = nullptr;
  ASSERT_EQ(acyl_report_json(r, &json), ACYL_OK);
  auto j = nlohmann::json::parse(json);
  EXPECT_EQ(j["command"], "dynamics");
  EXPECT_EQ(j["summary"]["failed"], 0);
  EXPECT_EQ(j["records"].size(), acyl_report_record_count(r));
  acyl_string_free(json);
  char* text = nullptr;
  ASSERT_EQ(acyl_report_text(r, &text), ACYL_OK);
  EXPECT_NE(std::string(text).find("north_south"), std::string::npos);
  acyl_string_free(text);
  acyl_report_free(r);
  EXPECT_EQ(acyl_run("explode", c, &r), ACYL_INVALID_ARGUMENT);
  acyl_config_free(c);
}

TEST(CApi, StatusNames) {
  EXPECT_STREQ(acyl_status_name(ACYL_OK), "ok");
  EXPECT_STREQ(acyl_status_name(ACYL_BUDGET_EXHAUSTED), "budget exhausted");
}
