// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acyl/acyl.h"

namespace {

struct Flag {
  const char* name;
  const char* help;
};

// Every flag maps to the config key of the same name.
const std::vector<Flag> kFlags = {
    {"depth", "boundary depth D (tree radius for f2-tree)"},
    {"buffer", "Gromov product cap for boundary rays (default 2D+4)"},
    {"words", "word bound L"},
    {"tail-window", "steps with zero increments that count as stable"},
    {"seed", "seed for every sampled computation"},
    {"s", "edge threshold of the triple graph (default: auto)"},
    {"epsilon", "epsilon for displacement probes"},
    {"K", "power of g in the tree displacement probe"},
    {"n-max", "largest power checked in north-south and displacement tables"},
    {"out", "report path (gen: instance path)"},
    {"instance", "f2-tree | f2-boundary | cycle | grid | torus | z2-action"},
    {"graph", "graph file (u v [w] lines, base <id> header)"},
    {"boundary", "boundary model file"},
    {"action", "action spec file"},
    {"annulus", "annulus spec file: minus=<w,...> plus=<w,...>"},
    {"element", "group element g as a reduced word"},
    {"samples", "sample budget"},
    {"tuples", "number of target tuples for condition (C)"},
    {"n", "cycle length"},
    {"rows", "grid or torus rows"},
    {"cols", "grid or torus columns"},
    {"sigma-depth", "boundary depth of the triple graph, 0 to skip"},
    {"sigma-out", "write the triple graph edge list here"},
};

int fail(acyl_status st) {
  std::fprintf(stderr, "error: %s: %s\n", acyl_status_name(st), acyl_last_error());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale checks for boundary actions and annulus systems"};
  app.require_subcommand(1);
  std::map<std::string, std::string> values;
  std::string format = "text";
  for (const auto* cmd : {"gen", "verify-lemmas", "condition-c", "dynamics", "annulus", "full"}) {
    auto* sub = app.add_subcommand(cmd);
    for (const auto& f : kFlags) sub->add_option(std::string("--") + f.name, values[f.name], f.help);
    sub->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();

  acyl_config* config = nullptr;
  if (auto st = acyl_config_new(&config); st != ACYL_OK) return fail(st);
  for (const auto& f : kFlags) {
    if (sub->count(std::string("--") + f.name) == 0) continue;
    if (auto st = acyl_config_set(config, f.name, values[f.name].c_str()); st != ACYL_OK) {
      acyl_config_free(config);
      return fail(st);
    }
  }

  acyl_report* report = nullptr;
  auto st = acyl_run(command.c_str(), config, &report);
  acyl_config_free(config);
  if (st != ACYL_OK) return fail(st);

  char* json = nullptr;
  char* text = nullptr;
  if ((st = acyl_report_json(report, &json)) != ACYL_OK || (st = acyl_report_text(report, &text)) != ACYL_OK) {
    acyl_report_free(report);
    return fail(st);
  }
  std::cout << (format == "json" ? json : text);
  const std::string& out = values["out"];
  if (command != "gen" && !out.empty()) {
    std::ofstream f(out);
    if (!f) {
      std::fprintf(stderr, "error: cannot write %s\n", out.c_str());
      acyl_string_free(json);
      acyl_string_free(text);
      acyl_report_free(report);
      return 2;
    }
    f << json;
  }
  const size_t failures = acyl_report_failures(report);
  acyl_string_free(json);
  acyl_string_free(text);
  acyl_report_free(report);
  return failures == 0 ? 0 : 1;
}
