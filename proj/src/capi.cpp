#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "acyl/acyl.h"
#include "acyl/annulus.hpp"
#include "acyl/error.hpp"
#include "acyl/metric_graph.hpp"
#include "acyl/pipeline.hpp"

struct acyl_graph {
  acyl::MetricGraph graph;
};

struct acyl_boundary {
  acyl::BoundaryModel model;
};

struct acyl_annulus_system {
  acyl::AnnulusSystem system;
};

struct acyl_config {
  acyl::RunConfig config;
};

struct acyl_report {
  acyl::Report report;
};

namespace {

thread_local std::string last_error;

acyl_status code_of(acyl::ErrorCode c) {
  switch (c) {
    case acyl::ErrorCode::kInvalidArgument: return ACYL_INVALID_ARGUMENT;
    case acyl::ErrorCode::kUnknownVertex: return ACYL_UNKNOWN_VERTEX;
    case acyl::ErrorCode::kParse: return ACYL_PARSE_ERROR;
    case acyl::ErrorCode::kIo: return ACYL_IO_ERROR;
    case acyl::ErrorCode::kPrecondition: return ACYL_PRECONDITION;
    case acyl::ErrorCode::kBudgetExhausted: return ACYL_BUDGET_EXHAUSTED;
  }
  return ACYL_INTERNAL;
}

template <typename F>
acyl_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return ACYL_OK;
  } catch (const acyl::Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ACYL_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ACYL_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw acyl::Error(acyl::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<acyl::f2::Ray> rays(const char* const* items, size_t n) {
  if (n == 0) throw acyl::Error(acyl::ErrorCode::kInvalidArgument, "empty point list");
  require(items, "point list");
  std::vector<acyl::f2::Ray> out;
  for (size_t i = 0; i < n; ++i) {
    require(items[i], "point");
    out.push_back(acyl::f2::Ray::parse(items[i]));
  }
  return out;
}

}  // namespace

extern "C" {

const char* acyl_last_error(void) { return last_error.c_str(); }

const char* acyl_status_name(acyl_status status) {
  switch (status) {
    case ACYL_OK: return "ok";
    case ACYL_INVALID_ARGUMENT: return "invalid argument";
    case ACYL_UNKNOWN_VERTEX: return "unknown vertex";
    case ACYL_PARSE_ERROR: return "parse error";
    case ACYL_IO_ERROR: return "i/o error";
    case ACYL_PRECONDITION: return "precondition failed";
    case ACYL_BUDGET_EXHAUSTED: return "budget exhausted";
    case ACYL_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void acyl_string_free(char* s) { std::free(s); }

acyl_status acyl_graph_load(const char* path, acyl_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new acyl_graph{acyl::MetricGraph::load(path)};
  });
}

acyl_status acyl_graph_generate(const char* kind, int a, int b, acyl_graph** out) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "out");
    std::string k = kind;
    if (k == "f2-tree") *out = new acyl_graph{acyl::instances::free_group_tree(a)};
    else if (k == "cycle") *out = new acyl_graph{acyl::instances::cycle(a)};
    else if (k == "grid") *out = new acyl_graph{acyl::instances::grid(a, b)};
    else if (k == "torus") *out = new acyl_graph{acyl::instances::torus(a, b)};
    else throw acyl::Error(acyl::ErrorCode::kInvalidArgument, "unknown graph kind: " + k);
  });
}

void acyl_graph_free(acyl_graph* g) { delete g; }

size_t acyl_graph_size(const acyl_graph* g) { return g ? g->graph.size() : 0; }

acyl_status acyl_graph_distance(const acyl_graph* g, const char* u, const char* v, int64_t* out) {
  return guarded([&] {
    require(g, "graph");
    require(u, "u");
    require(v, "v");
    require(out, "out");
    *out = g->graph.distance(std::string_view(u), std::string_view(v));
  });
}

acyl_status acyl_graph_delta(const acyl_graph* g, int64_t* num, int64_t* den) {
  return guarded([&] {
    require(g, "graph");
    require(num, "num");
    require(den, "den");
    auto d = acyl::measure_delta(g->graph, acyl::SampleMode::kExhaustive).delta_4pt;
    *num = d.numerator();
    *den = d.denominator();
  });
}

acyl_status acyl_boundary_new(int depth, int buffer, acyl_boundary** out) {
  return guarded([&] {
    require(out, "out");
    *out = new acyl_boundary{acyl::BoundaryModel(depth, buffer)};
  });
}

acyl_status acyl_boundary_load(const char* path, acyl_boundary** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new acyl_boundary{acyl::BoundaryModel::load(path)};
  });
}

void acyl_boundary_free(acyl_boundary* b) { delete b; }

size_t acyl_boundary_point_count(const acyl_boundary* b) { return b ? b->model.points().size() : 0; }

acyl_status acyl_boundary_gromov_product(const acyl_boundary* b, const char* s, const char* t, int* out) {
  return guarded([&] {
    require(b, "boundary");
    require(s, "s");
    require(t, "t");
    require(out, "out");
    b->model.point_index(s);
    b->model.point_index(t);
    *out = b->model.gromov_product(std::string_view(s), std::string_view(t));
  });
}

acyl_status acyl_boundary_north_south(const acyl_boundary* b, const char* g, int n_max, int* fixed, int* north_south) {
  return guarded([&] {
    require(b, "boundary");
    require(g, "element");
    require(fixed, "fixed");
    require(north_south, "north_south");
    std::vector<int> depths;
    for (int d = 1; d <= std::max(1, b->model.depth() - 2); ++d) depths.push_back(d);
    auto cert = acyl::detect_north_south(b->model, acyl::f2::parse(g), depths, n_max);
    *fixed = static_cast<int>(cert.fixed_points.size());
    *north_south = cert.kind == acyl::DynamicsCertificate::Kind::kNorthSouth ? 1 : 0;
  });
}

acyl_status acyl_annulus_system_new(const acyl_boundary* b, const char* spec, int word_bound,
                                    acyl_annulus_system** out) {
  return guarded([&] {
    require(b, "boundary");
    require(spec, "spec");
    require(out, "out");
    *out = new acyl_annulus_system{acyl::AnnulusSystem(b->model, acyl::Annulus::parse(spec), word_bound)};
  });
}

void acyl_annulus_system_free(acyl_annulus_system* s) { delete s; }

acyl_status acyl_crossratio(const acyl_annulus_system* s, const char* const* k, size_t k_count, const char* const* l,
                            size_t l_count, int* value, int* infinite, int* exact) {
  return guarded([&] {
    require(s, "system");
    require(value, "value");
    auto c = s->system.crossratio(rays(k, k_count), rays(l, l_count));
    *value = c.value;
    if (infinite) *infinite = c.infinite ? 1 : 0;
    if (exact) *exact = c.exact ? 1 : 0;
  });
}

acyl_status acyl_config_new(acyl_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new acyl_config{};
  });
}

void acyl_config_free(acyl_config* c) { delete c; }

acyl_status acyl_config_set(acyl_config* c, const char* key, const char* value) {
  return guarded([&] {
    require(c, "config");
    require(key, "key");
    require(value, "value");
    c->config.set(key, value);
  });
}

acyl_status acyl_run(const char* command, const acyl_config* c, acyl_report** out) {
  return guarded([&] {
    require(command, "command");
    require(c, "config");
    require(out, "out");
    acyl::RunConfig cfg = c->config;
    cfg.command = command;
    *out = new acyl_report{acyl::run(cfg)};
  });
}

void acyl_report_free(acyl_report* r) { delete r; }

size_t acyl_report_record_count(const acyl_report* r) { return r ? r->report.records.size() : 0; }

size_t acyl_report_failures(const acyl_report* r) { return r ? r->report.failures() : 0; }

acyl_status acyl_report_record(const acyl_report* r, size_t i, acyl_record* out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    if (i >= r->report.records.size()) throw acyl::Error(acyl::ErrorCode::kInvalidArgument, "record index out of range");
    const auto& rec = r->report.records[i];
    out->name = rec.name.c_str();
    out->anchor = rec.anchor.c_str();
    out->measured = rec.measured.c_str();
    out->bound = rec.bound.c_str();
    out->status = rec.status == acyl::Status::kPass   ? ACYL_RECORD_PASS
                  : rec.status == acyl::Status::kFail ? ACYL_RECORD_FAIL
                                                      : ACYL_RECORD_MEASURED;
    out->word_bound = rec.word_bound;
    out->window = rec.window;
    out->note = rec.note.c_str();
  });
}

acyl_status acyl_report_json(const acyl_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = copy_string(r->report.to_json());
  });
}

acyl_status acyl_report_text(const acyl_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = copy_string(r->report.to_text());
  });
}

}  // extern "C"
