#ifndef ACYL_ACYL_H
#define ACYL_ACYL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ACYL_API __declspec(dllexport)
#else
#define ACYL_API __attribute__((visibility("default")))
#endif

typedef enum acyl_status {
  ACYL_OK = 0,
  ACYL_INVALID_ARGUMENT = 1,
  ACYL_UNKNOWN_VERTEX = 2,
  ACYL_PARSE_ERROR = 3,
  ACYL_IO_ERROR = 4,
  ACYL_PRECONDITION = 5,
  ACYL_BUDGET_EXHAUSTED = 6,
  ACYL_INTERNAL = 100
} acyl_status;

/* Message of the last failing call on this thread, or "" after a success. */
ACYL_API const char* acyl_last_error(void);
ACYL_API const char* acyl_status_name(acyl_status status);

/* Strings returned through char** are owned by the caller. */
ACYL_API void acyl_string_free(char* s);

/* ---- Metric graphs ---------------------------------------------------- */

typedef struct acyl_graph acyl_graph;

ACYL_API acyl_status acyl_graph_load(const char* path, acyl_graph** out);
/* kind: "f2-tree" (a = radius), "cycle" (a = n), "grid" or "torus" (a = rows, b = cols). */
ACYL_API acyl_status acyl_graph_generate(const char* kind, int a, int b, acyl_graph** out);
ACYL_API void acyl_graph_free(acyl_graph* g);
ACYL_API size_t acyl_graph_size(const acyl_graph* g);
ACYL_API acyl_status acyl_graph_distance(const acyl_graph* g, const char* u, const char* v, int64_t* out);
/* Exhaustive four-point delta as a fraction num/den. */
ACYL_API acyl_status acyl_graph_delta(const acyl_graph* g, int64_t* num, int64_t* den);

/* ---- Boundary model --------------------------------------------------- */

typedef struct acyl_boundary acyl_boundary;

ACYL_API acyl_status acyl_boundary_new(int depth, int buffer, acyl_boundary** out);
ACYL_API acyl_status acyl_boundary_load(const char* path, acyl_boundary** out);
ACYL_API void acyl_boundary_free(acyl_boundary* b);
ACYL_API size_t acyl_boundary_point_count(const acyl_boundary* b);
ACYL_API acyl_status acyl_boundary_gromov_product(const acyl_boundary* b, const char* s, const char* t, int* out);
/* Number of fixed depth-D leaves of g and whether it shows north-south dynamics. */
ACYL_API acyl_status acyl_boundary_north_south(const acyl_boundary* b, const char* g, int n_max, int* fixed,
                                               int* north_south);

/* ---- Annulus systems -------------------------------------------------- */

typedef struct acyl_annulus_system acyl_annulus_system;

/* spec: "minus=<w,...> plus=<w,...>". The boundary must outlive the system. */
ACYL_API acyl_status acyl_annulus_system_new(const acyl_boundary* b, const char* spec, int word_bound,
                                             acyl_annulus_system** out);
ACYL_API void acyl_annulus_system_free(acyl_annulus_system* s);
/* Rays are written "stem~period" or as a boundary point word. */
ACYL_API acyl_status acyl_crossratio(const acyl_annulus_system* s, const char* const* k, size_t k_count,
                                     const char* const* l, size_t l_count, int* value, int* infinite, int* exact);

/* ---- Pipeline --------------------------------------------------------- */

typedef struct acyl_config acyl_config;
typedef struct acyl_report acyl_report;

typedef enum acyl_record_status { ACYL_RECORD_PASS = 0, ACYL_RECORD_FAIL = 1, ACYL_RECORD_MEASURED = 2 } acyl_record_status;

/* Views into a report; valid until the report is freed. */
typedef struct acyl_record {
  const char* name;
  const char* anchor;
  const char* measured;
  const char* bound;
  acyl_record_status status;
  int word_bound;
  int window;
  const char* note;
} acyl_record;

ACYL_API acyl_status acyl_config_new(acyl_config** out);
ACYL_API void acyl_config_free(acyl_config* c);
/* Keys match the command-line flags without dashes in front, e.g. "depth", "tail-window". */
ACYL_API acyl_status acyl_config_set(acyl_config* c, const char* key, const char* value);

ACYL_API acyl_status acyl_run(const char* command, const acyl_config* c, acyl_report** out);
ACYL_API void acyl_report_free(acyl_report* r);
ACYL_API size_t acyl_report_record_count(const acyl_report* r);
ACYL_API size_t acyl_report_failures(const acyl_report* r);
ACYL_API acyl_status acyl_report_record(const acyl_report* r, size_t i, acyl_record* out);
ACYL_API acyl_status acyl_report_json(const acyl_report* r, char** out);
ACYL_API acyl_status acyl_report_text(const acyl_report* r, char** out);

#ifdef __cplusplus
}
#endif

#endif
