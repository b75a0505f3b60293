/*
 * genvi - general variational inequality and coincidence point toolkit
 * Copyright 2026 genvi contributors
 * Licensed under Apache 2.0
 *
 * C interface of libgenvi. Handles are opaque; every fallible call returns a
 * genvi_status and, on failure, records a thread-local message retrievable
 * with genvi_last_error(). Strings returned through char** are owned by the
 * caller and released with genvi_string_free().
 */
#ifndef GENVI_GENVI_H
#define GENVI_GENVI_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(GENVI_BUILDING)
#    define GENVI_API __declspec(dllexport)
#  else
#    define GENVI_API __declspec(dllimport)
#  endif
#else
#  define GENVI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum genvi_status {
  GENVI_OK = 0,
  GENVI_ERR_INVALID_ARGUMENT = 1,
  GENVI_ERR_DIMENSION_MISMATCH = 2,
  GENVI_ERR_UNSUPPORTED_VARIANT = 3,
  GENVI_ERR_DIMENSION_TOO_LARGE = 4,
  GENVI_ERR_UNBOUNDED_SET = 5,
  GENVI_ERR_EMPTY_SET = 6,
  GENVI_ERR_NON_CONVERGENCE = 7,
  GENVI_ERR_INVERSION_FAILED = 8,
  GENVI_ERR_CERTIFICATION_FAILED = 9,
  GENVI_ERR_EMPTY_GRID = 10,
  GENVI_ERR_GRID_TOO_LARGE = 11,
  GENVI_ERR_SCHEMA = 12,
  GENVI_ERR_IO = 13,
  GENVI_ERR_USAGE = 14,
  GENVI_ERR_INTERNAL = 15
} genvi_status;

typedef enum genvi_command {
  GENVI_CMD_AUTO = 0, /* chosen from the problem kind */
  GENVI_CMD_SOLVE_VI = 1,
  GENVI_CMD_SOLVE_GVI = 2,
  GENVI_CMD_FIND_COINCIDENCE = 3,
  GENVI_CMD_FIND_FIXED_POINT = 4,
  GENVI_CMD_CHECK = 5,
  GENVI_CMD_CERTIFY = 6
} genvi_command;

typedef struct genvi_run_options {
  int certify;
  int has_resolution;
  double resolution;
  int has_tol;
  double tol;
} genvi_run_options;

typedef struct genvi_problem genvi_problem;
typedef struct genvi_report genvi_report;
typedef struct genvi_set genvi_set;
typedef struct genvi_operator genvi_operator;

GENVI_API const char* genvi_version(void);
GENVI_API const char* genvi_status_string(genvi_status status);
/* Stable identifier used in report "error.code" fields, e.g. "Schema". */
GENVI_API const char* genvi_status_name(genvi_status status);
/* Message and JSON pointer of the last failure on this thread ("" if none). */
GENVI_API const char* genvi_last_error(void);
GENVI_API const char* genvi_last_error_pointer(void);
GENVI_API void genvi_string_free(char* s);

/* Problems. Parsing is strict; schema violations return GENVI_ERR_SCHEMA. */
GENVI_API genvi_status genvi_problem_parse(const char* json, genvi_problem** out);
GENVI_API genvi_status genvi_problem_load(const char* path, genvi_problem** out);
GENVI_API genvi_status genvi_problem_from_demo(const char* name, genvi_problem** out);
GENVI_API genvi_status genvi_problem_json(const genvi_problem* problem, char** out);
GENVI_API void genvi_problem_free(genvi_problem* problem);

/* Diagnostics JSON for a document, without solving. Returns GENVI_OK even
 * when the document is invalid; inspect the "valid" field. */
GENVI_API genvi_status genvi_validate_json(const char* json, char** diagnostics);
/* [{"name": ..., "description": ...}, ...] */
GENVI_API genvi_status genvi_list_demos(char** out);

/* Numerical failures and commands that do not apply to the problem kind are
 * encoded in the report (exit codes 1 and 2), not in the status. */
GENVI_API genvi_status genvi_run(const genvi_problem* problem, genvi_command command,
                                 const genvi_run_options* options, genvi_report** out);
/* Runs a problem given as JSON text. Unlike genvi_problem_parse, an invalid
 * document is not a status error: it yields a report with exit code 2 and an
 * "error" object naming the offending field. */
GENVI_API genvi_status genvi_run_json(const char* json, genvi_command command,
                                      const genvi_run_options* options, genvi_report** out);
GENVI_API genvi_status genvi_report_json(const genvi_report* report, char** out);
GENVI_API genvi_status genvi_report_summary(const genvi_report* report, char** out);
/* 0 certified, 1 uncertified or failed, 2 schema or usage error. */
GENVI_API int genvi_report_exit_code(const genvi_report* report);
GENVI_API genvi_status genvi_report_solution(const genvi_report* report, double* out,
                                             size_t capacity, size_t* dim);
GENVI_API void genvi_report_free(genvi_report* report);

/* Convex sets, in the problem-file encoding. */
GENVI_API genvi_status genvi_set_parse(const char* json, genvi_set** out);
GENVI_API size_t genvi_set_dim(const genvi_set* set);
GENVI_API genvi_status genvi_set_project(const genvi_set* set, const double* x, size_t n,
                                         double* out);
GENVI_API genvi_status genvi_set_contains(const genvi_set* set, const double* x, size_t n,
                                          double tol, int* inside);
GENVI_API void genvi_set_free(genvi_set* set);

/* Operators, in the problem-file encoding. */
GENVI_API genvi_status genvi_operator_parse(const char* json, genvi_operator** out);
GENVI_API genvi_status genvi_operator_dims(const genvi_operator* op, size_t* in_dim,
                                           size_t* out_dim);
GENVI_API genvi_status genvi_operator_evaluate(const genvi_operator* op, const double* x,
                                               size_t n, double* out, size_t out_n);
GENVI_API void genvi_operator_free(genvi_operator* op);

#ifdef __cplusplus
}
#endif

#endif /* GENVI_GENVI_H */
