// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/genvi.h"

#include "genvi/demos.hpp"
#include "genvi/error.hpp"
#include "genvi/problem_io.hpp"
#include "genvi/runner.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

struct genvi_problem {
  genvi::Json doc;
};

struct genvi_report {
  genvi::RunResult result;
};

struct genvi_set {
  genvi::ConvexSet set;
};

struct genvi_operator {
  genvi::OperatorExpr op;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_pointer;

genvi_status status_of(genvi::ErrorCode code) {
  using genvi::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return GENVI_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return GENVI_ERR_DIMENSION_MISMATCH;
    case ErrorCode::UnsupportedVariant: return GENVI_ERR_UNSUPPORTED_VARIANT;
    case ErrorCode::DimensionTooLarge: return GENVI_ERR_DIMENSION_TOO_LARGE;
    case ErrorCode::UnboundedSet: return GENVI_ERR_UNBOUNDED_SET;
    case ErrorCode::EmptySet: return GENVI_ERR_EMPTY_SET;
    case ErrorCode::NonConvergence: return GENVI_ERR_NON_CONVERGENCE;
    case ErrorCode::InversionFailed: return GENVI_ERR_INVERSION_FAILED;
    case ErrorCode::CertificationFailed: return GENVI_ERR_CERTIFICATION_FAILED;
    case ErrorCode::EmptyGrid: return GENVI_ERR_EMPTY_GRID;
    case ErrorCode::GridTooLarge: return GENVI_ERR_GRID_TOO_LARGE;
    case ErrorCode::Schema: return GENVI_ERR_SCHEMA;
    case ErrorCode::Io: return GENVI_ERR_IO;
  }
  return GENVI_ERR_INTERNAL;
}

genvi_status fail(genvi_status s, std::string message, std::string pointer = "") {
  g_last_error = std::move(message);
  g_last_pointer = std::move(pointer);
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
genvi_status guarded(F&& body) {
  g_last_error.clear();
  g_last_pointer.clear();
  try {
    return body();
  } catch (const genvi::SchemaError& e) {
    return fail(GENVI_ERR_SCHEMA, e.what(), e.pointer());
  } catch (const genvi::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GENVI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GENVI_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GENVI_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

genvi::Vector to_vector(const double* x, size_t n) {
  genvi::Vector v(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  return v;
}

genvi::Command command_of(genvi_command c) {
  switch (c) {
    case GENVI_CMD_AUTO: return genvi::Command::Auto;
    case GENVI_CMD_SOLVE_VI: return genvi::Command::SolveVi;
    case GENVI_CMD_SOLVE_GVI: return genvi::Command::SolveGvi;
    case GENVI_CMD_FIND_COINCIDENCE: return genvi::Command::FindCoincidence;
    case GENVI_CMD_FIND_FIXED_POINT: return genvi::Command::FindFixedPoint;
    case GENVI_CMD_CHECK: return genvi::Command::Check;
    case GENVI_CMD_CERTIFY: return genvi::Command::Certify;
  }
  throw genvi::Error(genvi::ErrorCode::InvalidArgument, "unknown command");
}

genvi::RunOptions run_options(const genvi_run_options* options) {
  genvi::RunOptions opts;
  if (options) {
    opts.certify = options->certify != 0;
    if (options->has_resolution) opts.resolution = options->resolution;
    if (options->has_tol) opts.tol = options->tol;
  }
  return opts;
}

genvi_status make_problem(genvi::Json doc, genvi_problem** out) {
  genvi::parse_problem(doc);
  *out = new genvi_problem{std::move(doc)};
  return GENVI_OK;
}

}  // namespace

extern "C" {

const char* genvi_version(void) { return GENVI_VERSION; }

const char* genvi_status_string(genvi_status status) {
  switch (status) {
    case GENVI_OK: return "ok";
    case GENVI_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GENVI_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case GENVI_ERR_UNSUPPORTED_VARIANT: return "unsupported set variant";
    case GENVI_ERR_DIMENSION_TOO_LARGE: return "dimension too large";
    case GENVI_ERR_UNBOUNDED_SET: return "unbounded set";
    case GENVI_ERR_EMPTY_SET: return "empty set";
    case GENVI_ERR_NON_CONVERGENCE: return "non-convergence";
    case GENVI_ERR_INVERSION_FAILED: return "inversion failed";
    case GENVI_ERR_CERTIFICATION_FAILED: return "certification failed";
    case GENVI_ERR_EMPTY_GRID: return "empty grid";
    case GENVI_ERR_GRID_TOO_LARGE: return "grid too large";
    case GENVI_ERR_SCHEMA: return "schema violation";
    case GENVI_ERR_IO: return "i/o error";
    case GENVI_ERR_USAGE: return "usage error";
    case GENVI_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* genvi_status_name(genvi_status status) {
  switch (status) {
    case GENVI_OK: return "Ok";
    case GENVI_ERR_USAGE: return "Usage";
    case GENVI_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(genvi::ErrorCode::Io); ++c) {
    const auto code = static_cast<genvi::ErrorCode>(c);
    if (status_of(code) == status) return genvi::to_string(code);
  }
  return "Unknown";
}

const char* genvi_last_error(void) { return g_last_error.c_str(); }
const char* genvi_last_error_pointer(void) { return g_last_pointer.c_str(); }
void genvi_string_free(char* s) { std::free(s); }

genvi_status genvi_problem_parse(const char* json, genvi_problem** out) {
  return guarded([&] {
    if (!json || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    return make_problem(genvi::parse_json_text(json), out);
  });
}

genvi_status genvi_problem_load(const char* path, genvi_problem** out) {
  return guarded([&] {
    if (!path || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream in(path);
    if (!in) return fail(GENVI_ERR_IO, std::string("cannot open ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return make_problem(genvi::parse_json_text(ss.str()), out);
  });
}

genvi_status genvi_problem_from_demo(const char* name, genvi_problem** out) {
  return guarded([&] {
    if (!name || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    auto doc = genvi::demo_problem(name);
    if (!doc) return fail(GENVI_ERR_INVALID_ARGUMENT, std::string("unknown demo ") + name);
    return make_problem(std::move(*doc), out);
  });
}

genvi_status genvi_problem_json(const genvi_problem* problem, char** out) {
  return guarded([&] {
    if (!problem || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *out = dup_string(problem->doc.dump(2));
    return GENVI_OK;
  });
}

void genvi_problem_free(genvi_problem* problem) { delete problem; }

genvi_status genvi_validate_json(const char* json, char** diagnostics) {
  return guarded([&] {
    if (!json || !diagnostics) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    genvi::Json d;
    try {
      d = genvi::validate_document(genvi::parse_json_text(json));
    } catch (const genvi::SchemaError& e) {
      d = {{"valid", false},
           {"errors", {{{"pointer", e.pointer()}, {"message", e.what()}}}},
           {"warnings", genvi::Json::array()}};
    }
    *diagnostics = dup_string(d.dump(2));
    return GENVI_OK;
  });
}

genvi_status genvi_list_demos(char** out) {
  return guarded([&] {
    if (!out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    genvi::Json list = genvi::Json::array();
    for (const auto& d : genvi::demo_catalog()) {
      list.push_back({{"name", d.name}, {"description", d.description}});
    }
    *out = dup_string(list.dump(2));
    return GENVI_OK;
  });
}

genvi_status genvi_run(const genvi_problem* problem, genvi_command command,
                       const genvi_run_options* options, genvi_report** out) {
  return guarded([&] {
    if (!problem || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *out = new genvi_report{genvi::run(command_of(command), problem->doc, run_options(options))};
    return GENVI_OK;
  });
}

genvi_status genvi_run_json(const char* json, genvi_command command,
                            const genvi_run_options* options, genvi_report** out) {
  return guarded([&] {
    if (!json || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *out = new genvi_report{genvi::run_text(command_of(command), json, run_options(options))};
    return GENVI_OK;
  });
}

genvi_status genvi_report_json(const genvi_report* report, char** out) {
  return guarded([&] {
    if (!report || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *out = dup_string(report->result.report.dump(2));
    return GENVI_OK;
  });
}

genvi_status genvi_report_summary(const genvi_report* report, char** out) {
  return guarded([&] {
    if (!report || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *out = dup_string(report->result.summary);
    return GENVI_OK;
  });
}

int genvi_report_exit_code(const genvi_report* report) {
  return report ? report->result.exit_code : 2;
}

genvi_status genvi_report_solution(const genvi_report* report, double* out, size_t capacity,
                                   size_t* dim) {
  return guarded([&] {
    if (!report || !dim) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    const genvi::Json& r = report->result.report;
    const genvi::Json sol = r.contains("solution") ? r.at("solution") : genvi::Json();
    *dim = sol.is_array() ? sol.size() : 0;
    if (*dim > capacity || (*dim > 0 && !out)) {
      return fail(GENVI_ERR_INVALID_ARGUMENT, "output buffer too small");
    }
    for (size_t i = 0; i < *dim; ++i) out[i] = sol[i].is_number() ? sol[i].get<double>() : NAN;
    return GENVI_OK;
  });
}

void genvi_report_free(genvi_report* report) { delete report; }

genvi_status genvi_set_parse(const char* json, genvi_set** out) {
  return guarded([&] {
    if (!json || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *out = new genvi_set{genvi::parse_set(genvi::parse_json_text(json))};
    return GENVI_OK;
  });
}

size_t genvi_set_dim(const genvi_set* set) { return set ? static_cast<size_t>(set->set.dim()) : 0; }

genvi_status genvi_set_project(const genvi_set* set, const double* x, size_t n, double* out) {
  return guarded([&] {
    if (!set || !x || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    const genvi::Vector p = genvi::project(set->set, to_vector(x, n));
    for (size_t i = 0; i < n; ++i) out[i] = p(static_cast<Eigen::Index>(i));
    return GENVI_OK;
  });
}

genvi_status genvi_set_contains(const genvi_set* set, const double* x, size_t n, double tol,
                                int* inside) {
  return guarded([&] {
    if (!set || !x || !inside) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *inside = genvi::contains(set->set, to_vector(x, n), tol) ? 1 : 0;
    return GENVI_OK;
  });
}

void genvi_set_free(genvi_set* set) { delete set; }

genvi_status genvi_operator_parse(const char* json, genvi_operator** out) {
  return guarded([&] {
    if (!json || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *out = new genvi_operator{genvi::parse_operator(genvi::parse_json_text(json))};
    return GENVI_OK;
  });
}

genvi_status genvi_operator_dims(const genvi_operator* op, size_t* in_dim, size_t* out_dim) {
  return guarded([&] {
    if (!op || !in_dim || !out_dim) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    *in_dim = static_cast<size_t>(op->op.in_dim());
    *out_dim = static_cast<size_t>(op->op.out_dim());
    return GENVI_OK;
  });
}

genvi_status genvi_operator_evaluate(const genvi_operator* op, const double* x, size_t n,
                                     double* out, size_t out_n) {
  return guarded([&] {
    if (!op || !x || !out) return fail(GENVI_ERR_INVALID_ARGUMENT, "null argument");
    genvi::require_dims(op->op.out_dim(), static_cast<long>(out_n), "operator output buffer");
    const genvi::Vector y = genvi::evaluate(op->op, to_vector(x, n));
    for (size_t i = 0; i < out_n; ++i) out[i] = y(static_cast<Eigen::Index>(i));
    return GENVI_OK;
  });
}

void genvi_operator_free(genvi_operator* op) { delete op; }

}  // extern "C"
