// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/problem_io.hpp"

#include <optional>
#include <string>

namespace genvi {

enum class Command { Auto, SolveVi, SolveGvi, FindCoincidence, FindFixedPoint, Check, Certify };

const char* to_string(Command c);
std::optional<Command> command_from_string(const std::string& name);

struct RunOptions {
  // Attach the brute-force oracle section; its gap must pass to certify.
  bool certify = false;
  std::optional<double> resolution;
  // Overrides the gap, coincidence and complementarity tolerances.
  std::optional<double> tol;
};

struct RunResult {
  Json report;
  // 0 certified (or hypotheses not refuted, for check), 1 numerical failure
  // or uncertified, 2 schema or usage error.
  int exit_code = 0;
  std::string summary;
};

// Never throws for problem-level failures; they are encoded in the report.
RunResult run(Command command, const Json& doc, const RunOptions& options = {});
// As run(), but malformed JSON text also yields a report (exit code 2).
RunResult run_text(Command command, const std::string& text, const RunOptions& options = {});

// The problem document with option overrides written into "tolerances".
Json apply_overrides(const Json& doc, const RunOptions& options);

// {"valid": bool, "errors": [{pointer, message}], "warnings": [{pointer,
// message, witness}]}. Includes image-set consistency sampling.
Json validate_document(const Json& doc);

}  // namespace genvi
