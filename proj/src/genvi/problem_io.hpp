// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/geometry.hpp"
#include "genvi/inversion.hpp"
#include "genvi/operator.hpp"
#include "genvi/properties.hpp"
#include "genvi/vi_solver.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace genvi {

using Json = nlohmann::json;

inline constexpr const char* kProblemSchema = "genvi-problem/1";
inline constexpr const char* kReportSchema = "genvi-report/1";

enum class ProblemKind { Vi, Gvi, Coincidence, FixedPoint, Complementarity };

const char* to_string(ProblemKind kind);

struct Tolerances {
  double gap = 1e-6;
  double coincidence = 1e-6;
  double image = 1e-7;
  double cache = 1e-9;
  double complementarity = 1e-8;
  // Tolerance of sampled hypothesis checks.
  double check = 1e-9;
  double proj = 1e-10;
  // Oracle grid spacing.
  double resolution = 0.05;
  int samples = 500;
};

struct ProblemSpec {
  ProblemKind kind;
  std::string name;
  std::string description;
  std::map<std::string, OperatorExpr> operators;
  ConvexSet set;
  std::optional<ConvexSet> image_set;
  std::optional<ConvexSet> cone;
  std::optional<Vector> start;
  SolverParams solver;
  InversionParams inversion;  // seed copied from the problem seed
  std::uint64_t seed;
  Tolerances tol;

  const OperatorExpr& op(const std::string& key) const { return operators.at(key); }
};

// Strict parsing: unknown fields, wrong types, non-finite numbers and
// inconsistent dimensions raise SchemaError with a JSON pointer.
ProblemSpec parse_problem(const Json& doc);
OperatorExpr parse_operator(const Json& j, const std::string& pointer = "");
ConvexSet parse_set(const Json& j, const std::string& pointer = "");

Json to_json(const Vector& v);
Json to_json(const PropertyReport& r);
// Non-finite values become null.
Json number_or_null(double v);

// Parses text, mapping syntax errors to SchemaError at the root.
Json parse_json_text(const std::string& text);

}  // namespace genvi
