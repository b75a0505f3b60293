// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "catch_amalgamated.hpp"

#include "genvi/demos.hpp"
#include "genvi/error.hpp"
#include "genvi/problem_io.hpp"
#include "genvi/runner.hpp"

#include <cmath>

using namespace genvi;

namespace {

Json scaled_gvi() { return *demo_problem("scaled-gvi"); }

std::string schema_pointer(const Json& doc) {
  try {
    parse_problem(doc);
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("every demo parses and validates cleanly", "[io]") {
  REQUIRE(demo_catalog().size() == 14);
  for (const auto& d : demo_catalog()) {
    INFO(d.name);
    CHECK_NOTHROW(parse_problem(d.problem));
    const Json diag = validate_document(d.problem);
    CHECK(diag["valid"] == true);
    CHECK(diag["errors"].empty());
    CHECK(diag["warnings"].empty());
  }
}

TEST_CASE("strict schema: pointers to the offending field", "[io]") {
  Json doc = scaled_gvi();
  doc["operators"].erase("a");
  CHECK(schema_pointer(doc) == "/operators/a");

  doc = scaled_gvi();
  doc["extra"] = 1;
  CHECK(schema_pointer(doc) == "/extra");

  doc = scaled_gvi();
  doc["set"]["upper"] = Json::array({1, 2});
  CHECK(schema_pointer(doc).rfind("/set", 0) == 0);

  doc = scaled_gvi();
  doc.erase("seed");
  CHECK(schema_pointer(doc) == "/seed");

  doc = scaled_gvi();
  doc["seed"] = -3;
  CHECK(schema_pointer(doc) == "/seed");

  doc = scaled_gvi();
  doc["version"] = "genvi-problem/0";
  CHECK(schema_pointer(doc) == "/version");

  doc = scaled_gvi();
  doc["operators"]["A"]["op"] = "exp";
  CHECK(schema_pointer(doc) == "/operators/A/op");

  doc = scaled_gvi();
  doc["solver"] = {{"method", "newton"}};
  CHECK(schema_pointer(doc) == "/solver/method");

  doc = *demo_problem("fixed-point");
  doc["image_set"] = doc["set"];
  CHECK(schema_pointer(doc) == "/image_set");

  doc = *demo_problem("lcp-complementarity");
  doc.erase("cone");
  CHECK(schema_pointer(doc) == "/cone");
}

TEST_CASE("operator and set encodings", "[io]") {
  const auto op = parse_operator(Json::parse(R"({"op": "compose",
      "outer": {"op": "pointwise", "kind": "cube", "dim": 2},
      "inner": {"op": "scale", "s": 2, "inner": {"op": "identity", "dim": 2}}})"));
  CHECK((op(Vector::Constant(2, 0.5)) - Vector::Ones(2)).norm() == 0.0);

  const auto rot = parse_operator(Json::parse(R"({"op": "rotation", "dim": 3, "angle": 1.5707963267948966, "plane": [1, 2]})"));
  CHECK((rot(Vector::Unit(3, 1)) - Vector::Unit(3, 2)).norm() < 1e-15);

  const auto P = parse_set(Json::parse(R"({"type": "hpolytope", "normals": [[-1, 0], [0, -1], [1, 1]], "offsets": [0, 0, 1]})"));
  CHECK(P.kind_name() == "hpolytope");
  CHECK(contains(P, Vector::Constant(2, 0.4), 0.0));

  CHECK_THROWS_AS(parse_set(Json::parse(R"({"type": "ball", "center": [0], "radius": -1})")), SchemaError);
  CHECK_THROWS_AS(parse_operator(Json::parse(R"({"op": "affine", "M": [[1, 2], [3]]})")), SchemaError);
}

TEST_CASE("parse_json_text maps syntax errors to the root", "[io]") {
  try {
    parse_json_text("{\"version\": ");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.pointer().empty());
  }
}

TEST_CASE("run: demos certify", "[io][runner]") {
  for (const char* name : {"box-projection", "linear-coincidence"}) {
    const auto r = run(Command::Auto, *demo_problem(name));
    CHECK(r.exit_code == 0);
    CHECK(r.report["exit_status"] == "certified");
  }
  const auto box = run(Command::Auto, *demo_problem("box-projection"));
  CHECK(box.report["solution"] == Json::array({1.0, 0.0}));
  CHECK(box.report["schema"] == kReportSchema);
}

TEST_CASE("run: solve-gvi with the oracle on the 1D instance", "[io][runner]") {
  RunOptions opts;
  opts.certify = true;
  opts.resolution = 0.05;
  const auto r = run(Command::SolveGvi, scaled_gvi(), opts);
  CHECK(r.exit_code == 0);
  CHECK(r.report["solution"][0].get<double>() == 1.0);
  CHECK(r.report["oracle"]["gap_at_solution"].get<double>() >= -1e-6);
  CHECK(r.report["oracle"]["candidate"][0].get<double>() == 1.0);
}

TEST_CASE("run: usage and schema errors exit 2", "[io][runner]") {
  const auto wrong = run(Command::SolveVi, scaled_gvi());
  CHECK(wrong.exit_code == 2);
  CHECK(wrong.report["error"]["pointer"] == "/kind");

  Json doc = scaled_gvi();
  doc["operators"].erase("a");
  const auto bad = run(Command::SolveGvi, doc);
  CHECK(bad.exit_code == 2);
  CHECK(bad.report["error"]["code"] == "Schema");
  CHECK(bad.report["error"]["pointer"] == "/operators/a");
}

TEST_CASE("run_text: malformed JSON still yields a report", "[io][runner]") {
  const auto r = run_text(Command::SolveGvi, "{\"version\": ");
  CHECK(r.exit_code == 2);
  CHECK(r.report["schema"] == kReportSchema);
  CHECK(r.report["exit_status"] == "failed");
  CHECK(r.report["error"]["code"] == "Schema");
  CHECK(r.report["error"]["pointer"] == "");
  CHECK(r.report["problem"].is_null());

  const auto ok = run_text(Command::SolveGvi, scaled_gvi().dump());
  CHECK(ok.exit_code == 0);
}

TEST_CASE("run: refuted hypotheses and certification failure", "[io][runner]") {
  Json doc = *demo_problem("linear-coincidence");
  doc["operators"]["f"] = {{"op", "affine"}, {"M", {{1.0}}}, {"q", {3.0}}};
  const auto r = run(Command::FindCoincidence, doc);
  CHECK(r.exit_code == 1);
  CHECK(r.report["exit_status"] == "refuted_hypothesis");
  CHECK(r.report["error"]["code"] == "CertificationFailed");
  bool range_violated = false;
  for (const auto& h : r.report["hypothesis_reports"]) {
    if (h["property"] == "range_inclusion") range_violated = h["verdict"] == "violated";
  }
  CHECK(range_violated);
}

TEST_CASE("run: check and certify commands", "[io][runner]") {
  const auto check = run(Command::Check, *demo_problem("non-ql"));
  CHECK(check.exit_code == 0);
  CHECK(check.report["solution"].is_null());

  const auto cert = run(Command::Certify, *demo_problem("linear-coincidence"));
  CHECK(cert.exit_code == 0);
  CHECK(cert.report["oracle"]["candidate"][0].get<double>() == 0.5);
}

TEST_CASE("run: --tol overrides the file tolerances", "[io][runner]") {
  RunOptions opts;
  opts.tol = 1e-3;
  const Json doc = apply_overrides(scaled_gvi(), opts);
  CHECK(doc["tolerances"]["gap"] == 1e-3);
  CHECK(doc["tolerances"]["coincidence"] == 1e-3);
  const auto r = run(Command::SolveGvi, scaled_gvi(), opts);
  CHECK(r.report["problem"]["tolerances"]["gap"] == 1e-3);
}

TEST_CASE("validate: diagnostics", "[io][runner]") {
  Json doc = scaled_gvi();
  doc["operators"].erase("a");
  const Json d = validate_document(doc);
  CHECK(d["valid"] == false);
  CHECK(d["errors"][0]["pointer"] == "/operators/a");

  Json img = *demo_problem("fiber-condition");
  img["image_set"] = {{"type", "box"}, {"lower", {0.0}}, {"upper", {0.25}}};
  const Json w = validate_document(img);
  CHECK(w["valid"] == true);
  REQUIRE(w["warnings"].size() == 1);
  CHECK(w["warnings"][0]["pointer"] == "/image_set");
  const double x = w["warnings"][0]["witness"][0][0].get<double>();
  CHECK(x * x > 0.25);
}

TEST_CASE("round trip: the echoed problem re-runs bit-identically", "[io][runner][property]") {
  for (const auto& d : demo_catalog()) {
    INFO(d.name);
    const auto first = run(Command::Auto, d.problem);
    const auto again = run(Command::Auto, Json::parse(first.report["problem"].dump()));
    CHECK(validate_document(first.report["problem"])["valid"] == true);
    CHECK(first.report["solution"].dump() == again.report["solution"].dump());
    CHECK(first.report["exit_status"] == again.report["exit_status"]);
  }
}

TEST_CASE("floats survive serialization exactly", "[io][property]") {
  for (double x : {0.1, 1.0 / 3, std::sqrt(0.5), 1e-300, 5e-324, -2.5e17}) {
    const Json j = Json::parse(Json(x).dump());
    CHECK(j.get<double>() == x);
  }
}
