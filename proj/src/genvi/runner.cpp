// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/runner.hpp"

#include "genvi/coincidence.hpp"
#include "genvi/error.hpp"
#include "genvi/gvi.hpp"
#include "genvi/oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace genvi {

const char* to_string(Command c) {
  switch (c) {
    case Command::Auto: return "demo";
    case Command::SolveVi: return "solve-vi";
    case Command::SolveGvi: return "solve-gvi";
    case Command::FindCoincidence: return "find-coincidence";
    case Command::FindFixedPoint: return "find-fixed-point";
    case Command::Check: return "check";
    case Command::Certify: return "certify";
  }
  return "unknown";
}

std::optional<Command> command_from_string(const std::string& name) {
  for (Command c : {Command::SolveVi, Command::SolveGvi, Command::FindCoincidence,
                    Command::FindFixedPoint, Command::Check, Command::Certify}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// How a hypothesis bears on the existence guarantee: `required` by every
// route, an `alternative` route condition (refuted only when all alternatives
// fail), or a `diagnostic`.
enum class Role { Required, Alternative, Diagnostic };

const char* to_string(Role r) {
  switch (r) {
    case Role::Required: return "required";
    case Role::Alternative: return "alternative";
    case Role::Diagnostic: return "diagnostic";
  }
  return "diagnostic";
}

struct Hypothesis {
  PropertyReport report;
  Role role;
};

bool refuted(const std::vector<Hypothesis>& hs) {
  bool any_alternative = false;
  bool all_alternatives_fail = true;
  for (const auto& h : hs) {
    if (h.role == Role::Required && h.report.violated()) return true;
    if (h.role == Role::Alternative) {
      any_alternative = true;
      all_alternatives_fail = all_alternatives_fail && h.report.violated();
    }
  }
  return any_alternative && all_alternatives_fail;
}

Json hypotheses_json(const std::vector<Hypothesis>& hs) {
  Json out = Json::array();
  for (const auto& h : hs) {
    Json j = genvi::to_json(h.report);
    j["role"] = to_string(h.role);
    j["required"] = h.role == Role::Required;
    out.push_back(std::move(j));
  }
  return out;
}

Json error_json(const Error& e) {
  Json j{{"code", to_string(e.code())}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SchemaError*>(&e)) j["pointer"] = s->pointer();
  return j;
}

std::string fmt_vec(const Vector& v) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v(i));
    os << (i ? ", " : "") << buf;
  }
  os << "]";
  return os.str();
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool is_gvi_like(ProblemKind k) {
  return k == ProblemKind::Gvi || k == ProblemKind::Complementarity;
}

bool is_coincidence_like(ProblemKind k) {
  return k == ProblemKind::Coincidence || k == ProblemKind::FixedPoint;
}

std::optional<Command> resolve(Command c, ProblemKind k) {
  switch (c) {
    case Command::Auto:
      switch (k) {
        case ProblemKind::Vi: return Command::SolveVi;
        case ProblemKind::Gvi:
        case ProblemKind::Complementarity: return Command::SolveGvi;
        case ProblemKind::Coincidence: return Command::FindCoincidence;
        case ProblemKind::FixedPoint: return Command::FindFixedPoint;
      }
      return std::nullopt;
    case Command::SolveVi: return k == ProblemKind::Vi ? std::optional(c) : std::nullopt;
    case Command::SolveGvi:
      return (k == ProblemKind::Vi || is_gvi_like(k)) ? std::optional(c) : std::nullopt;
    case Command::FindCoincidence: return is_coincidence_like(k) ? std::optional(c) : std::nullopt;
    case Command::FindFixedPoint: return k == ProblemKind::FixedPoint ? std::optional(c) : std::nullopt;
    case Command::Check:
    case Command::Certify: return c;
  }
  return std::nullopt;
}

// The (A, a) pair of the general VI the problem reduces to, plus (f, g) for
// coincidence kinds.
struct Reduction {
  OperatorExpr A;
  OperatorExpr a;
  std::optional<std::pair<OperatorExpr, OperatorExpr>> fg;
};

Reduction reduction_of(const ProblemSpec& s) {
  const int d = s.set.dim();
  switch (s.kind) {
    case ProblemKind::Vi: return {s.op("A"), OperatorExpr::identity(d), std::nullopt};
    case ProblemKind::Gvi: return {s.op("A"), s.op("a"), std::nullopt};
    case ProblemKind::Complementarity: return {s.op("T"), s.op("g"), std::nullopt};
    case ProblemKind::Coincidence:
    case ProblemKind::FixedPoint: {
      const OperatorExpr f = s.op("f");
      const OperatorExpr g =
          s.kind == ProblemKind::FixedPoint ? OperatorExpr::identity(d) : s.op("g");
      return {OperatorExpr::difference(g, f), g, std::pair(f, g)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown problem kind");
}

GviTolerances gvi_tolerances(const Tolerances& t) {
  GviTolerances g;
  g.gap = t.gap;
  g.image = t.image;
  g.cache = t.cache;
  return g;
}

// Holds whichever problem object the kind needs.
struct Built {
  std::optional<GviProblem> gvi;
  std::optional<CoincidenceProblem> coincidence;

  const GviProblem& general() const { return coincidence ? coincidence->gvi() : *gvi; }
};

Built build(const ProblemSpec& s, const Reduction& r) {
  Built b;
  if (is_coincidence_like(s.kind)) {
    const auto& [f, g] = *r.fg;
    const std::optional<ConvexSet> image =
        s.kind == ProblemKind::FixedPoint ? std::optional<ConvexSet>(s.set) : s.image_set;
    b.coincidence.emplace(f, g, s.set, image, s.solver, s.inversion, s.tol.coincidence,
                          gvi_tolerances(s.tol));
  } else {
    b.gvi.emplace(r.A, r.a, s.set, s.image_set, s.solver, s.inversion, gvi_tolerances(s.tol));
  }
  return b;
}

PropertyReport relative_monotone(const OperatorExpr& A, const OperatorExpr& a,
                                 const ConvexSet& K, const SampleConfig& cfg,
                                 const char* name) {
  const auto MA = A.as_affine();
  const auto Ma = a.as_affine();
  PropertyReport r;
  if (MA && Ma && MA->first.rows() == MA->first.cols()) {
    r = affine_relative_monotone(MA->first, Ma->first);
  } else {
    r = check_monotone_relative(A, a, K, cfg);
  }
  r.property = name;
  return r;
}

std::vector<Hypothesis> hypotheses(const ProblemSpec& s, const Reduction& r, const Built& b) {
  const SampleConfig cfg(s.seed, s.tol.samples, s.tol.check);
  std::vector<Hypothesis> out;
  if (s.kind == ProblemKind::Vi) {
    out.push_back({relative_monotone(r.A, r.a, s.set, cfg, "monotone"), Role::Diagnostic});
    return out;
  }
  out.push_back({b.general().image_check(), Role::Required});
  if (is_coincidence_like(s.kind)) {
    const auto checks = precheck(*b.coincidence, cfg);
    const Role roles[] = {Role::Required, Role::Alternative, Role::Diagnostic, Role::Alternative};
    for (std::size_t i = 0; i < checks.size(); ++i) out.push_back({checks[i], roles[i]});
    return out;
  }
  const InversionParams& inv = s.inversion;
  out.push_back({relative_monotone(r.A, r.a, s.set, cfg, "relative_monotone"), Role::Alternative});
  out.push_back({check_fiber_condition(r.A, r.a, s.set, cfg, inv), Role::Alternative});
  out.push_back({check_ql(r.a, s.set, cfg), Role::Diagnostic});
  return out;
}

Json oracle_section(const ProblemSpec& s, const Reduction& r, const std::optional<Vector>& x,
                    bool& passed) {
  const double res = s.tol.resolution;
  Json o{{"resolution", res}};
  try {
    if (x) {
      const double gap = brute_gap(r.A, r.a, s.set, *x, res);
      o["gap_at_solution"] = gap;
      passed = gap >= -s.tol.gap;
    }
    OracleCandidate c;
    if (r.fg) {
      c = brute_coincidence(r.fg->first, r.fg->second, s.set, res);
      o["candidate_residual"] = c.value;
      if (!x) passed = c.value <= s.tol.coincidence;
    } else {
      c = brute_vi_solve(r.A, r.a, s.set, res);
      o["candidate_gap"] = c.value;
      if (!x) passed = c.value >= -s.tol.gap;
    }
    o["candidate"] = to_json(c.x);
    o["grid_size"] = c.grid_size;
    if (x) o["distance_to_solution"] = (c.x - *x).norm();
    o["passed"] = passed;
  } catch (const Error& e) {
    // Oracle limits (dimension, grid size) do not block certification.
    o["error"] = error_json(e);
    passed = true;
  }
  return o;
}

struct Outcome {
  Json report;
  std::string status = "failed";
  std::vector<std::string> lines;
};

void solve_into(Command cmd, const ProblemSpec& s, const Reduction& r, const Built& b,
                const RunOptions& opts, Outcome& out, const std::vector<Hypothesis>& hs,
                double& solve_ms, double& oracle_ms) {
  Json& rep = out.report;
  std::optional<Vector> x;
  bool certified = false;
  bool has_solution = false;

  const auto t_solve = Clock::now();
  if (cmd == Command::SolveVi) {
    const OperatorExpr& A = r.A;
    const SolveReport sr = s.solver.method == SolverMethod::Projection
                               ? solve_projection(A, s.set, s.solver, s.start)
                               : solve_extragradient(A, s.set, s.solver, s.start);
    const GviProblem& gp = b.general();
    const double gap = gvi_gap(gp, sr.solution, default_probes(gp, sr.solution));
    x = sr.solution;
    rep["solver"] = {{"method", s.solver.method == SolverMethod::Projection ? "projection" : "extragradient"},
                     {"iterations", sr.iterations},
                     {"converged", sr.converged}};
    if (s.solver.record_history) rep["solver"]["history"] = sr.history;
    rep["residuals"] = {{"natural", sr.residual}, {"gap", gap}};
    certified = sr.converged && gap >= -s.tol.gap;
    out.lines.push_back("natural residual " + fmt_num(sr.residual) + ", gap " + fmt_num(gap) +
                        ", " + std::to_string(sr.iterations) + " iterations" +
                        (sr.converged ? "" : " (not converged)"));
  } else if (cmd == Command::SolveGvi) {
    const GviProblem& gp = b.general();
    const GviReport gr = solve_gvi(gp, s.start);
    x = gr.report.solution;
    rep["solver"] = {{"method", s.solver.method == SolverMethod::Projection ? "projection" : "extragradient"},
                     {"iterations", gr.report.iterations},
                     {"converged", gr.report.converged},
                     {"reduced_solution", to_json(gr.reduced_solution)},
                     {"image_derived", gp.image_derived()}};
    if (s.solver.record_history) rep["solver"]["history"] = gr.report.history;
    rep["residuals"] = {{"natural", gr.report.residual},
                        {"gap", *gr.report.gap_certificate},
                        {"pullback", gr.pullback_residual}};
    certified = gr.certified(s.tol.gap, s.tol.image);
    out.lines.push_back("reduced residual " + fmt_num(gr.report.residual) + ", gap " +
                        fmt_num(*gr.report.gap_certificate) + ", pullback " +
                        fmt_num(gr.pullback_residual) + ", " +
                        std::to_string(gr.report.iterations) + " iterations" +
                        (gr.report.converged ? "" : " (not converged)"));
    if (s.kind == ProblemKind::Complementarity) {
      const ComplementarityReport c =
          complementarity_check(r.A, r.a, *s.cone, *x, s.tol.complementarity);
      rep["complementarity"] = {{"g_in_cone", c.g_in_cone},         {"t_in_polar", c.t_in_polar},
                                {"orthogonal", c.orthogonal},       {"cone_distance", c.cone_distance},
                                {"polar_violation", c.polar_violation},
                                {"orthogonality", c.orthogonality}, {"ok", c.ok()}};
      certified = certified && c.ok();
      out.lines.push_back(std::string("complementarity ") + (c.ok() ? "holds" : "fails") +
                          " (cone distance " + fmt_num(c.cone_distance) + ", polar " +
                          fmt_num(c.polar_violation) + ", orthogonality " +
                          fmt_num(c.orthogonality) + ")");
    }
  } else {
    const CoincidenceProblem& cp = *b.coincidence;
    CoincidenceReport cr;
    try {
      cr = find_coincidence(cp, s.start);
    } catch (const CertificationError& e) {
      cr = e.report();
      rep["error"] = error_json(e);
    }
    x = cr.gvi.report.solution;
    rep["solver"] = {{"method", s.solver.method == SolverMethod::Projection ? "projection" : "extragradient"},
                     {"iterations", cr.gvi.report.iterations},
                     {"converged", cr.gvi.report.converged},
                     {"reduced_solution", to_json(cr.gvi.reduced_solution)},
                     {"image_derived", cp.gvi().image_derived()}};
    rep["residuals"] = {{"natural", cr.gvi.report.residual},
                        {"gap", *cr.gvi.report.gap_certificate},
                        {"pullback", cr.gvi.pullback_residual},
                        {"coincidence", cr.coincidence_residual}};
    if (cr.bridge) {
      const auto& br = *cr.bridge;
      rep["bridge"] = {{"y", to_json(br.y)},       {"delta", br.delta},
                       {"epsilon", br.epsilon},    {"residual_squared", br.residual_squared},
                       {"bound", br.bound},        {"holds", br.holds}};
    }
    certified = cr.certified;
    out.lines.push_back("coincidence residual " + fmt_num(cr.coincidence_residual) + ", gap " +
                        fmt_num(*cr.gvi.report.gap_certificate) + ", " +
                        std::to_string(cr.gvi.report.iterations) + " iterations" +
                        (cr.gvi.report.converged ? "" : " (not converged)"));
  }
  has_solution = x.has_value();
  solve_ms = ms_since(t_solve);
  if (has_solution) rep["solution"] = to_json(*x);

  if (opts.certify) {
    const auto t_oracle = Clock::now();
    bool passed = false;
    rep["oracle"] = oracle_section(s, r, x, passed);
    oracle_ms = ms_since(t_oracle);
    certified = certified && passed;
    if (rep["oracle"].contains("gap_at_solution")) {
      out.lines.push_back("oracle gap " + fmt_num(rep["oracle"]["gap_at_solution"].get<double>()) +
                          " at resolution " + fmt_num(s.tol.resolution));
    }
  }
  if (certified) {
    out.status = "certified";
  } else if (refuted(hs)) {
    out.status = "refuted_hypothesis";
  } else {
    out.status = "solved_uncertified";
  }
}

}  // namespace

Json apply_overrides(const Json& doc, const RunOptions& options) {
  Json out = doc;
  if (!out.is_object() || (!options.tol && !options.resolution)) return out;
  Json& t = out["tolerances"];
  if (!t.is_object()) t = Json::object();
  if (options.tol) {
    t["gap"] = *options.tol;
    t["coincidence"] = *options.tol;
    t["complementarity"] = *options.tol;
  }
  if (options.resolution) t["resolution"] = *options.resolution;
  return out;
}

namespace {

// `syntax` is set when the document text did not parse; it then stands in for
// the schema error parse_problem would have raised.
RunResult run_impl(Command command, const Json& doc, const RunOptions& options,
                   const SchemaError* syntax) {
  const auto t0 = Clock::now();
  const Json echo = apply_overrides(doc, options);
  Outcome out;
  Json& rep = out.report;
  rep["schema"] = kReportSchema;
  rep["command"] = to_string(command);
  rep["problem"] = echo;
  rep["solution"] = nullptr;
  rep["hypothesis_reports"] = Json::array();
  int exit_code = 1;
  std::string title = std::string("genvi ") + to_string(command);

  auto finish = [&]() {
    rep["exit_status"] = out.status;
    rep["timings"]["total_ms"] = ms_since(t0);
    if (!rep["timings"].contains("solve_ms")) rep["timings"]["solve_ms"] = 0.0;
    if (!rep["timings"].contains("checks_ms")) rep["timings"]["checks_ms"] = 0.0;
    if (!rep["timings"].contains("oracle_ms")) rep["timings"]["oracle_ms"] = 0.0;
    std::string summary = title + ": " + out.status + "\n";
    if (!rep["solution"].is_null()) {
      Vector x(static_cast<Eigen::Index>(rep["solution"].size()));
      for (std::size_t i = 0; i < rep["solution"].size(); ++i) {
        x(static_cast<Eigen::Index>(i)) = rep["solution"][i].is_number() ? rep["solution"][i].get<double>() : NAN;
      }
      summary += "  solution " + fmt_vec(x) + "\n";
    }
    for (const auto& l : out.lines) summary += "  " + l + "\n";
    if (rep.contains("error")) summary += "  error: " + rep["error"]["message"].get<std::string>() + "\n";
    return RunResult{rep, exit_code, summary};
  };

  std::optional<ProblemSpec> spec;
  try {
    if (syntax) throw *syntax;
    spec = parse_problem(echo);
  } catch (const SchemaError& e) {
    rep["error"] = error_json(e);
    exit_code = 2;
    return finish();
  }
  if (!spec->name.empty()) title += " [" + spec->name + "]";

  const auto cmd = resolve(command, spec->kind);
  if (!cmd) {
    rep["error"] = {{"code", "Usage"},
                    {"message", std::string("command ") + to_string(command) +
                                    " does not apply to problem kind " + to_string(spec->kind)},
                    {"pointer", "/kind"}};
    exit_code = 2;
    return finish();
  }
  rep["command"] = to_string(*cmd);

  const Reduction red = reduction_of(*spec);
  std::optional<Built> built;
  try {
    built = build(*spec, red);
  } catch (const Error& e) {
    rep["error"] = error_json(e);
    rep["error"]["pointer"] = "/image_set";
    exit_code = 2;
    return finish();
  }

  std::vector<Hypothesis> hs;
  try {
    const auto t_checks = Clock::now();
    hs = hypotheses(*spec, red, *built);
    rep["timings"]["checks_ms"] = ms_since(t_checks);
    rep["hypothesis_reports"] = hypotheses_json(hs);

    if (*cmd == Command::Check) {
      out.status = refuted(hs) ? "refuted_hypothesis" : "certified";
      std::size_t violated = 0;
      for (const auto& h : hs) violated += h.report.violated() ? 1 : 0;
      out.lines.push_back(std::to_string(hs.size()) + " hypothesis checks, " +
                          std::to_string(violated) + " violated");
    } else if (*cmd == Command::Certify) {
      const auto t_oracle = Clock::now();
      bool passed = false;
      rep["oracle"] = oracle_section(*spec, red, std::nullopt, passed);
      rep["timings"]["oracle_ms"] = ms_since(t_oracle);
      if (rep["oracle"].contains("error")) {
        rep["error"] = rep["oracle"]["error"];
        out.status = "failed";
      } else {
        rep["solution"] = rep["oracle"]["candidate"];
        out.status = passed ? "certified" : "solved_uncertified";
      }
    } else {
      double solve_ms = 0.0;
      double oracle_ms = 0.0;
      solve_into(*cmd, *spec, red, *built, options, out, hs, solve_ms, oracle_ms);
      rep["timings"]["solve_ms"] = solve_ms;
      rep["timings"]["oracle_ms"] = oracle_ms;
    }
  } catch (const Error& e) {
    rep["error"] = error_json(e);
    out.status = "failed";
  }
  exit_code = out.status == "certified" ? 0 : 1;
  return finish();
}

}  // namespace

RunResult run(Command command, const Json& doc, const RunOptions& options) {
  return run_impl(command, doc, options, nullptr);
}

RunResult run_text(Command command, const std::string& text, const RunOptions& options) {
  Json doc;
  try {
    doc = parse_json_text(text);
  } catch (const SchemaError& e) {
    return run_impl(command, Json(nullptr), options, &e);
  }
  return run_impl(command, doc, options, nullptr);
}

Json validate_document(const Json& doc) {
  Json d{{"valid", true}, {"errors", Json::array()}, {"warnings", Json::array()}};
  std::optional<ProblemSpec> spec;
  try {
    spec = parse_problem(doc);
  } catch (const SchemaError& e) {
    d["valid"] = false;
    d["errors"].push_back({{"pointer", e.pointer()}, {"message", e.what()}});
    return d;
  }
  try {
    const Reduction red = reduction_of(*spec);
    const Built b = build(*spec, red);
    const PropertyReport& img = b.general().image_check();
    if (img.violated()) {
      Json w = Json::array();
      for (const auto& p : img.witness) w.push_back(to_json(p));
      d["warnings"].push_back({{"pointer", "/image_set"},
                               {"message", "sampled a(x) lies outside the image set by " +
                                               fmt_num(img.max_violation)},
                               {"witness", std::move(w)}});
    }
  } catch (const Error& e) {
    d["valid"] = false;
    d["errors"].push_back({{"pointer", "/image_set"}, {"message", e.what()}});
  }
  return d;
}

}  // namespace genvi
