// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/problem_io.hpp"

#include "genvi/error.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <vector>

namespace genvi {

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Vi: return "vi";
    case ProblemKind::Gvi: return "gvi";
    case ProblemKind::Coincidence: return "coincidence";
    case ProblemKind::FixedPoint: return "fixed_point";
    case ProblemKind::Complementarity: return "complementarity";
  }
  return "unknown";
}

namespace {

std::string escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Tracks which keys of an object were consumed so the rest can be rejected.
class Fields {
 public:
  Fields(const Json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
    if (!j_.is_object()) throw SchemaError(ptr_, "expected an object");
  }

  const Json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& need(const std::string& key) {
    const Json* p = get(key);
    if (!p) throw SchemaError(at(key), "missing required field");
    return *p;
  }

  std::string at(const std::string& key) const { return ptr_ + "/" + escape(key); }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw SchemaError(at(item.key()), "unknown field");
    }
  }

 private:
  const Json& j_;
  std::string ptr_;
  std::set<std::string> seen_;
};

double num(const Json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(ptr, "expected a finite number");
  return v;
}

double positive(const Json& j, const std::string& ptr) {
  const double v = num(j, ptr);
  if (!(v > 0.0)) throw SchemaError(ptr, "expected a positive number");
  return v;
}

long integer(const Json& j, const std::string& ptr, long min_value) {
  if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  const long v = j.get<long>();
  if (v < min_value) throw SchemaError(ptr, "expected an integer >= " + std::to_string(min_value));
  return v;
}

std::string str(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw SchemaError(ptr, "expected a string");
  return j.get<std::string>();
}

bool boolean(const Json& j, const std::string& ptr) {
  if (!j.is_boolean()) throw SchemaError(ptr, "expected a boolean");
  return j.get<bool>();
}

Vector vec(const Json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw SchemaError(ptr, "expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = num(j[i], ptr + "/" + std::to_string(i));
  }
  return v;
}

Matrix mat(const Json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw SchemaError(ptr, "expected a non-empty array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vec(j[i], ptr + "/" + std::to_string(i)));
    if (rows.back().size() != rows.front().size()) {
      throw SchemaError(ptr + "/" + std::to_string(i), "row length differs from the first row");
    }
  }
  Matrix M(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) M.row(static_cast<Eigen::Index>(i)) = rows[i];
  return M;
}

template <class F>
auto wrap(const std::string& ptr, F&& build) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(ptr, e.what());
  }
}

void require_op_dims(const OperatorExpr& op, int in, int out, const std::string& ptr) {
  if (op.in_dim() != in || op.out_dim() != out) {
    throw SchemaError(ptr, "operator maps R^" + std::to_string(op.in_dim()) + " to R^" +
                               std::to_string(op.out_dim()) + ", expected R^" +
                               std::to_string(in) + " to R^" + std::to_string(out));
  }
}

SolverParams parse_solver(const Json& j, const std::string& ptr, double proj_tol) {
  SolverParams p;
  p.projection.tol = proj_tol;
  Fields f(j, ptr);
  if (const Json* m = f.get("method")) {
    const std::string s = str(*m, f.at("method"));
    if (s == "projection") {
      p.method = SolverMethod::Projection;
    } else if (s == "extragradient") {
      p.method = SolverMethod::Extragradient;
    } else {
      throw SchemaError(f.at("method"), "expected \"projection\" or \"extragradient\"");
    }
  }
  if (const Json* v = f.get("step")) p.step = positive(*v, f.at("step"));
  if (const Json* v = f.get("max_iter")) p.max_iter = static_cast<int>(integer(*v, f.at("max_iter"), 1));
  if (const Json* v = f.get("residual_tol")) p.residual_tol = positive(*v, f.at("residual_tol"));
  if (const Json* v = f.get("record_history")) p.record_history = boolean(*v, f.at("record_history"));
  if (const Json* v = f.get("step_rule")) {
    Fields r(*v, f.at("step_rule"));
    const std::string type = str(r.need("type"), r.at("type"));
    StepRule rule;
    if (type == "fixed") {
      rule.kind = StepRule::Kind::Fixed;
    } else if (type == "backtracking") {
      rule.kind = StepRule::Kind::Backtracking;
      if (const Json* b = r.get("beta")) {
        rule.beta = num(*b, r.at("beta"));
        if (!(rule.beta > 0.0 && rule.beta < 1.0)) throw SchemaError(r.at("beta"), "beta must lie in (0, 1)");
      }
      if (const Json* t = r.get("trial_cap")) rule.trial_cap = static_cast<int>(integer(*t, r.at("trial_cap"), 1));
    } else {
      throw SchemaError(r.at("type"), "expected \"fixed\" or \"backtracking\"");
    }
    r.finish();
    p.step_rule = rule;
  }
  f.finish();
  return p;
}

InversionParams parse_inversion(const Json& j, const std::string& ptr) {
  InversionParams p;
  Fields f(j, ptr);
  if (const Json* v = f.get("tol")) p.tol = positive(*v, f.at("tol"));
  if (const Json* v = f.get("max_iter")) p.max_iter = static_cast<int>(integer(*v, f.at("max_iter"), 1));
  if (const Json* v = f.get("multistart")) p.multistart = static_cast<int>(integer(*v, f.at("multistart"), 1));
  if (const Json* v = f.get("step_control")) {
    p.step_control = num(*v, f.at("step_control"));
    if (!(p.step_control > 0.0 && p.step_control <= 1.0)) {
      throw SchemaError(f.at("step_control"), "step_control must lie in (0, 1]");
    }
  }
  f.finish();
  return p;
}

Tolerances parse_tolerances(const Json& j, const std::string& ptr) {
  Tolerances t;
  Fields f(j, ptr);
  const std::pair<const char*, double*> reals[] = {
      {"gap", &t.gap},       {"coincidence", &t.coincidence},
      {"image", &t.image},   {"cache", &t.cache},
      {"complementarity", &t.complementarity},
      {"check", &t.check},   {"proj", &t.proj},
      {"resolution", &t.resolution},
  };
  for (const auto& [key, dst] : reals) {
    if (const Json* v = f.get(key)) *dst = positive(*v, f.at(key));
  }
  if (const Json* v = f.get("samples")) t.samples = static_cast<int>(integer(*v, f.at("samples"), 1));
  f.finish();
  return t;
}

ProblemKind parse_kind(const Json& j, const std::string& ptr) {
  const std::string s = str(j, ptr);
  for (ProblemKind k : {ProblemKind::Vi, ProblemKind::Gvi, ProblemKind::Coincidence,
                        ProblemKind::FixedPoint, ProblemKind::Complementarity}) {
    if (s == to_string(k)) return k;
  }
  throw SchemaError(ptr, "unknown problem kind \"" + s + "\"");
}

std::vector<std::string> operator_keys(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Vi: return {"A"};
    case ProblemKind::Gvi: return {"A", "a"};
    case ProblemKind::Coincidence: return {"f", "g"};
    case ProblemKind::FixedPoint: return {"f"};
    case ProblemKind::Complementarity: return {"T", "g"};
  }
  return {};
}

}  // namespace

OperatorExpr parse_operator(const Json& j, const std::string& ptr) {
  Fields f(j, ptr);
  const std::string op = str(f.need("op"), f.at("op"));
  auto dim = [&](const char* key) { return static_cast<int>(integer(f.need(key), f.at(key), 1)); };
  auto sub = [&](const char* key) { return parse_operator(f.need(key), f.at(key)); };

  OperatorExpr out = wrap(ptr, [&]() -> OperatorExpr {
    if (op == "identity") return OperatorExpr::identity(dim("dim"));
    if (op == "constant") {
      return OperatorExpr::constant(vec(f.need("value"), f.at("value")), dim("in_dim"));
    }
    if (op == "affine") {
      Matrix M = mat(f.need("M"), f.at("M"));
      if (const Json* q = f.get("q")) return OperatorExpr::affine(std::move(M), vec(*q, f.at("q")));
      return OperatorExpr::affine(std::move(M));
    }
    if (op == "rotation") {
      const int d = dim("dim");
      const double angle = num(f.need("angle"), f.at("angle"));
      int i = 0;
      int k = 1;
      if (const Json* pl = f.get("plane")) {
        if (!pl->is_array() || pl->size() != 2) throw SchemaError(f.at("plane"), "expected [i, j]");
        i = static_cast<int>(integer((*pl)[0], f.at("plane") + "/0", 0));
        k = static_cast<int>(integer((*pl)[1], f.at("plane") + "/1", 0));
      }
      return OperatorExpr::rotation(d, angle, i, k);
    }
    if (op == "pointwise") {
      const std::string kind = str(f.need("kind"), f.at("kind"));
      const auto pw = pointwise_from_string(kind);
      if (!pw) throw SchemaError(f.at("kind"), "unknown pointwise kind \"" + kind + "\"");
      return OperatorExpr::pointwise(*pw, dim("dim"));
    }
    if (op == "scale") return OperatorExpr::scale(num(f.need("s"), f.at("s")), sub("inner"));
    if (op == "sum") return OperatorExpr::sum(sub("left"), sub("right"));
    if (op == "difference") return OperatorExpr::difference(sub("left"), sub("right"));
    if (op == "compose") return OperatorExpr::compose(sub("outer"), sub("inner"));
    throw SchemaError(f.at("op"), "unknown operator \"" + op + "\"");
  });
  f.finish();
  return out;
}

ConvexSet parse_set(const Json& j, const std::string& ptr) {
  Fields f(j, ptr);
  const std::string type = str(f.need("type"), f.at("type"));
  ConvexSet out = wrap(ptr, [&]() -> ConvexSet {
    if (type == "box") {
      return ConvexSet::box(vec(f.need("lower"), f.at("lower")), vec(f.need("upper"), f.at("upper")));
    }
    if (type == "ball") {
      return ConvexSet::ball(vec(f.need("center"), f.at("center")),
                             positive(f.need("radius"), f.at("radius")));
    }
    if (type == "simplex") {
      return ConvexSet::simplex(static_cast<int>(integer(f.need("dim"), f.at("dim"), 1)));
    }
    if (type == "hpolytope") {
      return ConvexSet::hpolytope(mat(f.need("normals"), f.at("normals")),
                                  vec(f.need("offsets"), f.at("offsets")));
    }
    if (type == "cone") {
      const Json& g = f.need("generators");
      const Matrix G = mat(g, f.at("generators"));
      std::vector<Vector> gens;
      for (Eigen::Index i = 0; i < G.rows(); ++i) gens.emplace_back(G.row(i).transpose());
      return ConvexSet::cone(std::move(gens));
    }
    throw SchemaError(f.at("type"), "unknown set type \"" + type + "\"");
  });
  f.finish();
  return out;
}

ProblemSpec parse_problem(const Json& doc) {
  Fields f(doc, "");
  const std::string version = str(f.need("version"), f.at("version"));
  if (version != kProblemSchema) {
    throw SchemaError(f.at("version"), "unsupported version \"" + version + "\", expected \"" +
                                           kProblemSchema + "\"");
  }
  const ProblemKind kind = parse_kind(f.need("kind"), f.at("kind"));

  std::string name;
  std::string description;
  if (const Json* v = f.get("name")) name = str(*v, f.at("name"));
  if (const Json* v = f.get("description")) description = str(*v, f.at("description"));

  const Json& seed_json = f.need("seed");
  if (!seed_json.is_number_unsigned()) {
    throw SchemaError(f.at("seed"), "expected a nonnegative integer");
  }
  const auto seed = seed_json.get<std::uint64_t>();

  Tolerances tol;
  if (const Json* v = f.get("tolerances")) tol = parse_tolerances(*v, f.at("tolerances"));

  const ConvexSet set = parse_set(f.need("set"), f.at("set"));
  if (!set.is_compact()) throw SchemaError(f.at("set"), "the feasible set must be compact");
  const int d = set.dim();

  const Json& ops = f.need("operators");
  Fields of(ops, f.at("operators"));
  std::map<std::string, OperatorExpr> operators;
  for (const auto& key : operator_keys(kind)) {
    const Json* oj = of.get(key);
    if (!oj) {
      throw SchemaError(of.at(key), std::string("missing required operator \"") + key +
                                        "\" for kind " + to_string(kind));
    }
    operators.emplace(key, parse_operator(*oj, of.at(key)));
  }
  of.finish();

  std::optional<ConvexSet> image_set;
  if (const Json* v = f.get("image_set")) {
    if (kind == ProblemKind::Vi || kind == ProblemKind::FixedPoint) {
      throw SchemaError(f.at("image_set"), std::string("not allowed for kind ") + to_string(kind));
    }
    image_set = parse_set(*v, f.at("image_set"));
    if (!image_set->is_compact()) throw SchemaError(f.at("image_set"), "the image set must be compact");
  }
  std::optional<ConvexSet> cone;
  if (const Json* v = f.get("cone")) {
    if (kind != ProblemKind::Complementarity) {
      throw SchemaError(f.at("cone"), std::string("not allowed for kind ") + to_string(kind));
    }
    cone = parse_set(*v, f.at("cone"));
    if (!cone->get_if<PolyhedralCone>()) throw SchemaError(f.at("cone"), "expected a set of type cone");
  } else if (kind == ProblemKind::Complementarity) {
    throw SchemaError(f.at("cone"), "missing required field for kind complementarity");
  }

  // Operator shapes per kind.
  const std::string opp = f.at("operators");
  switch (kind) {
    case ProblemKind::Vi:
      require_op_dims(operators.at("A"), d, d, opp + "/A");
      break;
    case ProblemKind::FixedPoint:
      require_op_dims(operators.at("f"), d, d, opp + "/f");
      break;
    case ProblemKind::Gvi:
    case ProblemKind::Coincidence:
    case ProblemKind::Complementarity: {
      const auto keys = operator_keys(kind);
      const std::string& second = keys[1];
      const int m = operators.at(second).out_dim();
      require_op_dims(operators.at(second), d, m, opp + "/" + second);
      require_op_dims(operators.at(keys[0]), d, m, opp + "/" + keys[0]);
      if (image_set && image_set->dim() != m) {
        throw SchemaError(f.at("image_set"), "dimension " + std::to_string(image_set->dim()) +
                                                 " does not match the operator codomain " +
                                                 std::to_string(m));
      }
      if (cone && cone->dim() != m) {
        throw SchemaError(f.at("cone"), "dimension " + std::to_string(cone->dim()) +
                                            " does not match the operator codomain " +
                                            std::to_string(m));
      }
      break;
    }
  }

  std::optional<Vector> start;
  if (const Json* v = f.get("start")) {
    start = vec(*v, f.at("start"));
    if (start->size() != d) throw SchemaError(f.at("start"), "dimension does not match the set");
  }

  SolverParams solver;
  solver.projection.tol = tol.proj;
  if (const Json* v = f.get("solver")) solver = parse_solver(*v, f.at("solver"), tol.proj);
  InversionParams inversion;
  if (const Json* v = f.get("inversion")) inversion = parse_inversion(*v, f.at("inversion"));
  inversion.seed = seed;
  f.finish();

  return ProblemSpec{kind,        std::move(name), std::move(description), std::move(operators),
                     set,         image_set,       cone,                   start,
                     solver,      inversion,       seed,                   tol};
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_or_null(v(i)));
  return out;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const PropertyReport& r) {
  Json w = Json::array();
  for (const auto& p : r.witness) w.push_back(to_json(p));
  return Json{{"property", r.property},
              {"verdict", to_string(r.verdict)},
              {"samples_used", r.samples_used},
              {"max_violation", number_or_null(r.max_violation)},
              {"witness", std::move(w)}};
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace genvi
