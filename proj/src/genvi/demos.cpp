// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/demos.hpp"

#include <cmath>
#include <initializer_list>

namespace genvi {

namespace {

Json vec(std::initializer_list<double> xs) { return Json(std::vector<double>(xs)); }

Json mat(std::initializer_list<std::initializer_list<double>> rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(vec(r));
  return out;
}

Json box(Json lower, Json upper) {
  return {{"type", "box"}, {"lower", std::move(lower)}, {"upper", std::move(upper)}};
}

Json affine(Json M, Json q) { return {{"op", "affine"}, {"M", std::move(M)}, {"q", std::move(q)}}; }
Json linear(Json M) { return {{"op", "affine"}, {"M", std::move(M)}}; }
Json identity(int dim) { return {{"op", "identity"}, {"dim", dim}}; }
Json pointwise(const char* kind, int dim) { return {{"op", "pointwise"}, {"kind", kind}, {"dim", dim}}; }

Json shifted(Json inner, Json c) {
  return {{"op", "sum"},
          {"left", std::move(inner)},
          {"right", {{"op", "constant"}, {"value", std::move(c)}, {"in_dim", 1}}}};
}

Json problem(const char* name, const char* description, const char* kind, std::uint64_t seed,
             Json operators, Json set) {
  return {{"version", kProblemSchema}, {"name", name},           {"description", description},
          {"kind", kind},              {"seed", seed},           {"operators", std::move(operators)},
          {"set", std::move(set)}};
}

std::vector<Demo> build_catalog() {
  std::vector<Demo> out;
  auto add = [&](Json p) {
    out.push_back({p["name"].get<std::string>(), p["description"].get<std::string>(), std::move(p)});
  };

  {
    Json p = problem("box-projection", "F(x) = x - (2, -1) on the unit square; the solution is the projection (1, 0)",
                     "vi", 1, {{"A", affine(mat({{1, 0}, {0, 1}}), vec({-2, 1}))}},
                     box(vec({0, 0}), vec({1, 1})));
    p["solver"] = {{"method", "projection"}, {"step", 1.0}};
    add(std::move(p));
  }
  {
    Json p = problem("rotation-field",
                     "Skew field x -> R(pi/2) x on the unit disk; extragradient converges to 0",
                     "vi", 2, {{"A", {{"op", "rotation"}, {"dim", 2}, {"angle", M_PI / 2}}}},
                     {{"type", "ball"}, {"center", vec({0, 0})}, {"radius", 1.0}});
    p["start"] = vec({0.9, 0});
    add(std::move(p));
  }
  add(problem("identity-reduction",
              "General VI with a = identity, i.e. a Stampacchia VI; solution (1/3, 1/3)", "gvi", 3,
              {{"A", affine(mat({{2, 1}, {1, 2}}), vec({-1, -1}))}, {"a", identity(2)}},
              box(vec({0, 0}), vec({1, 1}))));
  add(problem("scaled-gvi", "A(x) = x - 1.5, a(x) = 2x on [0, 1]; solution x = 1", "gvi", 4,
              {{"A", affine(mat({{1}}), vec({-1.5}))}, {"a", linear(mat({{2}}))}},
              box(vec({0}), vec({1}))));
  {
    Json p = problem("nonlinear-gvi",
                     "A(x) = x^3 - 0.2, a(x) = x^3 on [-1, 1]; solution x = 0.2^(1/3)", "gvi", 5,
                     {{"A", shifted(pointwise("cube", 1), vec({-0.2}))}, {"a", pointwise("cube", 1)}},
                     box(vec({-1}), vec({1})));
    p["image_set"] = box(vec({-1}), vec({1}));
    add(std::move(p));
  }
  {
    // G = [[1, 3], [0, 1]] and M = G^{-T}: M^T G = I, while sym(M) is indefinite.
    add(problem("relative-monotone-gvi",
                "Affine A not monotone but monotone relative to an affine a on the unit square",
                "gvi", 6,
                {{"A", affine(mat({{1, 0}, {-3, 1}}), vec({-1, 0.5}))},
                 {"a", linear(mat({{1, 3}, {0, 1}}))}},
                box(vec({0, 0}), vec({1, 1}))));
  }
  {
    Json p = problem("fiber-condition",
                     "A(x) = x^2 - 0.5, a(x) = x^2 on [-1, 1]; both preimages +-sqrt(0.5) solve it",
                     "gvi", 7,
                     {{"A", shifted(pointwise("square", 1), vec({-0.5}))}, {"a", pointwise("square", 1)}},
                     box(vec({-1}), vec({1})));
    p["image_set"] = box(vec({0}), vec({1}));
    add(std::move(p));
  }
  {
    Json A = {{"op", "sum"},
              {"left", pointwise("cube", 2)},
              {"right", {{"op", "constant"}, {"value", vec({-0.2, 0.4})}, {"in_dim", 2}}}};
    Json p = problem("non-ql",
                     "Componentwise cube a on [-1, 1]^2 is not of type ql, yet the general VI is solved",
                     "gvi", 8, {{"A", std::move(A)}, {"a", pointwise("cube", 2)}},
                     box(vec({-1, -1}), vec({1, 1})));
    p["image_set"] = box(vec({-1, -1}), vec({1, 1}));
    add(std::move(p));
  }
  add(problem("linear-coincidence", "f(x) = x + 0.5, g(x) = 2x on [0, 1]; coincidence at 0.5",
              "coincidence", 9,
              {{"f", affine(mat({{1}}), vec({0.5}))}, {"g", linear(mat({{2}}))}},
              box(vec({0}), vec({1}))));
  add(problem("constant-coincidence", "Constant f = (0.3, 0.6), g = identity on the unit square",
              "coincidence", 10,
              {{"f", {{"op", "constant"}, {"value", vec({0.3, 0.6})}, {"in_dim", 2}}},
               {"g", identity(2)}},
              box(vec({0, 0}), vec({1, 1}))));
  add(problem("coincidence-inequality",
              "g(x) = 2x and f a contracted rotation plus shift; |g(x)-g(y)|^2 >= <f(x)-f(y), g(x)-g(y)>",
              "coincidence", 11,
              {{"f", affine(mat({{0, -0.5}, {0.5, 0}}), vec({1, 0.75}))},
               {"g", linear(mat({{2, 0}, {0, 2}}))}},
              box(vec({0, 0}), vec({1, 1}))));
  add(problem("fixed-point", "f(x) = (x + 1) / 2 on [0, 1]; fixed point 1", "fixed_point", 12,
              {{"f", affine(mat({{0.5}}), vec({0.5}))}}, box(vec({0}), vec({1}))));
  {
    const double c = std::cos(M_PI / 3);
    const double s = std::sin(M_PI / 3);
    const double m0 = 0.5;
    const double m1 = 0.5;
    // f(x) = m + R (x - m), written as R x + (m - R m).
    Json q = vec({m0 - (c * m0 - s * m1), m1 - (s * m0 + c * m1)});
    add(problem("rotation-coincidence",
                "Rotation by pi/3 about the center of a disk, g = identity; coincidence at the center",
                "coincidence", 13,
                {{"f", affine(mat({{c, -s}, {s, c}}), std::move(q))}, {"g", identity(2)}},
                {{"type", "ball"}, {"center", vec({m0, m1})}, {"radius", 1.0}}));
  }
  {
    Json p = problem("lcp-complementarity",
                     "LCP with M = [[2, 1], [1, 2]], q = (-2, 1) over the nonnegative orthant, truncated to [0, 3]^2",
                     "complementarity", 14,
                     {{"T", affine(mat({{2, 1}, {1, 2}}), vec({-2, 1}))}, {"g", identity(2)}},
                     box(vec({0, 0}), vec({3, 3})));
    p["cone"] = {{"type", "cone"}, {"generators", mat({{1, 0}, {0, 1}})}};
    p["solver"] = {{"residual_tol", 1e-12}};
    add(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<Demo>& demo_catalog() {
  static const std::vector<Demo> catalog = build_catalog();
  return catalog;
}

std::optional<Json> demo_problem(const std::string& name) {
  for (const auto& d : demo_catalog()) {
    if (d.name == name) return d.problem;
  }
  return std::nullopt;
}

}  // namespace genvi
