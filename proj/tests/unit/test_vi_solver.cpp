// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "catch_amalgamated.hpp"

#include "genvi/error.hpp"
#include "genvi/oracle.hpp"
#include "genvi/vi_solver.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace genvi;

namespace {

Vector v(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}

const ConvexSet kUnitSquare = ConvexSet::box(v({0, 0}), v({1, 1}));

OperatorExpr shift_field(const Vector& c) {
  return OperatorExpr::affine(Matrix::Identity(c.size(), c.size()), -c);
}

}  // namespace

TEST_CASE("natural_residual: examples", "[vi]") {
  const Vector c = v({2, -1});
  CHECK(natural_residual(shift_field(c), kUnitSquare, project(kUnitSquare, c), 1.0) <= 1e-10);
  CHECK(natural_residual(OperatorExpr::rotation(2, M_PI / 2), ConvexSet::ball(v({0, 0}), 1.0), v({0, 0})) == 0.0);
  CHECK(std::abs(natural_residual(shift_field(c), kUnitSquare, v({0, 0}), 1.0) - 1.0) < 1e-15);
}

TEST_CASE("solve_projection: examples", "[vi]") {
  SolverParams p;
  p.method = SolverMethod::Projection;
  p.step = 1.0;
  const auto r = solve_projection(shift_field(v({2, -1})), kUnitSquare, p);
  CHECK(r.converged);
  CHECK(r.iterations <= 2);
  CHECK((r.solution - v({1, 0})).norm() == 0.0);

  p.step = 0.5;
  const auto z = solve_projection(OperatorExpr::identity(2), ConvexSet::ball(v({0, 0}), 1.0), p, v({0.5, 0.5}));
  CHECK(z.converged);
  CHECK(z.solution.norm() < 1e-8);

  SolverParams rot;
  rot.method = SolverMethod::Projection;
  rot.max_iter = 5000;
  const auto fail = solve_projection(OperatorExpr::rotation(2, M_PI / 2), ConvexSet::ball(v({0, 0}), 1.0), rot,
                                     v({0.9, 0}));
  CHECK_FALSE(fail.converged);
  CHECK(fail.iterations == 5000);
}

TEST_CASE("solve_extragradient: examples", "[vi]") {
  const auto disk = ConvexSet::ball(v({0, 0}), 1.0);
  const auto r = solve_extragradient(OperatorExpr::rotation(2, M_PI / 2), disk, SolverParams{}, v({0.9, 0}));
  CHECK(r.converged);
  CHECK(r.residual <= 1e-8);
  CHECK(r.solution.norm() <= 1e-8);
  // Frozen from an oracle grid run: the gap at the solution is -|x| on the disk.
  CHECK(brute_gap(OperatorExpr::rotation(2, M_PI / 2), OperatorExpr::identity(2), disk, r.solution, 0.05) >= -1e-8);

  const Vector c = v({2, -1});
  SolverParams pp;
  pp.method = SolverMethod::Projection;
  const auto a = solve_extragradient(shift_field(c), kUnitSquare, SolverParams{});
  const auto b = solve_projection(shift_field(c), kUnitSquare, pp);
  CHECK((a.solution - b.solution).norm() <= 1e-8);

  Matrix M(2, 2);
  M << 2, 1, 1, 2;
  const auto F = OperatorExpr::affine(M, v({-1, -1}));
  const auto eg = solve_extragradient(F, kUnitSquare, SolverParams{});
  const auto grid = brute_vi_solve(F, OperatorExpr::identity(2), kUnitSquare, 0.02);
  CHECK((eg.solution - v({1.0 / 3, 1.0 / 3})).norm() < 1e-7);
  CHECK((eg.solution - grid.x).norm() <= 0.02 * std::sqrt(2.0));
}

TEST_CASE("backtracking without a Lipschitz bound", "[vi]") {
  // tanh composed with an affine map is Lipschitz but the field is given as a
  // plain function, so the solver must backtrack.
  Matrix M(2, 2);
  M << 3, 1, -1, 3;
  const OperatorExpr A = OperatorExpr::affine(M, v({-1, 0.5}));
  const VectorField F = [&](const Vector& x) { return A(x); };
  const auto r = solve_extragradient(F, std::nullopt, kUnitSquare, SolverParams{});
  CHECK(r.converged);
  const auto expected = test_oracles::box_vi_by_enumeration(M, v({-1, 0.5}), v({0, 0}), v({1, 1}));
  REQUIRE(expected);
  CHECK((r.solution - *expected).norm() < 1e-7);
}

TEST_CASE("solver report invariants", "[vi][property]") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 1 + trial % 4;
    const auto inst = test_oracles::random_strongly_monotone_box_vi(dim, rng);
    const auto F = OperatorExpr::affine(inst.M, inst.q);
    SolverParams eg;
    eg.record_history = true;
    SolverParams pm;
    pm.method = SolverMethod::Projection;
    const auto a = solve_extragradient(F, inst.K, eg);
    const auto b = solve_projection(F, inst.K, pm);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    // Feasibility.
    REQUIRE(contains(inst.K, a.solution, 1e-9));
    // Residual soundness.
    REQUIRE(std::abs(natural_residual(F, inst.K, a.solution) - a.residual) <= 1e-12);
    REQUIRE(a.residual <= eg.residual_tol);
    REQUIRE(a.history.size() == static_cast<std::size_t>(a.iterations) + 1);
    // Solver agreement and the enumeration oracle.
    REQUIRE((a.solution - b.solution).norm() <= 1e-6);
    REQUIRE((a.solution - inst.solution).norm() <= 1e-6);
  }
}

TEST_CASE("extragradient distance to the solution does not increase", "[vi][property]") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + trial % 4;
    const auto inst = test_oracles::random_strongly_monotone_box_vi(dim, rng);
    const auto F = OperatorExpr::affine(inst.M, inst.q);
    SolverParams p;
    p.step = 0.9 / *F.lipschitz_bound();
    p.step_rule = StepRule{StepRule::Kind::Fixed};
    double last = (project(inst.K, Vector::Zero(dim)) - inst.solution).norm();
    bool monotone = true;
    solve_extragradient(F, inst.K, p, std::nullopt, [&](int, const Vector& x) {
      const double d = (x - inst.solution).norm();
      if (d > last + 1e-9) monotone = false;
      last = d;
    });
    REQUIRE(monotone);
  }
}

TEST_CASE("merely monotone skew instance converges under extragradient", "[vi][property]") {
  // Skew-symmetric M: monotone, not strongly. The solutions are the kernel
  // line of M inside the box, a segment through 0.
  Matrix M(3, 3);
  M << 0, 1, -2, -1, 0, 0.5, 2, -0.5, 0;
  const auto K = ConvexSet::box(Vector::Constant(3, -1), Vector::Ones(3));
  const auto r = solve_extragradient(OperatorExpr::affine(M), K, SolverParams{}, v({0.7, -0.2, 0.4}));
  CHECK(r.converged);
  CHECK(contains(K, r.solution, 1e-9));
  CHECK((M * r.solution).norm() < 1e-6);
  CHECK(natural_residual(OperatorExpr::affine(M), K, r.solution) <= 1e-8);
}

TEST_CASE("parameter validation", "[vi]") {
  SolverParams p;
  p.step = -1.0;
  CHECK_THROWS_AS(solve_extragradient(OperatorExpr::identity(2), kUnitSquare, p), Error);
  SolverParams q;
  q.step_rule = StepRule{StepRule::Kind::Backtracking, 1.5, 30};
  CHECK_THROWS_AS(solve_extragradient(OperatorExpr::identity(2), kUnitSquare, q), Error);
  CHECK_THROWS_AS(solve_extragradient(OperatorExpr::identity(2), ConvexSet::cone({v({1, 0})}), SolverParams{}),
                  Error);
  CHECK_THROWS_AS(solve_extragradient(OperatorExpr::identity(3), kUnitSquare, SolverParams{}), Error);
}
