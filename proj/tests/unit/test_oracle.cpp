// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "catch_amalgamated.hpp"

#include "genvi/error.hpp"
#include "genvi/gvi.hpp"
#include "genvi/oracle.hpp"

#include <algorithm>
#include <cmath>

using namespace genvi;

namespace {

Vector v(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}

OperatorExpr line(double slope, double shift) {
  return OperatorExpr::affine(Matrix::Constant(1, 1, slope), Vector::Constant(1, shift));
}

bool same_points(std::vector<Vector> a, std::vector<Vector> b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    auto it = std::find_if(b.begin(), b.end(), [&](const Vector& q) { return (p - q).norm() < 1e-12; });
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("grid_points: examples", "[oracle]") {
  CHECK(same_points(grid_points(ConvexSet::box(v({0}), v({1})), 0.5), {v({0}), v({0.5}), v({1})}));
  CHECK(same_points(grid_points(ConvexSet::ball(v({0, 0}), 1.0), 1.0),
                    {v({0, 0}), v({1, 0}), v({-1, 0}), v({0, 1}), v({0, -1})}));
  // The standard simplex {x >= 0, x1 + x2 = 1} meets the lattice in three points.
  CHECK(same_points(grid_points(ConvexSet::simplex(2), 0.5), {v({1, 0}), v({0.5, 0.5}), v({0, 1})}));
}

TEST_CASE("grid_points: lexicographic order, last coordinate fastest", "[oracle]") {
  const auto g = grid_points(ConvexSet::box(v({0, 0}), v({1, 1})), 1.0);
  REQUIRE(g.size() == 4);
  CHECK((g[0] - v({0, 0})).norm() == 0.0);
  CHECK((g[1] - v({0, 1})).norm() == 0.0);
  CHECK((g[2] - v({1, 0})).norm() == 0.0);
  CHECK((g[3] - v({1, 1})).norm() == 0.0);
}

TEST_CASE("grid_points: errors", "[oracle]") {
  CHECK(code_of([] { grid_points(ConvexSet::box(Vector::Zero(5), Vector::Ones(5)), 0.5); }) ==
        ErrorCode::DimensionTooLarge);
  CHECK(code_of([] { grid_points(ConvexSet::box(v({0}), v({1})), 2.0); }) == ErrorCode::EmptyGrid);
  CHECK(code_of([] { grid_points(ConvexSet::box(Vector::Zero(4), Vector::Ones(4)), 0.001); }) ==
        ErrorCode::GridTooLarge);
  CHECK(code_of([] { grid_points(ConvexSet::box(v({0}), v({1})), -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("brute_gap: examples", "[oracle]") {
  const auto K = ConvexSet::box(v({0}), v({1}));
  const auto I = OperatorExpr::identity(1);
  CHECK(brute_gap(I, I, K, v({1}), 0.25) == -1.0);
  CHECK(brute_gap(I, I, K, v({0}), 0.25) == 0.0);
  CHECK(brute_gap(line(1, -1.5), line(2, 0), K, v({1}), 0.05) == 0.0);
}

TEST_CASE("brute_vi_solve: examples", "[oracle]") {
  const auto K = ConvexSet::box(v({0, 0}), v({1, 1}));
  const auto c = brute_vi_solve(OperatorExpr::affine(Matrix::Identity(2, 2), v({-0.4, -0.6})),
                                OperatorExpr::identity(2), K, 0.2);
  CHECK((c.x - v({0.4, 0.6})).norm() < 1e-12);
  CHECK(c.value >= -1e-12);

  const auto s = brute_vi_solve(line(1, -1.5), line(2, 0), ConvexSet::box(v({0}), v({1})), 0.05);
  CHECK(std::abs(s.x(0) - 1.0) < 1e-12);
  CHECK(s.value == 0.0);

  Matrix M(2, 2);
  M << 2, 1, 1, 2;
  const auto A = OperatorExpr::affine(M, v({-1, -1}));
  const auto g = brute_vi_solve(A, OperatorExpr::identity(2), K, 0.02);
  const auto eg = solve_extragradient(A, K, SolverParams{});
  CHECK((g.x - eg.solution).norm() <= 0.02);
  CHECK(g.grid_size == 51 * 51);
}

TEST_CASE("brute_coincidence: examples", "[oracle]") {
  const auto K = ConvexSet::box(v({0, 0}), v({1, 1}));
  const auto c = brute_coincidence(OperatorExpr::constant(v({0.25, 0.5}), 2), OperatorExpr::identity(2), K, 0.25);
  CHECK((c.x - v({0.25, 0.5})).norm() < 1e-12);
  CHECK(c.value < 1e-12);

  const auto l = brute_coincidence(line(1, 0.5), line(2, 0), ConvexSet::box(v({0}), v({1})), 0.05);
  CHECK(std::abs(l.x(0) - 0.5) < 1e-12);
  CHECK(l.value < 1e-12);

  // Rotation by pi/3 about the center of the unit disk around (0.5, 0.5).
  const double a = M_PI / 3;
  Matrix R(2, 2);
  R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  const Vector m = v({0.5, 0.5});
  const auto f = OperatorExpr::affine(R, m - R * m);
  const auto r = brute_coincidence(f, OperatorExpr::identity(2), ConvexSet::ball(m, 1.0), 0.1);
  const double bound = 0.1 * (Matrix::Identity(2, 2) - R).norm();
  CHECK(r.value <= bound);
}

TEST_CASE("refutation soundness", "[oracle][property]") {
  // brute_gap and gvi_gap evaluate the same inner products on the same probes.
  const auto K = ConvexSet::box(v({-1, -1}), v({1, 1}));
  const auto A = OperatorExpr::affine((Matrix(2, 2) << 1, 2, -1, 0.5).finished(), v({0.2, -0.3}));
  const auto a = OperatorExpr::pointwise(Pointwise::Cube, 2);
  const auto probes = grid_points(K, 0.1);
  for (const auto& x : {v({0.1, 0.2}), v({-0.7, 0.4}), v({1, -1})}) {
    const double brute = brute_gap(A, a, K, x, 0.1);
    CHECK(std::min(0.0, brute) == gvi_gap(A, a, x, probes));
  }
}

TEST_CASE("halving the resolution never worsens brute_coincidence", "[oracle][property]") {
  const auto K = ConvexSet::box(v({0, 0}), v({1, 1}));
  const auto f = OperatorExpr::compose(OperatorExpr::pointwise(Pointwise::Tanh, 2),
                                       OperatorExpr::affine((Matrix(2, 2) << 0.3, 1, -1, 0.2).finished(), v({0.4, 0.1})));
  const auto g = OperatorExpr::identity(2);
  double last = brute_coincidence(f, g, K, 0.2).value;
  for (double res : {0.1, 0.05, 0.025, 0.0125}) {
    const double now = brute_coincidence(f, g, K, res).value;
    CHECK(now <= last);
    last = now;
  }
}

TEST_CASE("solver and oracle agree on small catalog instances", "[oracle][property]") {
  const auto K1 = ConvexSet::box(v({-1}), v({1}));
  const auto cube = OperatorExpr::pointwise(Pointwise::Cube, 1);
  const auto A = OperatorExpr::sum(cube, OperatorExpr::constant(v({-0.2}), 1));
  const GviProblem p(A, cube, K1, K1);
  const auto r = solve_gvi(p);
  const auto c = brute_vi_solve(A, cube, K1, 0.02);
  CHECK((r.report.solution - c.x).norm() <= 2 * 0.02);
}
