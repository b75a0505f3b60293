// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "catch_amalgamated.hpp"

#include "genvi/error.hpp"
#include "genvi/gvi.hpp"
#include "genvi/oracle.hpp"

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

OperatorExpr line(double slope, double shift) {
  return OperatorExpr::affine(Matrix::Constant(1, 1, slope), Vector::Constant(1, shift));
}

const ConvexSet kUnit = ConvexSet::box(v({0}), v({1}));
const ConvexSet kSym = ConvexSet::box(v({-1}), v({1}));
const OperatorExpr kSquare = OperatorExpr::pointwise(Pointwise::Square, 1);

OperatorExpr square_minus_half() {
  return OperatorExpr::sum(kSquare, OperatorExpr::constant(v({-0.5}), 1));
}

}  // namespace

TEST_CASE("selection_b: examples", "[gvi]") {
  const InversionParams inv{};
  Matrix G(2, 2);
  G << 2, 1, 0, 1;
  const auto a = OperatorExpr::affine(G, v({1, -1}));
  const auto K = ConvexSet::box(v({-2, -2}), v({2, 2}));
  const Vector u = v({1.5, 0});
  const Vector x = selection_b(a, K, u, inv);
  CHECK((x - G.inverse() * (u - v({1, -1}))).norm() < 1e-10);

  const Vector c = selection_b(OperatorExpr::pointwise(Pointwise::Cube, 1), kSym, v({0.125}), inv);
  CHECK(std::abs(c(0) - 0.5) < 1e-9);

  const Vector s = selection_b(kSquare, kSym, v({0.25}), inv);
  CHECK(std::abs(std::abs(s(0)) - 0.5) < 1e-9);

  try {
    selection_b(kSquare, kSym, v({2.0}), inv);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InversionFailed);
  }
}

TEST_CASE("reduced operator: examples", "[gvi]") {
  const InversionParams inv{};
  const ReducedOperator F1(OperatorExpr::identity(1), line(2, 0), kUnit, inv);
  CHECK(std::abs(F1(v({1.2}))(0) - 0.6) < 1e-12);

  const ReducedOperator F2(square_minus_half(), kSquare, kSym, inv);
  for (double u : {0.0, 0.3, 0.81, 1.0}) CHECK(std::abs(F2(v({u}))(0) - (u - 0.5)) < 1e-9);

  const auto g = line(2, 0);
  const auto f = line(1, 0.5);
  const ReducedOperator F3(OperatorExpr::difference(g, f), g, kUnit, inv);
  for (double u : {0.0, 0.5, 2.0}) CHECK(std::abs(F3(v({u}))(0) - (u / 2 - 0.5)) < 1e-12);
}

TEST_CASE("GviProblem derives or checks the image", "[gvi]") {
  const GviProblem id(OperatorExpr::identity(2), OperatorExpr::identity(2),
                      ConvexSet::box(v({0, 0}), v({1, 1})));
  CHECK(id.image_derived());
  CHECK(id.image().get_if<Box>() != nullptr);

  const GviProblem scaled(line(1, -1.5), line(2, 0), kUnit);
  CHECK(scaled.image_derived());
  CHECK(contains(scaled.image(), v({2}), 1e-12));
  CHECK_FALSE(contains(scaled.image(), v({2.1}), 1e-9));

  CHECK_THROWS_AS(GviProblem(square_minus_half(), kSquare, kSym), Error);

  const GviProblem wrong(square_minus_half(), kSquare, kSym, ConvexSet::box(v({0}), v({0.5})));
  CHECK(wrong.image_check().violated());
  REQUIRE(wrong.image_check().witness.size() == 1);
  CHECK(wrong.image_check().witness[0](0) * wrong.image_check().witness[0](0) > 0.5);
}

TEST_CASE("solve_gvi: identity reduction matches extragradient", "[gvi]") {
  Matrix M(2, 2);
  M << 2, 1, 1, 2;
  const auto A = OperatorExpr::affine(M, v({-1, -1}));
  const auto K = ConvexSet::box(v({0, 0}), v({1, 1}));
  const GviProblem p(A, OperatorExpr::identity(2), K);
  const auto r = solve_gvi(p);
  const auto direct = solve_extragradient(A, K, SolverParams{});
  CHECK(r.report.converged);
  CHECK((r.report.solution - direct.solution).norm() <= 1e-6);
  CHECK(r.certified(1e-6, 1e-7));
}

TEST_CASE("solve_gvi: scaled 1D instance", "[gvi]") {
  const GviProblem p(line(1, -1.5), line(2, 0), kUnit);
  const auto r = solve_gvi(p);
  REQUIRE(r.report.converged);
  CHECK(std::abs(r.reduced_solution(0) - 2.0) < 1e-9);
  CHECK(std::abs(r.report.solution(0) - 1.0) < 1e-9);
  CHECK(*r.report.gap_certificate >= -1e-6);
  // Frozen from the grid oracle: the minimum over y in [0, 1] of
  // -0.5 (2y - 2) is 0, attained at y = 1.
  CHECK(brute_gap(line(1, -1.5), line(2, 0), kUnit, r.report.solution, 0.001) >= -1e-9);
}

TEST_CASE("solve_gvi: square instance lands on a preimage of 0.5", "[gvi]") {
  const GviProblem p(square_minus_half(), kSquare, kSym, ConvexSet::box(v({0}), v({1})));
  const auto r = solve_gvi(p);
  REQUIRE(r.report.converged);
  CHECK(std::abs(r.reduced_solution(0) - 0.5) < 1e-8);
  CHECK(std::abs(std::abs(r.report.solution(0)) - std::sqrt(0.5)) < 1e-8);
  CHECK(r.pullback_residual <= p.inversion().tol);
  CHECK(brute_gap(square_minus_half(), kSquare, kSym, r.report.solution, 0.001) >= -1e-6);
}

TEST_CASE("gvi_gap: examples", "[gvi]") {
  const auto A = OperatorExpr::identity(1);
  const auto a = OperatorExpr::identity(1);
  CHECK(gvi_gap(A, a, v({0.3}), {v({0.3})}) == 0.0);
  CHECK(gvi_gap(A, a, v({1}), {v({0})}) == -1.0);
  CHECK(gvi_gap(A, a, v({0}), {v({1})}) == 0.0);
}

TEST_CASE("default probes contain the exact linear minimizer", "[gvi]") {
  const GviProblem p(line(1, -1.5), line(2, 0), kUnit);
  // At x = 0.2, A(x) = -1.3 and the minimizing y is the upper bound 1.
  const auto probes = default_probes(p, v({0.2}), 10);
  CHECK(std::abs(gvi_gap(p, v({0.2}), probes) - (-1.3 * 1.6)) < 1e-12);
}

TEST_CASE("complementarity_check: examples", "[gvi]") {
  const auto orthant = ConvexSet::cone({v({1, 0}), v({0, 1})});
  const auto g = OperatorExpr::identity(2);
  CHECK(complementarity_check(OperatorExpr::identity(2), g, orthant, v({0, 0}), 1e-8).ok());

  const auto T = OperatorExpr::affine(Matrix::Identity(2, 2), v({-1, 0}));
  CHECK(complementarity_check(T, g, orthant, v({1, 0}), 1e-8).ok());
  const auto bad = complementarity_check(T, g, orthant, v({0.5, 0}), 1e-8);
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.orthogonal);
  CHECK(std::abs(bad.orthogonality - 0.25) < 1e-15);
  CHECK(bad.g_in_cone);
  // T(u) = (-0.5, 0) has a negative pairing with e1: outside the polar.
  CHECK_FALSE(bad.t_in_polar);
}

TEST_CASE("check_selection_independence: examples", "[gvi]") {
  const InversionParams inv{};
  Matrix G(2, 2);
  G << 1, 2, 0, 1;
  const GviProblem inj(OperatorExpr::identity(2), OperatorExpr::affine(G), ConvexSet::box(v({0, 0}), v({1, 1})));
  const auto r0 = check_selection_independence(inj, v({0.2, 0.4}), inv);
  CHECK_FALSE(r0.report.violated());
  CHECK(r0.preimages.size() == 1);

  const GviProblem even(square_minus_half(), kSquare, kSym, ConvexSet::box(v({0}), v({1})));
  const auto sol = solve_gvi(even);
  const auto r1 = check_selection_independence(even, sol.report.solution, inv);
  CHECK_FALSE(r1.report.violated());
  REQUIRE(r1.preimages.size() == 2);
  CHECK(std::abs(r1.preimages[0](0) + r1.preimages[1](0)) < 1e-8);
  for (double g : r1.gaps) CHECK(g >= -1e-6);

  const GviProblem odd(OperatorExpr::identity(1), kSquare, kSym, ConvexSet::box(v({0}), v({1})));
  const auto r2 = check_selection_independence(odd, v({0.6}), inv);
  REQUIRE(r2.report.violated());
  REQUIRE(r2.report.witness.size() == 2);
  CHECK(std::abs(r2.report.witness[1](0) + 0.6) < 1e-8);
}

TEST_CASE("pullback consistency and gap certification", "[gvi][property]") {
  Rng rng(55);
  for (int trial = 0; trial < 15; ++trial) {
    const int dim = 1 + trial % 3;
    const auto pair = test_oracles::random_relative_pair(dim, true, rng);
    // Strengthen to strict relative monotonicity so the reduced VI is well posed.
    const Matrix M = pair.M + 0.5 * pair.G.inverse().transpose();
    const auto A = OperatorExpr::affine(M, pair.q);
    const auto a = OperatorExpr::affine(pair.G, pair.h);
    const auto K = ConvexSet::box(Vector::Constant(dim, -1), Vector::Ones(dim));
    const GviProblem p(A, a, K);
    const auto r = solve_gvi(p);
    REQUIRE(r.report.converged);
    REQUIRE((a(r.report.solution) - r.reduced_solution).norm() <= p.inversion().tol);
    REQUIRE(brute_gap(A, a, K, r.report.solution, dim == 3 ? 0.1 : 0.02) >= -1e-6);
  }
}

TEST_CASE("monotone reduction on proven relative-monotone pairs", "[gvi][property]") {
  Rng rng(66);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + trial % 3;
    const auto pair = test_oracles::random_relative_pair(dim, true, rng);
    REQUIRE(affine_relative_monotone(pair.M, pair.G).verdict == Verdict::Proven);
    const GviProblem p(OperatorExpr::affine(pair.M, pair.q), OperatorExpr::affine(pair.G, pair.h),
                       ConvexSet::box(Vector::Constant(dim, -1), Vector::Ones(dim)));
    CHECK_FALSE(check_reduced_monotone(p, SampleConfig(trial, 500)).violated());
  }
}
