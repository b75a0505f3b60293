// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "catch_amalgamated.hpp"

#include "genvi/error.hpp"
#include "genvi/operator.hpp"

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

}  // namespace

TEST_CASE("evaluate: examples", "[operators]") {
  CHECK((evaluate(OperatorExpr::identity(2), v({3, -2})) - v({3, -2})).norm() == 0.0);

  Matrix M(2, 2);
  M << 2, 0, 0, 2;
  CHECK((evaluate(OperatorExpr::affine(M, v({1, 0})), v({1, 1})) - v({3, 2})).norm() == 0.0);

  const auto cube = OperatorExpr::compose(OperatorExpr::pointwise(Pointwise::Cube, 2), OperatorExpr::identity(2));
  CHECK((evaluate(cube, v({-2, 0.5})) - v({-8, 0.125})).norm() == 0.0);
}

TEST_CASE("evaluate: every node kind", "[operators]") {
  const Vector x = v({0.5, -1});
  CHECK((evaluate(OperatorExpr::constant(v({7, 8}), 2), x) - v({7, 8})).norm() == 0.0);
  CHECK((evaluate(OperatorExpr::rotation(2, M_PI / 2), v({1, 0})) - v({0, 1})).norm() < 1e-15);
  CHECK((evaluate(OperatorExpr::pointwise(Pointwise::Square, 2), x) - v({0.25, 1})).norm() == 0.0);
  CHECK((evaluate(OperatorExpr::pointwise(Pointwise::Tanh, 2), x) - v({std::tanh(0.5), std::tanh(-1.0)})).norm() == 0.0);
  CHECK(std::abs(evaluate(OperatorExpr::pointwise(Pointwise::Sigmoid, 1), v({0}))(0) - 0.5) == 0.0);
  CHECK((evaluate(OperatorExpr::scale(3, OperatorExpr::identity(2)), x) - v({1.5, -3})).norm() == 0.0);
  const auto I = OperatorExpr::identity(2);
  const auto c = OperatorExpr::constant(v({1, 1}), 2);
  CHECK((evaluate(OperatorExpr::sum(I, c), x) - v({1.5, 0})).norm() == 0.0);
  CHECK((evaluate(OperatorExpr::difference(I, c), x) - v({-0.5, -2})).norm() == 0.0);
}

TEST_CASE("rotation acts in the requested plane", "[operators]") {
  const auto R = OperatorExpr::rotation(3, M_PI / 2, 0, 2);
  CHECK((evaluate(R, v({1, 5, 0})) - v({0, 5, 1})).norm() < 1e-15);
}

TEST_CASE("dimension errors", "[operators]") {
  const auto I2 = OperatorExpr::identity(2);
  CHECK_THROWS_AS(evaluate(I2, v({1, 2, 3})), Error);
  CHECK_THROWS_AS(OperatorExpr::sum(I2, OperatorExpr::identity(3)), Error);
  CHECK_THROWS_AS(OperatorExpr::compose(I2, OperatorExpr::identity(3)), Error);
  CHECK_THROWS_AS(OperatorExpr::affine(Matrix::Identity(2, 2), v({1})), Error);
  CHECK_THROWS_AS(OperatorExpr::rotation(2, 1.0, 0, 0), Error);
}

TEST_CASE("jacobian_fd: examples", "[operators]") {
  Rng rng(1);
  const Matrix M = test_oracles::gaussian(3, 3, rng);
  const auto A = OperatorExpr::affine(M, test_oracles::gaussian(3, rng));
  CHECK((jacobian_fd(A, test_oracles::gaussian(3, rng), 1e-6) - M).cwiseAbs().maxCoeff() < 1e-8);

  const Matrix J = jacobian_fd(OperatorExpr::pointwise(Pointwise::Cube, 1), v({1}), 1e-5);
  CHECK(std::abs(J(0, 0) - 3.0) < 1e-6);

  Matrix R(2, 2);
  R << 0, -1, 1, 0;
  CHECK((jacobian_fd(OperatorExpr::rotation(2, M_PI / 2), v({0.3, -0.7})) - R).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("as_affine folds affine trees", "[operators]") {
  Matrix M(2, 2);
  M << 1, 2, 3, 4;
  const auto A = OperatorExpr::affine(M, v({1, -1}));
  const auto tree = OperatorExpr::difference(OperatorExpr::scale(2, A), OperatorExpr::identity(2));
  const auto aff = tree.as_affine();
  REQUIRE(aff);
  const Vector x = v({0.3, 0.9});
  CHECK((aff->first * x + aff->second - evaluate(tree, x)).norm() < 1e-14);
  CHECK_FALSE(OperatorExpr::pointwise(Pointwise::Cube, 2).as_affine());
  CHECK(OperatorExpr::identity(3).is_identity());
  CHECK_FALSE(A.is_identity());
}

TEST_CASE("lipschitz_bound is an upper bound", "[operators][property]") {
  Rng rng(8);
  const auto A = OperatorExpr::affine(test_oracles::gaussian(2, 2, rng), test_oracles::gaussian(2, rng));
  const auto tree = OperatorExpr::sum(OperatorExpr::compose(OperatorExpr::pointwise(Pointwise::Tanh, 2), A),
                                      OperatorExpr::scale(-0.5, OperatorExpr::rotation(2, 0.3)));
  const auto L = tree.lipschitz_bound();
  REQUIRE(L);
  for (int i = 0; i < 2000; ++i) {
    const Vector x = 2 * test_oracles::gaussian(2, rng);
    const Vector y = 2 * test_oracles::gaussian(2, rng);
    REQUIRE((evaluate(tree, x) - evaluate(tree, y)).norm() <= *L * (x - y).norm() + 1e-12);
  }
  CHECK_FALSE(OperatorExpr::pointwise(Pointwise::Cube, 1).lipschitz_bound());
}

TEST_CASE("evaluation is deterministic", "[operators][property]") {
  Rng rng(2);
  const auto op = OperatorExpr::compose(OperatorExpr::pointwise(Pointwise::Sigmoid, 3),
                                        OperatorExpr::affine(test_oracles::gaussian(3, 3, rng)));
  for (int i = 0; i < 100; ++i) {
    const Vector x = test_oracles::gaussian(3, rng);
    REQUIRE((evaluate(op, x) - evaluate(op, x)).norm() == 0.0);
  }
}

TEST_CASE("pointwise names round-trip", "[operators]") {
  for (auto k : {Pointwise::Cube, Pointwise::Tanh, Pointwise::Sigmoid, Pointwise::Square}) {
    CHECK(pointwise_from_string(to_string(k)) == k);
  }
  CHECK_FALSE(pointwise_from_string("exp"));
}
