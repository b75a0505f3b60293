// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/geometry.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace genvi {

enum class Pointwise { Cube, Tanh, Sigmoid, Square };

const char* to_string(Pointwise kind);
std::optional<Pointwise> pointwise_from_string(const std::string& name);

// Immutable expression tree for a map R^in_dim -> R^out_dim. Copies share
// the tree.
class OperatorExpr {
 public:
  enum class Kind {
    Identity,
    Constant,
    Affine,
    Rotation,
    Pointwise,
    Scale,
    Sum,
    Compose,
    Difference
  };

  static OperatorExpr identity(int dim);
  static OperatorExpr constant(Vector value, int in_dim);
  static OperatorExpr affine(Matrix M, Vector q);
  static OperatorExpr affine(Matrix M);
  // Rotation by `angle` radians in the (i, j) coordinate plane of R^dim.
  static OperatorExpr rotation(int dim, double angle, int i = 0, int j = 1);
  static OperatorExpr pointwise(Pointwise kind, int dim);
  static OperatorExpr scale(double s, OperatorExpr inner);
  static OperatorExpr sum(OperatorExpr left, OperatorExpr right);
  static OperatorExpr compose(OperatorExpr outer, OperatorExpr inner);
  static OperatorExpr difference(OperatorExpr left, OperatorExpr right);

  int in_dim() const;
  int out_dim() const;
  Kind kind() const;

  // Unchecked evaluation; see evaluate() for the checked entry point.
  Vector operator()(const Vector& x) const;

  // (M, q) when the whole tree is affine.
  std::optional<std::pair<Matrix, Vector>> as_affine() const;
  bool is_identity() const;
  // Global Lipschitz bound, when one exists for every node in the tree.
  std::optional<double> lipschitz_bound() const;

  // Node payload accessors, used by serialization.
  const Vector& vector_param() const;  // Constant value / Affine q
  const Matrix& matrix_param() const;  // Affine M
  double scalar_param() const;         // Rotation angle / Scale factor
  std::pair<int, int> plane() const;
  Pointwise pointwise_kind() const;
  const OperatorExpr& left() const;  // Sum/Difference left, Compose outer, Scale inner
  const OperatorExpr& right() const;  // Sum/Difference right, Compose inner

 private:
  struct Node;
  explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Vector evaluate(const OperatorExpr& op, const Vector& x);

// Central differences; column i is (op(x + h e_i) - op(x - h e_i)) / 2h.
Matrix jacobian_fd(const OperatorExpr& op, const Vector& x, double h = 1e-6);

// Jacobian used by the Gauss-Newton style solvers: exact for affine trees,
// central differences otherwise.
Matrix jacobian(const OperatorExpr& op, const Vector& x, double h = 1e-6);

}  // namespace genvi
