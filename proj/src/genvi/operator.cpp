// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/operator.hpp"

#include "genvi/error.hpp"

#include <cmath>
#include <vector>

namespace genvi {

struct OperatorExpr::Node {
  Kind kind = Kind::Identity;
  int in_dim = 0;
  int out_dim = 0;
  Vector vec;
  Matrix mat;
  double scalar = 0.0;
  int plane_i = 0;
  int plane_j = 1;
  Pointwise pw = Pointwise::Cube;
  std::vector<OperatorExpr> children;
};

const char* to_string(Pointwise kind) {
  switch (kind) {
    case Pointwise::Cube: return "cube";
    case Pointwise::Tanh: return "tanh";
    case Pointwise::Sigmoid: return "sigmoid";
    case Pointwise::Square: return "square";
  }
  return "unknown";
}

std::optional<Pointwise> pointwise_from_string(const std::string& name) {
  if (name == "cube") return Pointwise::Cube;
  if (name == "tanh") return Pointwise::Tanh;
  if (name == "sigmoid") return Pointwise::Sigmoid;
  if (name == "square") return Pointwise::Square;
  return std::nullopt;
}

namespace {

void require_positive_dim(int dim, const char* what) {
  if (dim < 1) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": dimension must be positive");
  }
}

double apply_pointwise(Pointwise kind, double v) {
  switch (kind) {
    case Pointwise::Cube: return v * v * v;
    case Pointwise::Tanh: return std::tanh(v);
    case Pointwise::Sigmoid: return 1.0 / (1.0 + std::exp(-v));
    case Pointwise::Square: return v * v;
  }
  return v;
}

double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

}  // namespace

OperatorExpr OperatorExpr::identity(int dim) {
  require_positive_dim(dim, "identity");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Identity;
  n->in_dim = n->out_dim = dim;
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::constant(Vector value, int in_dim) {
  require_positive_dim(in_dim, "constant");
  require_positive_dim(static_cast<int>(value.size()), "constant");
  if (!value.allFinite()) throw Error(ErrorCode::InvalidArgument, "constant: non-finite value");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->in_dim = in_dim;
  n->out_dim = static_cast<int>(value.size());
  n->vec = std::move(value);
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::affine(Matrix M, Vector q) {
  require_positive_dim(static_cast<int>(M.rows()), "affine");
  require_positive_dim(static_cast<int>(M.cols()), "affine");
  require_dims(M.rows(), q.size(), "affine offset");
  if (!M.allFinite() || !q.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "affine: non-finite coefficients");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Affine;
  n->in_dim = static_cast<int>(M.cols());
  n->out_dim = static_cast<int>(M.rows());
  n->mat = std::move(M);
  n->vec = std::move(q);
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::affine(Matrix M) {
  Vector q = Vector::Zero(M.rows());
  return affine(std::move(M), std::move(q));
}

OperatorExpr OperatorExpr::rotation(int dim, double angle, int i, int j) {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "rotation: needs dimension >= 2");
  if (i < 0 || j < 0 || i >= dim || j >= dim || i == j) {
    throw Error(ErrorCode::InvalidArgument, "rotation: invalid plane indices");
  }
  if (!std::isfinite(angle)) throw Error(ErrorCode::InvalidArgument, "rotation: non-finite angle");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rotation;
  n->in_dim = n->out_dim = dim;
  n->scalar = angle;
  n->plane_i = i;
  n->plane_j = j;
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::pointwise(Pointwise kind, int dim) {
  require_positive_dim(dim, "pointwise");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pointwise;
  n->in_dim = n->out_dim = dim;
  n->pw = kind;
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::scale(double s, OperatorExpr inner) {
  if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "scale: non-finite factor");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->in_dim = inner.in_dim();
  n->out_dim = inner.out_dim();
  n->scalar = s;
  n->children = {std::move(inner)};
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::sum(OperatorExpr left, OperatorExpr right) {
  require_dims(left.in_dim(), right.in_dim(), "sum input");
  require_dims(left.out_dim(), right.out_dim(), "sum output");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->in_dim = left.in_dim();
  n->out_dim = left.out_dim();
  n->children = {std::move(left), std::move(right)};
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::difference(OperatorExpr left, OperatorExpr right) {
  require_dims(left.in_dim(), right.in_dim(), "difference input");
  require_dims(left.out_dim(), right.out_dim(), "difference output");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Difference;
  n->in_dim = left.in_dim();
  n->out_dim = left.out_dim();
  n->children = {std::move(left), std::move(right)};
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::compose(OperatorExpr outer, OperatorExpr inner) {
  require_dims(outer.in_dim(), inner.out_dim(), "compose");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  n->in_dim = inner.in_dim();
  n->out_dim = outer.out_dim();
  n->children = {std::move(outer), std::move(inner)};
  return OperatorExpr(std::move(n));
}

int OperatorExpr::in_dim() const { return node_->in_dim; }
int OperatorExpr::out_dim() const { return node_->out_dim; }
OperatorExpr::Kind OperatorExpr::kind() const { return node_->kind; }
const Vector& OperatorExpr::vector_param() const { return node_->vec; }
const Matrix& OperatorExpr::matrix_param() const { return node_->mat; }
double OperatorExpr::scalar_param() const { return node_->scalar; }
std::pair<int, int> OperatorExpr::plane() const { return {node_->plane_i, node_->plane_j}; }
Pointwise OperatorExpr::pointwise_kind() const { return node_->pw; }
const OperatorExpr& OperatorExpr::left() const { return node_->children.at(0); }
const OperatorExpr& OperatorExpr::right() const { return node_->children.at(1); }

Vector OperatorExpr::operator()(const Vector& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Identity:
      return x;
    case Kind::Constant:
      return n.vec;
    case Kind::Affine:
      return n.mat * x + n.vec;
    case Kind::Rotation: {
      Vector y = x;
      const double c = std::cos(n.scalar);
      const double s = std::sin(n.scalar);
      y(n.plane_i) = c * x(n.plane_i) - s * x(n.plane_j);
      y(n.plane_j) = s * x(n.plane_i) + c * x(n.plane_j);
      return y;
    }
    case Kind::Pointwise:
      return x.unaryExpr([kind = n.pw](double v) { return apply_pointwise(kind, v); });
    case Kind::Scale:
      return n.scalar * n.children[0](x);
    case Kind::Sum:
      return n.children[0](x) + n.children[1](x);
    case Kind::Difference:
      return n.children[0](x) - n.children[1](x);
    case Kind::Compose:
      return n.children[0](n.children[1](x));
  }
  return x;
}

std::optional<std::pair<Matrix, Vector>> OperatorExpr::as_affine() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Identity:
      return std::make_pair(Matrix(Matrix::Identity(n.in_dim, n.in_dim)),
                            Vector(Vector::Zero(n.in_dim)));
    case Kind::Constant:
      return std::make_pair(Matrix(Matrix::Zero(n.out_dim, n.in_dim)), n.vec);
    case Kind::Affine:
      return std::make_pair(n.mat, n.vec);
    case Kind::Rotation: {
      Matrix R = Matrix::Identity(n.in_dim, n.in_dim);
      const double c = std::cos(n.scalar);
      const double s = std::sin(n.scalar);
      R(n.plane_i, n.plane_i) = c;
      R(n.plane_i, n.plane_j) = -s;
      R(n.plane_j, n.plane_i) = s;
      R(n.plane_j, n.plane_j) = c;
      return std::make_pair(R, Vector(Vector::Zero(n.in_dim)));
    }
    case Kind::Pointwise:
      return std::nullopt;
    case Kind::Scale: {
      auto inner = n.children[0].as_affine();
      if (!inner) return std::nullopt;
      return std::make_pair(Matrix(n.scalar * inner->first), Vector(n.scalar * inner->second));
    }
    case Kind::Sum:
    case Kind::Difference: {
      auto l = n.children[0].as_affine();
      auto r = n.children[1].as_affine();
      if (!l || !r) return std::nullopt;
      const double sign = n.kind == Kind::Sum ? 1.0 : -1.0;
      return std::make_pair(Matrix(l->first + sign * r->first),
                            Vector(l->second + sign * r->second));
    }
    case Kind::Compose: {
      auto o = n.children[0].as_affine();
      auto i = n.children[1].as_affine();
      if (!o || !i) return std::nullopt;
      return std::make_pair(Matrix(o->first * i->first),
                            Vector(o->first * i->second + o->second));
    }
  }
  return std::nullopt;
}

bool OperatorExpr::is_identity() const {
  if (node_->kind == Kind::Identity) return true;
  if (in_dim() != out_dim()) return false;
  auto aff = as_affine();
  return aff && aff->first == Matrix::Identity(in_dim(), in_dim()) &&
         aff->second.isZero(0.0);
}

std::optional<double> OperatorExpr::lipschitz_bound() const {
  if (auto aff = as_affine()) return spectral_norm(aff->first);
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Pointwise:
      if (n.pw == Pointwise::Tanh) return 1.0;
      if (n.pw == Pointwise::Sigmoid) return 0.25;
      return std::nullopt;
    case Kind::Scale: {
      auto l = n.children[0].lipschitz_bound();
      if (!l) return std::nullopt;
      return std::abs(n.scalar) * *l;
    }
    case Kind::Sum:
    case Kind::Difference: {
      auto l = n.children[0].lipschitz_bound();
      auto r = n.children[1].lipschitz_bound();
      if (!l || !r) return std::nullopt;
      return *l + *r;
    }
    case Kind::Compose: {
      auto o = n.children[0].lipschitz_bound();
      auto i = n.children[1].lipschitz_bound();
      if (!o || !i) return std::nullopt;
      return *o * *i;
    }
    default:
      return std::nullopt;
  }
}

Vector evaluate(const OperatorExpr& op, const Vector& x) {
  require_dims(op.in_dim(), x.size(), "evaluate");
  if (!x.allFinite()) throw Error(ErrorCode::InvalidArgument, "evaluate: non-finite input");
  return op(x);
}

Matrix jacobian_fd(const OperatorExpr& op, const Vector& x, double h) {
  require_dims(op.in_dim(), x.size(), "jacobian_fd");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "jacobian_fd: step must be positive");
  Matrix J(op.out_dim(), op.in_dim());
  Vector xp = x;
  Vector xm = x;
  for (int i = 0; i < op.in_dim(); ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    J.col(i) = (op(xp) - op(xm)) / (2.0 * h);
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return J;
}

Matrix jacobian(const OperatorExpr& op, const Vector& x, double h) {
  if (auto aff = op.as_affine()) return aff->first;
  return jacobian_fd(op, x, h);
}

}  // namespace genvi
