// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace genvi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline constexpr int kVertexEnumMaxDim = 6;
inline constexpr double kVertexDedupTol = 1e-9;

struct ProjectionOptions {
  double tol = 1e-10;
  int max_iter = 100000;
};

struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

// Standard unit simplex {x >= 0, sum(x) = 1}.
struct Simplex {
  int dim = 1;
};

// <normal, x> <= offset. Stored with unit normals.
struct HalfSpace {
  Vector normal;
  double offset = 0.0;
};

// Bounded, nonempty intersection of halfspaces. Vertices and bounding box are
// computed once at construction.
struct HPolytope {
  std::vector<HalfSpace> rows;
  std::vector<Vector> vertices;
  Vector lower;
  Vector upper;
  bool full_dimensional = true;
};

// Cone {sum_i lambda_i g_i : lambda >= 0}. Never compact.
struct PolyhedralCone {
  std::vector<Vector> generators;
};

class ConvexSet {
 public:
  using Variant = std::variant<Box, Ball, Simplex, HPolytope, PolyhedralCone>;

  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet simplex(int dim);
  // Throws UnboundedSet / EmptySet / DimensionTooLarge.
  static ConvexSet hpolytope(const std::vector<HalfSpace>& rows);
  static ConvexSet hpolytope(const Matrix& normals, const Vector& offsets);
  static ConvexSet cone(std::vector<Vector> generators);

  int dim() const { return dim_; }
  const Variant& variant() const { return v_; }
  bool is_compact() const { return !std::holds_alternative<PolyhedralCone>(v_); }
  bool supports_vertices() const;
  std::string kind_name() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

 private:
  ConvexSet(Variant v, int dim) : v_(std::move(v)), dim_(dim) {}

  Variant v_;
  int dim_;
};

Vector project(const ConvexSet& set, const Vector& point,
               const ProjectionOptions& opts = {});
double distance(const ConvexSet& set, const Vector& point,
                const ProjectionOptions& opts = {});
bool contains(const ConvexSet& set, const Vector& point, double tol);
std::vector<Vector> vertices(const ConvexSet& set);

// Distance from p to the closed segment [x, y].
double segment_distance(const Vector& p, const Vector& x, const Vector& y);

// H-representation of {M v + c : v in set}.
ConvexSet affine_image_polytope(const ConvexSet& set, const Matrix& M,
                                const Vector& c);

// Axis-aligned bounding box of a compact set.
std::pair<Vector, Vector> bounding_box(const ConvexSet& set);
double diameter(const ConvexSet& set);

// A deterministic interior-ish point: the projection of the bounding box
// center.
Vector center_point(const ConvexSet& set);

// Uniform over Box/Ball/Simplex; rejection from the bounding box for
// full-dimensional HPolytopes, random vertex combinations otherwise.
Vector sample_uniform(const ConvexSet& set, Rng& rng);

// Row-wise H-representation (normals, offsets) of Box/Simplex/HPolytope.
std::pair<Matrix, Vector> h_representation(const ConvexSet& set);

// Nonnegative least squares: argmin_{lambda >= 0} |G lambda - b|
// (Lawson-Hanson active set).
Vector nnls(const Matrix& G, const Vector& b);

bool all_finite(const Vector& v);

}  // namespace genvi
