// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/oracle.hpp"

#include "genvi/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace genvi {

namespace {

struct Lattice {
  Vector lo;
  Vector hi;
  double res;
  std::vector<long> counts;

  double coord(int i, long k) const {
    const double c = lo(i) + static_cast<double>(k) * res;
    // Land exactly on the upper face when the spacing divides the width.
    if (k == counts[i] - 1 && std::abs(c - hi(i)) <= 1e-9 * std::max(1.0, std::abs(hi(i)))) {
      return hi(i);
    }
    return c;
  }
};

Lattice make_lattice(const ConvexSet& K, double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::InvalidArgument, "grid: resolution must be positive and finite");
  }
  if (!K.is_compact()) throw Error(ErrorCode::UnsupportedVariant, "grid: set must be compact");
  if (K.dim() > kOracleMaxDim) {
    throw Error(ErrorCode::DimensionTooLarge,
                "grid: dimension " + std::to_string(K.dim()) + " exceeds " +
                    std::to_string(kOracleMaxDim));
  }
  if (resolution > diameter(K)) {
    throw Error(ErrorCode::EmptyGrid, "grid: resolution exceeds the set diameter");
  }
  auto [lo, hi] = bounding_box(K);
  Lattice L{lo, hi, resolution, {}};
  double total = 1.0;
  for (int i = 0; i < K.dim(); ++i) {
    const long n = static_cast<long>(std::floor((hi(i) - lo(i)) / resolution + 1e-9)) + 1;
    L.counts.push_back(n);
    total *= static_cast<double>(n);
  }
  if (total > static_cast<double>(kGridMaxPoints)) {
    throw Error(ErrorCode::GridTooLarge, "grid: more than 1e7 points");
  }
  return L;
}

}  // namespace

std::vector<Vector> grid_points(const ConvexSet& K, double resolution) {
  const Lattice L = make_lattice(K, resolution);
  const int d = K.dim();
  std::vector<Vector> out;
  std::vector<long> k(static_cast<std::size_t>(d), 0);
  Vector p(d);
  while (true) {
    for (int i = 0; i < d; ++i) p(i) = L.coord(i, k[i]);
    if (contains(K, p, kGridMembershipTol)) out.push_back(p);
    int i = d - 1;
    while (i >= 0 && ++k[i] == L.counts[i]) k[i--] = 0;
    if (i < 0) break;
  }

  if (K.supports_vertices()) {
    for (const auto& v : vertices(K)) {
      bool on_lattice = true;
      for (int i = 0; i < d && on_lattice; ++i) {
        const long ki = std::lround((v(i) - L.lo(i)) / L.res);
        on_lattice = ki >= 0 && ki < L.counts[i] && std::abs(L.coord(i, ki) - v(i)) <= 1e-12;
      }
      if (!on_lattice) out.push_back(v);
    }
  }
  return out;
}

double brute_gap(const OperatorExpr& A, const OperatorExpr& a, const ConvexSet& K,
                 const Vector& x, double resolution) {
  require_dims(K.dim(), A.in_dim(), "brute_gap A");
  require_dims(K.dim(), a.in_dim(), "brute_gap a");
  require_dims(K.dim(), x.size(), "brute_gap point");
  const Vector Ax = A(x);
  const Vector ax = a(x);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& y : grid_points(K, resolution)) m = std::min(m, Ax.dot(a(y) - ax));
  return m;
}

OracleCandidate brute_vi_solve(const OperatorExpr& A, const OperatorExpr& a,
                               const ConvexSet& K, double resolution) {
  require_dims(K.dim(), A.in_dim(), "brute_vi_solve A");
  require_dims(K.dim(), a.in_dim(), "brute_vi_solve a");
  require_dims(A.out_dim(), a.out_dim(), "brute_vi_solve");
  const std::vector<Vector> grid = grid_points(K, resolution);
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Matrix AY(a.out_dim(), n);
  for (Eigen::Index j = 0; j < n; ++j) AY.col(j) = a(grid[static_cast<std::size_t>(j)]);

  std::size_t best = 0;
  double best_gap = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector Ax = A(grid[static_cast<std::size_t>(j)]);
    const double gap = (AY.transpose() * Ax).minCoeff() - Ax.dot(AY.col(j));
    if (gap > best_gap) {
      best_gap = gap;
      best = static_cast<std::size_t>(j);
    }
  }
  OracleCandidate out;
  out.x = grid[best];
  out.grid_size = grid.size();
  const Vector Ax = A(out.x);
  const Vector ax = a(out.x);
  out.value = std::numeric_limits<double>::infinity();
  for (const auto& y : grid) out.value = std::min(out.value, Ax.dot(a(y) - ax));
  return out;
}

OracleCandidate brute_coincidence(const OperatorExpr& f, const OperatorExpr& g,
                                  const ConvexSet& K, double resolution) {
  require_dims(K.dim(), f.in_dim(), "brute_coincidence f");
  require_dims(K.dim(), g.in_dim(), "brute_coincidence g");
  require_dims(f.out_dim(), g.out_dim(), "brute_coincidence");
  const std::vector<Vector> grid = grid_points(K, resolution);
  OracleCandidate out;
  out.value = std::numeric_limits<double>::infinity();
  out.grid_size = grid.size();
  for (const auto& x : grid) {
    const double r = (f(x) - g(x)).norm();
    if (r < out.value) {
      out.value = r;
      out.x = x;
    }
  }
  return out;
}

}  // namespace genvi
