// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/geometry.hpp"
#include "genvi/operator.hpp"

#include <cstddef>
#include <vector>

namespace genvi {

// Brute-force grid oracles. A grid minimum is an upper bound on the true
// infimum, so these refute solutionhood; they never prove it.

inline constexpr int kOracleMaxDim = 4;
inline constexpr std::size_t kGridMaxPoints = 10'000'000;
inline constexpr double kGridMembershipTol = 1e-9;

// Lattice of spacing `resolution` anchored at the lower bounding-box corner,
// filtered by membership, in lexicographic order (last coordinate fastest),
// followed by the vertices of K that are not already on the lattice.
std::vector<Vector> grid_points(const ConvexSet& K, double resolution);

// min over grid y of <A(x), a(y) - a(x)>. Not clipped at zero: the grid
// need not contain x.
double brute_gap(const OperatorExpr& A, const OperatorExpr& a, const ConvexSet& K,
                 const Vector& x, double resolution);

struct OracleCandidate {
  Vector x;
  // brute_gap at x for brute_vi_solve, |f(x) - g(x)| for brute_coincidence.
  double value = 0.0;
  std::size_t grid_size = 0;
};

// Grid point with the largest brute_gap; ties keep the first in grid order.
OracleCandidate brute_vi_solve(const OperatorExpr& A, const OperatorExpr& a,
                               const ConvexSet& K, double resolution);

// Grid argmin of |f(x) - g(x)|; ties keep the first in grid order.
OracleCandidate brute_coincidence(const OperatorExpr& f, const OperatorExpr& g,
                                  const ConvexSet& K, double resolution);

}  // namespace genvi
