// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/geometry.hpp"
#include "genvi/inversion.hpp"
#include "genvi/operator.hpp"
#include "genvi/properties.hpp"
#include "genvi/vi_solver.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace genvi {

struct GviTolerances {
  double gap = 1e-6;
  // Slack for a(x) in the image set and for accepting best-effort preimages.
  double image = 1e-7;
  // Reduced-operator cache radius in the sup norm.
  double cache = 1e-9;
  int image_samples = 200;
};

// Find x in K with <A(x), a(y) - a(x)> >= 0 for all y in K.
//
// The image a(K) is either supplied or derived: K itself for a = identity,
// affine_image_polytope for affine a on a vertex-enumerable K. Construction
// samples K and records whether a(x) lands in the image (image_check()).
class GviProblem {
 public:
  GviProblem(OperatorExpr A, OperatorExpr a, ConvexSet K,
             std::optional<ConvexSet> image = std::nullopt,
             SolverParams params = {}, InversionParams inversion = {},
             GviTolerances tol = {});

  const OperatorExpr& A() const { return A_; }
  const OperatorExpr& a() const { return a_; }
  const ConvexSet& K() const { return K_; }
  const ConvexSet& image() const { return *image_; }
  const SolverParams& params() const { return params_; }
  const InversionParams& inversion() const { return inversion_; }
  const GviTolerances& tolerances() const { return tol_; }
  bool image_derived() const { return image_derived_; }
  const PropertyReport& image_check() const { return image_check_; }

 private:
  OperatorExpr A_;
  OperatorExpr a_;
  ConvexSet K_;
  std::optional<ConvexSet> image_;
  SolverParams params_;
  InversionParams inversion_;
  GviTolerances tol_;
  bool image_derived_ = false;
  PropertyReport image_check_;
};

// b(u): a point x in K with |a(x) - u| <= inv.tol. Throws InversionFailed.
Vector selection_b(const OperatorExpr& a, const ConvexSet& K, const Vector& u,
                   const InversionParams& inv);

// u -> A(b(u)). Each evaluation warm-starts the inversion from the previous
// preimage, so the selection follows one branch of a^{-1} along a solver
// trajectory. Recently inverted targets are cached. Not thread-safe; use one
// instance per solve.
class ReducedOperator {
 public:
  ReducedOperator(OperatorExpr A, OperatorExpr a, ConvexSet K,
                  InversionParams inv, double cache_tol = 1e-9,
                  double image_tol = 1e-7);

  Vector operator()(const Vector& u) const;
  Vector preimage(const Vector& u) const;
  // Bypasses the cache; still warm-started from the last preimage.
  Vector fresh_preimage(const Vector& u) const;
  std::optional<double> lipschitz_bound() const { return lipschitz_; }
  std::size_t inversions() const { return state_->inversions; }

 private:
  struct State {
    std::vector<std::pair<Vector, Vector>> cache;
    std::size_t next = 0;
    std::optional<Vector> last;
    std::size_t inversions = 0;
  };

  OperatorExpr A_;
  OperatorExpr a_;
  Preimager inverse_;
  double cache_tol_;
  double image_tol_;
  std::optional<double> lipschitz_;
  // Closed-form inverse when a is identity or invertible affine: x = Minv (u - q).
  std::optional<std::pair<Matrix, Vector>> exact_inverse_;
  std::shared_ptr<State> state_;

  std::optional<Vector> exact_preimage(const Vector& u) const;
};

struct GviReport {
  // solution = x*, residual = natural residual of the reduced VI at u*,
  // gap_certificate = gvi_gap at x* over default_probes.
  SolveReport report;
  Vector reduced_solution;
  double pullback_residual = 0.0;
  bool certified(double gap_tol, double pullback_tol) const;
};

GviReport solve_gvi(const GviProblem& p, std::optional<Vector> x0 = std::nullopt);

// min(0, min_y <A(x), a(y) - a(x)>); the y = x term is always included.
double gvi_gap(const GviProblem& p, const Vector& x,
               const std::vector<Vector>& probes);
double gvi_gap(const OperatorExpr& A, const OperatorExpr& a, const Vector& x,
               const std::vector<Vector>& probes);

// Vertices of K when enumerable, `samples` seeded points of K, and for
// affine a the exact minimizer of the linear objective y -> <A(x), a(y)>.
std::vector<Vector> default_probes(const GviProblem& p, const Vector& x,
                                   int samples = 1000);

// Plain monotonicity of the reduced operator sampled over the image.
PropertyReport check_reduced_monotone(const GviProblem& p, const SampleConfig& cfg);

struct ComplementarityReport {
  bool g_in_cone = false;
  bool t_in_polar = false;
  bool orthogonal = false;
  double cone_distance = 0.0;
  // max(0, max_i -<T(u), g_i>) over the cone generators g_i.
  double polar_violation = 0.0;
  double orthogonality = 0.0;  // |<T(u), g(u)>|

  bool ok() const { return g_in_cone && t_in_polar && orthogonal; }
};

// g(u) in C, T(u) in C* = {w : <w, v> >= 0 for v in C}, <T(u), g(u)> = 0.
ComplementarityReport complementarity_check(const OperatorExpr& T,
                                            const OperatorExpr& g,
                                            const ConvexSet& cone,
                                            const Vector& u, double tol);

struct SelectionReport {
  PropertyReport report;
  // Every preimage of a(x) found; the first is x itself.
  std::vector<Vector> preimages;
  std::vector<double> gaps;
};

// Inverts a at a(x) from every start. Each alternative preimage y must
// satisfy |A(y) - A(x)| <= fiber_tol and gvi_gap(y) >= -gap_tol.
SelectionReport check_selection_independence(const GviProblem& p, const Vector& x,
                                             const InversionParams& inv,
                                             double fiber_tol = kFiberMatchTol);

}  // namespace genvi
