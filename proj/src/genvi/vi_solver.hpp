// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/geometry.hpp"
#include "genvi/operator.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace genvi {

using VectorField = std::function<Vector(const Vector&)>;
using IterateObserver = std::function<void(int iteration, const Vector& x)>;

enum class SolverMethod { Projection, Extragradient };

struct StepRule {
  enum class Kind { Fixed, Backtracking };
  Kind kind = Kind::Backtracking;
  double beta = 0.5;
  int trial_cap = 30;
};

struct SolverParams {
  SolverMethod method = SolverMethod::Extragradient;
  // Unset: 0.9 / L when a Lipschitz bound L is known (fixed rule),
  // otherwise backtracking from 1.
  std::optional<double> step;
  int max_iter = 200000;
  double residual_tol = 1e-8;
  std::optional<StepRule> step_rule;
  bool record_history = false;
  ProjectionOptions projection;
};

void validate(const SolverParams& p);

struct SolveReport {
  Vector solution;
  // Natural-map residual |x - P_C(x - F(x))| at the solution.
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::optional<double> gap_certificate;
  std::vector<double> history;
};

// |x - P_C(x - step F(x))|.
double natural_residual(const OperatorExpr& F, const ConvexSet& C,
                        const Vector& x, double step = 1.0);
double natural_residual(const VectorField& F, const ConvexSet& C,
                        const Vector& x, double step = 1.0,
                        const ProjectionOptions& opts = {});

// x <- P_C(x - step F(x)). Non-convergence is reported, not thrown.
SolveReport solve_projection(const OperatorExpr& F, const ConvexSet& C,
                             const SolverParams& params,
                             std::optional<Vector> x0 = std::nullopt,
                             const IterateObserver& observer = {});
SolveReport solve_projection(const VectorField& F, std::optional<double> lipschitz,
                             const ConvexSet& C, const SolverParams& params,
                             std::optional<Vector> x0 = std::nullopt,
                             const IterateObserver& observer = {});

// Korpelevich extragradient:
//   y = P_C(x - step F(x)),  x <- P_C(x - step F(y)).
// With backtracking, the step shrinks by beta until
// step |F(x) - F(y)| <= 0.9 |x - y|.
SolveReport solve_extragradient(const OperatorExpr& F, const ConvexSet& C,
                                const SolverParams& params,
                                std::optional<Vector> x0 = std::nullopt,
                                const IterateObserver& observer = {});
SolveReport solve_extragradient(const VectorField& F, std::optional<double> lipschitz,
                                const ConvexSet& C, const SolverParams& params,
                                std::optional<Vector> x0 = std::nullopt,
                                const IterateObserver& observer = {});

SolveReport solve_vi(const VectorField& F, std::optional<double> lipschitz,
                     const ConvexSet& C, const SolverParams& params,
                     std::optional<Vector> x0 = std::nullopt);

}  // namespace genvi
