// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/vi_solver.hpp"

#include "genvi/error.hpp"

#include <cmath>

namespace genvi {

void validate(const SolverParams& p) {
  if (p.step && !(*p.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver: step must be positive");
  if (p.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "solver: max_iter must be positive");
  if (!(p.residual_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver: residual_tol must be positive");
  if (p.step_rule && p.step_rule->kind == StepRule::Kind::Backtracking) {
    if (!(p.step_rule->beta > 0.0 && p.step_rule->beta < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "solver: beta must lie in (0, 1)");
    }
    if (p.step_rule->trial_cap < 1) {
      throw Error(ErrorCode::InvalidArgument, "solver: trial_cap must be positive");
    }
  }
}

namespace {

struct ResolvedStep {
  double step;
  StepRule rule;
};

ResolvedStep resolve_step(const SolverParams& p, std::optional<double> lipschitz) {
  ResolvedStep r{1.0, StepRule{}};
  if (p.step) {
    r.step = *p.step;
    r.rule.kind = StepRule::Kind::Fixed;
  } else if (lipschitz) {
    r.step = *lipschitz > 0.0 ? 0.9 / *lipschitz : 1.0;
    r.rule.kind = StepRule::Kind::Fixed;
  } else {
    r.step = 1.0;
    r.rule.kind = StepRule::Kind::Backtracking;
  }
  if (p.step_rule) r.rule = *p.step_rule;
  return r;
}

Vector start_point(const ConvexSet& C, const std::optional<Vector>& x0,
                   const ProjectionOptions& opts) {
  if (x0) {
    require_dims(C.dim(), x0->size(), "solver start point");
    return project(C, *x0, opts);
  }
  return project(C, Vector::Zero(C.dim()), opts);
}

void require_compact(const ConvexSet& C) {
  if (!C.is_compact()) {
    throw Error(ErrorCode::UnsupportedVariant, "solver: feasible set must be compact");
  }
}

}  // namespace

double natural_residual(const VectorField& F, const ConvexSet& C,
                        const Vector& x, double step,
                        const ProjectionOptions& opts) {
  require_dims(C.dim(), x.size(), "natural_residual");
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "natural_residual: step must be positive");
  return (x - project(C, x - step * F(x), opts)).norm();
}

double natural_residual(const OperatorExpr& F, const ConvexSet& C,
                        const Vector& x, double step) {
  require_dims(F.in_dim(), x.size(), "natural_residual");
  require_dims(F.out_dim(), C.dim(), "natural_residual");
  return natural_residual(VectorField(F), C, x, step);
}

SolveReport solve_projection(const VectorField& F, std::optional<double> lipschitz,
                             const ConvexSet& C, const SolverParams& params,
                             std::optional<Vector> x0,
                             const IterateObserver& observer) {
  validate(params);
  require_compact(C);
  const double step = resolve_step(params, lipschitz).step;
  const auto& popt = params.projection;
  SolveReport rep;
  Vector x = start_point(C, x0, popt);
  if (observer) observer(0, x);
  int k = 0;
  while (true) {
    const Vector Fx = F(x);
    if (!Fx.allFinite()) break;
    const Vector unit = project(C, x - Fx, popt);
    rep.residual = (x - unit).norm();
    if (params.record_history) rep.history.push_back(rep.residual);
    if (rep.residual <= params.residual_tol) {
      rep.converged = true;
      break;
    }
    if (k >= params.max_iter) break;
    x = step == 1.0 ? unit : project(C, x - step * Fx, popt);
    ++k;
    if (observer) observer(k, x);
  }
  rep.solution = std::move(x);
  rep.iterations = k;
  return rep;
}

SolveReport solve_projection(const OperatorExpr& F, const ConvexSet& C,
                             const SolverParams& params, std::optional<Vector> x0,
                             const IterateObserver& observer) {
  require_dims(C.dim(), F.in_dim(), "solve_projection");
  require_dims(C.dim(), F.out_dim(), "solve_projection");
  SolverParams p = params;
  if (!p.step) {
    // Contraction step mu / L^2 for strongly monotone affine fields.
    if (auto aff = F.as_affine()) {
      const Matrix S = 0.5 * (aff->first + aff->first.transpose());
      const double mu = Eigen::SelfAdjointEigenSolver<Matrix>(S).eigenvalues()(0);
      const double L = *F.lipschitz_bound();
      if (mu > 0.0 && L > 0.0) p.step = mu / (L * L);
    }
  }
  return solve_projection(VectorField(F), F.lipschitz_bound(), C, p, std::move(x0), observer);
}

SolveReport solve_extragradient(const VectorField& F, std::optional<double> lipschitz,
                                const ConvexSet& C, const SolverParams& params,
                                std::optional<Vector> x0,
                                const IterateObserver& observer) {
  validate(params);
  require_compact(C);
  auto [step, rule] = resolve_step(params, lipschitz);
  const auto& popt = params.projection;
  SolveReport rep;
  Vector x = start_point(C, x0, popt);
  if (observer) observer(0, x);
  int k = 0;
  while (true) {
    const Vector Fx = F(x);
    if (!Fx.allFinite()) break;
    rep.residual = (x - project(C, x - Fx, popt)).norm();
    if (params.record_history) rep.history.push_back(rep.residual);
    if (rep.residual <= params.residual_tol) {
      rep.converged = true;
      break;
    }
    if (k >= params.max_iter) break;

    Vector y = project(C, x - step * Fx, popt);
    Vector Fy = F(y);
    if (rule.kind == StepRule::Kind::Backtracking) {
      for (int t = 0; t < rule.trial_cap; ++t) {
        if (step * (Fx - Fy).norm() <= 0.9 * (x - y).norm()) break;
        step *= rule.beta;
        y = project(C, x - step * Fx, popt);
        Fy = F(y);
      }
    }
    if (!Fy.allFinite()) break;
    x = project(C, x - step * Fy, popt);
    ++k;
    if (observer) observer(k, x);
  }
  rep.solution = std::move(x);
  rep.iterations = k;
  return rep;
}

SolveReport solve_extragradient(const OperatorExpr& F, const ConvexSet& C,
                                const SolverParams& params, std::optional<Vector> x0,
                                const IterateObserver& observer) {
  require_dims(C.dim(), F.in_dim(), "solve_extragradient");
  require_dims(C.dim(), F.out_dim(), "solve_extragradient");
  return solve_extragradient(VectorField(F), F.lipschitz_bound(), C, params,
                             std::move(x0), observer);
}

SolveReport solve_vi(const VectorField& F, std::optional<double> lipschitz,
                     const ConvexSet& C, const SolverParams& params,
                     std::optional<Vector> x0) {
  if (params.method == SolverMethod::Projection) {
    return solve_projection(F, lipschitz, C, params, std::move(x0));
  }
  return solve_extragradient(F, lipschitz, C, params, std::move(x0));
}

}  // namespace genvi
