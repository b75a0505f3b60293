// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/coincidence.hpp"

#include <algorithm>
#include <string>

namespace genvi {

namespace {

// Rounding allowance when comparing the two sides of the bridge bound.
constexpr double kBridgeSlack = 1e-12;

// Turns the direction witness {d, 0} of the affine test into a pair of points
// of K whose difference is parallel to d.
void place_in_set(PropertyReport& r, const ConvexSet& K) {
  if (r.witness.size() != 2) return;
  const Vector d = r.witness[0];
  const Vector y = center_point(K);
  double t = diameter(K) / std::max(d.norm(), 1e-300);
  for (int i = 0; i < 80 && !contains(K, y + t * d, 0.0); ++i) t *= 0.5;
  r.witness = {y + t * d, y};
}

}  // namespace

CoincidenceProblem::CoincidenceProblem(OperatorExpr f, OperatorExpr g, ConvexSet K,
                                       std::optional<ConvexSet> image_gK,
                                       SolverParams params, InversionParams inversion,
                                       double coincidence_tol, GviTolerances tol)
    : f_(f),
      g_(g),
      gvi_(OperatorExpr::difference(g, f), g, std::move(K), std::move(image_gK), params,
           inversion, tol),
      coincidence_tol_(coincidence_tol) {
  require_dims(g_.in_dim(), f_.in_dim(), "coincidence f domain");
  require_dims(g_.out_dim(), f_.out_dim(), "coincidence f codomain");
  if (!(coincidence_tol_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "coincidence: tolerance must be positive");
  }
}

BridgeCertificate bridge_certificate(const CoincidenceProblem& p, const Vector& x) {
  const Vector fx = p.f()(x);
  const Vector gx = p.g()(x);
  const Preimage pre = Preimager(p.g(), p.K(), p.gvi().inversion()).find(fx);

  BridgeCertificate c;
  c.y = pre.x;
  c.delta = (p.g()(c.y) - fx).norm();
  std::vector<Vector> probes = default_probes(p.gvi(), x);
  probes.push_back(c.y);
  c.epsilon = -gvi_gap(p.gvi(), x, probes);
  c.residual_squared = (fx - gx).squaredNorm();
  c.bound = c.epsilon + (gx - fx).norm() * c.delta;
  c.holds = c.residual_squared <= c.bound + kBridgeSlack;
  return c;
}

CoincidenceReport find_coincidence(const CoincidenceProblem& p, std::optional<Vector> x0) {
  CoincidenceReport out;
  out.gvi = solve_gvi(p.gvi(), std::move(x0));
  const Vector& x = out.gvi.report.solution;
  out.coincidence_residual = (p.f()(x) - p.g()(x)).norm();
  out.bridge = bridge_certificate(p, x);
  out.certified = out.coincidence_residual <= p.coincidence_tol();
  if (!out.certified && out.gvi.report.converged) {
    auto checks = precheck(p, SampleConfig(p.gvi().inversion().seed, kFailurePrecheckSamples));
    throw CertificationError("coincidence residual " + std::to_string(out.coincidence_residual) +
                                 " exceeds tolerance after the VI converged",
                             std::move(out), std::move(checks));
  }
  return out;
}

CoincidenceProblem fixed_point_problem(const OperatorExpr& f, const ConvexSet& K,
                                       const SolverParams& params,
                                       const InversionParams& inversion, double tol) {
  return CoincidenceProblem(f, OperatorExpr::identity(K.dim()), K, K, params, inversion, tol);
}

CoincidenceReport find_fixed_point(const OperatorExpr& f, const ConvexSet& K,
                                   const SolverParams& params,
                                   const InversionParams& inversion, double tol,
                                   std::optional<Vector> x0) {
  return find_coincidence(fixed_point_problem(f, K, params, inversion, tol), std::move(x0));
}

std::vector<PropertyReport> precheck(const CoincidenceProblem& p, const SampleConfig& cfg) {
  const InversionParams& inv = p.gvi().inversion();
  std::vector<PropertyReport> out;
  out.push_back(check_range_inclusion(p.f(), p.g(), p.K(), p.image(), cfg, inv));

  const auto F = p.f().as_affine();
  const auto G = p.g().as_affine();
  if (F && G) {
    PropertyReport r = affine_relative_monotone(G->first - F->first, G->first);
    r.property = "coincidence_inequality";
    if (r.violated()) place_in_set(r, p.K());
    out.push_back(std::move(r));
  } else {
    out.push_back(check_coincidence_inequality(p.f(), p.g(), p.K(), cfg));
  }

  out.push_back(check_g_nonexpansive(p.f(), p.g(), p.K(), cfg));
  out.push_back(check_fiber_condition(p.gvi().A(), p.g(), p.K(), cfg, inv));
  return out;
}

}  // namespace genvi
