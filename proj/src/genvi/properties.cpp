// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/properties.hpp"

#include "genvi/error.hpp"

#include <cmath>
#include <functional>
#include <optional>

namespace genvi {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnSamples: return "holds_on_samples";
    case Verdict::Violated: return "violated";
    case Verdict::Proven: return "proven";
  }
  return "unknown";
}

namespace {

void require_pair(const OperatorExpr& T, const OperatorExpr& t, const ConvexSet& K,
                  const char* what) {
  require_dims(K.dim(), T.in_dim(), what);
  require_dims(K.dim(), t.in_dim(), what);
  require_dims(T.out_dim(), t.out_dim(), what);
}

void require_config(const SampleConfig& cfg) {
  if (cfg.samples < 1) throw Error(ErrorCode::InvalidArgument, "sample config: samples must be >= 1");
  if (!(cfg.tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sample config: tol must be >= 0");
}

void record(PropertyReport& r, double violation, std::vector<Vector> witness) {
  if (violation > r.max_violation) {
    r.max_violation = violation;
    r.witness = std::move(witness);
  }
}

void finish(PropertyReport& r, double tol) {
  if (r.max_violation > tol) {
    r.verdict = Verdict::Violated;
  } else {
    r.verdict = Verdict::HoldsOnSamples;
    r.witness.clear();
  }
}

PropertyReport sampled_pairs(
    std::string name, const ConvexSet& K, const SampleConfig& cfg,
    const std::function<double(const Vector&, const Vector&)>& violation) {
  require_config(cfg);
  PropertyReport r;
  r.property = std::move(name);
  Rng rng(cfg.seed);
  for (int s = 0; s < cfg.samples; ++s) {
    Vector x = sample_uniform(K, rng);
    Vector y = sample_uniform(K, rng);
    record(r, violation(x, y), {x, y});
  }
  r.samples_used = cfg.samples;
  finish(r, cfg.tol);
  return r;
}

}  // namespace

double monotone_relative_violation(const OperatorExpr& T, const OperatorExpr& t,
                                   const Vector& x, const Vector& y) {
  return -(T(x) - T(y)).dot(t(x) - t(y));
}

double ql_violation(const OperatorExpr& g, const Vector& x, const Vector& y,
                    const Vector& z) {
  return segment_distance(g(z), g(x), g(y));
}

double g_nonexpansive_violation(const OperatorExpr& f, const OperatorExpr& g,
                                const Vector& x, const Vector& y) {
  return (f(x) - f(y)).norm() - (g(x) - g(y)).norm();
}

double coincidence_inequality_violation(const OperatorExpr& f,
                                        const OperatorExpr& g, const Vector& x,
                                        const Vector& y) {
  const Vector dg = g(x) - g(y);
  return (f(x) - f(y)).dot(dg) - dg.squaredNorm();
}

double fiber_violation(const OperatorExpr& A, const Vector& x, const Vector& y) {
  return (A(x) - A(y)).norm();
}

PropertyReport check_monotone_relative(const OperatorExpr& T,
                                       const OperatorExpr& t,
                                       const ConvexSet& K,
                                       const SampleConfig& cfg) {
  require_pair(T, t, K, "check_monotone_relative");
  return sampled_pairs("monotone_relative", K, cfg,
                       [&](const Vector& x, const Vector& y) {
                         return monotone_relative_violation(T, t, x, y);
                       });
}

PropertyReport affine_relative_monotone(const Matrix& M, const Matrix& G,
                                        double psd_tol) {
  if (M.rows() != M.cols() || G.rows() != G.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "affine_relative_monotone: matrices must be square");
  }
  require_dims(M.rows(), G.rows(), "affine_relative_monotone");
  const Matrix S = 0.5 * (M.transpose() * G + G.transpose() * M);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
  const double lmin = eig.eigenvalues()(0);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  PropertyReport r;
  r.property = "affine_relative_monotone";
  r.max_violation = -lmin;
  if (lmin >= -psd_tol * scale) {
    r.verdict = Verdict::Proven;
  } else {
    r.verdict = Verdict::Violated;
    r.witness = {eig.eigenvectors().col(0), Vector::Zero(M.rows())};
  }
  return r;
}

PropertyReport check_ql(const OperatorExpr& g, const ConvexSet& K,
                        const SampleConfig& cfg) {
  require_dims(K.dim(), g.in_dim(), "check_ql");
  require_config(cfg);
  PropertyReport r;
  r.property = "ql";
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < cfg.samples; ++s) {
    Vector x = sample_uniform(K, rng);
    Vector y = sample_uniform(K, rng);
    Vector z = x + unif(rng) * (y - x);
    record(r, ql_violation(g, x, y, z), {x, y, z});
  }
  r.samples_used = cfg.samples;
  finish(r, cfg.tol);
  return r;
}

PropertyReport check_g_nonexpansive(const OperatorExpr& f,
                                    const OperatorExpr& g, const ConvexSet& K,
                                    const SampleConfig& cfg) {
  require_pair(f, g, K, "check_g_nonexpansive");
  return sampled_pairs("g_nonexpansive", K, cfg,
                       [&](const Vector& x, const Vector& y) {
                         return g_nonexpansive_violation(f, g, x, y);
                       });
}

PropertyReport check_coincidence_inequality(const OperatorExpr& f,
                                            const OperatorExpr& g,
                                            const ConvexSet& K,
                                            const SampleConfig& cfg) {
  require_pair(f, g, K, "check_coincidence_inequality");
  return sampled_pairs("coincidence_inequality", K, cfg,
                       [&](const Vector& x, const Vector& y) {
                         return coincidence_inequality_violation(f, g, x, y);
                       });
}

PropertyReport check_range_inclusion(const OperatorExpr& f,
                                     const OperatorExpr& g, const ConvexSet& K,
                                     const ConvexSet& gK,
                                     const SampleConfig& cfg,
                                     const InversionParams& inv) {
  require_pair(f, g, K, "check_range_inclusion");
  require_dims(gK.dim(), g.out_dim(), "check_range_inclusion image set");
  require_config(cfg);
  const Preimager inverse(g, K, inv);
  PropertyReport r;
  r.property = "range_inclusion";
  Rng rng(cfg.seed);
  std::optional<Vector> inversion_failure;
  for (int s = 0; s < cfg.samples; ++s) {
    Vector x = sample_uniform(K, rng);
    const Vector fx = f(x);
    const double dist = distance(gK, fx);
    double violation = dist;
    if (dist <= cfg.tol) {
      const Preimage p = inverse.find(fx);
      if (!p.success) {
        if (!inversion_failure) inversion_failure = x;
        violation = std::max(violation, p.residual);
      }
    }
    record(r, violation, {x});
  }
  r.samples_used = cfg.samples;
  finish(r, cfg.tol);
  if (inversion_failure && r.verdict != Verdict::Violated) {
    r.verdict = Verdict::Violated;
    r.witness = {*inversion_failure};
  }
  return r;
}

PropertyReport check_fiber_condition(const OperatorExpr& A,
                                     const OperatorExpr& a, const ConvexSet& K,
                                     const SampleConfig& cfg,
                                     const InversionParams& inv,
                                     double fiber_match_tol) {
  require_dims(K.dim(), A.in_dim(), "check_fiber_condition");
  require_dims(K.dim(), a.in_dim(), "check_fiber_condition");
  require_config(cfg);
  const Preimager inverse(a, K, inv);
  PropertyReport r;
  r.property = "fiber_condition";
  Rng rng(cfg.seed);
  for (int s = 0; s < cfg.samples; ++s) {
    Vector x = sample_uniform(K, rng);
    const Vector ax = a(x);
    for (const auto& p : inverse.find_all(ax)) {
      if ((p.x - x).norm() <= kFiberSeparation) continue;
      if ((a(p.x) - ax).norm() > fiber_match_tol) continue;
      record(r, fiber_violation(A, x, p.x), {x, p.x});
    }
  }
  r.samples_used = cfg.samples;
  if (std::isinf(r.max_violation)) r.max_violation = 0.0;  // no second preimage found
  finish(r, cfg.tol);
  return r;
}

}  // namespace genvi
