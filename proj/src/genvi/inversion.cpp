// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/inversion.hpp"

#include "genvi/error.hpp"

#include <cmath>
#include <limits>

namespace genvi {

void validate(const InversionParams& p) {
  if (!(p.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "inversion: tol must be positive");
  if (p.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "inversion: max_iter must be positive");
  if (p.multistart < 1) throw Error(ErrorCode::InvalidArgument, "inversion: multistart must be positive");
  if (!(p.step_control > 0.0 && p.step_control <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "inversion: step_control must lie in (0, 1]");
  }
}

Preimager::Preimager(OperatorExpr a, ConvexSet K, InversionParams params)
    : a_(std::move(a)), K_(std::move(K)), params_(params) {
  validate(params_);
  require_dims(K_.dim(), a_.in_dim(), "inversion domain");
  if (!K_.is_compact()) {
    throw Error(ErrorCode::UnsupportedVariant, "inversion: domain must be compact");
  }
  identity_ = a_.is_identity();
  if (auto aff = a_.as_affine()) affine_jacobian_ = aff->first;

  const int n = params_.multistart;
  starts_.push_back(center_point(K_));
  const auto [lo, hi] = bounding_box(K_);
  const int d = K_.dim();
  const long corners = d < 20 ? (1L << d) : 0L;
  for (long mask = 0; mask < corners && static_cast<int>(starts_.size()) < n; ++mask) {
    Vector c = lo;
    for (int i = 0; i < d; ++i) {
      if (mask & (1L << i)) c(i) = hi(i);
    }
    starts_.push_back(project(K_, c));
  }
  Rng rng(params_.seed);
  while (static_cast<int>(starts_.size()) < n) starts_.push_back(sample_uniform(K_, rng));
  starts_.resize(static_cast<std::size_t>(n));
}

Preimage Preimager::refine(const Vector& u, const Vector& start, int start_index) const {
  Preimage out;
  out.start_index = start_index;
  if (identity_) {
    out.x = project(K_, u);
    out.residual = (out.x - u).norm();
    out.success = out.residual <= params_.tol;
    return out;
  }
  Vector x = project(K_, start);
  Vector r = a_(x) - u;
  double f = r.norm();
  double mu = 1e-8;
  const int n = a_.in_dim();
  for (int it = 0; it < params_.max_iter && f > params_.tol; ++it) {
    const Matrix J = affine_jacobian_ ? *affine_jacobian_ : jacobian_fd(a_, x);
    const Matrix H = J.transpose() * J;
    const Vector g = J.transpose() * r;
    const double scale = std::max(1.0, H.diagonal().maxCoeff());
    bool improved = false;
    for (int trial = 0; trial < 40; ++trial) {
      const Matrix damped = H + (mu * scale) * Matrix::Identity(n, n);
      const Vector step = -damped.ldlt().solve(g);
      if (!step.allFinite()) break;
      const Vector xn = project(K_, x + params_.step_control * step);
      const Vector rn = a_(xn) - u;
      const double fn = rn.norm();
      if (fn < f) {
        x = xn;
        r = rn;
        f = fn;
        mu = std::max(mu * 0.3, 1e-12);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  out.x = std::move(x);
  out.residual = f;
  out.success = f <= params_.tol;
  return out;
}

Preimage Preimager::find(const Vector& u, const std::optional<Vector>& hint) const {
  require_dims(a_.out_dim(), u.size(), "inversion target");
  if (!u.allFinite()) throw Error(ErrorCode::InvalidArgument, "inversion: non-finite target");
  Preimage best;
  best.residual = std::numeric_limits<double>::infinity();
  if (hint) {
    Preimage p = refine(u, *hint, -1);
    if (p.success) return p;
    best = std::move(p);
  }
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    Preimage p = refine(u, starts_[i], static_cast<int>(i));
    if (p.success) return p;
    if (p.residual < best.residual) best = std::move(p);
    if (identity_) break;
  }
  return best;
}

std::vector<Preimage> Preimager::find_all(const Vector& u, double dedup_tol) const {
  require_dims(a_.out_dim(), u.size(), "inversion target");
  std::vector<Preimage> out;
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    Preimage p = refine(u, starts_[i], static_cast<int>(i));
    if (!p.success) continue;
    bool seen = false;
    for (const auto& q : out) {
      if ((q.x - p.x).lpNorm<Eigen::Infinity>() <= dedup_tol) seen = true;
    }
    if (!seen) out.push_back(std::move(p));
    if (identity_) break;
  }
  return out;
}

}  // namespace genvi
