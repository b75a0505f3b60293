// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/gvi.hpp"

#include "genvi/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace genvi {

namespace {

constexpr std::size_t kReducedCacheSize = 64;
// Offsets the probe sampler from the inversion start sampler.
constexpr std::uint64_t kProbeSeedSalt = 0x9e3779b97f4a7c15ULL;

bool is_diagonal(const Matrix& M) {
  if (M.rows() != M.cols()) return false;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (i != j && M(i, j) != 0.0) return false;
    }
  }
  return true;
}

std::optional<ConvexSet> derive_image(const OperatorExpr& a, const ConvexSet& K) {
  if (a.is_identity()) return K;
  const auto aff = a.as_affine();
  if (!aff) return std::nullopt;
  const auto& [M, q] = *aff;

  if (const Box* b = K.get_if<Box>(); b && is_diagonal(M) && M.diagonal().minCoeff() != 0.0) {
    const Vector p = M.diagonal().cwiseProduct(b->lower) + q;
    const Vector r = M.diagonal().cwiseProduct(b->upper) + q;
    return ConvexSet::box(p.cwiseMin(r), p.cwiseMax(r));
  }
  if (const Ball* b = K.get_if<Ball>(); b && M.rows() == M.cols()) {
    // A scaled orthogonal map sends balls to balls.
    const double s2 = (M.transpose() * M).diagonal().mean();
    if (s2 > 0.0 && (M.transpose() * M - s2 * Matrix::Identity(M.rows(), M.cols())).norm() <=
                        1e-12 * s2 * static_cast<double>(M.rows())) {
      return ConvexSet::ball(M * b->center + q, std::sqrt(s2) * b->radius);
    }
    return std::nullopt;
  }
  if (!K.supports_vertices() || M.rows() > kVertexEnumMaxDim) return std::nullopt;
  return affine_image_polytope(K, M, q);
}

double gap_term(const Vector& Ax, const Vector& ax, const Vector& ay) {
  return Ax.dot(ay - ax);
}

}  // namespace

GviProblem::GviProblem(OperatorExpr A, OperatorExpr a, ConvexSet K,
                       std::optional<ConvexSet> image, SolverParams params,
                       InversionParams inversion, GviTolerances tol)
    : A_(std::move(A)),
      a_(std::move(a)),
      K_(std::move(K)),
      image_(std::move(image)),
      params_(params),
      inversion_(inversion),
      tol_(tol) {
  validate(params_);
  validate(inversion_);
  if (!(tol_.gap >= 0.0 && tol_.image >= 0.0 && tol_.cache >= 0.0) || tol_.image_samples < 0) {
    throw Error(ErrorCode::InvalidArgument, "gvi: tolerances must be nonnegative");
  }
  require_dims(K_.dim(), A_.in_dim(), "gvi operator A domain");
  require_dims(K_.dim(), a_.in_dim(), "gvi operator a domain");
  require_dims(A_.out_dim(), a_.out_dim(), "gvi operators A and a codomain");
  if (!K_.is_compact()) throw Error(ErrorCode::UnsupportedVariant, "gvi: K must be compact");

  if (!image_) {
    image_ = derive_image(a_, K_);
    if (!image_) {
      throw Error(ErrorCode::InvalidArgument,
                  "gvi: the image a(K) cannot be derived for this operator and set; declare it");
    }
    image_derived_ = true;
  }
  require_dims(a_.out_dim(), image_->dim(), "gvi image set");
  if (!image_->is_compact()) throw Error(ErrorCode::UnsupportedVariant, "gvi: image set must be compact");

  image_check_.property = "image_consistency";
  image_check_.max_violation = 0.0;
  Rng rng(inversion_.seed);
  for (int s = 0; s < tol_.image_samples; ++s) {
    const Vector x = sample_uniform(K_, rng);
    const double d = distance(*image_, a_(x));
    if (d > image_check_.max_violation) {
      image_check_.max_violation = d;
      image_check_.witness = {x};
    }
  }
  image_check_.samples_used = tol_.image_samples;
  if (image_check_.max_violation > tol_.image) {
    image_check_.verdict = Verdict::Violated;
  } else {
    image_check_.witness.clear();
  }
}

Vector selection_b(const OperatorExpr& a, const ConvexSet& K, const Vector& u,
                   const InversionParams& inv) {
  const Preimage p = Preimager(a, K, inv).find(u);
  if (!p.success) {
    throw Error(ErrorCode::InversionFailed,
                "selection: no preimage within tolerance (best residual " +
                    std::to_string(p.residual) + ")");
  }
  return p.x;
}

ReducedOperator::ReducedOperator(OperatorExpr A, OperatorExpr a, ConvexSet K,
                                 InversionParams inv, double cache_tol,
                                 double image_tol)
    : A_(std::move(A)),
      a_(a),
      inverse_(std::move(a), std::move(K), inv),
      cache_tol_(cache_tol),
      image_tol_(image_tol),
      state_(std::make_shared<State>()) {
  require_dims(inverse_.set().dim(), A_.in_dim(), "reduced operator");
  const auto LA = A_.lipschitz_bound();
  if (LA && a_.is_identity()) {
    lipschitz_ = *LA;
  } else if (auto aff = a_.as_affine(); LA && aff && aff->first.rows() == aff->first.cols()) {
    const Eigen::JacobiSVD<Matrix> svd(aff->first);
    const double smin = svd.singularValues().minCoeff();
    if (smin > 1e-12) lipschitz_ = *LA / smin;
  }
  if (auto aff = a_.as_affine(); aff && aff->first.rows() == aff->first.cols()) {
    const Eigen::FullPivLU<Matrix> lu(aff->first);
    if (lu.isInvertible()) exact_inverse_.emplace(lu.inverse(), aff->second);
  }
}

std::optional<Vector> ReducedOperator::exact_preimage(const Vector& u) const {
  if (!exact_inverse_) return std::nullopt;
  if (a_.is_identity()) return u;
  Vector x = exact_inverse_->first * (u - exact_inverse_->second);
  // u outside a(K) by more than the image tolerance: let the inverter report it.
  if (distance(inverse_.set(), x) > image_tol_) return std::nullopt;
  return x;
}

Vector ReducedOperator::preimage(const Vector& u) const {
  if (auto x = exact_preimage(u)) return *x;
  for (const auto& [key, x] : state_->cache) {
    if ((key - u).lpNorm<Eigen::Infinity>() <= cache_tol_) return x;
  }
  return fresh_preimage(u);
}

Vector ReducedOperator::fresh_preimage(const Vector& u) const {
  if (auto x = exact_preimage(u)) return *x;
  State& s = *state_;
  const Preimage p = inverse_.find(u, s.last);
  ++s.inversions;
  if (!p.success && !(p.residual <= image_tol_)) {
    throw Error(ErrorCode::InversionFailed,
                "reduced operator: no preimage within tolerance (best residual " +
                    std::to_string(p.residual) + ")");
  }
  if (s.cache.size() < kReducedCacheSize) {
    s.cache.emplace_back(u, p.x);
  } else {
    s.cache[s.next] = {u, p.x};
    s.next = (s.next + 1) % kReducedCacheSize;
  }
  s.last = p.x;
  return p.x;
}

Vector ReducedOperator::operator()(const Vector& u) const { return A_(preimage(u)); }

bool GviReport::certified(double gap_tol, double pullback_tol) const {
  return report.converged && pullback_residual <= pullback_tol && report.gap_certificate &&
         *report.gap_certificate >= -gap_tol;
}

GviReport solve_gvi(const GviProblem& p, std::optional<Vector> x0) {
  const ReducedOperator F(p.A(), p.a(), p.K(), p.inversion(), p.tolerances().cache,
                          p.tolerances().image);
  std::optional<Vector> u0;
  if (x0) {
    require_dims(p.K().dim(), x0->size(), "solve_gvi start point");
    u0 = p.a()(project(p.K(), *x0));
  }
  GviReport out;
  out.report = solve_vi(VectorField(F), F.lipschitz_bound(), p.image(), p.params(), u0);
  out.reduced_solution = out.report.solution;
  const Vector x = F.fresh_preimage(out.reduced_solution);
  out.pullback_residual = (p.a()(x) - out.reduced_solution).norm();
  out.report.gap_certificate = gvi_gap(p, x, default_probes(p, x));
  out.report.solution = x;
  return out;
}

double gvi_gap(const OperatorExpr& A, const OperatorExpr& a, const Vector& x,
               const std::vector<Vector>& probes) {
  require_dims(A.in_dim(), x.size(), "gvi_gap");
  const Vector Ax = A(x);
  const Vector ax = a(x);
  double m = 0.0;
  for (const auto& y : probes) {
    require_dims(a.in_dim(), y.size(), "gvi_gap probe");
    m = std::min(m, gap_term(Ax, ax, a(y)));
  }
  return m;
}

double gvi_gap(const GviProblem& p, const Vector& x, const std::vector<Vector>& probes) {
  return gvi_gap(p.A(), p.a(), x, probes);
}

std::vector<Vector> default_probes(const GviProblem& p, const Vector& x, int samples) {
  const ConvexSet& K = p.K();
  require_dims(K.dim(), x.size(), "default_probes");
  std::vector<Vector> probes{x};
  if (K.supports_vertices()) {
    for (auto& v : vertices(K)) probes.push_back(std::move(v));
  }
  Rng rng(p.inversion().seed ^ kProbeSeedSalt);
  for (int s = 0; s < samples; ++s) probes.push_back(sample_uniform(K, rng));

  if (auto aff = p.a().as_affine()) {
    const Vector c = aff->first.transpose() * p.A()(x);
    if (const Box* b = K.get_if<Box>()) {
      Vector y(c.size());
      for (Eigen::Index i = 0; i < c.size(); ++i) y(i) = c(i) > 0.0 ? b->lower(i) : b->upper(i);
      probes.push_back(std::move(y));
    } else if (const Ball* b = K.get_if<Ball>(); b && c.norm() > 0.0) {
      probes.push_back(b->center - b->radius * c / c.norm());
    }
  }
  return probes;
}

PropertyReport check_reduced_monotone(const GviProblem& p, const SampleConfig& cfg) {
  if (cfg.samples < 1) throw Error(ErrorCode::InvalidArgument, "sample config: samples must be >= 1");
  const ReducedOperator F(p.A(), p.a(), p.K(), p.inversion(), p.tolerances().cache,
                          p.tolerances().image);
  PropertyReport r;
  r.property = "reduced_monotone";
  Rng rng(cfg.seed);
  for (int s = 0; s < cfg.samples; ++s) {
    const Vector u = sample_uniform(p.image(), rng);
    const Vector v = sample_uniform(p.image(), rng);
    const double violation = -(F(u) - F(v)).dot(u - v);
    if (violation > r.max_violation) {
      r.max_violation = violation;
      r.witness = {u, v};
    }
  }
  r.samples_used = cfg.samples;
  if (r.max_violation > cfg.tol) {
    r.verdict = Verdict::Violated;
  } else {
    r.witness.clear();
  }
  return r;
}

ComplementarityReport complementarity_check(const OperatorExpr& T,
                                            const OperatorExpr& g,
                                            const ConvexSet& cone,
                                            const Vector& u, double tol) {
  const PolyhedralCone* C = cone.get_if<PolyhedralCone>();
  if (!C) throw Error(ErrorCode::UnsupportedVariant, "complementarity_check: set must be a cone");
  require_dims(T.in_dim(), u.size(), "complementarity_check T");
  require_dims(g.in_dim(), u.size(), "complementarity_check g");
  require_dims(cone.dim(), T.out_dim(), "complementarity_check T codomain");
  require_dims(cone.dim(), g.out_dim(), "complementarity_check g codomain");
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "complementarity_check: tol must be >= 0");

  const Vector gu = g(u);
  const Vector Tu = T(u);
  ComplementarityReport r;
  r.cone_distance = distance(cone, gu);
  for (const auto& gen : C->generators) {
    r.polar_violation = std::max(r.polar_violation, -Tu.dot(gen));
  }
  r.orthogonality = std::abs(Tu.dot(gu));
  r.g_in_cone = r.cone_distance <= tol;
  r.t_in_polar = r.polar_violation <= tol;
  r.orthogonal = r.orthogonality <= tol;
  return r;
}

SelectionReport check_selection_independence(const GviProblem& p, const Vector& x,
                                             const InversionParams& inv,
                                             double fiber_tol) {
  require_dims(p.K().dim(), x.size(), "check_selection_independence");
  const Preimager inverse(p.a(), p.K(), inv);
  const double gap_tol = p.tolerances().gap;
  const Vector Ax = p.A()(x);

  SelectionReport out;
  out.report.property = "selection_independence";
  out.report.max_violation = 0.0;
  out.preimages.push_back(x);
  out.gaps.push_back(gvi_gap(p, x, default_probes(p, x)));
  for (const auto& q : inverse.find_all(p.a()(x))) {
    const bool known = std::any_of(out.preimages.begin(), out.preimages.end(), [&](const Vector& y) {
      return (y - q.x).norm() <= kFiberSeparation;
    });
    if (known) continue;
    const double gap = gvi_gap(p, q.x, default_probes(p, q.x));
    out.preimages.push_back(q.x);
    out.gaps.push_back(gap);
    const double violation = std::max((p.A()(q.x) - Ax).norm() - fiber_tol, -gap - gap_tol);
    if (violation > out.report.max_violation) {
      out.report.max_violation = violation;
      out.report.witness = {x, q.x};
    }
  }
  out.report.samples_used = static_cast<int>(inverse.starts().size());
  if (out.report.max_violation > 0.0) out.report.verdict = Verdict::Violated;
  return out;
}

}  // namespace genvi
