// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/geometry.hpp"
#include "genvi/inversion.hpp"
#include "genvi/operator.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace genvi {

// Sampled checks can only refute a universally quantified hypothesis;
// `Proven` is reserved for analytic criteria.
enum class Verdict { HoldsOnSamples, Violated, Proven };

const char* to_string(Verdict v);

struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::HoldsOnSamples;
  // Points exhibiting the largest violation: (x, y) or (x, y, z).
  std::vector<Vector> witness;
  int samples_used = 0;
  // Largest violation amount seen; positive means the inequality failed.
  double max_violation = -std::numeric_limits<double>::infinity();

  bool violated() const { return verdict == Verdict::Violated; }
};

struct SampleConfig {
  explicit SampleConfig(std::uint64_t seed_, int samples_ = 2000, double tol_ = 1e-9)
      : samples(samples_), tol(tol_), seed(seed_) {}

  int samples;
  double tol;
  std::uint64_t seed;
};

inline constexpr double kFiberMatchTol = 1e-7;
inline constexpr double kPsdTol = 1e-10;
// Preimages closer than this to the sample itself are the same fiber point.
inline constexpr double kFiberSeparation = 1e-6;

// Violation amounts of the defining inequalities at a point pair. Each is
// positive exactly when the inequality fails.
double monotone_relative_violation(const OperatorExpr& T, const OperatorExpr& t,
                                   const Vector& x, const Vector& y);
double ql_violation(const OperatorExpr& g, const Vector& x, const Vector& y,
                    const Vector& z);
double g_nonexpansive_violation(const OperatorExpr& f, const OperatorExpr& g,
                                const Vector& x, const Vector& y);
double coincidence_inequality_violation(const OperatorExpr& f,
                                        const OperatorExpr& g, const Vector& x,
                                        const Vector& y);
double fiber_violation(const OperatorExpr& A, const Vector& x, const Vector& y);

// <T(x) - T(y), t(x) - t(y)> >= 0 on sampled pairs of K.
PropertyReport check_monotone_relative(const OperatorExpr& T,
                                       const OperatorExpr& t,
                                       const ConvexSet& K,
                                       const SampleConfig& cfg);

// Analytic test for T = Mx + q, t = Gx + h: the symmetric part of M^T G must
// be positive semidefinite. The witness is (d, 0) for the eigenvector d of
// the smallest eigenvalue.
PropertyReport affine_relative_monotone(const Matrix& M, const Matrix& G,
                                        double psd_tol = kPsdTol);

// g(z) in [g(x), g(y)] for z on sampled segments of K. Diagnostic only.
PropertyReport check_ql(const OperatorExpr& g, const ConvexSet& K,
                        const SampleConfig& cfg);

// |f(x) - f(y)| <= |g(x) - g(y)|.
PropertyReport check_g_nonexpansive(const OperatorExpr& f,
                                    const OperatorExpr& g, const ConvexSet& K,
                                    const SampleConfig& cfg);

// |g(x) - g(y)|^2 >= <f(x) - f(y), g(x) - g(y)>, i.e. g - f is monotone
// relative to g.
PropertyReport check_coincidence_inequality(const OperatorExpr& f,
                                            const OperatorExpr& g,
                                            const ConvexSet& K,
                                            const SampleConfig& cfg);

// f(x) lies in the declared image gK and g can be inverted at f(x).
PropertyReport check_range_inclusion(const OperatorExpr& f,
                                     const OperatorExpr& g, const ConvexSet& K,
                                     const ConvexSet& gK,
                                     const SampleConfig& cfg,
                                     const InversionParams& inv = {});

// a(x) = a(y) implies A(x) = A(y), with fiber partners found by multistart
// inversion of a at a(x).
PropertyReport check_fiber_condition(const OperatorExpr& A,
                                     const OperatorExpr& a, const ConvexSet& K,
                                     const SampleConfig& cfg,
                                     const InversionParams& inv = {},
                                     double fiber_match_tol = kFiberMatchTol);

}  // namespace genvi
