// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/error.hpp"
#include "genvi/gvi.hpp"

#include <optional>
#include <vector>

namespace genvi {

// f(x) = g(x) on K, solved as the general VI with A = g - f and a = g.
class CoincidenceProblem {
 public:
  CoincidenceProblem(OperatorExpr f, OperatorExpr g, ConvexSet K,
                     std::optional<ConvexSet> image_gK = std::nullopt,
                     SolverParams params = {}, InversionParams inversion = {},
                     double coincidence_tol = 1e-6, GviTolerances tol = {});

  const OperatorExpr& f() const { return f_; }
  const OperatorExpr& g() const { return g_; }
  const ConvexSet& K() const { return gvi_.K(); }
  const ConvexSet& image() const { return gvi_.image(); }
  const GviProblem& gvi() const { return gvi_; }
  double coincidence_tol() const { return coincidence_tol_; }

 private:
  OperatorExpr f_;
  OperatorExpr g_;
  GviProblem gvi_;
  double coincidence_tol_;
};

// At y with |g(y) - f(x)| <= delta and gap >= -epsilon over probes holding y:
// |f(x) - g(x)|^2 <= epsilon + |A(x)| delta.
struct BridgeCertificate {
  Vector y;
  double delta = 0.0;
  double epsilon = 0.0;
  double residual_squared = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct CoincidenceReport {
  GviReport gvi;
  double coincidence_residual = 0.0;  // |f(x*) - g(x*)|
  bool certified = false;
  std::optional<BridgeCertificate> bridge;
};

// The VI was solved but |f(x*) - g(x*)| exceeds the tolerance. Carries the
// report and the precheck reports for diagnosis.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, CoincidenceReport report,
                     std::vector<PropertyReport> prechecks)
      : Error(ErrorCode::CertificationFailed, what),
        report_(std::move(report)),
        prechecks_(std::move(prechecks)) {}

  const CoincidenceReport& report() const { return report_; }
  const std::vector<PropertyReport>& prechecks() const { return prechecks_; }

 private:
  CoincidenceReport report_;
  std::vector<PropertyReport> prechecks_;
};

// Samples used for the precheck payload of CertificationError.
inline constexpr int kFailurePrecheckSamples = 500;

// A non-converged VI solve returns an uncertified report; a converged one
// with a large coincidence residual throws CertificationError.
CoincidenceReport find_coincidence(const CoincidenceProblem& p,
                                   std::optional<Vector> x0 = std::nullopt);

// g = identity, image = K.
CoincidenceReport find_fixed_point(const OperatorExpr& f, const ConvexSet& K,
                                   const SolverParams& params = {},
                                   const InversionParams& inversion = {},
                                   double tol = 1e-6,
                                   std::optional<Vector> x0 = std::nullopt);
CoincidenceProblem fixed_point_problem(const OperatorExpr& f, const ConvexSet& K,
                                       const SolverParams& params = {},
                                       const InversionParams& inversion = {},
                                       double tol = 1e-6);

BridgeCertificate bridge_certificate(const CoincidenceProblem& p, const Vector& x);

// In order: range inclusion f(K) in g(K), the coincidence inequality
// |g(x)-g(y)|^2 >= <f(x)-f(y), g(x)-g(y)>, g-nonexpansiveness (sufficient
// for the previous one), and the fiber condition for A = g - f, a = g.
// The coincidence inequality is decided analytically when f and g are
// affine.
std::vector<PropertyReport> precheck(const CoincidenceProblem& p, const SampleConfig& cfg);

}  // namespace genvi
