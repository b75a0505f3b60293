// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/geometry.hpp"
#include "genvi/operator.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace genvi {

struct InversionParams {
  double tol = 1e-10;
  int max_iter = 200;
  int multistart = 8;
  // Multiplier on each Gauss-Newton step, in (0, 1].
  double step_control = 1.0;
  std::uint64_t seed = 0;
};

void validate(const InversionParams& p);

struct Preimage {
  Vector x;
  double residual = 0.0;
  // -1 for the caller-supplied hint.
  int start_index = 0;
  bool success = false;
};

// Minimizes |a(x) - u| over x in K by projected, damped Gauss-Newton from a
// deterministic list of starts: the center point of K, then the bounding box
// corners projected onto K, then seeded uniform samples.
class Preimager {
 public:
  Preimager(OperatorExpr a, ConvexSet K, InversionParams params);

  const OperatorExpr& op() const { return a_; }
  const ConvexSet& set() const { return K_; }
  const InversionParams& params() const { return params_; }
  const std::vector<Vector>& starts() const { return starts_; }

  // First start (hint first, if given) reaching tol; otherwise the start
  // with the smallest residual, flagged success = false.
  Preimage find(const Vector& u, const std::optional<Vector>& hint = std::nullopt) const;

  // Every start run to completion; successful preimages, deduplicated at
  // `dedup_tol`, in start order.
  std::vector<Preimage> find_all(const Vector& u, double dedup_tol = 1e-6) const;

  Preimage refine(const Vector& u, const Vector& start, int start_index) const;

 private:
  OperatorExpr a_;
  ConvexSet K_;
  InversionParams params_;
  std::vector<Vector> starts_;
  std::optional<Matrix> affine_jacobian_;
  bool identity_ = false;
};

}  // namespace genvi
