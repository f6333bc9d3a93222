// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/solver.hpp"

namespace structeig {

void validate(const SolverConfig& cfg) {
  if (!(cfg.theta > 1.0)) throw Error(ErrorCode::kInvalidArgument, "theta must exceed 1");
  if (!(cfg.h0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "h0 must be positive");
  if (!(cfg.tol_f > 0.0) || !(cfg.tol_stat > 0.0) || !(cfg.min_h > 0.0) ||
      !(cfg.stat_floor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerances must be positive");
  }
  if (cfg.max_iter < 0) throw Error(ErrorCode::kInvalidArgument, "max_iter must be nonnegative");
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxIterations: return "max-iterations";
    case RunStatus::kStalled: return "stalled";
    case RunStatus::kDegenerateObjective: return "degenerate-objective";
  }
  return "unknown";
}

Matrix perturbed_matrix(const Matrix& a, double eps, const Matrix& e) {
  if (eps == 0.0) return a;
  return axpby(1.0, a, eps, e);
}

}  // namespace structeig
