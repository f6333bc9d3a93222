// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "structeig/solver.hpp"

namespace structeig {

/// Iterate of the normalized-Euler discretization of the structure- and
/// norm-constrained gradient flow
///   dE/dt = -G_S(E) + Re<G_S(E), E> E.
/// Used as a reference for the rank-1 driver.
struct FullFlowState {
  Matrix e;
  Eigentriplet trip;
  double f = 0.0;
  double t = 0.0;
};

/// Evaluates the eigentriplet and f at E (E must already lie in S with unit
/// norm).
FullFlowState evaluate_full_state(const ProblemView& pb, Matrix e, double t,
                                  const EigenOptions& eig);

/// E0 = -G_S(0) / ||G_S(0)||_F for the target eigentriplet of A.
Matrix full_flow_initial(const ProblemView& pb, const Eigentriplet& trip_a);

/// One Euler step of size h followed by reprojection onto S and
/// renormalization.
FullFlowState full_flow_step(const ProblemView& pb, const FullFlowState& state, double h,
                             const EigenOptions& eig = {});

/// d/dt F_eps along the full flow is -g with
/// g = eps kappa (||G_S||^2 - Re<G_S, E>^2).
double full_flow_slope(double eps, const Eigentriplet& trip, const Matrix& e, const Matrix& gs);

struct FullFlowResult {
  Matrix e;
  double f = 0.0;
  Eigentriplet trip;
  Trace trace;
  int n_eig = 0;
  int iterations = 0;
  RunStatus status = RunStatus::kConverged;
  double stationarity = 0.0;
  int monotonicity_violations = 0;
  std::string message;
};

FullFlowResult full_flow_minimize(const ProblemView& pb, const SolverConfig& cfg,
                                  const Matrix* e0 = nullptr);

}  // namespace structeig
