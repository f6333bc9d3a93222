// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "structeig/solver.hpp"

namespace structeig {

/// Y = rho u v^* with unit u, v and rho = 1 / ||Pi^S(u v^*)||_F, so that
/// E = rho Pi^S(u v^*) has unit Frobenius norm.
struct Rank1Perturbation {
  CVector u;
  CVector v;
  double rho = 1.0;
};

/// Normalizes u and v and computes rho. Throws kStructureDegenerate when
/// ||Pi^S(u v^*)||_F < 1e-14.
Rank1Perturbation make_perturbation(const StructureSpace& s, CVector u, CVector v);

/// E = rho Pi^S(u v^*).
Matrix assemble(const StructureSpace& s, const Rank1Perturbation& p);

/// Orthogonal projection onto the tangent space of the rank-1 manifold at
/// u v^*: P(Z) = u u^* Z + Z v v^* - u u^* Z v v^*.
CDense tangent_project(const CVector& u, const CVector& v, const CDense& z);

/// Right-hand sides rho*du/dt and rho*dv/dt of the factor equations.
struct FactorRhs {
  CVector du;
  CVector dv;
};

FactorRhs factor_rhs(const Rank1Perturbation& p, const Eigentriplet& trip, cplx gamma);

/// One splitting step: Euler on the non-rotational part, normalization,
/// exact phase rotation, then recomputation of rho. Stationary points are
/// fixed points for every h.
Rank1Perturbation splitting_step(const StructureSpace& s, const Rank1Perturbation& p,
                                 const Eigentriplet& trip, cplx gamma, double h);

/// Iterate of the rank-1 driver.
struct Rank1State {
  Rank1Perturbation pert;
  Matrix e;
  Eigentriplet trip;
  double f = 0.0;
  double h = 0.1;  // proposed step size
  double t = 0.0;  // pseudo-time
};

/// Evaluates E, the target eigentriplet and f at the given factors.
Rank1State evaluate_state(const ProblemView& pb, const Rank1Perturbation& pert, double h,
                          double t, const EigenOptions& eig);

/// Initial datum Y(0) = -G_eps(0): u = -(gamma/|gamma|) x, v = y for the
/// target eigentriplet of A. Throws kNotWellPosed if gamma = 0 there.
Rank1Perturbation initial_perturbation(const ProblemView& pb, const Eigentriplet& trip_a);

struct InnerStepResult {
  Rank1State state;
  double accepted_h = 0.0;
  double next_h = 0.0;
  double g = 0.0;
  int n_eig = 0;
};

/// One step of the adaptive rank-1 integrator. Appends a trace row per trial
/// (rows k numbered by the caller). Throws kStalledStep if h drops below
/// cfg.min_h.
InnerStepResult inner_step(const ProblemView& pb, const Rank1State& state, const SolverConfig& cfg,
                           int k, Trace* trace = nullptr);

struct InnerResult {
  Matrix e;
  double f = 0.0;
  Rank1Perturbation pert;
  Eigentriplet trip;
  Trace trace;
  int n_eig = 0;
  int iterations = 0;
  RunStatus status = RunStatus::kConverged;
  double stationarity = 0.0;
  /// Accepted steps with f_{k+1} > f_k.
  int monotonicity_violations = 0;
  std::string message;
};

/// Minimizes F_eps over unit-norm E in S along the rank-1 projected flow,
/// from -G_eps(0) or from `warm_start`.
InnerResult inner_minimize(const ProblemView& pb, const SolverConfig& cfg,
                           const Rank1Perturbation* warm_start = nullptr);

}  // namespace structeig
