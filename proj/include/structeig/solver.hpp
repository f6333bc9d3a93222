// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "structeig/error.hpp"
#include "structeig/linalg.hpp"
#include "structeig/objective.hpp"
#include "structeig/structure.hpp"

namespace structeig {

/// Step-size and stopping parameters shared by the rank-1 driver and the
/// full-flow driver.
struct SolverConfig {
  double h0 = 0.1;
  double theta = 1.5;
  double tol_f = 1e-10;
  double tol_stat = 1e-8;
  int max_iter = 1000;
  double min_h = 1e-14;
  /// Residual accepted when the controller stalls because f no longer
  /// decreases in floating point (see ConvergenceMonitor::at_rounding_floor).
  double stat_floor = 1e-6;
  EigenOptions eig;
};

/// Throws kInvalidArgument unless theta > 1 and all tolerances are positive.
void validate(const SolverConfig& cfg);

enum class RunStatus {
  kConverged,
  kMaxIterations,
  kStalled,
  kDegenerateObjective,
};

const char* to_string(RunStatus s);

/// One trial step (accepted or rejected) of an inner iteration.
struct TraceRow {
  int k = 0;
  double t = 0.0;
  cplx lambda{0.0, 0.0};
  double f = 0.0;
  double h = 0.0;
  double g = 0.0;
  bool accepted = false;
};

using Trace = std::vector<TraceRow>;

/// Non-owning view of a fixed-eps problem: minimize f(lambda(A + eps E))
/// over E in S with ||E||_F = 1.
struct ProblemView {
  const Matrix& a;
  double eps;
  const StructureSpace& s;
  const Objective& obj;
};

/// A + eps E; sparse when both are sparse.
Matrix perturbed_matrix(const Matrix& a, double eps, const Matrix& e);

/// Outcome of one controlled step.
struct ControlledStep {
  double h = 0.0;       // accepted step size
  double h_next = 0.0;  // proposal for the next step
  double f = 0.0;       // functional value at the accepted trial
  int trials = 0;
};

/// Armijo-type step controller with growth and reduction factor theta.
///
/// `trial(h)` integrates one step of size h from the current iterate, keeps
/// the result as its pending state and returns f(h). Trials are repeated with
/// h := h / theta until f(h) < max(f_k, f_k - h theta g_k); the last trial is
/// the accepted one. Non-finite f(h) counts as a rejection.
template <class TrialFn>
ControlledStep armijo_step(double f_k, double g_k, double h_k, const SolverConfig& cfg,
                           TrialFn&& trial) {
  const double theta = cfg.theta;
  ControlledStep out;
  double h = h_k;
  double fh = f_k;
  auto rejected = [&](double fv, double hv) {
    return !std::isfinite(fv) || fv >= std::max(f_k, f_k - hv * theta * g_k);
  };
  for (bool first = true; first || rejected(fh, h); first = false) {
    if (h < cfg.min_h) {
      throw Error(ErrorCode::kStalledStep,
                  "step size " + std::to_string(h) + " fell below min_h without decrease (f_k=" +
                      std::to_string(f_k) + ", g_k=" + std::to_string(g_k) + ")");
    }
    fh = trial(h);
    ++out.trials;
    if (rejected(fh, h)) h /= theta;
  }
  if ((g_k >= 0.0 && fh >= f_k - (h / theta) * g_k) || (g_k < 0.0 && fh >= f_k - h * theta * g_k)) {
    out.h_next = h / theta;
  } else if (h == h_k) {
    out.h_next = theta * h_k;
  } else {
    out.h_next = h_k;
  }
  out.h = h;
  out.f = fh;
  return out;
}

/// Stopping rule shared by both drivers: stationarity residual at most
/// tol_stat, and either three consecutive accepted steps changing f by at
/// most tol_f (1 + |f|), or a decay rate g that is itself below that level.
class ConvergenceMonitor {
 public:
  explicit ConvergenceMonitor(const SolverConfig& cfg) : cfg_(cfg) {}

  void record_accepted(double f_old, double f_new) {
    if (std::abs(f_new - f_old) <= cfg_.tol_f * (1.0 + std::abs(f_new))) {
      ++small_steps_;
    } else {
      small_steps_ = 0;
    }
  }

  bool converged(double residual, double g, double f) const {
    if (!(residual <= cfg_.tol_stat)) return false;
    return small_steps_ >= 3 || std::abs(g) <= cfg_.tol_f * (1.0 + std::abs(f));
  }

  /// After a stalled step: f is flat to the rounding level and the residual,
  /// whose square is what f still resolves, is within stat_floor.
  bool at_rounding_floor(double residual, double g, double f) const {
    return residual <= cfg_.stat_floor && std::abs(g) <= cfg_.tol_f * (1.0 + std::abs(f));
  }

 private:
  SolverConfig cfg_;
  int small_steps_ = 0;
};

}  // namespace structeig
