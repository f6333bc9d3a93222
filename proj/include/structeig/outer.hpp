// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "structeig/rank1.hpp"

namespace structeig {

/// Find the smallest eps > 0 with phi(eps) <= r, where phi(eps) is the
/// minimum of f(lambda(A + eps E)) over unit-norm E in S.
struct NearnessProblem {
  Matrix a;
  StructureSpace s;
  Objective obj;
  double r = 0.0;
  /// First eps to evaluate; 0 selects the Newton step from eps = 0.
  double eps0 = 0.0;
  /// Optional starting bracket [lo, hi] with phi(lo) > r >= phi(hi).
  std::optional<std::pair<double, double>> bracket;
  /// Factors for the first inner solve instead of -G(0).
  std::optional<Rank1Perturbation> warm_start;
};

struct OuterConfig {
  SolverConfig inner;
  /// |phi - r| <= tol_r_rel * (1 + |r|) stops the iteration.
  double tol_r_rel = 1e-9;
  /// Bracket width <= tol_eps * eps stops the iteration.
  double tol_eps = 1e-8;
  /// Growth phase gives up beyond eps_max_factor times the first eps.
  double eps_max_factor = 1e3;
  int max_outer = 60;
  bool warm_start = true;
};

struct PhiResult {
  double value = 0.0;
  InnerResult inner;
};

/// phi(eps) by the rank-1 inner iteration, optionally warm-started.
PhiResult phi(const NearnessProblem& pb, double eps, const SolverConfig& cfg,
              const Rank1Perturbation* warm_start = nullptr);

/// phi'(eps) = -||Pi^S G_eps(E(eps))||_F / (x^* y); never positive.
double phi_derivative(const Matrix& e, const Eigentriplet& trip, const StructureSpace& s,
                      const Objective& obj);

enum class OuterStep { kInitial, kNewton, kBisection, kGrowth };

const char* to_string(OuterStep s);

struct OuterRow {
  int k = 0;
  double eps = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  int n_eig = 0;
  OuterStep step = OuterStep::kInitial;
};

using OuterTrace = std::vector<OuterRow>;

struct OuterResult {
  double eps_star = 0.0;
  double phi_star = 0.0;
  OuterTrace trace;
  /// Inner solve at eps_star.
  InnerResult final_inner;
  /// Concatenated inner traces; row k values restart per outer iteration.
  std::vector<Trace> inner_traces;
  RunStatus status = RunStatus::kConverged;
  int n_eig_total = 0;
  std::string message;
};

/// Newton/bisection on phi(eps) = r, bracket-safeguarded. Throws
/// kNotWellPosed if f(lambda(A)) <= r and kNoCrossing if the growth phase
/// passes eps_max.
OuterResult find_epsilon_star(const NearnessProblem& pb, const OuterConfig& cfg);

}  // namespace structeig
