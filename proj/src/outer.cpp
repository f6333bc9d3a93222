// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/outer.hpp"

#include <cmath>
#include <limits>

namespace structeig {

const char* to_string(OuterStep s) {
  switch (s) {
    case OuterStep::kInitial: return "initial";
    case OuterStep::kNewton: return "newton";
    case OuterStep::kBisection: return "bisection";
    case OuterStep::kGrowth: return "growth";
  }
  return "unknown";
}

PhiResult phi(const NearnessProblem& pb, double eps, const SolverConfig& cfg,
              const Rank1Perturbation* warm_start) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "phi: eps must be positive");
  const ProblemView view{pb.a, eps, pb.s, pb.obj};
  PhiResult out;
  try {
    out.inner = inner_minimize(view, cfg, warm_start);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " (at eps=" + std::to_string(eps) + ")");
  }
  out.value = out.inner.f;
  return out;
}

double phi_derivative(const Matrix& /*e*/, const Eigentriplet& trip, const StructureSpace& s,
                      const Objective& obj) {
  const GradientBundle gb = structured_gradient(obj, s, trip);
  return -gb.gs.frobenius_norm() * trip.kappa;
}

OuterResult find_epsilon_star(const NearnessProblem& pb, const OuterConfig& cfg) {
  validate(cfg.inner);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  OuterResult res;
  const Eigentriplet trip_a = eigentriplet(pb.a, pb.obj.selector, cfg.inner.eig);
  res.n_eig_total = 1;
  const double f0 = f_value(pb.obj, trip_a.lambda);
  if (!(f0 > pb.r)) {
    throw Error(ErrorCode::kNotWellPosed, "f(lambda(A)) = " + std::to_string(f0) +
                                              " does not exceed the target level r = " +
                                              std::to_string(pb.r));
  }
  const double tol_r = cfg.tol_r_rel * (1.0 + std::abs(pb.r));
  const double dphi0 = -structured_gradient(pb.obj, pb.s, trip_a).gs.frobenius_norm() * trip_a.kappa;
  res.trace.push_back({0, 0.0, f0, dphi0, 1, OuterStep::kInitial});

  double lo = 0.0;
  double hi = kInf;
  if (pb.bracket) {
    lo = pb.bracket->first;
    hi = pb.bracket->second;
    if (!(lo >= 0.0 && hi > lo)) {
      throw Error(ErrorCode::kInvalidArgument, "bracket must satisfy 0 <= lo < hi");
    }
  }

  double eps = 0.0;
  OuterStep step = OuterStep::kInitial;
  if (pb.eps0 > 0.0) {
    eps = pb.eps0;
  } else if (dphi0 < 0.0 && lo == 0.0) {
    eps = (f0 - pb.r) / -dphi0;
    step = OuterStep::kNewton;
  } else {
    eps = 1e-3 * std::max(1.0, pb.a.frobenius_norm());
  }
  if (!(eps > lo && eps < hi)) {
    eps = std::isfinite(hi) ? 0.5 * (lo + hi) : std::max(2.0 * lo, eps);
    step = OuterStep::kBisection;
  }
  const double eps_max = cfg.eps_max_factor * eps;

  Rank1Perturbation warm = pb.warm_start.value_or(Rank1Perturbation{});
  bool have_warm = pb.warm_start.has_value();
  for (int k = 1; k <= cfg.max_outer; ++k) {
    PhiResult pr = phi(pb, eps, cfg.inner, have_warm ? &warm : nullptr);
    res.n_eig_total += pr.inner.n_eig;
    const double dphi = phi_derivative(pr.inner.e, pr.inner.trip, pb.s, pb.obj);
    res.trace.push_back({k, eps, pr.value, dphi, pr.inner.n_eig, step});
    res.inner_traces.push_back(pr.inner.trace);
    if (cfg.warm_start) {
      warm = pr.inner.pert;
      have_warm = true;
    }

    const double resid = pr.value - pb.r;
    if (resid > 0.0) {
      lo = eps;
    } else {
      hi = eps;
    }
    const bool hit = std::abs(resid) <= tol_r;
    const bool narrow = std::isfinite(hi) && hi - lo <= cfg.tol_eps * eps;
    if (hit || narrow) {
      res.eps_star = eps;
      res.phi_star = pr.value;
      res.final_inner = std::move(pr.inner);
      res.status = RunStatus::kConverged;
      res.message = hit ? "|phi - r| within tolerance" : "bracket width within tolerance";
      return res;
    }

    res.eps_star = eps;
    res.phi_star = pr.value;
    res.final_inner = std::move(pr.inner);

    // Newton from either side, kept strictly inside the bracket; points
    // where phi' ~ 0 (phi flat beyond the crossing) fall back to bisection.
    const double newton = eps - resid / dphi;
    const bool newton_ok = dphi < -1e-14 * (1.0 + std::abs(dphi0)) && std::isfinite(newton) &&
                           newton > lo && newton < hi && newton <= eps_max;
    if (newton_ok) {
      eps = newton;
      step = OuterStep::kNewton;
    } else if (std::isfinite(hi)) {
      eps = 0.5 * (lo + hi);
      step = OuterStep::kBisection;
    } else {
      eps *= 2.0;
      step = OuterStep::kGrowth;
      if (eps > eps_max) {
        throw Error(ErrorCode::kNoCrossing,
                    "phi stays above r = " + std::to_string(pb.r) + " up to eps_max = " +
                        std::to_string(eps_max));
      }
    }
  }
  res.status = RunStatus::kMaxIterations;
  res.message = "outer iteration limit reached";
  return res;
}

}  // namespace structeig
