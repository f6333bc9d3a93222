// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/rank1.hpp"

#include <cmath>

namespace structeig {

namespace {
const cplx kI{0.0, 1.0};
}

Rank1Perturbation make_perturbation(const StructureSpace& s, CVector u, CVector v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "rank-1 factors must be nonzero");
  }
  u /= nu;
  v /= nv;
  const double np = s.project_outer(u, v).frobenius_norm();
  if (np < 1e-14) {
    throw Error(ErrorCode::kStructureDegenerate,
                "||Pi^S(u v^*)||_F = " + std::to_string(np) +
                    ": rank-1 direction is nearly orthogonal to the structure");
  }
  return {std::move(u), std::move(v), 1.0 / np};
}

Matrix assemble(const StructureSpace& s, const Rank1Perturbation& p) {
  return s.project_outer(p.rho * p.u, p.v);
}

CDense tangent_project(const CVector& u, const CVector& v, const CDense& z) {
  const CVector zv = z * v;                      // Z v
  const Eigen::RowVectorXcd uz = u.adjoint() * z;  // u^* Z
  const cplx uzv = u.dot(zv);
  return u * uz + zv * v.adjoint() - uzv * (u * v.adjoint());
}

FactorRhs factor_rhs(const Rank1Perturbation& p, const Eigentriplet& trip, cplx gamma) {
  const cplx alpha = p.u.dot(trip.x);
  const cplx beta = p.v.dot(trip.y);
  const cplx c = alpha * std::conj(beta) * gamma;
  FactorRhs r;
  r.du = c * p.u - (std::conj(beta) * gamma) * trip.x - (0.5 * kI * c.imag()) * p.u;
  const cplx cv = std::conj(c);  // conj(alpha) beta conj(gamma)
  r.dv = cv * p.v - std::conj(alpha * gamma) * trip.y - (0.5 * kI * cv.imag()) * p.v;
  return r;
}

Rank1Perturbation splitting_step(const StructureSpace& s, const Rank1Perturbation& p,
                                 const Eigentriplet& trip, cplx gamma, double h) {
  const cplx alpha = p.u.dot(trip.x);
  const cplx beta = p.v.dot(trip.y);
  const cplx c = alpha * std::conj(beta) * gamma;
  const double step = h / p.rho;

  CVector u = p.u + step * (c * p.u - (std::conj(beta) * gamma) * trip.x);
  CVector v = p.v + step * (std::conj(c) * p.v - std::conj(alpha * gamma) * trip.y);
  u.normalize();
  v.normalize();

  const double vartheta = -c.imag() / (2.0 * p.rho);
  u *= std::exp(kI * (vartheta * h));
  v *= std::exp(-kI * (vartheta * h));
  return make_perturbation(s, std::move(u), std::move(v));
}

Rank1State evaluate_state(const ProblemView& pb, const Rank1Perturbation& pert, double h, double t,
                          const EigenOptions& eig) {
  Rank1State st;
  st.pert = pert;
  st.e = assemble(pb.s, pert);
  st.trip = eigentriplet(perturbed_matrix(pb.a, pb.eps, st.e), pb.obj.selector, eig);
  st.f = f_value(pb.obj, st.trip.lambda);
  st.h = h;
  st.t = t;
  return st;
}

Rank1Perturbation initial_perturbation(const ProblemView& pb, const Eigentriplet& trip_a) {
  const cplx gamma = two_f_lambda_bar(pb.obj, trip_a.lambda);
  if (std::abs(gamma) == 0.0) {
    throw Error(ErrorCode::kNotWellPosed,
                "free gradient vanishes at the unperturbed matrix; no descent direction");
  }
  CVector u = -(gamma / std::abs(gamma)) * trip_a.x;
  return make_perturbation(pb.s, std::move(u), trip_a.y);
}

InnerStepResult inner_step(const ProblemView& pb, const Rank1State& state, const SolverConfig& cfg,
                           int k, Trace* trace) {
  const FreeGradient grad = free_gradient(pb.obj, state.trip);
  const double g_k = slope_g(pb.eps, state.trip, state.e, state.pert.u, state.pert.v, grad, pb.s);

  InnerStepResult out;
  Rank1State pending;
  auto trial = [&](double h) {
    Rank1Perturbation next = splitting_step(pb.s, state.pert, state.trip, grad.gamma, h);
    pending = evaluate_state(pb, next, h, state.t + h, cfg.eig);
    ++out.n_eig;
    if (trace) {
      trace->push_back({k, state.t + h, pending.trip.lambda, pending.f, h, g_k, false});
    }
    return pending.f;
  };
  const ControlledStep step = armijo_step(state.f, g_k, state.h, cfg, trial);
  if (trace) trace->back().accepted = true;

  pending.h = step.h_next;
  pending.t = state.t + step.h;
  out.state = std::move(pending);
  out.accepted_h = step.h;
  out.next_h = step.h_next;
  out.g = g_k;
  return out;
}

InnerResult inner_minimize(const ProblemView& pb, const SolverConfig& cfg,
                           const Rank1Perturbation* warm_start) {
  validate(cfg);
  if (pb.a.rows() != pb.s.size() || !pb.a.is_square()) {
    throw Error(ErrorCode::kDimension, "matrix and structure sizes differ");
  }
  if (!(pb.eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be nonnegative");

  InnerResult res;
  const Eigentriplet trip_a = eigentriplet(pb.a, pb.obj.selector, cfg.eig);
  res.n_eig = 1;

  if (pb.eps == 0.0) {
    res.trip = trip_a;
    res.f = f_value(pb.obj, trip_a.lambda);
    res.pert = warm_start ? make_perturbation(pb.s, warm_start->u, warm_start->v)
                          : initial_perturbation(pb, trip_a);
    res.e = assemble(pb.s, res.pert);
    res.trace.push_back({0, 0.0, trip_a.lambda, res.f, 0.0, 0.0, true});
    res.stationarity = 0.0;
    res.status = RunStatus::kConverged;
    return res;
  }

  Rank1Perturbation p0 = warm_start ? make_perturbation(pb.s, warm_start->u, warm_start->v)
                                    : initial_perturbation(pb, trip_a);
  Rank1State state = evaluate_state(pb, p0, cfg.h0, 0.0, cfg.eig);
  ++res.n_eig;
  res.trace.push_back({0, 0.0, state.trip.lambda, state.f, cfg.h0, 0.0, true});

  ConvergenceMonitor monitor(cfg);
  while (true) {
    const GradientBundle gb = structured_gradient(pb.obj, pb.s, state.trip);
    if (gb.g.zero || gb.gs.frobenius_norm() == 0.0) {
      res.status = RunStatus::kDegenerateObjective;
      res.message = "structured gradient vanishes";
      break;
    }
    const double residual = stationarity_residual(state.e, gb.gs);
    const double g = slope_g(pb.eps, state.trip, state.e, state.pert.u, state.pert.v, gb.g, pb.s);
    if (res.iterations == 0) res.trace.front().g = g;
    if (monitor.converged(residual, g, state.f)) {
      res.status = RunStatus::kConverged;
      break;
    }
    if (res.iterations >= cfg.max_iter) {
      res.status = RunStatus::kMaxIterations;
      res.message = "iteration limit reached";
      break;
    }
    InnerStepResult step;
    try {
      step = inner_step(pb, state, cfg, res.iterations + 1, &res.trace);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kStalledStep) throw;
      if (monitor.at_rounding_floor(residual, g, state.f)) {
        res.status = RunStatus::kConverged;
        res.message = "converged at the rounding floor";
      } else {
        res.status = RunStatus::kStalled;
        res.message = e.what();
      }
      // Rejected trials still cost eigentriplets.
      for (auto it = res.trace.rbegin(); it != res.trace.rend() && !it->accepted; ++it) ++res.n_eig;
      break;
    }
    res.n_eig += step.n_eig;
    if (step.state.f > state.f) ++res.monotonicity_violations;
    monitor.record_accepted(state.f, step.state.f);
    state = std::move(step.state);
    ++res.iterations;
  }

  const GradientBundle gb = structured_gradient(pb.obj, pb.s, state.trip);
  res.stationarity = stationarity_residual(state.e, gb.gs);
  res.e = std::move(state.e);
  res.f = state.f;
  res.pert = std::move(state.pert);
  res.trip = std::move(state.trip);
  return res;
}

}  // namespace structeig
