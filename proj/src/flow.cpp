// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/flow.hpp"

#include <cmath>

namespace structeig {

namespace {

Matrix normalized(Matrix m) {
  const double nrm = m.frobenius_norm();
  if (nrm < 1e-300) {
    throw Error(ErrorCode::kStructureDegenerate, "perturbation collapsed to zero in S");
  }
  m *= 1.0 / nrm;
  return m;
}

}  // namespace

FullFlowState evaluate_full_state(const ProblemView& pb, Matrix e, double t,
                                  const EigenOptions& eig) {
  FullFlowState st;
  st.trip = eigentriplet(perturbed_matrix(pb.a, pb.eps, e), pb.obj.selector, eig);
  st.f = f_value(pb.obj, st.trip.lambda);
  st.e = std::move(e);
  st.t = t;
  return st;
}

Matrix full_flow_initial(const ProblemView& pb, const Eigentriplet& trip_a) {
  const GradientBundle gb = structured_gradient(pb.obj, pb.s, trip_a);
  if (gb.g.zero || gb.gs.frobenius_norm() == 0.0) {
    throw Error(ErrorCode::kNotWellPosed,
                "structured gradient vanishes at the unperturbed matrix; no descent direction");
  }
  return normalized(-1.0 * gb.gs);
}

FullFlowState full_flow_step(const ProblemView& pb, const FullFlowState& state, double h,
                             const EigenOptions& eig) {
  const GradientBundle gb = structured_gradient(pb.obj, pb.s, state.trip);
  const double c = real_inner(gb.gs, state.e);
  // E + h (-G_S + c E)
  Matrix next = axpby(1.0 + h * c, state.e, -h, gb.gs);
  next = normalized(pb.s.project(next));
  return evaluate_full_state(pb, std::move(next), state.t + h, eig);
}

double full_flow_slope(double eps, const Eigentriplet& trip, const Matrix& e, const Matrix& gs) {
  const double ng = gs.frobenius_norm();
  const double c = real_inner(gs, e);
  return eps * trip.kappa * (ng * ng - c * c);
}

FullFlowResult full_flow_minimize(const ProblemView& pb, const SolverConfig& cfg, const Matrix* e0) {
  validate(cfg);
  if (pb.a.rows() != pb.s.size() || !pb.a.is_square()) {
    throw Error(ErrorCode::kDimension, "matrix and structure sizes differ");
  }
  if (!(pb.eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be nonnegative");

  FullFlowResult res;
  const Eigentriplet trip_a = eigentriplet(pb.a, pb.obj.selector, cfg.eig);
  res.n_eig = 1;
  Matrix start = e0 ? normalized(pb.s.project(*e0)) : full_flow_initial(pb, trip_a);

  if (pb.eps == 0.0) {
    res.e = std::move(start);
    res.trip = trip_a;
    res.f = f_value(pb.obj, trip_a.lambda);
    res.trace.push_back({0, 0.0, trip_a.lambda, res.f, 0.0, 0.0, true});
    return res;
  }

  FullFlowState state = evaluate_full_state(pb, std::move(start), 0.0, cfg.eig);
  ++res.n_eig;
  res.trace.push_back({0, 0.0, state.trip.lambda, state.f, cfg.h0, 0.0, true});
  double h = cfg.h0;

  ConvergenceMonitor monitor(cfg);
  while (true) {
    const GradientBundle gb = structured_gradient(pb.obj, pb.s, state.trip);
    if (gb.g.zero || gb.gs.frobenius_norm() == 0.0) {
      res.status = RunStatus::kDegenerateObjective;
      res.message = "structured gradient vanishes";
      break;
    }
    const double residual = stationarity_residual(state.e, gb.gs);
    const double g = full_flow_slope(pb.eps, state.trip, state.e, gb.gs);
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

    const int k = res.iterations + 1;
    FullFlowState pending;
    auto trial = [&](double step) {
      pending = full_flow_step(pb, state, step, cfg.eig);
      ++res.n_eig;
      res.trace.push_back({k, pending.t, pending.trip.lambda, pending.f, step, g, false});
      return pending.f;
    };
    ControlledStep step;
    try {
      step = armijo_step(state.f, g, h, cfg, trial);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kStalledStep) throw;
      if (monitor.at_rounding_floor(residual, g, state.f)) {
        res.status = RunStatus::kConverged;
        res.message = "converged at the rounding floor";
      } else {
        res.status = RunStatus::kStalled;
        res.message = e.what();
      }
      break;
    }
    res.trace.back().accepted = true;
    if (pending.f > state.f) ++res.monotonicity_violations;
    monitor.record_accepted(state.f, pending.f);
    state = std::move(pending);
    h = step.h_next;
    ++res.iterations;
  }

  const GradientBundle gb = structured_gradient(pb.obj, pb.s, state.trip);
  res.stationarity = stationarity_residual(state.e, gb.gs);
  res.e = std::move(state.e);
  res.f = state.f;
  res.trip = std::move(state.trip);
  return res;
}

}  // namespace structeig
