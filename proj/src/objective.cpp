// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/objective.hpp"

#include <cmath>
#include <limits>

namespace structeig {

const char* to_string(Objective::Kind kind) {
  switch (kind) {
    case Objective::Kind::kNegRealPart: return "neg-real-part";
    case Objective::Kind::kRealPart: return "real-part";
    case Objective::Kind::kModulusSquared: return "modulus-squared";
    case Objective::Kind::kNegModulusSquared: return "neg-modulus-squared";
    case Objective::Kind::kNegHalfModulusSquared: return "neg-half-modulus-squared";
    case Objective::Kind::kDistanceToPointSquared: return "distance-to-point-squared";
  }
  return "unknown";
}

double f_value(const Objective& obj, cplx lambda) {
  switch (obj.kind) {
    case Objective::Kind::kNegRealPart: return -lambda.real();
    case Objective::Kind::kRealPart: return lambda.real();
    case Objective::Kind::kModulusSquared: return std::norm(lambda);
    case Objective::Kind::kNegModulusSquared: return -std::norm(lambda);
    case Objective::Kind::kNegHalfModulusSquared: return -0.5 * std::norm(lambda);
    case Objective::Kind::kDistanceToPointSquared: return std::norm(lambda - obj.point);
  }
  return 0.0;
}

cplx two_f_lambda_bar(const Objective& obj, cplx lambda) {
  switch (obj.kind) {
    case Objective::Kind::kNegRealPart: return -1.0;
    case Objective::Kind::kRealPart: return 1.0;
    case Objective::Kind::kModulusSquared: return 2.0 * lambda;
    case Objective::Kind::kNegModulusSquared: return -2.0 * lambda;
    case Objective::Kind::kNegHalfModulusSquared: return -lambda;
    case Objective::Kind::kDistanceToPointSquared: return 2.0 * (lambda - obj.point);
  }
  return 0.0;
}

FreeGradient free_gradient(const Objective& obj, const Eigentriplet& trip) {
  FreeGradient g;
  g.gamma = two_f_lambda_bar(obj, trip.lambda);
  g.x = trip.x;
  g.y = trip.y;
  g.zero = std::abs(g.gamma) <= std::numeric_limits<double>::min();
  return g;
}

GradientBundle structured_gradient(const Objective& obj, const StructureSpace& s,
                                   const Eigentriplet& trip) {
  GradientBundle b;
  b.g = free_gradient(obj, trip);
  b.gs = s.project_outer(b.g.gamma * b.g.x, b.g.y);
  b.triplet = trip;
  return b;
}

SteepestDirection steepest_direction(const Matrix& e, const Matrix& gs) {
  SteepestDirection d;
  const double c = real_inner(gs, e);
  Matrix num = axpby(-1.0, gs, c, e);
  d.mu = num.frobenius_norm();
  if (d.mu < 1e-14 * std::max(1.0, gs.frobenius_norm())) {
    d.stationary = true;
    d.z = Matrix::zeros(e.rows(), e.cols());
    return d;
  }
  num *= 1.0 / d.mu;
  d.z = std::move(num);
  return d;
}

double stationarity_residual(const Matrix& e, const Matrix& gs) {
  const double ng = gs.frobenius_norm();
  if (ng == 0.0) return std::numeric_limits<double>::infinity();
  const double sign = real_inner(gs, e) >= 0.0 ? 1.0 : -1.0;
  return axpby(1.0, e, -sign / ng, gs).frobenius_norm();
}

Matrix projected_tangent_gradient(const StructureSpace& s, const CVector& u, const CVector& v,
                                  const FreeGradient& g) {
  const cplx alpha = u.dot(g.x);
  const cplx beta = v.dot(g.y);
  // P_Y G = gamma (alpha u y^* + conj(beta) x v^* - alpha conj(beta) u v^*)
  Matrix t1 = s.project_outer((g.gamma * alpha) * u, g.y);
  Matrix t2 = s.project_outer((g.gamma * std::conj(beta)) * g.x, v);
  Matrix t3 = s.project_outer((g.gamma * alpha * std::conj(beta)) * u, v);
  return axpby(1.0, axpby(1.0, t1, 1.0, t2), -1.0, t3);
}

double slope_g(double eps, const Eigentriplet& trip, const Matrix& e, const CVector& u,
               const CVector& v, const FreeGradient& g, const StructureSpace& s) {
  const Matrix gs = s.project_outer(g.gamma * g.x, g.y);
  const Matrix pyg = projected_tangent_gradient(s, u, v, g);
  return eps * trip.kappa *
         (real_inner(gs, pyg) - real_inner(pyg, e) * real_inner(gs, e));
}

}  // namespace structeig
