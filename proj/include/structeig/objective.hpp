// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "structeig/linalg.hpp"
#include "structeig/structure.hpp"

namespace structeig {

/// Eigenvalue functional f(lambda, conj(lambda)) to be minimized, paired with
/// the rule that picks the target eigenvalue.
struct Objective {
  enum class Kind {
    kNegRealPart,           // -Re lambda
    kRealPart,              //  Re lambda
    kModulusSquared,        //  |lambda|^2
    kNegModulusSquared,     // -|lambda|^2
    kNegHalfModulusSquared, // -|lambda|^2 / 2
    kDistanceToPointSquared // |lambda - z0|^2
  };

  Kind kind = Kind::kNegRealPart;
  cplx point{0.0, 0.0};
  TargetSelector selector = TargetSelector::rightmost();

  static Objective neg_real_part(TargetSelector sel = TargetSelector::rightmost()) {
    return {Kind::kNegRealPart, {}, sel};
  }
  static Objective real_part(TargetSelector sel = TargetSelector::leftmost()) {
    return {Kind::kRealPart, {}, sel};
  }
  static Objective modulus_squared(TargetSelector sel = TargetSelector::smallest_modulus()) {
    return {Kind::kModulusSquared, {}, sel};
  }
  static Objective neg_modulus_squared(TargetSelector sel = TargetSelector::largest_modulus()) {
    return {Kind::kNegModulusSquared, {}, sel};
  }
  static Objective distance_to_point_squared(cplx z0) {
    return {Kind::kDistanceToPointSquared, z0, TargetSelector::closest_to(z0)};
  }
};

const char* to_string(Objective::Kind kind);

double f_value(const Objective& obj, cplx lambda);

/// 2 df/d(conj lambda), exact for every kind.
cplx two_f_lambda_bar(const Objective& obj, cplx lambda);

/// Free gradient G = gamma x y^* with gamma = 2 f_{conj lambda}, kept in
/// factored form.
struct FreeGradient {
  cplx gamma{0.0, 0.0};
  CVector x;
  CVector y;
  /// Set when gamma vanishes (e.g. |lambda|^2 at lambda = 0).
  bool zero = false;

  CDense dense() const { return gamma * x * y.adjoint(); }
};

FreeGradient free_gradient(const Objective& obj, const Eigentriplet& trip);

/// Free gradient together with its structured projection G_S = Pi^S G.
struct GradientBundle {
  FreeGradient g;
  Matrix gs;
  Eigentriplet triplet;
};

GradientBundle structured_gradient(const Objective& obj, const StructureSpace& s,
                                   const Eigentriplet& trip);

/// Unit-norm admissible steepest descent direction at E.
struct SteepestDirection {
  Matrix z;
  double mu = 0.0;
  /// mu vanished: E is a real multiple of G_S.
  bool stationary = false;
};

SteepestDirection steepest_direction(const Matrix& e, const Matrix& gs);

/// || E - sign * G_S / ||G_S|| ||_F with sign = sign Re <G_S, E>; infinity
/// when G_S = 0.
double stationarity_residual(const Matrix& e, const Matrix& gs);

/// Pi^S P_Y G for Y = rho u v^* and G = gamma x y^*, formed from three
/// projected outer products.
Matrix projected_tangent_gradient(const StructureSpace& s, const CVector& u, const CVector& v,
                                  const FreeGradient& g);

/// Decay rate g with dF/dt = -g along the rank-1 projected flow at
/// E = rho Pi^S(u v^*).
double slope_g(double eps, const Eigentriplet& trip, const Matrix& e, const CVector& u,
               const CVector& v, const FreeGradient& g, const StructureSpace& s);

}  // namespace structeig
