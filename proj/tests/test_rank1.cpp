// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "structeig/flow.hpp"
#include "structeig/rank1.hpp"
#include "support.hpp"

using namespace structeig;
using structeig::testing::Rng;

namespace {

using Field = StructureSpace::Field;

struct Instance {
  Matrix a;
  StructureSpace s;
};

Instance sparse_instance(Rng& rng, Index n, double density) {
  const auto pat = rng.pattern(n, density);
  return {rng.real_on_pattern(n, pat), StructureSpace::sparsity(n, pat, Field::kReal)};
}

// Stationary factors for a given triplet: u parallel to -gamma x, v parallel
// to y, times a common phase.
Rank1Perturbation stationary_factors(const StructureSpace& s, const Eigentriplet& t, cplx gamma,
                                     double phase) {
  const cplx w = std::exp(cplx(0.0, phase));
  return make_perturbation(s, CVector(-(gamma / std::abs(gamma)) * w * t.x), CVector(w * t.y));
}

}  // namespace

TEST_CASE("tangent projection") {
  Rng rng(401);
  const Index n = 6;
  const CVector u = rng.unit_cvector(n);
  const CVector v = rng.unit_cvector(n);
  const CDense z = rng.cdense(n, n);
  const CDense w = rng.cdense(n, n);
  const CDense pz = tangent_project(u, v, z);

  const CDense y = u * v.adjoint();
  CHECK((tangent_project(u, v, y) - y).norm() < 1e-15);
  CHECK((tangent_project(u, v, pz) - pz).norm() < 1e-14 * z.norm());
  // Self-adjoint in the real inner product.
  const double lhs = (pz.adjoint() * w).trace().real();
  const double rhs = (z.adjoint() * tangent_project(u, v, w)).trace().real();
  CHECK(std::abs(lhs - rhs) < 1e-13 * z.norm() * w.norm());
  // The complement annihilates u^* . and . v.
  const CDense perp = z - pz;
  CHECK((u.adjoint() * perp).norm() < 1e-14 * z.norm());
  CHECK((perp * v).norm() < 1e-14 * z.norm());
}

TEST_CASE("rank-1 perturbation construction") {
  Rng rng(402);
  const Instance in = sparse_instance(rng, 8, 0.3);
  const Rank1Perturbation p = make_perturbation(in.s, 3.0 * rng.unit_cvector(8), rng.cvector(8));
  CHECK(std::abs(p.u.norm() - 1.0) < 1e-15);
  CHECK(std::abs(p.v.norm() - 1.0) < 1e-15);
  const Matrix e = assemble(in.s, p);
  CHECK(std::abs(e.frobenius_norm() - 1.0) < 1e-14);
  CHECK(in.s.membership_residual(e) == 0.0);

  const StructureSpace one = StructureSpace::sparsity(3, {{0, 1}}, Field::kReal);
  try {
    make_perturbation(one, unit_vector(3, 1), unit_vector(3, 1));
    FAIL("expected a degenerate structure error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kStructureDegenerate);
  }
}

TEST_CASE("factor right-hand sides") {
  Rng rng(403);
  const Index n = 7;
  const Instance in = sparse_instance(rng, n, 0.3);
  const Objective obj = Objective::neg_real_part();
  const Eigentriplet t = eigentriplet(in.a, obj.selector);
  const cplx gamma = cplx(0.8, -1.3);

  SUBCASE("stationary factors give zero") {
    for (double phase : {0.0, 0.7, -2.1}) {
      const FactorRhs r = factor_rhs(stationary_factors(in.s, t, gamma, phase), t, gamma);
      CHECK(r.du.norm() < 1e-15);
      CHECK(r.dv.norm() < 1e-15);
    }
  }
  SUBCASE("unit norm is preserved to first order") {
    const Rank1Perturbation p = make_perturbation(in.s, rng.unit_cvector(n), rng.unit_cvector(n));
    const FactorRhs r = factor_rhs(p, t, gamma);
    CHECK(std::abs(p.u.dot(r.du).real()) < 1e-14);
    CHECK(std::abs(p.v.dot(r.dv).real()) < 1e-14);
  }
  SUBCASE("assembled derivative equals the projected matrix equation") {
    for (int trial = 0; trial < 5; ++trial) {
      const Rank1Perturbation p = make_perturbation(in.s, rng.unit_cvector(n), rng.unit_cvector(n));
      const FactorRhs r = factor_rhs(p, t, gamma);
      const CDense g = gamma * t.x * t.y.adjoint();
      const cplx c = p.u.dot(g * p.v);
      // d/dt (rho u v^*) without the rho' term tied to Re<P_Y G, E>.
      const CDense ydot = r.du * p.v.adjoint() + p.u * r.dv.adjoint() - c.real() * p.u * p.v.adjoint();
      CHECK((ydot + tangent_project(p.u, p.v, g)).norm() < 1e-13 * g.norm());
    }
  }
}

TEST_CASE("splitting step") {
  Rng rng(404);
  const Index n = 5;
  const Instance in = sparse_instance(rng, n, 0.4);
  const Objective obj = Objective::neg_real_part();
  const Eigentriplet t = eigentriplet(in.a, obj.selector);
  const cplx gamma = two_f_lambda_bar(obj, t.lambda);

  SUBCASE("stationary factors are fixed points") {
    const Rank1Perturbation p = stationary_factors(in.s, t, gamma, 0.4);
    for (double h : {1e-3, 1e-1, 1.0}) {
      const Rank1Perturbation q = splitting_step(in.s, p, t, gamma, h);
      CHECK((q.u - p.u).norm() < 1e-14);
      CHECK((q.v - p.v).norm() < 1e-14);
      CHECK(std::abs(q.rho - p.rho) < 1e-14 * p.rho);
    }
  }
  SUBCASE("h = 0 leaves the factors unchanged") {
    const Rank1Perturbation p = make_perturbation(in.s, rng.unit_cvector(n), rng.unit_cvector(n));
    const Rank1Perturbation q = splitting_step(in.s, p, t, gamma, 0.0);
    CHECK((q.u - p.u).norm() < 1e-15);
    CHECK((q.v - p.v).norm() < 1e-15);
  }
  SUBCASE("three-stage oracle") {
    const Rank1Perturbation p = make_perturbation(in.s, rng.unit_cvector(n), rng.unit_cvector(n));
    const double h = 0.03;
    const cplx g2(0.4, 1.7);
    const cplx al = p.u.dot(t.x);
    const cplx be = p.v.dot(t.y);
    const cplx c = al * std::conj(be) * g2;
    CVector u = p.u + (h / p.rho) * (c * p.u - std::conj(be) * g2 * t.x);
    CVector v = p.v + (h / p.rho) * (std::conj(c) * p.v - std::conj(al * g2) * t.y);
    u /= u.norm();
    v /= v.norm();
    const double th = -c.imag() / (2.0 * p.rho);
    u *= std::polar(1.0, th * h);
    v *= std::polar(1.0, -th * h);
    const double rho = 1.0 / project_rank1(in.s, u, v).frobenius_norm();

    const Rank1Perturbation q = splitting_step(in.s, p, t, g2, h);
    CHECK((q.u - u).norm() < 1e-14);
    CHECK((q.v - v).norm() < 1e-14);
    CHECK(std::abs(q.rho - rho) < 1e-14 * rho);
  }
}

TEST_CASE("slopes match finite differences along the integrators") {
  Rng rng(405);
  const Objective obj = Objective::neg_real_part();
  const double eps = 0.6;
  const double d = 1e-6;
  for (int trial = 0; trial < 5; ++trial) {
    const Instance in = sparse_instance(rng, 10, 0.3);
    const ProblemView pb{in.a, eps, in.s, obj};
    auto f_of = [&](const Matrix& e) {
      return f_value(obj, eigentriplet(perturbed_matrix(in.a, eps, e), obj.selector).lambda);
    };

    // Rank-1 flow.
    const Rank1Perturbation p = make_perturbation(in.s, rng.unit_cvector(10), rng.unit_cvector(10));
    const Rank1State st = evaluate_state(pb, p, 0.1, 0.0, {});
    const GradientBundle gb = structured_gradient(obj, in.s, st.trip);
    const cplx gamma = gb.g.gamma;
    auto along = [&](double h) { return f_of(assemble(in.s, splitting_step(in.s, p, st.trip, gamma, h))); };
    const double g = slope_g(eps, st.trip, st.e, p.u, p.v, gb.g, in.s);
    const double fd = testing::central_difference(along, 0.0, d);
    CHECK(std::abs(-g - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));

    // Full flow.
    const FullFlowState fs = evaluate_full_state(pb, testing::random_member(in.s, rng), 0.0, {});
    const GradientBundle fb = structured_gradient(obj, in.s, fs.trip);
    auto along_full = [&](double h) { return full_flow_step(pb, fs, h).f; };
    const double gf = full_flow_slope(eps, fs.trip, fs.e, fb.gs);
    const double fdf = testing::central_difference(along_full, 0.0, d);
    CHECK(std::abs(-gf - fdf) <= 1e-6 * std::max(1.0, std::abs(fdf)));
  }
}

TEST_CASE("inner step controller on a smooth instance") {
  Rng rng(406);
  const Instance in = sparse_instance(rng, 10, 0.3);
  const Objective obj = Objective::neg_real_part();
  const ProblemView pb{in.a, 0.5, in.s, obj};
  const Eigentriplet t0 = eigentriplet(in.a, obj.selector);
  SolverConfig cfg;
  cfg.h0 = 1e-4;
  const Rank1State st = evaluate_state(pb, initial_perturbation(pb, t0), cfg.h0, 0.0, {});
  Trace trace;
  const InnerStepResult r = inner_step(pb, st, cfg, 1, &trace);
  CHECK(r.accepted_h == cfg.h0);
  CHECK(r.next_h == doctest::Approx(cfg.theta * cfg.h0));
  CHECK(r.state.f < st.f);
  CHECK(r.g > 0.0);
  REQUIRE(!trace.empty());
  CHECK(trace.back().accepted);
  CHECK(std::abs(r.state.t - cfg.h0) < 1e-18);

  cfg.h0 = 1e3;
  const Rank1State big = evaluate_state(pb, initial_perturbation(pb, t0), cfg.h0, 0.0, {});
  trace.clear();
  const InnerStepResult rb = inner_step(pb, big, cfg, 1, &trace);
  CHECK(rb.accepted_h < cfg.h0);
  CHECK(rb.state.f < big.f);
  CHECK(trace.size() >= 2);
  CHECK_FALSE(trace.front().accepted);
}

TEST_CASE("rank-1 driver") {
  const Objective obj = Objective::neg_real_part();
  SUBCASE("normal matrix gives the shifted abscissa") {
    CDense d = CDense::Zero(3, 3);
    d(0, 0) = -1.0;
    d(1, 1) = -2.0;
    d(2, 2) = -3.0;
    const Matrix a(d);
    const StructureSpace s = StructureSpace::full(3, Field::kComplex);
    const InnerResult r = inner_minimize({a, 0.5, s, obj}, SolverConfig{});
    CHECK(r.status == RunStatus::kConverged);
    CHECK(std::abs(r.trip.lambda.real() + 0.5) < 1e-8);
  }
  SUBCASE("eps = 0 returns the unperturbed value") {
    Rng rng(407);
    const Instance in = sparse_instance(rng, 6, 0.3);
    const InnerResult r = inner_minimize({in.a, 0.0, in.s, obj}, SolverConfig{});
    CHECK(r.iterations == 0);
    CHECK(r.f == f_value(obj, eigentriplet(in.a, obj.selector).lambda));
  }
  SUBCASE("agrees with the full flow and stays monotone") {
    Rng rng(408);
    for (int trial = 0; trial < 4; ++trial) {
      const Instance in = sparse_instance(rng, 20, 0.2);
      for (double eps : {0.1, 1.0}) {
        const ProblemView pb{in.a, eps, in.s, obj};
        const InnerResult r1 = inner_minimize(pb, SolverConfig{});
        const FullFlowResult rf = full_flow_minimize(pb, SolverConfig{});
        CHECK(r1.status == RunStatus::kConverged);
        CHECK(rf.status == RunStatus::kConverged);
        CHECK(std::abs(r1.f - rf.f) <= 1e-8 * (1.0 + std::abs(rf.f)));
        CHECK(r1.stationarity <= 1e-6);
        CHECK(testing::monotone_accepted(r1.trace));
        CHECK(r1.monotonicity_violations == 0);
        CHECK(std::abs(r1.e.frobenius_norm() - 1.0) < 1e-12);
        CHECK(in.s.membership_residual(r1.e) == 0.0);
      }
    }
  }
  SUBCASE("warm start from a converged optimizer stops early") {
    Rng rng(409);
    const Instance in = sparse_instance(rng, 12, 0.25);
    const ProblemView pb{in.a, 0.5, in.s, obj};
    const InnerResult cold = inner_minimize(pb, SolverConfig{});
    const InnerResult warm = inner_minimize(pb, SolverConfig{}, &cold.pert);
    CHECK(warm.iterations <= 3);
    CHECK(std::abs(warm.f - cold.f) <= 1e-9 * (1.0 + std::abs(cold.f)));
  }
}

TEST_CASE("converged factors are a real multiple of the free gradient") {
  Rng rng(410);
  const Objective obj = Objective::neg_real_part();
  for (int trial = 0; trial < 4; ++trial) {
    const Instance in = sparse_instance(rng, 15, 0.25);
    const InnerResult r = inner_minimize({in.a, 0.7, in.s, obj}, SolverConfig{});
    REQUIRE(r.status == RunStatus::kConverged);
    const CDense g = free_gradient(obj, r.trip).dense();
    const CDense y = r.pert.rho * r.pert.u * r.pert.v.adjoint();
    CHECK((tangent_project(r.pert.u, r.pert.v, g) - g).norm() <= 1e-6 * g.norm());
    const cplx c = (g.adjoint() * y).trace() / g.squaredNorm();
    CHECK((y - c * g).norm() <= 1e-6 * y.norm());
    CHECK(std::abs(c.imag()) <= 1e-6 * std::abs(c));
  }
}

TEST_CASE("iterates contract towards the limit") {
  Rng rng(411);
  const Objective obj = Objective::neg_real_part();
  const Instance in = sparse_instance(rng, 12, 0.3);
  const ProblemView pb{in.a, 0.5, in.s, obj};
  SolverConfig cfg;
  const Eigentriplet t0 = eigentriplet(in.a, obj.selector);
  Rank1State st = evaluate_state(pb, initial_perturbation(pb, t0), cfg.h0, 0.0, {});
  std::vector<Matrix> iterates{st.e};
  for (int k = 1; k <= 60; ++k) {
    try {
      st = inner_step(pb, st, cfg, k).state;
    } catch (const Error&) {
      break;  // rounding floor reached
    }
    iterates.push_back(st.e);
  }
  REQUIRE(iterates.size() > 12);
  const Matrix& limit = iterates.back();
  // Use the stretch before the last ten steps, where distances to the
  // limit are still above rounding.
  const size_t end = iterates.size() - 10;
  const size_t begin = end - 10;
  std::vector<double> dist;
  for (size_t k = begin; k <= end; ++k) dist.push_back(axpby(1.0, iterates[k], -1.0, limit).frobenius_norm());
  const double rate = std::pow(dist.back() / dist.front(), 1.0 / double(dist.size() - 1));
  CHECK(rate < 1.0);
}
