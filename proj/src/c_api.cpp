// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/structeig.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>

#include "structeig/flow.hpp"
#include "structeig/io.hpp"

using namespace structeig;

struct se_matrix {
  Matrix m;
};

struct se_structure {
  StructureSpace s;
  std::string description;
};

struct se_result {
  bool nearness = false;
  std::string mode;
  std::string structure;
  std::string objective;
  std::string selector;
  double eps = 0.0;
  double r = 0.0;
  double f = 0.0;
  cplx lambda{0.0, 0.0};
  int n_eig = 0;
  int iterations = 0;
  double stationarity = 0.0;
  int monotonicity_violations = 0;
  RunStatus status = RunStatus::kConverged;
  std::string message;
  SolverConfig solver;
  std::optional<OuterConfig> outer;
  Trace trace;
  OuterTrace outer_trace;
  Matrix optimizer;
  std::optional<Rank1Perturbation> factors;
  std::vector<std::pair<std::string, double>> extras;
};

namespace {

thread_local std::string g_last_error;

se_status fail(se_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs body and maps exceptions onto status codes.
template <class Fn>
se_status guarded(Fn&& body) {
  try {
    body();
    return SE_OK;
  } catch (const Error& e) {
    return fail(static_cast<se_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SE_ERR_INTERNAL, e.what());
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::kInvalidArgument, what);
}

SolverConfig to_cpp(const se_solver_config* c) {
  SolverConfig out;
  if (!c) return out;
  out.h0 = c->h0;
  out.theta = c->theta;
  out.tol_f = c->tol_f;
  out.tol_stat = c->tol_stat;
  out.max_iter = c->max_iter;
  out.min_h = c->min_h;
  out.stat_floor = c->stat_floor;
  switch (c->backend) {
    case SE_BACKEND_DENSE: out.eig.backend = EigenBackend::kDense; break;
    case SE_BACKEND_SPARSE: out.eig.backend = EigenBackend::kSparse; break;
    default: out.eig.backend = EigenBackend::kAuto; break;
  }
  validate(out);
  return out;
}

TargetSelector to_cpp(se_selector_kind k, cplx point) {
  switch (k) {
    case SE_SEL_RIGHTMOST: return TargetSelector::rightmost();
    case SE_SEL_LEFTMOST: return TargetSelector::leftmost();
    case SE_SEL_LARGEST_MODULUS: return TargetSelector::largest_modulus();
    case SE_SEL_SMALLEST_MODULUS: return TargetSelector::smallest_modulus();
    case SE_SEL_CLOSEST_TO: return TargetSelector::closest_to(point);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown selector");
}

se_selector_kind to_c(TargetSelector::Kind k) {
  switch (k) {
    case TargetSelector::Kind::kRightmost: return SE_SEL_RIGHTMOST;
    case TargetSelector::Kind::kLeftmost: return SE_SEL_LEFTMOST;
    case TargetSelector::Kind::kLargestModulus: return SE_SEL_LARGEST_MODULUS;
    case TargetSelector::Kind::kSmallestModulus: return SE_SEL_SMALLEST_MODULUS;
    case TargetSelector::Kind::kClosestTo: return SE_SEL_CLOSEST_TO;
  }
  return SE_SEL_RIGHTMOST;
}

Objective to_cpp(const se_objective& o) {
  const cplx z(o.point_re, o.point_im);
  if (o.kind < SE_OBJ_NEG_REAL_PART || o.kind > SE_OBJ_DISTANCE_TO_POINT_SQUARED) {
    throw Error(ErrorCode::kInvalidArgument, "unknown objective kind");
  }
  Objective obj;
  obj.kind = static_cast<Objective::Kind>(int(o.kind));
  obj.point = z;
  obj.selector = to_cpp(o.selector, z);
  return obj;
}

se_result* new_result(const StructureSpace& s, const Objective& obj, const SolverConfig& cfg) {
  auto* r = new se_result;
  r->structure = s.describe();
  r->objective = to_string(obj.kind);
  r->selector = selector_name(obj.selector);
  r->solver = cfg;
  return r;
}

}  // namespace

extern "C" {

const char* se_last_error(void) { return g_last_error.c_str(); }

const char* se_version(void) { return "0.1.0"; }

int se_sparse_backend_available(void) { return sparse_backend_available() ? 1 : 0; }

// ---- matrices ---------------------------------------------------------------

se_status se_matrix_read(const char* path, se_matrix** out) {
  return guarded([&] {
    require(path && out, "se_matrix_read: null argument");
    *out = new se_matrix{read_matrix_market(std::string(path))};
  });
}

se_status se_matrix_from_triplets(int64_t rows, int64_t cols, int64_t nnz, const int64_t* row_idx,
                                  const int64_t* col_idx, const double* re, const double* im,
                                  se_matrix** out) {
  return guarded([&] {
    require(out && rows >= 0 && cols >= 0 && nnz >= 0, "se_matrix_from_triplets: bad arguments");
    require(nnz == 0 || (row_idx && col_idx && re), "se_matrix_from_triplets: null arrays");
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(size_t(nnz));
    for (int64_t k = 0; k < nnz; ++k) {
      t.emplace_back(int(row_idx[k]), int(col_idx[k]), cplx(re[k], im ? im[k] : 0.0));
    }
    *out = new se_matrix{Matrix::from_triplets(rows, cols, t)};
  });
}

se_status se_matrix_from_dense(int64_t rows, int64_t cols, const double* re, const double* im,
                               se_matrix** out) {
  return guarded([&] {
    require(out && rows >= 0 && cols >= 0, "se_matrix_from_dense: bad arguments");
    require(rows * cols == 0 || re, "se_matrix_from_dense: null values");
    CDense d(rows, cols);
    for (int64_t j = 0; j < cols; ++j) {
      for (int64_t i = 0; i < rows; ++i) {
        const int64_t k = j * rows + i;
        d(i, j) = cplx(re[k], im ? im[k] : 0.0);
      }
    }
    *out = new se_matrix{Matrix(std::move(d))};
  });
}

void se_matrix_free(se_matrix* m) { delete m; }

int64_t se_matrix_rows(const se_matrix* m) { return m ? m->m.rows() : -1; }

int64_t se_matrix_cols(const se_matrix* m) { return m ? m->m.cols() : -1; }

int64_t se_matrix_stored_entries(const se_matrix* m) { return m ? m->m.stored_entries() : -1; }

int se_matrix_is_sparse(const se_matrix* m) { return m && m->m.is_sparse() ? 1 : 0; }

se_status se_matrix_get(const se_matrix* m, int64_t i, int64_t j, double* re, double* im) {
  return guarded([&] {
    require(m, "se_matrix_get: null matrix");
    if (i < 0 || j < 0 || i >= m->m.rows() || j >= m->m.cols()) {
      throw Error(ErrorCode::kDimension, "se_matrix_get: index out of range");
    }
    const cplx v = m->m.is_sparse() ? m->m.sparse().coeff(Index(i), Index(j)) : m->m.dense()(i, j);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

se_status se_matrix_write(const se_matrix* m, const char* path) {
  return guarded([&] {
    require(m && path, "se_matrix_write: null argument");
    write_matrix_market(m->m, std::string(path));
  });
}

se_status se_matrix_sigma_min(const se_matrix* m, double* out) {
  return guarded([&] {
    require(m && out, "se_matrix_sigma_min: null argument");
    *out = sigma_min(m->m);
  });
}

// ---- structures -------------------------------------------------------------

se_status se_structure_create(const char* kind, int complex_field, const se_matrix* a,
                              const se_matrix* b, const se_matrix* c, se_structure** out) {
  return guarded([&] {
    require(kind && a && out, "se_structure_create: null argument");
    const auto field = complex_field ? StructureSpace::Field::kComplex : StructureSpace::Field::kReal;
    StructureSpace s = make_structure(kind, field, a->m, b ? &b->m : nullptr, c ? &c->m : nullptr);
    std::string d = s.describe();
    *out = new se_structure{std::move(s), std::move(d)};
  });
}

se_status se_structure_read(const char* json_path, const se_matrix* a, se_structure** out) {
  return guarded([&] {
    require(json_path && a && out, "se_structure_read: null argument");
    StructureSpace s = read_structure_json(json_path, a->m);
    std::string d = s.describe();
    *out = new se_structure{std::move(s), std::move(d)};
  });
}

void se_structure_free(se_structure* s) { delete s; }

int64_t se_structure_dim(const se_structure* s) { return s ? s->s.dim() : -1; }

const char* se_structure_describe(const se_structure* s) { return s ? s->description.c_str() : ""; }

se_status se_project_check(const se_structure* s, int samples, uint64_t seed,
                           se_projection_report* out) {
  return guarded([&] {
    require(s && out && samples > 0, "se_project_check: bad arguments");
    const Index n = s->s.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    auto random_matrix = [&] {
      CDense z(n, n);
      for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) z(i, j) = cplx(normal(rng), normal(rng));
      }
      return Matrix(std::move(z));
    };
    se_projection_report rep{samples, 0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < samples; ++k) {
      const Matrix z = random_matrix();
      const Matrix w = random_matrix();
      const double nz = z.frobenius_norm();
      const double nw = w.frobenius_norm();
      const Matrix pz = s->s.project(z);
      const Matrix pw = s->s.project(w);
      const Matrix ppz = s->s.project(pz);
      rep.idempotency = std::max(rep.idempotency, axpby(1.0, ppz, -1.0, pz).frobenius_norm() / nz);
      rep.self_adjointness = std::max(
          rep.self_adjointness, std::abs(real_inner(pz, w) - real_inner(z, pw)) / (nz * nw));
      rep.nonexpansiveness = std::max(rep.nonexpansiveness, std::max(0.0, pz.frobenius_norm() - nz) / nz);
      rep.membership = std::max(rep.membership, s->s.membership_residual(pz) / nz);
    }
    *out = rep;
  });
}

// ---- solves -----------------------------------------------------------------

se_solver_config se_solver_config_default(void) {
  const SolverConfig d;
  return {d.h0, d.theta, d.tol_f, d.tol_stat, d.max_iter, d.min_h, d.stat_floor, SE_BACKEND_AUTO, SE_DRIVER_RANK1};
}

se_outer_config se_outer_config_default(void) {
  const OuterConfig d;
  return {d.tol_r_rel, d.tol_eps, d.eps_max_factor, d.max_outer, d.warm_start ? 1 : 0, 0.0};
}

se_objective se_objective_default(se_objective_kind kind) {
  Objective o;
  switch (kind) {
    case SE_OBJ_REAL_PART: o = Objective::real_part(); break;
    case SE_OBJ_MODULUS_SQUARED: o = Objective::modulus_squared(); break;
    case SE_OBJ_NEG_MODULUS_SQUARED: o = Objective::neg_modulus_squared(); break;
    case SE_OBJ_NEG_HALF_MODULUS_SQUARED:
      o = Objective::neg_modulus_squared();
      o.kind = Objective::Kind::kNegHalfModulusSquared;
      break;
    case SE_OBJ_DISTANCE_TO_POINT_SQUARED: o = Objective::distance_to_point_squared({}); break;
    default: o = Objective::neg_real_part(); break;
  }
  return {kind, to_c(o.selector.kind), 0.0, 0.0};
}

se_status se_objective_parse(const char* kind, const char* selector, double point_re, double point_im,
                             se_objective* out) {
  return guarded([&] {
    require(kind && out, "se_objective_parse: null argument");
    const auto k = parse_objective_kind(kind);
    se_objective o = se_objective_default(static_cast<se_objective_kind>(int(k)));
    if (k == Objective::Kind::kDistanceToPointSquared) o.selector = SE_SEL_CLOSEST_TO;
    if (selector && *selector) o.selector = to_c(parse_selector(selector).kind);
    o.point_re = point_re;
    o.point_im = point_im;
    *out = o;
  });
}

se_status se_mode_default_objective(const char* mode, se_objective* out) {
  return guarded([&] {
    require(mode && out, "se_mode_default_objective: null argument");
    switch (parse_mode(mode)) {
      case Mode::kPsr: *out = se_objective_default(SE_OBJ_NEG_MODULUS_SQUARED); break;
      case Mode::kDist2Sing: *out = se_objective_default(SE_OBJ_MODULUS_SQUARED); break;
      default: *out = se_objective_default(SE_OBJ_NEG_REAL_PART); break;
    }
  });
}

se_status se_solve_fixed_eps(const se_matrix* a, const se_structure* s, se_objective obj, double eps,
                             const se_solver_config* cfg, const char* warm_start_path,
                             se_result** out) {
  return guarded([&] {
    require(a && s && out, "se_solve_fixed_eps: null argument");
    require(eps >= 0.0, "se_solve_fixed_eps: eps must be >= 0");
    const SolverConfig c = to_cpp(cfg);
    const Objective o = to_cpp(obj);
    const bool full = cfg && cfg->driver == SE_DRIVER_FULL_FLOW;
    require(!(full && warm_start_path), "warm start applies to the rank-1 driver only");
    const ProblemView view{a->m, eps, s->s, o};
    std::unique_ptr<se_result> r(new_result(s->s, o, c));
    r->mode = "fixed-eps";
    r->eps = eps;
    if (full) {
      FullFlowResult fr = full_flow_minimize(view, c);
      r->f = fr.f;
      r->lambda = fr.trip.lambda;
      r->n_eig = fr.n_eig;
      r->iterations = fr.iterations;
      r->stationarity = fr.stationarity;
      r->monotonicity_violations = fr.monotonicity_violations;
      r->status = fr.status;
      r->message = fr.message;
      r->trace = std::move(fr.trace);
      r->optimizer = std::move(fr.e);
    } else {
      std::optional<Rank1Perturbation> warm;
      if (warm_start_path) warm = read_factors_json(warm_start_path);
      InnerResult ir = inner_minimize(view, c, warm ? &*warm : nullptr);
      r->f = ir.f;
      r->lambda = ir.trip.lambda;
      r->n_eig = ir.n_eig;
      r->iterations = ir.iterations;
      r->stationarity = ir.stationarity;
      r->monotonicity_violations = ir.monotonicity_violations;
      r->status = ir.status;
      r->message = ir.message;
      r->trace = std::move(ir.trace);
      r->optimizer = std::move(ir.e);
      r->factors = std::move(ir.pert);
    }
    *out = r.release();
  });
}

se_status se_solve_nearness(const se_matrix* a, const se_structure* s, se_objective obj, double r,
                            const se_solver_config* cfg, const se_outer_config* ocfg,
                            const char* warm_start_path, se_result** out) {
  return guarded([&] {
    require(a && s && out, "se_solve_nearness: null argument");
    require(!(cfg && cfg->driver == SE_DRIVER_FULL_FLOW),
            "nearness solves use the rank-1 driver");
    OuterConfig oc;
    oc.inner = to_cpp(cfg);
    double eps0 = 0.0;
    if (ocfg) {
      oc.tol_r_rel = ocfg->tol_r_rel;
      oc.tol_eps = ocfg->tol_eps;
      oc.eps_max_factor = ocfg->eps_max_factor;
      oc.max_outer = ocfg->max_outer;
      oc.warm_start = ocfg->warm_start != 0;
      eps0 = ocfg->eps0;
    }
    require(oc.tol_r_rel > 0 && oc.tol_eps > 0 && oc.eps_max_factor > 1 && oc.max_outer > 0,
            "se_solve_nearness: invalid outer configuration");
    NearnessProblem pb{a->m, s->s, to_cpp(obj), r, eps0, std::nullopt, std::nullopt};
    if (warm_start_path) pb.warm_start = read_factors_json(warm_start_path);
    OuterResult res = find_epsilon_star(pb, oc);

    std::unique_ptr<se_result> out_r(new_result(s->s, pb.obj, oc.inner));
    out_r->nearness = true;
    out_r->mode = "nearness";
    out_r->outer = oc;
    out_r->eps = res.eps_star;
    out_r->r = r;
    out_r->f = res.phi_star;
    out_r->lambda = res.final_inner.trip.lambda;
    out_r->n_eig = res.n_eig_total;
    out_r->iterations = int(res.trace.size()) - 1;
    out_r->stationarity = res.final_inner.stationarity;
    out_r->monotonicity_violations = res.final_inner.monotonicity_violations;
    out_r->status = res.status == RunStatus::kConverged ? res.final_inner.status : res.status;
    out_r->message = res.message;
    if (res.final_inner.status != RunStatus::kConverged && !res.final_inner.message.empty()) {
      out_r->message += "; inner: " + res.final_inner.message;
    }
    out_r->trace = std::move(res.final_inner.trace);
    out_r->outer_trace = std::move(res.trace);
    out_r->optimizer = std::move(res.final_inner.e);
    out_r->factors = std::move(res.final_inner.pert);
    *out = out_r.release();
  });
}

se_status se_problem_solve(const char* problem_path, const char* expected_mode, se_result** out) {
  se_status st = guarded([&] {
    require(problem_path && out, "se_problem_solve: null argument");
    const ProblemSpec p = read_problem_json(problem_path);
    if (expected_mode && parse_mode(expected_mode) != p.mode) {
      throw Error(ErrorCode::kInvalidArgument, std::string("problem file mode is ") +
                                                   to_string(p.mode) + ", expected " + expected_mode);
    }
    se_matrix a{read_matrix_market(p.matrix_path)};
    std::optional<StructureSpace> s;
    if (!p.structure_file.empty()) {
      s = read_structure_json(p.structure_file, a.m);
    } else if (!p.structure_inline.empty()) {
      s = structure_from_json_text(p.structure_inline, a.m, p.base_dir);
    } else {
      s = make_structure(p.structure, p.field, a.m);
    }
    se_structure st_handle{*s, s->describe()};

    se_objective obj;
    if (se_mode_default_objective(to_string(p.mode), &obj) != SE_OK) {
      throw Error(ErrorCode::kInvalidArgument, g_last_error);
    }
    if (p.objective || p.selector) {
      const std::string kind = p.objective.value_or(to_string(static_cast<Objective::Kind>(int(obj.kind))));
      if (se_objective_parse(kind.c_str(), p.selector ? p.selector->c_str() : nullptr, p.point.real(),
                             p.point.imag(), &obj) != SE_OK) {
        throw Error(ErrorCode::kInvalidArgument, g_last_error);
      }
    }
    obj.point_re = p.point.real();
    obj.point_im = p.point.imag();

    se_solver_config cfg = se_solver_config_default();
    cfg.h0 = p.solver.h0;
    cfg.theta = p.solver.theta;
    cfg.tol_f = p.solver.tol_f;
    cfg.tol_stat = p.solver.tol_stat;
    cfg.max_iter = p.solver.max_iter;
    cfg.min_h = p.solver.min_h;
    cfg.stat_floor = p.solver.stat_floor;

    se_status inner;
    if (is_nearness(p.mode)) {
      inner = se_solve_nearness(&a, &st_handle, obj, p.r, &cfg, nullptr, nullptr, out);
    } else {
      inner = se_solve_fixed_eps(&a, &st_handle, obj, *p.eps, &cfg, nullptr, out);
    }
    if (inner != SE_OK) throw Error(static_cast<ErrorCode>(int(inner)), g_last_error);
    (*out)->mode = to_string(p.mode);
  });
  return st;
}

void se_result_free(se_result* r) { delete r; }

se_run_status se_result_status(const se_result* r) {
  return r ? static_cast<se_run_status>(int(r->status)) : SE_RUN_STALLED;
}

const char* se_result_status_string(const se_result* r) { return r ? to_string(r->status) : ""; }

const char* se_result_message(const se_result* r) { return r ? r->message.c_str() : ""; }

double se_result_eps(const se_result* r) { return r ? r->eps : 0.0; }

double se_result_f(const se_result* r) { return r ? r->f : 0.0; }

void se_result_lambda(const se_result* r, double* re, double* im) {
  if (!r) return;
  if (re) *re = r->lambda.real();
  if (im) *im = r->lambda.imag();
}

int se_result_n_eig(const se_result* r) { return r ? r->n_eig : 0; }

int se_result_iterations(const se_result* r) { return r ? r->iterations : 0; }

double se_result_stationarity(const se_result* r) { return r ? r->stationarity : 0.0; }

int se_result_monotonicity_violations(const se_result* r) {
  return r ? r->monotonicity_violations : 0;
}

int64_t se_result_trace_length(const se_result* r) { return r ? int64_t(r->trace.size()) : 0; }

se_status se_result_trace_row(const se_result* r, int64_t i, se_trace_row* out) {
  return guarded([&] {
    require(r && out, "se_result_trace_row: null argument");
    if (i < 0 || i >= int64_t(r->trace.size())) {
      throw Error(ErrorCode::kDimension, "se_result_trace_row: index out of range");
    }
    const TraceRow& t = r->trace[size_t(i)];
    *out = {t.k, t.t, t.lambda.real(), t.lambda.imag(), t.f, t.h, t.g, t.accepted ? 1 : 0};
  });
}

int64_t se_result_outer_length(const se_result* r) { return r ? int64_t(r->outer_trace.size()) : 0; }

se_status se_result_outer_row(const se_result* r, int64_t i, se_outer_row* out) {
  return guarded([&] {
    require(r && out, "se_result_outer_row: null argument");
    if (i < 0 || i >= int64_t(r->outer_trace.size())) {
      throw Error(ErrorCode::kDimension, "se_result_outer_row: index out of range");
    }
    const OuterRow& o = r->outer_trace[size_t(i)];
    *out = {o.k, o.eps, o.phi, o.dphi, o.n_eig, to_string(o.step)};
  });
}

se_status se_result_optimizer(const se_result* r, se_matrix** out) {
  return guarded([&] {
    require(r && out, "se_result_optimizer: null argument");
    *out = new se_matrix{r->optimizer};
  });
}

int64_t se_result_factor_size(const se_result* r) {
  return r && r->factors ? int64_t(r->factors->u.size()) : 0;
}

se_status se_result_factors(const se_result* r, double* u, double* v, double* rho) {
  return guarded([&] {
    require(r, "se_result_factors: null result");
    if (!r->factors) throw Error(ErrorCode::kInvalidArgument, "result carries no rank-1 factors");
    const Rank1Perturbation& p = *r->factors;
    for (Index i = 0; i < p.u.size(); ++i) {
      if (u) {
        u[2 * i] = p.u[i].real();
        u[2 * i + 1] = p.u[i].imag();
      }
      if (v) {
        v[2 * i] = p.v[i].real();
        v[2 * i + 1] = p.v[i].imag();
      }
    }
    if (rho) *rho = p.rho;
  });
}

se_status se_result_set_mode(se_result* r, const char* mode) {
  return guarded([&] {
    require(r && mode, "se_result_set_mode: null argument");
    const Mode m = parse_mode(mode);
    require(is_nearness(m) == r->nearness, "se_result_set_mode: mode does not match the solve");
    r->mode = mode;
  });
}

se_status se_result_add_extra(se_result* r, const char* key, double value) {
  return guarded([&] {
    require(r && key, "se_result_add_extra: null argument");
    r->extras.emplace_back(key, value);
  });
}

se_status se_result_write(const se_result* r, const char* out_dir) {
  return guarded([&] {
    require(r && out_dir, "se_result_write: null argument");
    RunOutputs o;
    o.mode = r->mode == "nearness" ? Mode::kDist2Inst : parse_mode(r->mode);
    o.structure = r->structure;
    o.objective = r->objective;
    o.selector = r->selector;
    o.eps = r->eps;
    o.r = r->r;
    o.f = r->f;
    o.lambda = r->lambda;
    o.n_eig = r->n_eig;
    o.iterations = r->iterations;
    o.stationarity = r->stationarity;
    o.status = to_string(r->status);
    o.message = r->message;
    o.solver = r->solver;
    o.outer = r->outer;
    o.inner_trace = r->trace;
    if (r->nearness) o.outer_trace = r->outer_trace;
    o.optimizer = r->optimizer;
    o.factors = r->factors;
    o.extras = r->extras;
    o.extras.emplace_back("monotonicity_violations", double(r->monotonicity_violations));
    write_results(o, out_dir);
  });
}

// ---- traces -----------------------------------------------------------------

se_status se_trace_plot_data(const char* in_path, const char* out_path, double r, int* rows_written) {
  return guarded([&] {
    require(in_path, "se_trace_plot_data: null input path");
    std::ifstream in(in_path);
    if (!in) throw Error(ErrorCode::kIo, std::string("cannot open ") + in_path);
    int n = 0;
    if (out_path) {
      std::ofstream out(out_path);
      if (!out) throw Error(ErrorCode::kIo, std::string("cannot write ") + out_path);
      n = trace_plot_data(in, out, r);
    } else {
      n = trace_plot_data(in, std::cout, r);
      std::cout.flush();
    }
    if (rows_written) *rows_written = n;
  });
}

}  // extern "C"
