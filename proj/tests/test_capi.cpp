// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "structeig/structeig.h"

namespace fs = std::filesystem;

namespace {

se_matrix* diag_matrix(const std::vector<double>& d) {
  const int64_t n = int64_t(d.size());
  std::vector<double> re(size_t(n * n), 0.0);
  for (int64_t i = 0; i < n; ++i) re[size_t(i * n + i)] = d[size_t(i)];
  se_matrix* m = nullptr;
  REQUIRE(se_matrix_from_dense(n, n, re.data(), nullptr, &m) == SE_OK);
  return m;
}

}  // namespace

TEST_CASE("matrices through the C API") {
  const int64_t rows[] = {0, 1, 2};
  const int64_t cols[] = {0, 2, 1};
  const double re[] = {1.0, 2.0, 3.0};
  const double im[] = {0.0, -1.0, 0.0};
  se_matrix* m = nullptr;
  REQUIRE(se_matrix_from_triplets(3, 3, 3, rows, cols, re, im, &m) == SE_OK);
  CHECK(se_matrix_rows(m) == 3);
  CHECK(se_matrix_is_sparse(m) == 1);
  CHECK(se_matrix_stored_entries(m) == 3);
  double vr = 0.0, vi = 0.0;
  CHECK(se_matrix_get(m, 1, 2, &vr, &vi) == SE_OK);
  CHECK(vr == 2.0);
  CHECK(vi == -1.0);
  CHECK(se_matrix_get(m, 5, 0, &vr, &vi) != SE_OK);
  CHECK(std::strlen(se_last_error()) > 0);

  const fs::path p = fs::temp_directory_path() / "structeig_capi_m.mtx";
  CHECK(se_matrix_write(m, p.string().c_str()) == SE_OK);
  se_matrix* back = nullptr;
  REQUIRE(se_matrix_read(p.string().c_str(), &back) == SE_OK);
  CHECK(se_matrix_get(back, 2, 1, &vr, &vi) == SE_OK);
  CHECK(vr == 3.0);
  se_matrix_free(back);
  se_matrix_free(m);

  se_matrix* missing = nullptr;
  CHECK(se_matrix_read("/nonexistent.mtx", &missing) == SE_ERR_IO);
  CHECK(missing == nullptr);
}

TEST_CASE("objectives and defaults") {
  se_objective o;
  REQUIRE(se_mode_default_objective("dist2sing", &o) == SE_OK);
  CHECK(o.kind == SE_OBJ_MODULUS_SQUARED);
  CHECK(o.selector == SE_SEL_SMALLEST_MODULUS);
  REQUIRE(se_mode_default_objective("psr", &o) == SE_OK);
  CHECK(o.kind == SE_OBJ_NEG_MODULUS_SQUARED);
  CHECK(se_mode_default_objective("warp", &o) != SE_OK);
  CHECK(se_objective_parse("real-part", "leftmost", 0.0, 0.0, &o) == SE_OK);
  CHECK(se_objective_parse("nope", "leftmost", 0.0, 0.0, &o) == SE_ERR_INVALID_ARGUMENT);
  const se_solver_config cfg = se_solver_config_default();
  CHECK(cfg.h0 == 0.1);
  CHECK(cfg.theta == 1.5);
  CHECK(cfg.stat_floor > 0.0);
  CHECK(std::strlen(se_version()) > 0);
}

TEST_CASE("projection check report") {
  se_matrix* a = diag_matrix({1.0, 2.0, 3.0, 4.0});
  se_structure* s = nullptr;
  REQUIRE(se_structure_create("toeplitz", 1, a, nullptr, nullptr, &s) == SE_OK);
  CHECK(se_structure_dim(s) == 14);
  se_projection_report rep;
  REQUIRE(se_project_check(s, 20, 7, &rep) == SE_OK);
  CHECK(rep.samples == 20);
  CHECK(rep.idempotency < 1e-13);
  CHECK(rep.self_adjointness < 1e-13);
  CHECK(rep.nonexpansiveness < 1e-13);
  CHECK(rep.membership < 1e-13);
  se_structure_free(s);
  CHECK(se_structure_create("hamiltonian", 1, a, nullptr, nullptr, &s) == SE_ERR_INVALID_ARGUMENT);
  se_matrix_free(a);
}

TEST_CASE("fixed-eps and nearness solves") {
  se_matrix* a = diag_matrix({-1.0, -2.0, -3.0});
  se_structure* s = nullptr;
  REQUIRE(se_structure_create("full", 1, a, nullptr, nullptr, &s) == SE_OK);
  se_objective obj;
  REQUIRE(se_mode_default_objective("psa", &obj) == SE_OK);
  const se_solver_config cfg = se_solver_config_default();

  se_result* r = nullptr;
  REQUIRE(se_solve_fixed_eps(a, s, obj, 0.5, &cfg, nullptr, &r) == SE_OK);
  CHECK(se_result_status(r) == SE_RUN_CONVERGED);
  double lr = 0.0, li = 0.0;
  se_result_lambda(r, &lr, &li);
  CHECK(std::abs(lr + 0.5) < 1e-8);
  CHECK(se_result_trace_length(r) >= 1);
  se_trace_row row;
  CHECK(se_result_trace_row(r, 0, &row) == SE_OK);
  CHECK(row.accepted == 1);
  CHECK(se_result_factor_size(r) == 3);
  std::vector<double> u(6), v(6);
  double rho = 0.0;
  CHECK(se_result_factors(r, u.data(), v.data(), &rho) == SE_OK);
  CHECK(rho > 0.0);

  const fs::path dir = fs::temp_directory_path() / "structeig_capi_out";
  fs::remove_all(dir);
  CHECK(se_result_write(r, dir.string().c_str()) == SE_OK);
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "factors.json"));
  se_result_free(r);

  // Warm start from the written factors.
  se_result* w = nullptr;
  REQUIRE(se_solve_fixed_eps(a, s, obj, 0.5, &cfg, (dir / "factors.json").string().c_str(), &w) == SE_OK);
  CHECK(se_result_iterations(w) <= 3);
  se_result_free(w);

  se_objective inst;
  REQUIRE(se_mode_default_objective("dist2inst", &inst) == SE_OK);
  const se_outer_config ocfg = se_outer_config_default();
  se_result* n = nullptr;
  REQUIRE(se_solve_nearness(a, s, inst, 0.0, &cfg, &ocfg, nullptr, &n) == SE_OK);
  CHECK(std::abs(se_result_eps(n) - 1.0) < 1e-8);
  CHECK(se_result_outer_length(n) >= 2);
  se_outer_row orow;
  CHECK(se_result_outer_row(n, 0, &orow) == SE_OK);
  CHECK(std::string(orow.step) == "initial");
  se_result_free(n);

  se_solver_config full = cfg;
  full.driver = SE_DRIVER_FULL_FLOW;
  CHECK(se_solve_nearness(a, s, inst, 0.0, &full, &ocfg, nullptr, &n) == SE_ERR_INVALID_ARGUMENT);

  se_matrix* unstable = diag_matrix({1.0, -1.0, -2.0});
  CHECK(se_solve_nearness(unstable, s, inst, 0.0, &cfg, &ocfg, nullptr, &n) == SE_ERR_NOT_WELL_POSED);
  se_matrix_free(unstable);

  se_structure_free(s);
  se_matrix_free(a);
}

TEST_CASE("problem files through the C API") {
  const fs::path dir = fs::temp_directory_path() / "structeig_capi_problem";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "a.mtx") << "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 -1\n2 2 -2\n";
  std::ofstream(dir / "p.json") << R"({"matrix": "a.mtx", "mode": "psa", "eps": 0.25,
                                      "structure": "full", "field": "complex"})";
  se_result* r = nullptr;
  REQUIRE(se_problem_solve((dir / "p.json").string().c_str(), "psa", &r) == SE_OK);
  CHECK(std::abs(se_result_f(r) - 0.75) < 1e-8);
  se_result_free(r);
  CHECK(se_problem_solve((dir / "p.json").string().c_str(), "psr", &r) == SE_ERR_INVALID_ARGUMENT);
}
