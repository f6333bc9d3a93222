// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

// structeig-cli: structured pseudospectral abscissa/radius and structured
// distances to instability/singularity from the command line.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>

#include <CLI11.hpp>

#include "structeig/structeig.h"

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

struct CliError {
  std::string message;
};

void check(se_status st, const std::string& context) {
  if (st != SE_OK) throw CliError{context + ": " + se_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using MatrixPtr = std::unique_ptr<se_matrix, Deleter<se_matrix, se_matrix_free>>;
using StructurePtr = std::unique_ptr<se_structure, Deleter<se_structure, se_structure_free>>;
using ResultPtr = std::unique_ptr<se_result, Deleter<se_result, se_result_free>>;

MatrixPtr load_matrix(const std::string& path) {
  se_matrix* m = nullptr;
  check(se_matrix_read(path.c_str(), &m), "reading " + path);
  return MatrixPtr(m);
}

struct StructureArgs {
  std::string matrix;
  std::string structure = "sparsity-of-input";
  std::string structure_file;
  bool real = false;
  bool complex = false;
  std::string b;
  std::string c;
};

struct SolveArgs {
  StructureArgs st;
  std::string problem;
  std::optional<double> eps;
  std::optional<double> r;
  std::string objective;
  std::string selector;
  std::string point;
  se_solver_config cfg = se_solver_config_default();
  std::string driver = "rank1";
  std::string backend = "auto";
  std::string out_dir;
  std::string warm_start;
  bool lower_bound = false;
};

void add_structure_options(CLI::App* app, StructureArgs& a) {
  app->add_option("--matrix", a.matrix, "Matrix Market file with A")->check(CLI::ExistingFile);
  app->add_option("--structure", a.structure, "Structure kind")
      ->check(CLI::IsMember(
          {"sparsity-of-input", "toeplitz", "hankel", "hamiltonian", "range-corange", "full"}));
  app->add_option("--structure-file", a.structure_file, "Structure JSON file")
      ->check(CLI::ExistingFile);
  auto* real = app->add_flag("--real", a.real, "Real perturbations (default)");
  auto* cplx = app->add_flag("--complex", a.complex, "Complex perturbations");
  real->excludes(cplx);
  app->add_option("--B", a.b, "Range factor B (range-corange)")->check(CLI::ExistingFile);
  app->add_option("--C", a.c, "Co-range factor C (range-corange)")->check(CLI::ExistingFile);
}

StructurePtr build_structure(const StructureArgs& a, const se_matrix* m) {
  se_structure* s = nullptr;
  if (!a.structure_file.empty()) {
    check(se_structure_read(a.structure_file.c_str(), m, &s), "reading " + a.structure_file);
    return StructurePtr(s);
  }
  MatrixPtr b, c;
  if (a.structure == "range-corange") {
    if (a.b.empty() || a.c.empty()) throw CliError{"--structure range-corange needs --B and --C"};
    b = load_matrix(a.b);
    c = load_matrix(a.c);
  } else if (!a.b.empty() || !a.c.empty()) {
    throw CliError{"--B/--C apply to --structure range-corange only"};
  }
  check(se_structure_create(a.structure.c_str(), a.complex ? 1 : 0, m, b.get(), c.get(), &s),
        "building structure");
  return StructurePtr(s);
}

void add_solve_options(CLI::App* app, SolveArgs& a, bool nearness) {
  add_structure_options(app, a.st);
  app->add_option("--problem", a.problem, "JSON problem file (replaces the problem flags)")
      ->check(CLI::ExistingFile);
  if (nearness) {
    app->add_option("--r", a.r, "Target level r (default 0)");
  } else {
    app->add_option("--eps", a.eps, "Perturbation size eps >= 0")->check(CLI::NonNegativeNumber);
  }
  app->add_option("--objective", a.objective, "Eigenvalue functional")
      ->check(CLI::IsMember({"neg-real-part", "real-part", "modulus-squared", "neg-modulus-squared",
                             "neg-half-modulus-squared", "distance-to-point-squared"}));
  app->add_option("--selector", a.selector, "Target eigenvalue rule")
      ->check(CLI::IsMember(
          {"rightmost", "leftmost", "largest-modulus", "smallest-modulus", "closest-to"}));
  app->add_option("--point", a.point, "Point z0 as 're,im' (closest-to, distance objective)");
  app->add_option("--h0", a.cfg.h0, "Initial step size")->check(CLI::PositiveNumber);
  app->add_option("--theta", a.cfg.theta, "Step growth/reduction factor (> 1)");
  app->add_option("--tol-f", a.cfg.tol_f, "Functional-change tolerance")->check(CLI::PositiveNumber);
  app->add_option("--tol-stat", a.cfg.tol_stat, "Stationarity tolerance")->check(CLI::PositiveNumber);
  app->add_option("--stat-floor", a.cfg.stat_floor, "Residual accepted once f stalls at rounding level")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-iter", a.cfg.max_iter, "Inner iteration limit")->check(CLI::PositiveNumber);
  app->add_option("--backend", a.backend, "Eigensolver backend")
      ->check(CLI::IsMember({"auto", "dense", "sparse"}));
  if (!nearness) {
    app->add_option("--driver", a.driver, "Inner driver")->check(CLI::IsMember({"rank1", "full"}));
  } else {
    app->add_flag("--lower-bound", a.lower_bound,
                  "Also report sigma_min(A), the unstructured lower bound (dist2sing)");
  }
  app->add_option("--out-dir", a.out_dir, "Directory for summary, traces and optimizer");
  app->add_option("--warm-start", a.warm_start, "Factors JSON from an earlier run")
      ->check(CLI::ExistingFile);
}

bool problem_flags_given(const SolveArgs& a, const CLI::App* app) {
  for (const char* f : {"--matrix", "--structure", "--structure-file", "--real", "--complex", "--B",
                        "--C", "--objective", "--selector", "--point"}) {
    if (app->count(f) > 0) return true;
  }
  return a.eps.has_value() || a.r.has_value();
}

std::pair<double, double> parse_point(const std::string& s) {
  double re = 0.0, im = 0.0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &tail) != 2) {
    throw CliError{"--point expects 're,im', got '" + s + "'"};
  }
  return {re, im};
}

void print_summary(const std::string& mode, const se_result* r, bool nearness) {
  double re = 0.0, im = 0.0;
  se_result_lambda(r, &re, &im);
  std::printf("mode        %s\n", mode.c_str());
  std::printf("%-11s %.12g\n", nearness ? "eps_star" : "eps", se_result_eps(r));
  std::printf("f           %.12g\n", se_result_f(r));
  std::printf("lambda      %.12g %+.12gi\n", re, im);
  std::printf("n_eig       %d\n", se_result_n_eig(r));
  std::printf("iterations  %d\n", se_result_iterations(r));
  std::printf("stationary  %.3e\n", se_result_stationarity(r));
  std::printf("status      %s\n", se_result_status_string(r));
  const std::string msg = se_result_message(r);
  if (!msg.empty()) std::printf("message     %s\n", msg.c_str());
  if (nearness) {
    for (int64_t i = 0; i < se_result_outer_length(r); ++i) {
      se_outer_row row;
      check(se_result_outer_row(r, i, &row), "outer trace");
      std::printf("  outer %2d  eps %.10e  phi %+.10e  dphi %+.4e  n_eig %4d  %s\n", row.k, row.eps,
                  row.phi, row.dphi, row.n_eig, row.step);
    }
  }
}

int run_solve(const std::string& mode, SolveArgs& a, const CLI::App* app) {
  const bool nearness = mode == "dist2inst" || mode == "dist2sing";
  se_result* raw = nullptr;
  MatrixPtr m;

  if (!a.problem.empty()) {
    if (problem_flags_given(a, app)) {
      throw CliError{"--problem cannot be combined with matrix, structure or objective flags"};
    }
    check(se_problem_solve(a.problem.c_str(), mode.c_str(), &raw), "solving " + a.problem);
  } else {
    if (a.st.matrix.empty()) throw CliError{"--matrix is required"};
    if (!nearness && !a.eps) throw CliError{"--eps is required for " + mode};

    se_objective obj;
    check(se_mode_default_objective(mode.c_str(), &obj), "objective");
    double pre = 0.0, pim = 0.0;
    if (!a.point.empty()) std::tie(pre, pim) = parse_point(a.point);
    if (!a.objective.empty() || !a.selector.empty()) {
      std::string kind = a.objective;
      if (kind.empty()) {
        static const std::map<int, std::string> names = {
            {SE_OBJ_NEG_REAL_PART, "neg-real-part"},
            {SE_OBJ_MODULUS_SQUARED, "modulus-squared"},
            {SE_OBJ_NEG_MODULUS_SQUARED, "neg-modulus-squared"}};
        kind = names.at(obj.kind);
      }
      check(se_objective_parse(kind.c_str(), a.selector.c_str(), pre, pim, &obj), "objective");
    }
    obj.point_re = pre;
    obj.point_im = pim;
    if ((obj.kind == SE_OBJ_DISTANCE_TO_POINT_SQUARED || obj.selector == SE_SEL_CLOSEST_TO) &&
        a.point.empty()) {
      throw CliError{"--point is required by the distance objective and the closest-to selector"};
    }

    a.cfg.backend = a.backend == "dense"    ? SE_BACKEND_DENSE
                    : a.backend == "sparse" ? SE_BACKEND_SPARSE
                                            : SE_BACKEND_AUTO;
    a.cfg.driver = a.driver == "full" ? SE_DRIVER_FULL_FLOW : SE_DRIVER_RANK1;
    if (a.cfg.driver == SE_DRIVER_FULL_FLOW && !a.warm_start.empty()) {
      throw CliError{"--warm-start applies to the rank-1 driver only"};
    }

    m = load_matrix(a.st.matrix);
    StructurePtr s = build_structure(a.st, m.get());
    const char* warm = a.warm_start.empty() ? nullptr : a.warm_start.c_str();
    if (nearness) {
      const se_outer_config oc = se_outer_config_default();
      check(se_solve_nearness(m.get(), s.get(), obj, a.r.value_or(0.0), &a.cfg, &oc, warm, &raw),
            mode);
    } else {
      check(se_solve_fixed_eps(m.get(), s.get(), obj, *a.eps, &a.cfg, warm, &raw), mode);
    }
    check(se_result_set_mode(raw, mode.c_str()), "result");
  }
  ResultPtr res(raw);

  if (nearness && a.lower_bound) {
    if (mode != "dist2sing") throw CliError{"--lower-bound is available for dist2sing only"};
    if (!m) throw CliError{"--lower-bound needs --matrix"};
    double smin = 0.0;
    check(se_matrix_sigma_min(m.get(), &smin), "sigma_min");
    check(se_result_add_extra(res.get(), "unstructured_lower_bound", smin), "result");
    std::printf("sigma_min   %.10g\n", smin);
  }
  print_summary(mode, res.get(), nearness);
  if (!a.out_dir.empty()) check(se_result_write(res.get(), a.out_dir.c_str()), "writing results");
  return se_result_status(res.get()) == SE_RUN_CONVERGED ? kExitConverged : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured eigenvalue optimization: pseudospectral abscissa/radius and "
               "structured distances to instability/singularity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", se_version());

  std::map<std::string, SolveArgs> solve_args;
  std::map<std::string, CLI::App*> solve_apps;
  const std::pair<const char*, const char*> solve_modes[] = {
      {"psa", "Structured eps-pseudospectral abscissa"},
      {"psr", "Structured eps-pseudospectral radius"},
      {"dist2inst", "Structured distance to instability"},
      {"dist2sing", "Structured distance to singularity"},
  };
  for (const auto& [name, help] : solve_modes) {
    CLI::App* sub = app.add_subcommand(name, help);
    const std::string n = name;
    add_solve_options(sub, solve_args[n], n == "dist2inst" || n == "dist2sing");
    solve_apps[n] = sub;
  }

  StructureArgs pc;
  int samples = 100;
  uint64_t seed = 1;
  double pc_tol = 1e-13;
  CLI::App* project = app.add_subcommand("project-check", "Check projector invariants of a structure");
  add_structure_options(project, pc);
  project->add_option("--samples", samples, "Random test matrices")->check(CLI::PositiveNumber);
  project->add_option("--seed", seed, "Random seed");
  project->add_option("--tol", pc_tol, "Pass threshold")->check(CLI::PositiveNumber);

  std::string trace_in, trace_out;
  double trace_r = 0.0;
  CLI::App* plot = app.add_subcommand("trace-plot-data", "Convert a trace CSV to plot-ready columns");
  plot->add_option("trace", trace_in, "inner_trace.csv or outer_trace.csv")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--out", trace_out, "Output file (default stdout)");
  plot->add_option("--r", trace_r, "Target level for outer traces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitConverged : kExitError;
  }

  try {
    for (auto& [name, sub] : solve_apps) {
      if (sub->parsed()) {
        SolveArgs& a = solve_args[name];
        if (sub->count("--structure") > 0 && !a.st.structure_file.empty()) {
          throw CliError{"--structure and --structure-file are exclusive"};
        }
        return run_solve(name, a, sub);
      }
    }
    if (project->parsed()) {
      if (pc.matrix.empty()) throw CliError{"--matrix is required"};
      if (project->count("--structure") > 0 && !pc.structure_file.empty()) {
        throw CliError{"--structure and --structure-file are exclusive"};
      }
      MatrixPtr m = load_matrix(pc.matrix);
      StructurePtr s = build_structure(pc, m.get());
      se_projection_report rep;
      check(se_project_check(s.get(), samples, seed, &rep), "project-check");
      const bool ok = rep.idempotency <= pc_tol && rep.self_adjointness <= pc_tol &&
                      rep.nonexpansiveness <= pc_tol && rep.membership <= pc_tol;
      std::printf("structure         %s\n", se_structure_describe(s.get()));
      std::printf("dim               %lld\n", static_cast<long long>(se_structure_dim(s.get())));
      std::printf("samples           %d\n", rep.samples);
      std::printf("idempotency       %.3e\n", rep.idempotency);
      std::printf("self-adjointness  %.3e\n", rep.self_adjointness);
      std::printf("nonexpansiveness  %.3e\n", rep.nonexpansiveness);
      std::printf("membership        %.3e\n", rep.membership);
      std::printf("result            %s\n", ok ? "pass" : "FAIL");
      return ok ? kExitConverged : kExitPartial;
    }
    if (plot->parsed()) {
      int rows = 0;
      check(se_trace_plot_data(trace_in.c_str(), trace_out.empty() ? nullptr : trace_out.c_str(),
                               trace_r, &rows),
            "trace-plot-data");
      if (!trace_out.empty()) std::printf("%d rows written to %s\n", rows, trace_out.c_str());
      return kExitConverged;
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitError;
  }
  return kExitError;
}
