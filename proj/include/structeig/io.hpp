// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "structeig/outer.hpp"

namespace structeig {

// ---- Matrix Market --------------------------------------------------------

/// Reads `%%MatrixMarket matrix coordinate|array real|complex|integer|pattern
/// general|symmetric|skew-symmetric|hermitian`. Coordinate input is returned
/// sparse (explicit zeros kept as stored entries), array input dense.
/// Errors carry the 1-based line number.
Matrix read_matrix_market(const std::string& path);
Matrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");

/// Sparse matrices are written as coordinate/general in column-major order,
/// dense ones as array/general; the field is real when no entry has an
/// imaginary part. Values use 17 significant digits.
void write_matrix_market(const Matrix& m, const std::string& path);
void write_matrix_market(const Matrix& m, std::ostream& out);

/// Real part of a matrix that must be real; throws kInvalidArgument
/// otherwise.
RDense to_real_dense(const Matrix& m);

// ---- Structures and problem files -----------------------------------------

/// SparsityPattern space of the stored nonzeros of `a` (explicit zeros
/// dropped).
StructureSpace derive_pattern(const Matrix& a, StructureSpace::Field field);

StructureSpace::Field parse_field(const std::string& s);
Objective::Kind parse_objective_kind(const std::string& s);
TargetSelector parse_selector(const std::string& s, cplx point = {});
std::string selector_name(const TargetSelector& sel);

/// Structure from a short kind name (sparsity-of-input | toeplitz | hankel |
/// hamiltonian | range-corange | full). `b` and `c` are used only for
/// range-corange.
StructureSpace make_structure(const std::string& kind, StructureSpace::Field field, const Matrix& a,
                              const Matrix* b = nullptr, const Matrix* c = nullptr);

/// Structure specification file (JSON): {"kind", "field", "pattern":
/// [[i, j], ...] (0-based), "B": path, "C": path}. Relative paths resolve
/// against the file's directory.
StructureSpace read_structure_json(const std::string& path, const Matrix& a);
StructureSpace structure_from_json_text(const std::string& text, const Matrix& a,
                                        const std::string& base_dir = ".");

enum class Mode { kPsa, kPsr, kDist2Inst, kDist2Sing, kFixedEps };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);
bool is_nearness(Mode m);

/// Contents of a JSON problem file.
struct ProblemSpec {
  std::string matrix_path;
  /// Structure kind name; overridden by structure_file or structure_inline.
  std::string structure = "sparsity-of-input";
  std::string structure_file;
  /// Inline structure object, kept as JSON text until the matrix is loaded.
  std::string structure_inline;
  /// Directory of the problem file; relative paths resolve against it.
  std::string base_dir = ".";
  StructureSpace::Field field = StructureSpace::Field::kReal;
  std::optional<std::string> objective;
  std::optional<std::string> selector;
  cplx point{0.0, 0.0};
  Mode mode = Mode::kPsa;
  std::optional<double> eps;
  double r = 0.0;
  SolverConfig solver;
};

/// Parses and checks mode consistency (eps required for psa/psr/fixed-eps,
/// r defaults to 0 for nearness modes).
ProblemSpec read_problem_json(const std::string& path);
ProblemSpec problem_from_json_text(const std::string& text, const std::string& base_dir = ".");

// ---- Results --------------------------------------------------------------

struct RunOutputs {
  Mode mode = Mode::kPsa;
  std::string structure;
  std::string objective;
  std::string selector;
  /// eps for fixed-eps modes, eps_star for nearness modes.
  double eps = 0.0;
  double r = 0.0;
  double f = 0.0;
  cplx lambda{0.0, 0.0};
  int n_eig = 0;
  int iterations = 0;
  double stationarity = 0.0;
  std::string status;
  std::string message;
  SolverConfig solver;
  std::optional<OuterConfig> outer;
  Trace inner_trace;
  std::optional<OuterTrace> outer_trace;
  std::optional<Matrix> optimizer;
  std::optional<Rank1Perturbation> factors;
  std::vector<std::pair<std::string, double>> extras;
};

struct WrittenFiles {
  std::string summary;
  std::string inner_trace;
  std::string outer_trace;
  std::string optimizer;
  std::string factors;
};

/// Writes summary.json, inner_trace.csv, outer_trace.csv (nearness modes
/// only), optimizer.mtx and factors.json (when present) into out_dir.
WrittenFiles write_results(const RunOutputs& out, const std::string& out_dir);

std::string summary_json(const RunOutputs& out);
void write_inner_trace_csv(const Trace& trace, std::ostream& os);
void write_outer_trace_csv(const OuterTrace& trace, std::ostream& os);

/// (u, v, rho) as {"n", "u": [re, im, ...], "v": [...], "rho"}.
std::string factors_json(const Rank1Perturbation& p);
Rank1Perturbation factors_from_json_text(const std::string& text);
Rank1Perturbation read_factors_json(const std::string& path);

/// Converts an inner trace CSV into plot-ready columns
/// `k,t,f,f_minus_final` over accepted steps, or an outer trace CSV into
/// `k,eps,phi,abs_phi_minus_r`. Returns the number of rows written.
int trace_plot_data(std::istream& in, std::ostream& out, double r = 0.0);

}  // namespace structeig
