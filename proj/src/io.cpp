// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace structeig {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_error(const std::string& source, long line, const std::string& what) {
  throw Error(ErrorCode::kParse, source + ":" + std::to_string(line) + ": " + what);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? p : (fs::path(base_dir) / path).string();
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.precision(17);
  return out;
}

enum class MmField { kReal, kComplex, kInteger, kPattern };
enum class MmSym { kGeneral, kSymmetric, kSkew, kHermitian };

}  // namespace

// ---- Matrix Market --------------------------------------------------------

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_matrix_market(in, path);
}

Matrix read_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) parse_error(source, 1, "empty file");
  ++lineno;

  std::istringstream hs(line);
  std::string banner, object, format, field_s, sym_s;
  hs >> banner >> object >> format >> field_s >> sym_s;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    parse_error(source, lineno, "expected '%%MatrixMarket matrix' header");
  }
  format = lower(format);
  const bool coordinate = format == "coordinate";
  if (!coordinate && format != "array") parse_error(source, lineno, "unknown format '" + format + "'");

  MmField field;
  field_s = lower(field_s);
  if (field_s == "real" || field_s == "double") field = MmField::kReal;
  else if (field_s == "complex") field = MmField::kComplex;
  else if (field_s == "integer") field = MmField::kInteger;
  else if (field_s == "pattern" && coordinate) field = MmField::kPattern;
  else parse_error(source, lineno, "unsupported field '" + field_s + "'");

  MmSym sym;
  sym_s = lower(sym_s);
  if (sym_s == "general") sym = MmSym::kGeneral;
  else if (sym_s == "symmetric") sym = MmSym::kSymmetric;
  else if (sym_s == "skew-symmetric") sym = MmSym::kSkew;
  else if (sym_s == "hermitian" && field == MmField::kComplex) sym = MmSym::kHermitian;
  else parse_error(source, lineno, "unsupported symmetry '" + sym_s + "'");

  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) parse_error(source, lineno, "missing size line");
  long long rows = -1, cols = -1, nnz = -1;
  {
    std::istringstream ss(line);
    ss >> rows >> cols;
    if (coordinate) ss >> nnz;
    if (!ss || rows < 0 || cols < 0 || (coordinate && nnz < 0)) {
      parse_error(source, lineno, "malformed size line");
    }
    if (sym != MmSym::kGeneral && rows != cols) {
      parse_error(source, lineno, "symmetric storage requires a square matrix");
    }
  }

  auto read_value = [&](std::istringstream& ss) -> cplx {
    double re = 1.0, im = 0.0;
    if (field == MmField::kPattern) return {1.0, 0.0};
    if (!(ss >> re)) parse_error(source, lineno, "missing value");
    if (field == MmField::kComplex && !(ss >> im)) parse_error(source, lineno, "missing imaginary part");
    return {re, im};
  };
  auto mirror = [&](cplx v) {
    switch (sym) {
      case MmSym::kSkew: return -v;
      case MmSym::kHermitian: return std::conj(v);
      default: return v;
    }
  };

  if (coordinate) {
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(size_t(sym == MmSym::kGeneral ? nnz : 2 * nnz));
    for (long long e = 0; e < nnz; ++e) {
      if (!next_data_line(line)) {
        parse_error(source, lineno, "expected " + std::to_string(nnz) + " entries, found " +
                                        std::to_string(e));
      }
      std::istringstream ss(line);
      long long i = 0, j = 0;
      if (!(ss >> i >> j)) parse_error(source, lineno, "malformed entry");
      if (i < 1 || i > rows || j < 1 || j > cols) {
        parse_error(source, lineno, "index (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") out of range");
      }
      const cplx v = read_value(ss);
      trips.emplace_back(int(i - 1), int(j - 1), v);
      if (sym != MmSym::kGeneral && i != j) trips.emplace_back(int(j - 1), int(i - 1), mirror(v));
    }
    if (next_data_line(line)) parse_error(source, lineno, "more entries than declared");
    return Matrix::from_triplets(rows, cols, trips);
  }

  CDense m = CDense::Zero(rows, cols);
  for (long long j = 0; j < cols; ++j) {
    const long long i0 = sym == MmSym::kGeneral ? 0 : (sym == MmSym::kSkew ? j + 1 : j);
    for (long long i = i0; i < rows; ++i) {
      if (!next_data_line(line)) parse_error(source, lineno, "array body ended early");
      std::istringstream ss(line);
      const cplx v = read_value(ss);
      m(i, j) = v;
      if (sym != MmSym::kGeneral && i != j) m(j, i) = mirror(v);
    }
  }
  if (next_data_line(line)) parse_error(source, lineno, "more entries than declared");
  return Matrix(std::move(m));
}

void write_matrix_market(const Matrix& m, const std::string& path) {
  std::ofstream out = open_out(path);
  write_matrix_market(m, out);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

void write_matrix_market(const Matrix& m, std::ostream& out) {
  const bool real = m.is_real();
  auto put = [&](cplx v) {
    out << fmt_double(v.real());
    if (!real) out << ' ' << fmt_double(v.imag());
  };
  const char* field = real ? "real" : "complex";
  if (m.is_sparse()) {
    const CSparse& s = m.sparse();
    out << "%%MatrixMarket matrix coordinate " << field << " general\n";
    out << s.rows() << ' ' << s.cols() << ' ' << s.nonZeros() << '\n';
    for (Index j = 0; j < s.outerSize(); ++j) {
      for (CSparse::InnerIterator it(s, j); it; ++it) {
        out << it.row() + 1 << ' ' << it.col() + 1 << ' ';
        put(it.value());
        out << '\n';
      }
    }
  } else {
    const CDense& d = m.dense();
    out << "%%MatrixMarket matrix array " << field << " general\n";
    out << d.rows() << ' ' << d.cols() << '\n';
    for (Index j = 0; j < d.cols(); ++j) {
      for (Index i = 0; i < d.rows(); ++i) {
        put(d(i, j));
        out << '\n';
      }
    }
  }
}

RDense to_real_dense(const Matrix& m) {
  if (!m.is_real()) throw Error(ErrorCode::kInvalidArgument, "expected a real matrix");
  return m.to_dense().real();
}

// ---- Structures and problem files -----------------------------------------

StructureSpace derive_pattern(const Matrix& a, StructureSpace::Field field) {
  if (!a.is_square()) throw Error(ErrorCode::kDimension, "derive_pattern: matrix is not square");
  std::vector<StructureSpace::Coord> pattern;
  if (a.is_sparse()) {
    const CSparse& s = a.sparse();
    for (Index j = 0; j < s.outerSize(); ++j) {
      for (CSparse::InnerIterator it(s, j); it; ++it) {
        if (it.value() != cplx(0.0, 0.0)) pattern.emplace_back(it.row(), it.col());
      }
    }
  } else {
    const CDense& d = a.dense();
    for (Index i = 0; i < d.rows(); ++i) {
      for (Index j = 0; j < d.cols(); ++j) {
        if (d(i, j) != cplx(0.0, 0.0)) pattern.emplace_back(i, j);
      }
    }
  }
  return StructureSpace::sparsity(a.rows(), std::move(pattern), field);
}

StructureSpace::Field parse_field(const std::string& s) {
  const std::string v = lower(s);
  if (v == "real") return StructureSpace::Field::kReal;
  if (v == "complex") return StructureSpace::Field::kComplex;
  throw Error(ErrorCode::kInvalidArgument, "unknown field '" + s + "' (real|complex)");
}

Objective::Kind parse_objective_kind(const std::string& s) {
  const std::string v = lower(s);
  if (v == "neg-real-part") return Objective::Kind::kNegRealPart;
  if (v == "real-part") return Objective::Kind::kRealPart;
  if (v == "modulus-squared") return Objective::Kind::kModulusSquared;
  if (v == "neg-modulus-squared") return Objective::Kind::kNegModulusSquared;
  if (v == "neg-half-modulus-squared") return Objective::Kind::kNegHalfModulusSquared;
  if (v == "distance-to-point-squared") return Objective::Kind::kDistanceToPointSquared;
  throw Error(ErrorCode::kInvalidArgument, "unknown objective '" + s + "'");
}

TargetSelector parse_selector(const std::string& s, cplx point) {
  const std::string v = lower(s);
  if (v == "rightmost") return TargetSelector::rightmost();
  if (v == "leftmost") return TargetSelector::leftmost();
  if (v == "largest-modulus") return TargetSelector::largest_modulus();
  if (v == "smallest-modulus") return TargetSelector::smallest_modulus();
  if (v == "closest-to") return TargetSelector::closest_to(point);
  throw Error(ErrorCode::kInvalidArgument, "unknown selector '" + s + "'");
}

std::string selector_name(const TargetSelector& sel) {
  switch (sel.kind) {
    case TargetSelector::Kind::kRightmost: return "rightmost";
    case TargetSelector::Kind::kLeftmost: return "leftmost";
    case TargetSelector::Kind::kLargestModulus: return "largest-modulus";
    case TargetSelector::Kind::kSmallestModulus: return "smallest-modulus";
    case TargetSelector::Kind::kClosestTo: return "closest-to";
  }
  return "unknown";
}

StructureSpace make_structure(const std::string& kind, StructureSpace::Field field, const Matrix& a,
                              const Matrix* b, const Matrix* c) {
  const std::string k = lower(kind);
  const Index n = a.rows();
  if (k == "sparsity-of-input" || k == "sparsity") return derive_pattern(a, field);
  if (k == "toeplitz") return StructureSpace::toeplitz(n, field);
  if (k == "hankel") return StructureSpace::hankel(n, field);
  if (k == "hamiltonian") {
    if (field != StructureSpace::Field::kReal) {
      throw Error(ErrorCode::kInvalidArgument, "hamiltonian structure is real only");
    }
    return StructureSpace::hamiltonian(n);
  }
  if (k == "full") return StructureSpace::full(n, field);
  if (k == "range-corange") {
    if (!b || !c) throw Error(ErrorCode::kInvalidArgument, "range-corange structure needs B and C");
    return StructureSpace::range_corange(to_real_dense(*b), to_real_dense(*c), field);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown structure '" + kind + "'");
}

StructureSpace read_structure_json(const std::string& path, const Matrix& a) {
  return structure_from_json_text(read_text(path), a, fs::path(path).parent_path().string());
}

namespace {

StructureSpace structure_from_json(const json& j, const Matrix& a, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::kParse, "structure: object with a \"kind\" field expected");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const auto field = parse_field(j.value("field", std::string("real")));
  if (lower(kind) == "sparsity" && j.contains("pattern")) {
    std::vector<StructureSpace::Coord> pattern;
    for (const auto& p : j.at("pattern")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::kParse, "pattern entries are [i, j]");
      pattern.emplace_back(p[0].get<Index>(), p[1].get<Index>());
    }
    return StructureSpace::sparsity(a.rows(), std::move(pattern), field);
  }
  if (lower(kind) == "range-corange") {
    if (!j.contains("B") || !j.contains("C")) {
      throw Error(ErrorCode::kParse, "range-corange structure needs \"B\" and \"C\" paths");
    }
    const Matrix b = read_matrix_market(resolve(base_dir, j.at("B").get<std::string>()));
    const Matrix c = read_matrix_market(resolve(base_dir, j.at("C").get<std::string>()));
    return make_structure(kind, field, a, &b, &c);
  }
  return make_structure(kind, field, a);
}

}  // namespace

StructureSpace structure_from_json_text(const std::string& text, const Matrix& a,
                                        const std::string& base_dir) {
  try {
    return structure_from_json(parse_json(text, "structure"), a, base_dir);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("structure: ") + e.what());
  }
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::kPsa: return "psa";
    case Mode::kPsr: return "psr";
    case Mode::kDist2Inst: return "dist2inst";
    case Mode::kDist2Sing: return "dist2sing";
    case Mode::kFixedEps: return "fixed-eps";
  }
  return "unknown";
}

Mode parse_mode(const std::string& s) {
  const std::string v = lower(s);
  if (v == "psa") return Mode::kPsa;
  if (v == "psr") return Mode::kPsr;
  if (v == "dist2inst") return Mode::kDist2Inst;
  if (v == "dist2sing") return Mode::kDist2Sing;
  if (v == "fixed-eps") return Mode::kFixedEps;
  throw Error(ErrorCode::kInvalidArgument, "unknown mode '" + s + "'");
}

bool is_nearness(Mode m) { return m == Mode::kDist2Inst || m == Mode::kDist2Sing; }

ProblemSpec read_problem_json(const std::string& path) {
  return problem_from_json_text(read_text(path), fs::path(path).parent_path().string());
}

ProblemSpec problem_from_json_text(const std::string& text, const std::string& base_dir) {
  const json j = parse_json(text, "problem");
  ProblemSpec p;
  p.base_dir = base_dir;
  try {
    p.matrix_path = resolve(base_dir, j.at("matrix").get<std::string>());
    p.mode = parse_mode(j.value("mode", std::string("psa")));
    if (j.contains("structure")) {
      const json& s = j.at("structure");
      if (s.is_object()) {
        p.structure_inline = s.dump();
      } else {
        const std::string v = s.get<std::string>();
        if (v.size() > 5 && v.substr(v.size() - 5) == ".json") {
          p.structure_file = resolve(base_dir, v);
        } else {
          p.structure = v;
        }
      }
    }
    p.field = parse_field(j.value("field", std::string("real")));
    if (j.contains("objective")) p.objective = j.at("objective").get<std::string>();
    if (j.contains("selector")) p.selector = j.at("selector").get<std::string>();
    if (j.contains("point")) {
      const json& z = j.at("point");
      p.point = cplx(z.at(0).get<double>(), z.at(1).get<double>());
    }
    if (j.contains("eps")) p.eps = j.at("eps").get<double>();
    p.r = j.value("r", 0.0);
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      p.solver.h0 = s.value("h0", p.solver.h0);
      p.solver.theta = s.value("theta", p.solver.theta);
      p.solver.tol_f = s.value("tol_f", p.solver.tol_f);
      p.solver.tol_stat = s.value("tol_stat", p.solver.tol_stat);
      p.solver.max_iter = s.value("max_iter", p.solver.max_iter);
      p.solver.min_h = s.value("min_h", p.solver.min_h);
      p.solver.stat_floor = s.value("stat_floor", p.solver.stat_floor);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("problem: ") + e.what());
  }
  if (!is_nearness(p.mode) && !p.eps) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("problem: mode ") + to_string(p.mode) + " requires \"eps\"");
  }
  if (p.eps && !(*p.eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "problem: eps must be >= 0");
  validate(p.solver);
  return p;
}

// ---- Results --------------------------------------------------------------

std::string summary_json(const RunOutputs& o) {
  json j;
  j["mode"] = to_string(o.mode);
  j["structure"] = o.structure;
  j["objective"] = o.objective;
  j["selector"] = o.selector;
  j[is_nearness(o.mode) ? "eps_star" : "eps"] = o.eps;
  if (is_nearness(o.mode)) j["r"] = o.r;
  j["f"] = o.f;
  j["lambda"] = {{"re", o.lambda.real()}, {"im", o.lambda.imag()}};
  j["n_eig"] = o.n_eig;
  j["iterations"] = o.iterations;
  j["stationarity"] = o.stationarity;
  j["status"] = o.status;
  j["message"] = o.message;
  j["solver"] = {{"h0", o.solver.h0},         {"theta", o.solver.theta},
                 {"tol_f", o.solver.tol_f},   {"tol_stat", o.solver.tol_stat},
                 {"max_iter", o.solver.max_iter}, {"min_h", o.solver.min_h},
                 {"stat_floor", o.solver.stat_floor}};
  if (o.outer) {
    j["outer"] = {{"tol_r_rel", o.outer->tol_r_rel},
                  {"tol_eps", o.outer->tol_eps},
                  {"eps_max_factor", o.outer->eps_max_factor},
                  {"max_outer", o.outer->max_outer},
                  {"warm_start", o.outer->warm_start}};
  }
  for (const auto& [key, value] : o.extras) j["extras"][key] = value;
  return j.dump(2);
}

void write_inner_trace_csv(const Trace& trace, std::ostream& os) {
  os << "k,t_k,re_lambda,im_lambda,f_k,h_k,g_k,accepted\n";
  for (const TraceRow& r : trace) {
    os << r.k << ',' << fmt_double(r.t) << ',' << fmt_double(r.lambda.real()) << ','
       << fmt_double(r.lambda.imag()) << ',' << fmt_double(r.f) << ',' << fmt_double(r.h) << ','
       << fmt_double(r.g) << ',' << (r.accepted ? 1 : 0) << '\n';
  }
}

void write_outer_trace_csv(const OuterTrace& trace, std::ostream& os) {
  os << "k,eps,phi,dphi,n_eig,step\n";
  for (const OuterRow& r : trace) {
    os << r.k << ',' << fmt_double(r.eps) << ',' << fmt_double(r.phi) << ',' << fmt_double(r.dphi)
       << ',' << r.n_eig << ',' << to_string(r.step) << '\n';
  }
}

std::string factors_json(const Rank1Perturbation& p) {
  auto interleave = [](const CVector& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) {
      a.push_back(v[i].real());
      a.push_back(v[i].imag());
    }
    return a;
  };
  json j;
  j["n"] = p.u.size();
  j["u"] = interleave(p.u);
  j["v"] = interleave(p.v);
  j["rho"] = p.rho;
  return j.dump(2);
}

Rank1Perturbation factors_from_json_text(const std::string& text) {
  const json j = parse_json(text, "factors");
  try {
    const Index n = j.at("n").get<Index>();
    auto read_vec = [&](const char* key) {
      const json& a = j.at(key);
      if (!a.is_array() || Index(a.size()) != 2 * n) {
        throw Error(ErrorCode::kParse, std::string("factors: \"") + key + "\" must hold 2n numbers");
      }
      CVector v(n);
      for (Index i = 0; i < n; ++i) v[i] = cplx(a[2 * i].get<double>(), a[2 * i + 1].get<double>());
      return v;
    };
    Rank1Perturbation p;
    p.u = read_vec("u");
    p.v = read_vec("v");
    p.rho = j.value("rho", 1.0);
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("factors: ") + e.what());
  }
}

Rank1Perturbation read_factors_json(const std::string& path) {
  return factors_from_json_text(read_text(path));
}

WrittenFiles write_results(const RunOutputs& o, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir + ": " + ec.message());
  const fs::path dir(out_dir);
  WrittenFiles w;

  auto write_file = [](const std::string& path, auto&& body) {
    std::ofstream out = open_out(path);
    body(out);
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
  };

  w.summary = (dir / "summary.json").string();
  write_file(w.summary, [&](std::ostream& os) { os << summary_json(o) << '\n'; });
  w.inner_trace = (dir / "inner_trace.csv").string();
  write_file(w.inner_trace, [&](std::ostream& os) { write_inner_trace_csv(o.inner_trace, os); });
  if (is_nearness(o.mode) && o.outer_trace) {
    w.outer_trace = (dir / "outer_trace.csv").string();
    write_file(w.outer_trace, [&](std::ostream& os) { write_outer_trace_csv(*o.outer_trace, os); });
  }
  if (o.optimizer) {
    w.optimizer = (dir / "optimizer.mtx").string();
    write_matrix_market(*o.optimizer, w.optimizer);
  }
  if (o.factors) {
    w.factors = (dir / "factors.json").string();
    write_file(w.factors, [&](std::ostream& os) { os << factors_json(*o.factors) << '\n'; });
  }
  return w;
}

int trace_plot_data(std::istream& in, std::ostream& out, double r) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::kParse, "trace: empty input");
  if (!header.empty() && header.back() == '\r') header.pop_back();

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(std::move(cells));
  }
  auto num = [](const std::string& s) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "trace: bad number '" + s + "'");
    }
  };

  int written = 0;
  if (header == "k,t_k,re_lambda,im_lambda,f_k,h_k,g_k,accepted") {
    std::vector<const std::vector<std::string>*> acc;
    for (const auto& row : rows) {
      if (row.size() != 8) throw Error(ErrorCode::kParse, "trace: inner rows need 8 columns");
      if (row[7] == "1") acc.push_back(&row);
    }
    const double f_final = acc.empty() ? 0.0 : num((*acc.back())[4]);
    out << "k,t,f,f_minus_final\n";
    for (const auto* row : acc) {
      const double f = num((*row)[4]);
      out << (*row)[0] << ',' << (*row)[1] << ',' << (*row)[4] << ',' << fmt_double(f - f_final) << '\n';
      ++written;
    }
  } else if (header == "k,eps,phi,dphi,n_eig,step") {
    out << "k,eps,phi,abs_phi_minus_r\n";
    for (const auto& row : rows) {
      if (row.size() != 6) throw Error(ErrorCode::kParse, "trace: outer rows need 6 columns");
      out << row[0] << ',' << row[1] << ',' << row[2] << ',' << fmt_double(std::abs(num(row[2]) - r))
          << '\n';
      ++written;
    }
  } else {
    throw Error(ErrorCode::kParse, "trace: unrecognized header '" + header + "'");
  }
  return written;
}

}  // namespace structeig
