// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "structeig/error.hpp"

namespace structeig {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension mismatch";
    case ErrorCode::kIllConditioned: return "ill-conditioned eigenvalue";
    case ErrorCode::kStructureDegenerate: return "structure degeneracy";
    case ErrorCode::kStalledStep: return "stalled step";
    case ErrorCode::kNoCrossing: return "no crossing";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kEigensolver: return "eigensolver failure";
    case ErrorCode::kNotWellPosed: return "problem not well posed";
  }
  return "unknown error";
}

namespace {

void require_same_shape(const Matrix& x, const Matrix& y, const char* op) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::kDimension,
                std::string(op) + ": shape mismatch " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                    std::to_string(y.cols()));
  }
}

// sum conj(s_ij) d_ij over the stored entries of s
cplx sparse_dense_inner(const CSparse& s, const CDense& d) {
  cplx acc{0.0, 0.0};
  for (Index j = 0; j < s.outerSize(); ++j) {
    for (CSparse::InnerIterator it(s, j); it; ++it) {
      acc += std::conj(it.value()) * d(it.row(), it.col());
    }
  }
  return acc;
}

}  // namespace

Matrix Matrix::from_triplets(Index rows, Index cols,
                             const std::vector<Eigen::Triplet<cplx>>& t) {
  for (const auto& e : t) {
    if (e.row() < 0 || e.row() >= rows || e.col() < 0 || e.col() >= cols) {
      throw Error(ErrorCode::kDimension, "triplet index (" + std::to_string(e.row()) + ", " +
                                             std::to_string(e.col()) + ") out of bounds");
    }
  }
  CSparse s(rows, cols);
  s.setFromTriplets(t.begin(), t.end());
  return Matrix(std::move(s));
}

Index Matrix::rows() const {
  return std::visit([](const auto& m) { return Index(m.rows()); }, data_);
}

Index Matrix::cols() const {
  return std::visit([](const auto& m) { return Index(m.cols()); }, data_);
}

CDense Matrix::to_dense() const {
  if (is_sparse()) return CDense(sparse());
  return dense();
}

CSparse Matrix::to_sparse() const {
  if (is_sparse()) return sparse();
  CSparse s = dense().sparseView(0.0, 0.0);
  s.makeCompressed();
  return s;
}

Index Matrix::stored_entries() const {
  if (is_sparse()) return sparse().nonZeros();
  return dense().size();
}

bool Matrix::is_real() const {
  if (is_sparse()) {
    const auto& s = sparse();
    for (Index k = 0; k < s.nonZeros(); ++k) {
      if (s.valuePtr()[k].imag() != 0.0) return false;
    }
    return true;
  }
  return (dense().imag().array() == 0.0).all();
}

double Matrix::frobenius_norm() const {
  if (is_sparse()) return sparse().norm();
  return dense().norm();
}

CVector Matrix::apply(const CVector& p) const {
  if (p.size() != cols()) {
    throw Error(ErrorCode::kDimension, "apply: vector length " + std::to_string(p.size()) +
                                           " does not match " + std::to_string(cols()) +
                                           " columns");
  }
  if (is_sparse()) return sparse() * p;
  return dense() * p;
}

Matrix Matrix::adjoint() const {
  if (is_sparse()) return Matrix(CSparse(sparse().adjoint()));
  return Matrix(CDense(dense().adjoint()));
}

Matrix Matrix::real_part() const {
  if (is_sparse()) {
    CSparse s = sparse();
    for (Index k = 0; k < s.nonZeros(); ++k) s.valuePtr()[k] = s.valuePtr()[k].real();
    return Matrix(std::move(s));
  }
  return Matrix(CDense(dense().real().cast<cplx>()));
}

Matrix& Matrix::operator*=(cplx s) {
  std::visit([s](auto& m) { m *= s; }, data_);
  return *this;
}

Matrix operator*(cplx s, const Matrix& m) {
  Matrix r = m;
  r *= s;
  return r;
}

Matrix axpby(cplx a, const Matrix& x, cplx b, const Matrix& y) {
  require_same_shape(x, y, "axpby");
  if (x.is_sparse() && y.is_sparse()) {
    CSparse r = a * x.sparse() + b * y.sparse();
    return Matrix(std::move(r));
  }
  CDense r = a * x.to_dense();
  if (y.is_sparse()) {
    r += b * CDense(y.sparse());
  } else {
    r += b * y.dense();
  }
  return Matrix(std::move(r));
}

cplx frobenius_inner(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y, "frobenius_inner");
  if (!x.is_sparse() && !y.is_sparse()) {
    return (x.dense().array().conjugate() * y.dense().array()).sum();
  }
  if (x.is_sparse() && !y.is_sparse()) return sparse_dense_inner(x.sparse(), y.dense());
  if (!x.is_sparse() && y.is_sparse()) {
    return std::conj(sparse_dense_inner(y.sparse(), x.dense()));
  }
  // Merge the sorted row indices column by column.
  const CSparse& a = x.sparse();
  const CSparse& b = y.sparse();
  cplx acc{0.0, 0.0};
  for (Index j = 0; j < a.outerSize(); ++j) {
    CSparse::InnerIterator ia(a, j);
    CSparse::InnerIterator ib(b, j);
    while (ia && ib) {
      if (ia.row() < ib.row()) {
        ++ia;
      } else if (ib.row() < ia.row()) {
        ++ib;
      } else {
        acc += std::conj(ia.value()) * ib.value();
        ++ia;
        ++ib;
      }
    }
  }
  return acc;
}

Index select_target(const std::vector<cplx>& ev, const TargetSelector& sel) {
  if (ev.empty()) throw Error(ErrorCode::kDimension, "select_target: empty spectrum");
  // Larger score is better.
  auto score = [&sel](cplx z) -> double {
    switch (sel.kind) {
      case TargetSelector::Kind::kRightmost: return z.real();
      case TargetSelector::Kind::kLeftmost: return -z.real();
      case TargetSelector::Kind::kLargestModulus: return std::abs(z);
      case TargetSelector::Kind::kSmallestModulus: return -std::abs(z);
      case TargetSelector::Kind::kClosestTo: return -std::abs(z - sel.point);
    }
    return 0.0;
  };
  Index best = 0;
  for (Index k = 1; k < Index(ev.size()); ++k) {
    const double sb = score(ev[best]);
    const double sk = score(ev[k]);
    const double tol = 1e-12 * (1.0 + std::max(std::abs(ev[best]), std::abs(ev[k])));
    if (sk > sb + tol) {
      best = k;
    } else if (std::abs(sk - sb) <= tol) {
      const cplx zb = ev[best];
      const cplx zk = ev[k];
      if (zk.imag() > zb.imag() + tol ||
          (std::abs(zk.imag() - zb.imag()) <= tol && zk.real() > zb.real())) {
        best = k;
      }
    }
  }
  return best;
}

double normalize_eigenvector_pair(CVector& x, CVector& y) {
  x.normalize();
  y.normalize();
  const cplx xy = x.dot(y);
  const double overlap = std::abs(xy);
  if (!(overlap >= kMinLeftRightOverlap)) {
    throw Error(ErrorCode::kIllConditioned,
                "left/right eigenvector overlap " + std::to_string(overlap) +
                    " below threshold; target eigenvalue is defective or nearly so");
  }
  x *= xy / overlap;
  Index k = 0;
  y.cwiseAbs().maxCoeff(&k);
  const cplx phase = std::conj(y(k)) / std::abs(y(k));
  y *= phase;
  x *= phase;
  return overlap;
}

void detail::finalize_triplet(Eigentriplet& t) {
  const double overlap = normalize_eigenvector_pair(t.x, t.y);
  t.kappa = 1.0 / overlap;
  t.simplicity_warning = t.gap < kSimplicityGap;
}

Eigentriplet detail::eigentriplet_dense(const CDense& m, const TargetSelector& sel) {
  const Index n = m.rows();
  Eigen::ComplexSchur<CDense> schur(m, true);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolver, "Schur decomposition did not converge");
  }
  const CDense& t = schur.matrixT();
  const CDense& u = schur.matrixU();

  std::vector<cplx> ev(static_cast<size_t>(n));
  for (Index k = 0; k < n; ++k) ev[size_t(k)] = t(k, k);
  const Index i = select_target(ev, sel);
  const cplx lambda = t(i, i);

  Eigentriplet out;
  out.lambda = lambda;
  out.gap = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < n; ++k) {
    if (k != i) out.gap = std::min(out.gap, std::abs(ev[size_t(k)] - lambda) / (1.0 + std::abs(lambda)));
  }

  // Eigenvectors of the triangular factor by substitution; small pivots are
  // clamped as in LAPACK's trevc.
  const double smin = std::max(std::numeric_limits<double>::epsilon() * t.norm(),
                               std::numeric_limits<double>::min());
  auto pivot = [&](Index j) {
    cplx d = t(j, j) - lambda;
    if (std::abs(d) < smin) d = smin;
    return d;
  };

  CVector z = CVector::Zero(n);
  z(i) = 1.0;
  for (Index j = i - 1; j >= 0; --j) {
    cplx s{0.0, 0.0};
    for (Index k = j + 1; k <= i; ++k) s += t(j, k) * z(k);
    z(j) = -s / pivot(j);
  }
  // Row vector r with r T = lambda r.
  CVector r = CVector::Zero(n);
  r(i) = 1.0;
  for (Index j = i + 1; j < n; ++j) {
    cplx s{0.0, 0.0};
    for (Index k = i; k < j; ++k) s += r(k) * t(k, j);
    r(j) = -s / pivot(j);
  }
  out.y = u * z;
  out.x = u * r.conjugate();
  finalize_triplet(out);
  return out;
}

Eigentriplet eigentriplet(const Matrix& m, const TargetSelector& sel, const EigenOptions& opts) {
  if (!m.is_square()) throw Error(ErrorCode::kDimension, "eigentriplet: matrix not square");
  if (m.rows() == 0) throw Error(ErrorCode::kDimension, "eigentriplet: empty matrix");
  bool use_sparse = false;
  switch (opts.backend) {
    case EigenBackend::kDense: use_sparse = false; break;
    case EigenBackend::kSparse: use_sparse = true; break;
    case EigenBackend::kAuto:
      use_sparse = m.is_sparse() && m.rows() > opts.sparse_threshold && sparse_backend_available();
      break;
  }
  if (use_sparse) return detail::eigentriplet_sparse(m.to_sparse(), sel, opts);
  if (m.is_sparse()) return detail::eigentriplet_dense(CDense(m.sparse()), sel);
  return detail::eigentriplet_dense(m.dense(), sel);
}

std::vector<cplx> eigenvalues(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::kDimension, "eigenvalues: matrix not square");
  Eigen::ComplexSchur<CDense> schur(m.to_dense(), false);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolver, "Schur decomposition did not converge");
  }
  std::vector<cplx> ev(static_cast<size_t>(m.rows()));
  for (Index k = 0; k < m.rows(); ++k) ev[size_t(k)] = schur.matrixT()(k, k);
  return ev;
}

double sigma_min(const Matrix& m) {
  Eigen::BDCSVD<CDense> svd(m.to_dense());
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0.0;
  return s(s.size() - 1);
}

CVector apply_perturbed(const Matrix& a, double eps, const Matrix& e, const CVector& p) {
  require_same_shape(a, e, "apply_perturbed");
  CVector r = a.apply(p);
  if (eps != 0.0) r += eps * e.apply(p);
  return r;
}

CVector unit_vector(Index n, Index k) {
  CVector e = CVector::Zero(n);
  e(k) = 1.0;
  return e;
}

}  // namespace structeig
