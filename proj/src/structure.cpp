// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include "structeig/structure.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "structeig/error.hpp"

namespace structeig {

namespace {

// Orthonormal basis of the column space of m; throws unless m has full
// column rank.
RDense orthonormal_columns(const RDense& m, const char* name) {
  Eigen::ColPivHouseholderQR<RDense> qr(m);
  if (qr.rank() != m.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must have full rank (rank " + std::to_string(qr.rank()) +
                    " < " + std::to_string(m.cols()) + ")");
  }
  RDense q = qr.householderQ() * RDense::Identity(m.rows(), m.cols());
  return q;
}

CDense hamiltonian_j(Index n) {
  const Index d = n / 2;
  CDense j = CDense::Zero(n, n);
  j.block(0, d, d, d) = CDense::Identity(d, d);
  j.block(d, 0, d, d) = -CDense::Identity(d, d);
  return j;
}

}  // namespace

const char* to_string(StructureSpace::Kind kind) {
  switch (kind) {
    case StructureSpace::Kind::kSparsityPattern: return "sparsity";
    case StructureSpace::Kind::kRangeCorange: return "range-corange";
    case StructureSpace::Kind::kToeplitz: return "toeplitz";
    case StructureSpace::Kind::kHankel: return "hankel";
    case StructureSpace::Kind::kHamiltonianReal: return "hamiltonian";
    case StructureSpace::Kind::kFullComplex: return "full";
    case StructureSpace::Kind::kFullReal: return "full";
  }
  return "unknown";
}

StructureSpace StructureSpace::sparsity(Index n, std::vector<Coord> pattern, Field field) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative matrix size");
  for (const auto& [r, c] : pattern) {
    if (r < 0 || r >= n || c < 0 || c >= n) {
      throw Error(ErrorCode::kDimension, "pattern entry (" + std::to_string(r) + ", " +
                                             std::to_string(c) + ") outside " +
                                             std::to_string(n) + "x" + std::to_string(n));
    }
  }
  std::sort(pattern.begin(), pattern.end());
  pattern.erase(std::unique(pattern.begin(), pattern.end()), pattern.end());

  StructureSpace s(Kind::kSparsityPattern, field, n);
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(pattern.size());
  for (const auto& [r, c] : pattern) t.emplace_back(int(r), int(c), cplx(0.0, 0.0));
  s.template_.resize(n, n);
  s.template_.setFromTriplets(t.begin(), t.end());
  s.template_.makeCompressed();
  s.pattern_ = std::move(pattern);
  return s;
}

StructureSpace StructureSpace::range_corange(const RDense& b, const RDense& c, Field field) {
  const Index n = b.rows();
  if (c.cols() != n) {
    throw Error(ErrorCode::kDimension, "range-corange: C must have " + std::to_string(n) +
                                           " columns, got " + std::to_string(c.cols()));
  }
  if (b.cols() == 0 || c.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "range-corange: empty B or C");
  }
  StructureSpace s(Kind::kRangeCorange, field, n);
  s.qb_ = orthonormal_columns(b, "B");
  s.qc_ = orthonormal_columns(c.transpose(), "C");
  return s;
}

StructureSpace StructureSpace::toeplitz(Index n, Field field) {
  return StructureSpace(Kind::kToeplitz, field, n);
}

StructureSpace StructureSpace::hankel(Index n, Field field) {
  return StructureSpace(Kind::kHankel, field, n);
}

StructureSpace StructureSpace::hamiltonian(Index n) {
  if (n % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "Hamiltonian structure needs even size, got " + std::to_string(n));
  }
  return StructureSpace(Kind::kHamiltonianReal, Field::kReal, n);
}

StructureSpace StructureSpace::full(Index n, Field field) {
  return StructureSpace(field == Field::kReal ? Kind::kFullReal : Kind::kFullComplex, field, n);
}

Index StructureSpace::dim() const {
  const Index mult = is_real() ? 1 : 2;
  switch (kind_) {
    case Kind::kSparsityPattern: return mult * Index(pattern_.size());
    case Kind::kRangeCorange: return mult * qb_.cols() * qc_.cols();
    case Kind::kToeplitz:
    case Kind::kHankel: return n_ == 0 ? 0 : mult * (2 * n_ - 1);
    case Kind::kHamiltonianReal: return (n_ / 2) * (n_ + 1);
    case Kind::kFullComplex:
    case Kind::kFullReal: return mult * n_ * n_;
  }
  return 0;
}

std::string StructureSpace::describe() const {
  std::string s = to_string(kind_);
  s += is_real() ? " (real" : " (complex";
  s += ", n=" + std::to_string(n_) + ", dim=" + std::to_string(dim()) + ")";
  return s;
}

void StructureSpace::require_size(const Matrix& z, const char* op) const {
  if (z.rows() != n_ || z.cols() != n_) {
    throw Error(ErrorCode::kDimension, std::string(op) + ": expected " + std::to_string(n_) +
                                           "x" + std::to_string(n_) + " matrix, got " +
                                           std::to_string(z.rows()) + "x" +
                                           std::to_string(z.cols()));
  }
}

CDense StructureSpace::project_dense(const CDense& z0) const {
  const Index n = n_;
  CDense z = is_real() ? CDense(z0.real().cast<cplx>()) : z0;
  switch (kind_) {
    case Kind::kFullComplex:
    case Kind::kFullReal:
      return z;
    case Kind::kRangeCorange: {
      const CDense qb = qb_.cast<cplx>();
      const CDense qc = qc_.cast<cplx>();
      return qb * ((qb.transpose() * z * qc) * qc.transpose());
    }
    case Kind::kToeplitz: {
      CDense r(n, n);
      for (Index d = -(n - 1); d <= n - 1; ++d) {
        const Index i0 = d < 0 ? -d : 0;
        const Index j0 = d < 0 ? 0 : d;
        const Index len = n - (d < 0 ? -d : d);
        cplx mean{0.0, 0.0};
        for (Index k = 0; k < len; ++k) mean += z(i0 + k, j0 + k);
        mean /= double(len);
        for (Index k = 0; k < len; ++k) r(i0 + k, j0 + k) = mean;
      }
      return r;
    }
    case Kind::kHankel: {
      CDense r(n, n);
      for (Index s = 0; s <= 2 * n - 2; ++s) {
        const Index i_lo = std::max<Index>(0, s - (n - 1));
        const Index i_hi = std::min<Index>(n - 1, s);
        cplx mean{0.0, 0.0};
        for (Index i = i_lo; i <= i_hi; ++i) mean += z(i, s - i);
        mean /= double(i_hi - i_lo + 1);
        for (Index i = i_lo; i <= i_hi; ++i) r(i, s - i) = mean;
      }
      return r;
    }
    case Kind::kHamiltonianReal: {
      const CDense j = hamiltonian_j(n);
      const CDense jz = j * z;
      const CDense sym = 0.5 * (jz + jz.transpose());
      return -j * sym;
    }
    case Kind::kSparsityPattern:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "project_dense: unsupported kind");
}

Matrix StructureSpace::project(const Matrix& z) const {
  require_size(z, "project");
  if (kind_ == Kind::kSparsityPattern) {
    CSparse r = template_;
    for (Index j = 0; j < r.outerSize(); ++j) {
      for (CSparse::InnerIterator it(r, j); it; ++it) {
        cplx v = z.is_sparse() ? z.sparse().coeff(it.row(), it.col()) : z.dense()(it.row(), it.col());
        it.valueRef() = is_real() ? cplx(v.real(), 0.0) : v;
      }
    }
    return Matrix(std::move(r));
  }
  return Matrix(project_dense(z.to_dense()));
}

Matrix StructureSpace::project_outer(const CVector& a, const CVector& b) const {
  if (a.size() != n_ || b.size() != n_) {
    throw Error(ErrorCode::kDimension, "project_outer: vector length mismatch");
  }
  switch (kind_) {
    case Kind::kSparsityPattern: {
      CSparse r = template_;
      for (Index j = 0; j < r.outerSize(); ++j) {
        const cplx bj = std::conj(b(j));
        for (CSparse::InnerIterator it(r, j); it; ++it) {
          const cplx v = a(it.row()) * bj;
          it.valueRef() = is_real() ? cplx(v.real(), 0.0) : v;
        }
      }
      return Matrix(std::move(r));
    }
    case Kind::kRangeCorange: {
      const CVector pa = qb_.cast<cplx>() * (qb_.transpose().cast<cplx>() * a);
      const CVector pb = qc_.cast<cplx>() * (qc_.transpose().cast<cplx>() * b);
      CDense r = pa * pb.adjoint();
      if (is_real()) r = r.real().cast<cplx>();
      return Matrix(std::move(r));
    }
    case Kind::kFullComplex:
      return Matrix(CDense(a * b.adjoint()));
    case Kind::kFullReal:
      return Matrix(CDense((a * b.adjoint()).real().cast<cplx>()));
    default:
      return Matrix(project_dense(a * b.adjoint()));
  }
}

CVector StructureSpace::apply_projected_outer(const CVector& a, const CVector& b,
                                              const CVector& p) const {
  if (a.size() != n_ || b.size() != n_ || p.size() != n_) {
    throw Error(ErrorCode::kDimension, "apply_projected_outer: vector length mismatch");
  }
  switch (kind_) {
    case Kind::kSparsityPattern: {
      CVector r = CVector::Zero(n_);
      for (const auto& [i, j] : pattern_) {
        cplx v = a(i) * std::conj(b(j));
        if (is_real()) v = v.real();
        r(i) += v * p(j);
      }
      return r;
    }
    case Kind::kRangeCorange: {
      const CVector pa = qb_.cast<cplx>() * (qb_.transpose().cast<cplx>() * a);
      const CVector pb = qc_.cast<cplx>() * (qc_.transpose().cast<cplx>() * b);
      if (!is_real()) return pa * pb.dot(p);
      // Re(w z^*) p = (w (z^* p) + conj(w) (z^T p)) / 2
      return 0.5 * (pa * pb.dot(p) + pa.conjugate() * (pb.transpose() * p)(0));
    }
    case Kind::kFullComplex:
      return a * b.dot(p);
    case Kind::kFullReal:
      return 0.5 * (a * b.dot(p) + a.conjugate() * (b.transpose() * p)(0));
    default:
      return project_outer(a, b).apply(p);
  }
}

double StructureSpace::membership_residual(const Matrix& m) const {
  require_size(m, "membership_residual");
  const CDense d = m.to_dense();
  const Index n = n_;
  double res = is_real() ? d.imag().norm() : 0.0;
  switch (kind_) {
    case Kind::kFullComplex:
    case Kind::kFullReal:
      break;
    case Kind::kSparsityPattern: {
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> on =
          Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
      for (const auto& [i, j] : pattern_) on(i, j) = true;
      double off = 0.0;
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
          if (!on(i, j)) off += std::norm(d(i, j));
      res += std::sqrt(off);
      break;
    }
    case Kind::kRangeCorange: {
      const CDense qb = qb_.cast<cplx>();
      const CDense qc = qc_.cast<cplx>();
      res += (d - qb * (qb.transpose() * d * qc) * qc.transpose()).norm();
      break;
    }
    case Kind::kToeplitz:
      for (Index i = 1; i < n; ++i)
        for (Index j = 1; j < n; ++j) res += std::abs(d(i, j) - d(i - 1, j - 1));
      break;
    case Kind::kHankel:
      for (Index i = 1; i < n; ++i)
        for (Index j = 0; j + 1 < n; ++j) res += std::abs(d(i, j) - d(i - 1, j + 1));
      break;
    case Kind::kHamiltonianReal: {
      const CDense jm = hamiltonian_j(n) * d;
      res += (jm - jm.transpose()).norm();
      break;
    }
  }
  return res;
}

}  // namespace structeig
