// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

// Sparse eigentriplets: implicitly restarted Arnoldi (ARPACK znaupd/zneupd)
// for the target eigenvalue, shift-invert for modulus/closest-point targets,
// then inverse iteration with a sparse LU for both eigenvectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SparseLU>

#include "structeig/error.hpp"
#include "structeig/linalg.hpp"

#ifdef STRUCTEIG_HAVE_ARPACK
#include <arpack/arpack.hpp>
#endif

namespace structeig {

#ifdef STRUCTEIG_HAVE_ARPACK

namespace {

using SparseLU = Eigen::SparseLU<CSparse, Eigen::COLAMDOrdering<int>>;

CSparse shifted(const CSparse& m, cplx sigma) {
  CSparse id(m.rows(), m.cols());
  id.setIdentity();
  CSparse r = m - sigma * id;
  r.makeCompressed();
  return r;
}

void factorize(SparseLU& lu, const CSparse& m) {
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolver, "sparse LU factorization failed: " + lu.lastErrorMessage());
  }
}

// A few steps of inverse iteration for the null vector of (m - lambda I).
CVector inverse_iteration(const CSparse& m, cplx lambda, const CVector& start) {
  const double scale = std::max(1.0, std::abs(lambda));
  const cplx shift = lambda + cplx(1e-11 * scale, 1e-11 * scale);
  SparseLU lu;
  factorize(lu, shifted(m, shift));
  CVector z = start.normalized();
  for (int it = 0; it < 3; ++it) {
    CVector w = lu.solve(z);
    if (lu.info() != Eigen::Success || !w.allFinite()) {
      throw Error(ErrorCode::kEigensolver, "inverse iteration solve failed");
    }
    z = w.normalized();
  }
  return z;
}

}  // namespace

bool sparse_backend_available() { return true; }

Eigentriplet detail::eigentriplet_sparse(const CSparse& m, const TargetSelector& sel,
                                         const EigenOptions& opts) {
  using arpack::internal::znaupd_c;
  using arpack::internal::zneupd_c;

  const a_int n = a_int(m.rows());
  if (n < 3) return eigentriplet_dense(CDense(m), sel);
  const a_int nev = std::clamp<a_int>(opts.arnoldi_nev, 1, n - 2);
  const a_int ncv = std::min<a_int>(n, std::max<a_int>(2 * nev + 1, 20));

  const char* which = "LM";
  bool shift_invert = false;
  cplx sigma{0.0, 0.0};
  switch (sel.kind) {
    case TargetSelector::Kind::kRightmost: which = "LR"; break;
    case TargetSelector::Kind::kLeftmost: which = "SR"; break;
    case TargetSelector::Kind::kLargestModulus: which = "LM"; break;
    case TargetSelector::Kind::kSmallestModulus: shift_invert = true; break;
    case TargetSelector::Kind::kClosestTo: shift_invert = true; sigma = sel.point; break;
  }

  SparseLU lu;
  if (shift_invert) factorize(lu, shifted(m, sigma));

  std::vector<cplx> resid(size_t(n), cplx(1.0, 0.0));
  std::vector<cplx> v(size_t(n * ncv));
  std::vector<cplx> workd(size_t(3 * n));
  const a_int lworkl = 3 * ncv * ncv + 5 * ncv;
  std::vector<cplx> workl(static_cast<size_t>(lworkl));
  std::vector<double> rwork(static_cast<size_t>(ncv));
  a_int iparam[11] = {0};
  a_int ipntr[14] = {0};
  iparam[0] = 1;
  iparam[2] = 5000;
  iparam[6] = shift_invert ? 3 : 1;
  a_int ido = 0;
  a_int info = 1;  // use the deterministic starting vector in resid

  auto as_c = [](cplx* p) { return reinterpret_cast<_Complex double*>(p); };
  while (true) {
    znaupd_c(&ido, "I", n, which, nev, opts.arnoldi_tol, as_c(resid.data()), ncv, as_c(v.data()), n,
             iparam, ipntr, as_c(workd.data()), as_c(workl.data()), lworkl, rwork.data(), &info);
    if (ido != -1 && ido != 1) break;
    Eigen::Map<CVector> in(workd.data() + ipntr[0] - 1, n);
    Eigen::Map<CVector> out(workd.data() + ipntr[1] - 1, n);
    if (shift_invert) {
      out = lu.solve(CVector(in));
    } else {
      out = m * in;
    }
  }
  if (info < 0) {
    throw Error(ErrorCode::kEigensolver, "znaupd failed with info " + std::to_string(info));
  }

  std::vector<a_int> select(size_t(ncv), 0);
  std::vector<cplx> d(size_t(nev + 1));
  std::vector<cplx> workev(size_t(2 * ncv));
  cplx sigma_c = sigma;
  a_int rvec = 0;
  zneupd_c(rvec, "A", select.data(), as_c(d.data()), as_c(v.data()), n,
           *reinterpret_cast<_Complex double*>(&sigma_c), as_c(workev.data()), "I", n, which, nev,
           opts.arnoldi_tol, as_c(resid.data()), ncv, as_c(v.data()), n, iparam, ipntr,
           as_c(workd.data()), as_c(workl.data()), lworkl, rwork.data(), &info);
  if (info != 0) {
    throw Error(ErrorCode::kEigensolver, "zneupd failed with info " + std::to_string(info));
  }
  const a_int nconv = iparam[4];
  if (nconv <= 0) throw Error(ErrorCode::kEigensolver, "Arnoldi iteration did not converge");
  std::vector<cplx> ritz(d.begin(), d.begin() + std::min<a_int>(nconv, nev));

  const Index i = select_target(ritz, sel);
  Eigentriplet out;
  out.lambda = ritz[size_t(i)];
  out.gap = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < ritz.size(); ++k) {
    if (Index(k) != i) {
      out.gap = std::min(out.gap, std::abs(ritz[k] - out.lambda) / (1.0 + std::abs(out.lambda)));
    }
  }
  const CVector start = CVector::Ones(n);
  out.y = inverse_iteration(m, out.lambda, start);
  const CSparse mh = m.adjoint();
  out.x = inverse_iteration(mh, std::conj(out.lambda), start);
  // Rayleigh-type refinement of lambda from the two vectors.
  const cplx xy = out.x.dot(out.y);
  if (std::abs(xy) > 0.0) out.lambda = out.x.dot(m * out.y) / xy;
  finalize_triplet(out);
  return out;
}

#else

bool sparse_backend_available() { return false; }

Eigentriplet detail::eigentriplet_sparse(const CSparse&, const TargetSelector&, const EigenOptions&) {
  throw Error(ErrorCode::kEigensolver, "sparse eigensolver backend not built (ARPACK missing)");
}

#endif

}  // namespace structeig
