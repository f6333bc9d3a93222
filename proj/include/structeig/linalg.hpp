// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace structeig {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using CVector = Eigen::VectorXcd;
using CDense = Eigen::MatrixXcd;
using CSparse = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;
using RDense = Eigen::MatrixXd;

/// Complex n_rows x n_cols matrix held either densely or in compressed sparse
/// column layout. Sparse storage never carries duplicate coordinates.
class Matrix {
 public:
  Matrix() : data_(CDense()) {}
  explicit Matrix(CDense dense) : data_(std::move(dense)) {}
  explicit Matrix(CSparse sparse) : data_(std::move(sparse)) {
    std::get<CSparse>(data_).makeCompressed();
  }

  static Matrix zeros(Index rows, Index cols) {
    return Matrix(CDense::Zero(rows, cols));
  }
  static Matrix identity(Index n) { return Matrix(CDense::Identity(n, n)); }

  /// Builds sparse storage; duplicate coordinates are summed.
  static Matrix from_triplets(Index rows, Index cols,
                              const std::vector<Eigen::Triplet<cplx>>& t);

  Index rows() const;
  Index cols() const;
  bool is_sparse() const { return std::holds_alternative<CSparse>(data_); }
  bool is_square() const { return rows() == cols(); }

  const CDense& dense() const { return std::get<CDense>(data_); }
  const CSparse& sparse() const { return std::get<CSparse>(data_); }

  CDense to_dense() const;
  CSparse to_sparse() const;

  /// Stored entries (structural nonzeros for sparse, all entries for dense).
  Index stored_entries() const;

  /// True when every entry has zero imaginary part.
  bool is_real() const;

  double frobenius_norm() const;
  CVector apply(const CVector& p) const;
  Matrix adjoint() const;
  Matrix real_part() const;

  Matrix& operator*=(cplx s);

 private:
  std::variant<CDense, CSparse> data_;
};

Matrix operator*(cplx s, const Matrix& m);

/// a*X + b*Y. The result is sparse only when both operands are sparse.
Matrix axpby(cplx a, const Matrix& x, cplx b, const Matrix& y);

/// Frobenius inner product <X, Y> = sum conj(x_ij) y_ij.
cplx frobenius_inner(const Matrix& x, const Matrix& y);

/// Re <X, Y>.
inline double real_inner(const Matrix& x, const Matrix& y) {
  return frobenius_inner(x, y).real();
}

/// Which eigenvalue of a matrix is the optimization target.
struct TargetSelector {
  enum class Kind { kRightmost, kLeftmost, kLargestModulus, kSmallestModulus, kClosestTo };
  Kind kind = Kind::kRightmost;
  cplx point{0.0, 0.0};

  static TargetSelector rightmost() { return {Kind::kRightmost, {}}; }
  static TargetSelector leftmost() { return {Kind::kLeftmost, {}}; }
  static TargetSelector largest_modulus() { return {Kind::kLargestModulus, {}}; }
  static TargetSelector smallest_modulus() { return {Kind::kSmallestModulus, {}}; }
  static TargetSelector closest_to(cplx z) { return {Kind::kClosestTo, z}; }
};

/// Index of the selected eigenvalue. Ties within 1e-12 (relative) on the
/// selector criterion go to the larger imaginary part, then to the larger
/// real part.
Index select_target(const std::vector<cplx>& eigenvalues, const TargetSelector& sel);

/// Simple eigenvalue with unit left (x) and right (y) eigenvectors scaled
/// so that x^* y is real and positive; kappa = 1 / (x^* y).
struct Eigentriplet {
  cplx lambda{0.0, 0.0};
  CVector x;
  CVector y;
  double kappa = 1.0;
  /// Smallest relative distance |lambda - mu| / (1 + |lambda|) to another
  /// computed eigenvalue mu; infinity for 1x1 matrices.
  double gap = 0.0;
  bool simplicity_warning = false;
};

enum class EigenBackend { kAuto, kDense, kSparse };

struct EigenOptions {
  EigenBackend backend = EigenBackend::kAuto;
  /// Auto selects the sparse backend above this size for sparse inputs.
  Index sparse_threshold = 500;
  /// Number of Arnoldi vectors requested from the sparse backend.
  int arnoldi_nev = 6;
  double arnoldi_tol = 1e-14;
};

/// Relative gap below which the target eigenvalue is flagged as not simple.
inline constexpr double kSimplicityGap = 1e-10;
/// Lower bound on x^* y below which the target is treated as defective.
inline constexpr double kMinLeftRightOverlap = 1e-12;

/// True when this build carries the ARPACK-backed sparse eigensolver.
bool sparse_backend_available();

Eigentriplet eigentriplet(const Matrix& m, const TargetSelector& sel,
                          const EigenOptions& opts = {});

/// All eigenvalues of a square matrix (dense QR).
std::vector<cplx> eigenvalues(const Matrix& m);

/// Rotates x so that x^* y > 0 and fixes the common phase so the
/// largest-modulus entry of y is real positive. Returns x^* y.
double normalize_eigenvector_pair(CVector& x, CVector& y);

/// Smallest singular value (dense SVD).
double sigma_min(const Matrix& m);

/// (A + eps E) p, with E given as an explicit matrix.
CVector apply_perturbed(const Matrix& a, double eps, const Matrix& e, const CVector& p);

/// Unit vector e_k in C^n.
CVector unit_vector(Index n, Index k);

namespace detail {
Eigentriplet eigentriplet_dense(const CDense& m, const TargetSelector& sel);
Eigentriplet eigentriplet_sparse(const CSparse& m, const TargetSelector& sel,
                                 const EigenOptions& opts);
void finalize_triplet(Eigentriplet& t);
}  // namespace detail

}  // namespace structeig
