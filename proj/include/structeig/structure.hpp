// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "structeig/linalg.hpp"

namespace structeig {

/// A real- or complex-linear subspace S of n x n matrices together with its
/// orthogonal projection with respect to Re <., .>.
///
/// Instances are immutable after construction. For range/co-range spaces
/// {B Delta C} the projectors B B^+ and C^+ C are held through orthonormal
/// bases of range(B) and range(C^T), computed once by column-pivoted QR.
class StructureSpace {
 public:
  enum class Kind {
    kSparsityPattern,
    kRangeCorange,
    kToeplitz,
    kHankel,
    kHamiltonianReal,
    kFullComplex,
    kFullReal,
  };
  enum class Field { kReal, kComplex };
  using Coord = std::pair<Index, Index>;

  /// Matrices supported on `pattern` (0-based, duplicates removed, sorted
  /// row-major).
  static StructureSpace sparsity(Index n, std::vector<Coord> pattern, Field field);
  /// {B Delta C : Delta in R^{k,l} (or C^{k,l})}; B is n x k, C is l x n, both
  /// of full rank.
  static StructureSpace range_corange(const RDense& b, const RDense& c, Field field);
  static StructureSpace toeplitz(Index n, Field field);
  static StructureSpace hankel(Index n, Field field);
  /// Real Hamiltonian matrices of size n = 2d (J M symmetric).
  static StructureSpace hamiltonian(Index n);
  static StructureSpace full(Index n, Field field);

  Kind kind() const { return kind_; }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::kReal; }
  /// Ambient matrix size n.
  Index size() const { return n_; }
  /// Real dimension of S.
  Index dim() const;
  const std::vector<Coord>& pattern() const { return pattern_; }
  std::string describe() const;

  /// Pi^S Z.
  Matrix project(const Matrix& z) const;
  /// Pi^S (a b^*), computed without the dense outer product where the kind
  /// allows it. Equal to project(a b^*).
  Matrix project_outer(const CVector& a, const CVector& b) const;
  /// Pi^S (a b^*) p.
  CVector apply_projected_outer(const CVector& a, const CVector& b, const CVector& p) const;

  /// Kind-specific violation of membership in S (0 for members, up to
  /// rounding). Uses the defining relations rather than the projector.
  double membership_residual(const Matrix& m) const;

  /// Orthonormal bases for range(B) and range(C^T) (range/co-range only).
  const RDense& range_basis() const { return qb_; }
  const RDense& corange_basis() const { return qc_; }

 private:
  StructureSpace(Kind kind, Field field, Index n) : kind_(kind), field_(field), n_(n) {}

  void require_size(const Matrix& z, const char* op) const;
  CDense project_dense(const CDense& z) const;

  Kind kind_;
  Field field_;
  Index n_;
  std::vector<Coord> pattern_;
  CSparse template_;  // pattern with zero values (sparsity kind)
  RDense qb_;
  RDense qc_;
};

/// Pi^S (u v^*) for unit u, v.
inline Matrix project_rank1(const StructureSpace& s, const CVector& u, const CVector& v) {
  return s.project_outer(u, v);
}

const char* to_string(StructureSpace::Kind kind);

}  // namespace structeig
