// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

// Random instances shared by the unit tests and the acceptance binary.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "structeig/outer.hpp"

namespace structeig::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }
  cplx cnormal() { return {normal(), normal()}; }

  CVector cvector(Index n) {
    CVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = cnormal();
    return v;
  }
  CVector unit_cvector(Index n) { return cvector(n).normalized(); }

  CDense cdense(Index rows, Index cols) {
    CDense m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = cnormal();
    return m;
  }
  RDense rdense(Index rows, Index cols) {
    RDense m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

  /// Random pattern with each off-diagonal entry kept with probability
  /// `density`; the diagonal is always kept when `with_diagonal`.
  std::vector<StructureSpace::Coord> pattern(Index n, double density, bool with_diagonal = true) {
    std::vector<StructureSpace::Coord> p;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if ((with_diagonal && i == j) || uniform() < density) p.emplace_back(i, j);
    return p;
  }

  /// Exactly k distinct positions of an n x n matrix.
  std::vector<StructureSpace::Coord> pattern_of_size(Index n, Index k) {
    std::vector<Index> cells(size_t(n * n));
    for (Index c = 0; c < n * n; ++c) cells[size_t(c)] = c;
    std::shuffle(cells.begin(), cells.end(), gen_);
    std::vector<StructureSpace::Coord> p;
    for (Index c = 0; c < k; ++c) p.emplace_back(cells[size_t(c)] / n, cells[size_t(c)] % n);
    return p;
  }

  /// Real sparse matrix with normal values on `pattern`.
  Matrix real_on_pattern(Index n, const std::vector<StructureSpace::Coord>& pattern) {
    std::vector<Eigen::Triplet<cplx>> t;
    for (const auto& [i, j] : pattern) t.emplace_back(int(i), int(j), cplx(normal(), 0.0));
    return Matrix::from_triplets(n, n, t);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// A random unit-norm member of S (projection of a random complex matrix).
inline Matrix random_member(const StructureSpace& s, Rng& rng) {
  Matrix e = s.project(Matrix(rng.cdense(s.size(), s.size())));
  e *= 1.0 / e.frobenius_norm();
  return e;
}

/// Central difference of a scalar function.
template <class Fn>
double central_difference(Fn&& fn, double x, double delta) {
  return (fn(x + delta) - fn(x - delta)) / (2.0 * delta);
}

/// Accepted f values from a trace are nonincreasing.
inline bool monotone_accepted(const Trace& trace, double slack = 0.0) {
  bool have = false;
  double prev = 0.0;
  for (const TraceRow& r : trace) {
    if (!r.accepted) continue;
    if (have && r.f > prev + slack) return false;
    prev = r.f;
    have = true;
  }
  return true;
}

}  // namespace structeig::testing
