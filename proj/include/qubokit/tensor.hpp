// Copyright 2026 Qubokit Contributors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUBOKIT_TENSOR_HPP
#define QUBOKIT_TENSOR_HPP

#include <span>
#include <vector>

#include "qubokit/common.hpp"

namespace qubokit {

/// Extents of a multi-index variable array. The leftmost index varies
/// fastest (Fortran order), so for dims (n, m) the pair (i, j) lands at
/// linear position n(j-1) + i.
struct Shape {
  std::vector<int> dims;

  std::int64_t count() const;
  void validate() const;
};

/// Fortran-order linear index of a 1-based multi-index; the result is
/// 1-based as well. Throws ValidationError when an index is out of range.
int fortran_flatten(const Shape& shape, std::span<const int> idx);

/// Kronecker product: element a_ij * b_kl sits at row p(i-1)+k,
/// column q(j-1)+l, where B is p x q.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  check_capacity(a.rows() * b.rows(), a.cols() * b.cols());
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.derived();
    }
  }
  return out;
}

/// Matrix of the quadratic form over a Fortran-flattened variable array.
///
/// Factors are listed innermost index first (the order indices are written
/// in), one symmetric matrix per index; the Kronecker product is taken in
/// reversed order so that
///   xbar^T (F_k (x) ... (x) F_1) xbar
/// equals the multi-index sum with coefficient products f1_{i1 i2} ... .
Matrix quad_form_assemble(const std::vector<Matrix>& factors);

/// Constraint matrix over a Fortran-flattened variable array; same factor
/// order convention as quad_form_assemble, factor k sized l_k x dim_k. The
/// rows of the result enumerate the right-hand-side array in Fortran order.
Matrix constraint_assemble(const std::vector<Matrix>& factors);

/// p x p lower-triangular all-ones matrix; D x gives cumulative sums.
Matrix cumulative_matrix(int p);

/// m x m coupling matrix with 0.5 where |k-l| = 1 or |k-l| = m-1, used to
/// vectorize cyclic sums x_{i,j} x_{i,j+1} with wraparound. Requires m >= 3
/// (for m < 3 the wrap coincides with the neighbour).
Matrix cyclic_coupling_matrix(int m);

/// Quadratic expression (1/2) x^T Q x + v^T x + c with Q symmetric.
///
/// Construction symmetrizes Q via (Q + Q^T)/2 and rejects matrices whose
/// asymmetry exceeds 1e-12 relative to the largest entry, as well as any
/// non-finite input.
class QuadExpr {
 public:
  QuadExpr() = default;
  QuadExpr(Matrix Q, Vector v, double constant = 0.0);

  static QuadExpr zero(Eigen::Index n);

  Eigen::Index size() const { return v_.size(); }
  const Matrix& Q() const { return Q_; }
  const Vector& v() const { return v_; }
  double constant() const { return c_; }

  QuadExpr& operator+=(const QuadExpr& other);
  friend QuadExpr operator+(QuadExpr lhs, const QuadExpr& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend QuadExpr operator*(double scale, QuadExpr e) {
    e.Q_ *= scale;
    e.v_ *= scale;
    e.c_ *= scale;
    return e;
  }

 private:
  Matrix Q_;
  Vector v_;
  double c_ = 0.0;
};

/// (1/2) ||M x - d||^2 as a QuadExpr: Q = M^T M, v = -M^T d, c = ||d||^2/2.
QuadExpr squared_residual(const Matrix& M, const Vector& d);

/// Re-embed an expression over a window of a wider variable vector:
/// variables [offset, offset + e.size()) of the result are e's, the rest
/// enter with zero coefficients.
QuadExpr embed_expr(const QuadExpr& e, Eigen::Index total_size,
                    Eigen::Index offset);

}  // namespace qubokit

#endif  // QUBOKIT_TENSOR_HPP
