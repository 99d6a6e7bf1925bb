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

#include "qubokit/tensor.hpp"

#include <atomic>
#include <limits>

namespace qubokit {

namespace {

std::atomic<std::int64_t> g_dimension_cap{20000};

constexpr double kSymmetryTol = 1e-12;

}  // namespace

std::int64_t dimension_cap() { return g_dimension_cap.load(); }

void set_dimension_cap(std::int64_t cap) {
  if (cap < 1) throw ValidationError("dimension cap must be positive");
  g_dimension_cap.store(cap);
}

void check_capacity(std::int64_t rows, std::int64_t cols) {
  const std::int64_t cap = dimension_cap();
  if (rows < 0 || cols < 0 || rows > cap || cols > cap) {
    throw CapacityError("matrix of size " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " exceeds dimension cap " +
                        std::to_string(cap));
  }
}

std::string to_bitstring(const Bits& bits) {
  std::string s(static_cast<std::size_t>(bits.size()), '0');
  for (Eigen::Index i = 0; i < bits.size(); ++i) {
    if (bits(i) != 0) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::int64_t Shape::count() const {
  validate();
  std::int64_t n = 1;
  for (int d : dims) {
    if (n > std::numeric_limits<std::int64_t>::max() / d) {
      throw CapacityError("shape element count overflows");
    }
    n *= d;
  }
  return n;
}

void Shape::validate() const {
  if (dims.empty()) throw ValidationError("shape must have at least one dim");
  for (int d : dims) {
    if (d < 1) throw ValidationError("shape dims must be positive");
  }
}

int fortran_flatten(const Shape& shape, std::span<const int> idx) {
  shape.validate();
  if (idx.size() != shape.dims.size()) {
    throw ValidationError("multi-index rank does not match shape");
  }
  std::int64_t linear = 1;
  std::int64_t stride = 1;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] < 1 || idx[t] > shape.dims[t]) {
      throw ValidationError("index " + std::to_string(idx[t]) +
                            " out of range for dim " +
                            std::to_string(shape.dims[t]));
    }
    linear += stride * (idx[t] - 1);
    stride *= shape.dims[t];
  }
  return static_cast<int>(linear);
}

namespace {

bool nearly_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

// Kronecker product of factors in reversed list order: F_k (x) ... (x) F_1.
Matrix reversed_kron(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw ValidationError("factor list must be nonempty");
  Matrix acc = factors.back();
  for (std::size_t t = factors.size() - 1; t-- > 0;) {
    acc = kron(acc, factors[t]);
  }
  return acc;
}

}  // namespace

Matrix quad_form_assemble(const std::vector<Matrix>& factors) {
  for (std::size_t t = 0; t < factors.size(); ++t) {
    if (!nearly_symmetric(factors[t], kSymmetryTol)) {
      throw ValidationError("quad_form_assemble factor " + std::to_string(t) +
                            " is not symmetric");
    }
  }
  return reversed_kron(factors);
}

Matrix constraint_assemble(const std::vector<Matrix>& factors) {
  return reversed_kron(factors);
}

Matrix cumulative_matrix(int p) {
  if (p < 1) throw ValidationError("cumulative_matrix needs p >= 1");
  Matrix d = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j <= i; ++j) d(i, j) = 1.0;
  }
  return d;
}

Matrix cyclic_coupling_matrix(int m) {
  if (m < 3) {
    throw ValidationError(
        "cyclic coupling needs m >= 3; the wrap coincides with a neighbour");
  }
  Matrix d = Matrix::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const int gap = std::abs(k - l);
      if (gap == 1 || gap == m - 1) d(k, l) = 0.5;
    }
  }
  return d;
}

QuadExpr::QuadExpr(Matrix Q, Vector v, double constant)
    : Q_(std::move(Q)), v_(std::move(v)), c_(constant) {
  if (Q_.rows() != Q_.cols()) {
    throw ValidationError("quadratic matrix must be square");
  }
  if (Q_.rows() != v_.size()) {
    throw ValidationError("quadratic and linear dimensions disagree");
  }
  if (!Q_.allFinite() || !v_.allFinite() || !std::isfinite(c_)) {
    throw ValidationError("quadratic expression entries must be finite");
  }
  if (!nearly_symmetric(Q_, kSymmetryTol)) {
    throw ValidationError("quadratic matrix is not symmetric");
  }
  Q_ = ((Q_ + Q_.transpose()) / 2.0).eval();
}

QuadExpr QuadExpr::zero(Eigen::Index n) {
  return QuadExpr(Matrix::Zero(n, n), Vector::Zero(n), 0.0);
}

QuadExpr& QuadExpr::operator+=(const QuadExpr& other) {
  if (size() != other.size()) {
    throw ValidationError("cannot add quadratic expressions of sizes " +
                          std::to_string(size()) + " and " +
                          std::to_string(other.size()));
  }
  Q_ += other.Q_;
  v_ += other.v_;
  c_ += other.c_;
  return *this;
}

QuadExpr squared_residual(const Matrix& M, const Vector& d) {
  if (M.rows() != d.size()) {
    throw ValidationError("squared_residual: rows(M) != length(d)");
  }
  return QuadExpr(M.transpose() * M, -M.transpose() * d,
                  0.5 * d.squaredNorm());
}

QuadExpr embed_expr(const QuadExpr& e, Eigen::Index total_size,
                    Eigen::Index offset) {
  if (offset < 0 || offset + e.size() > total_size) {
    throw ValidationError("embed_expr window out of range");
  }
  Matrix Q = Matrix::Zero(total_size, total_size);
  Vector v = Vector::Zero(total_size);
  Q.block(offset, offset, e.size(), e.size()) = e.Q();
  v.segment(offset, e.size()) = e.v();
  return QuadExpr(std::move(Q), std::move(v), e.constant());
}

}  // namespace qubokit
