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

#include "qubokit/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qubokit {

Domain Domain::binary() { return Domain(Kind::binary, 0.0, 1.0, {}); }

Domain Domain::spin() { return Domain(Kind::spin, -1.0, 1.0, {}); }

Domain Domain::integer(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) throw ValidationError("integer domain needs hi > lo");
  return Domain(Kind::integer, static_cast<double>(lo),
                static_cast<double>(hi), {});
}

Domain Domain::discrete(std::vector<double> values) {
  if (values.size() < 2) {
    throw ValidationError("discrete domain needs at least two values");
  }
  std::set<double> seen(values.begin(), values.end());
  if (seen.size() != values.size()) {
    throw ValidationError("discrete domain values must be pairwise distinct");
  }
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  return Domain(Kind::discrete, lo, hi, std::move(values));
}

Domain Domain::continuous(double lo, double hi) {
  if (!(hi > lo)) throw ValidationError("continuous domain needs hi > lo");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError("continuous domain bounds must be finite");
  }
  return Domain(Kind::continuous, lo, hi, {});
}

void LinearSystem::validate(Eigen::Index num_vars,
                            const std::string& what) const {
  if (A.cols() != num_vars) {
    throw ValidationError(what + " system has " + std::to_string(A.cols()) +
                          " columns for " + std::to_string(num_vars) +
                          " variables");
  }
  if (A.rows() != b.size()) {
    throw ValidationError(what + " system rows and right-hand side disagree");
  }
  if (!A.allFinite() || !b.allFinite()) {
    throw ValidationError(what + " system entries must be finite");
  }
}

void MixedProblem::validate() const {
  if (domains.empty()) throw ValidationError("problem has no variables");
  if (objective.size() != num_vars()) {
    throw ValidationError("objective dimension does not match variable count");
  }
  if (eq) eq->validate(num_vars(), "equality");
  if (ineq) ineq->validate(num_vars(), "inequality");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
}

void Qubo::validate() const {
  if (static_cast<Eigen::Index>(labels.size()) != num_bits()) {
    throw ValidationError("label count does not match bit count");
  }
}

double evaluate(const QuadExpr& e, const Vector& x) {
  if (x.size() != e.size()) {
    throw ValidationError("evaluate: point dimension mismatch");
  }
  return 0.5 * x.dot(e.Q() * x) + e.v().dot(x) + e.constant();
}

double evaluate(const QuadExpr& e, const Bits& bits) {
  return evaluate(e, bits.cast<double>().eval());
}

Qubo absorb_linear(Qubo q) {
  Matrix Q = q.expr.Q();
  Q.diagonal() += 2.0 * q.expr.v();
  q.expr = QuadExpr(std::move(Q), Vector::Zero(q.expr.size()),
                    q.expr.constant());
  return q;
}

Ising qubo_to_ising(const Qubo& q) {
  const Matrix& Q = q.expr.Q();
  const Vector& v = q.expr.v();
  const Eigen::Index n = q.num_bits();

  Matrix J = -0.25 * Q;
  J.diagonal().setZero();
  Vector h = -0.5 * v - 0.25 * Q.rowwise().sum();

  const double trace = Q.trace();
  const double off_sum = Q.sum() - trace;
  const double c = q.expr.constant() + off_sum / 8.0 + trace / 4.0 +
                   0.5 * v.sum();
  return Ising{std::move(J), std::move(h), c};
}

Qubo ising_to_qubo(const Ising& m) {
  if (m.J.rows() != m.J.cols() || m.J.rows() != m.h.size()) {
    throw ValidationError("ising dimensions disagree");
  }
  for (Eigen::Index i = 0; i < m.J.rows(); ++i) {
    if (m.J(i, i) != 0.0) {
      throw ValidationError("ising coupling matrix must have zero diagonal");
    }
  }
  const Eigen::Index n = m.J.rows();
  Matrix Q = -4.0 * m.J;
  Vector v = 2.0 * m.J * Vector::Ones(n) - 2.0 * m.h;
  const double c = m.c - 0.5 * m.J.sum() + m.h.sum();

  Qubo out;
  out.expr = QuadExpr(std::move(Q), std::move(v), c);
  out.labels.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.labels.push_back("s" + std::to_string(i));
  }
  return out;
}

Bits FixedQubo::embed(const Bits& reduced_bits) const {
  if (reduced_bits.size() != static_cast<Eigen::Index>(free_index.size())) {
    throw ValidationError("embed: reduced bit count mismatch");
  }
  Bits full(static_cast<Eigen::Index>(free_index.size() + fixed_index.size()));
  for (std::size_t k = 0; k < free_index.size(); ++k) {
    full(free_index[k]) = reduced_bits(static_cast<Eigen::Index>(k));
  }
  for (std::size_t k = 0; k < fixed_index.size(); ++k) {
    full(fixed_index[k]) = fixed_value(static_cast<Eigen::Index>(k));
  }
  return full;
}

FixedQubo fix_variables(const Qubo& q, const std::vector<int>& ind,
                        const Bits& value) {
  const Eigen::Index n = q.num_bits();
  if (static_cast<Eigen::Index>(ind.size()) != value.size()) {
    throw ValidationError("fix_variables: index/value count mismatch");
  }
  std::vector<bool> pinned(static_cast<std::size_t>(n), false);
  for (std::size_t k = 0; k < ind.size(); ++k) {
    if (ind[k] < 0 || ind[k] >= n) {
      throw ValidationError("fix_variables: index out of range");
    }
    if (pinned[static_cast<std::size_t>(ind[k])]) {
      throw ValidationError("fix_variables: duplicate index");
    }
    if (value(static_cast<Eigen::Index>(k)) != 0 &&
        value(static_cast<Eigen::Index>(k)) != 1) {
      throw ValidationError("fix_variables: values must be bits");
    }
    pinned[static_cast<std::size_t>(ind[k])] = true;
  }

  FixedQubo out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!pinned[static_cast<std::size_t>(i)]) {
      out.free_index.push_back(static_cast<int>(i));
    }
  }
  // Re-sort the pinned indices so embed() is order-independent.
  out.fixed_index.assign(ind.begin(), ind.end());
  out.fixed_value = value;
  {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(ind.size());
    for (std::size_t k = 0; k < ind.size(); ++k) {
      pairs.emplace_back(ind[k], value(static_cast<Eigen::Index>(k)));
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      out.fixed_index[k] = pairs[k].first;
      out.fixed_value(static_cast<Eigen::Index>(k)) = pairs[k].second;
    }
  }

  const Matrix& Q = q.expr.Q();
  const Vector& v = q.expr.v();
  const Vector b = out.fixed_value.cast<double>();

  Matrix Qy = Q(out.free_index, out.free_index);
  Matrix Qyb = Q(out.free_index, out.fixed_index);
  Matrix Qb = Q(out.fixed_index, out.fixed_index);
  Vector vy = v(out.free_index);
  Vector vb = v(out.fixed_index);

  const double constant =
      q.expr.constant() + 0.5 * b.dot(Qb * b) + vb.dot(b);

  out.reduced.expr = QuadExpr(std::move(Qy), (Qyb * b + vy).eval(), constant);
  out.reduced.labels.reserve(out.free_index.size());
  for (int i : out.free_index) {
    out.reduced.labels.push_back(i < static_cast<int>(q.labels.size())
                                     ? q.labels[static_cast<std::size_t>(i)]
                                     : ("x" + std::to_string(i)));
  }
  return out;
}

}  // namespace qubokit
