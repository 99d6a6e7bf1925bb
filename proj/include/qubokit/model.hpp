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

#ifndef QUBOKIT_MODEL_HPP
#define QUBOKIT_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubokit/tensor.hpp"

namespace qubokit {

/// Value set of a single decision variable.
class Domain {
 public:
  enum class Kind { binary, spin, integer, discrete, continuous };

  static Domain binary();
  static Domain spin();
  static Domain integer(std::int64_t lo, std::int64_t hi);
  static Domain discrete(std::vector<double> values);
  static Domain continuous(double lo, double hi);

  Kind kind() const { return kind_; }
  /// Smallest and largest attainable value (used by interval screening).
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& values() const { return values_; }

 private:
  Domain(Kind kind, double lo, double hi, std::vector<double> values)
      : kind_(kind), lo_(lo), hi_(hi), values_(std::move(values)) {}

  Kind kind_ = Kind::binary;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<double> values_;  // discrete only
};

/// A x = b (equalities) or A x <= d (inequalities), row per constraint.
struct LinearSystem {
  Matrix A;
  Vector b;

  Eigen::Index rows() const { return A.rows(); }
  void validate(Eigen::Index num_vars, const std::string& what) const;
};

/// Quadratic objective over mixed-domain variables plus optional linear
/// equality and inequality systems.
struct MixedProblem {
  std::vector<Domain> domains;
  QuadExpr objective;
  std::optional<LinearSystem> eq;
  std::optional<LinearSystem> ineq;
  double epsilon = 1e-2;  // absolute precision for continuous variables

  Eigen::Index num_vars() const {
    return static_cast<Eigen::Index>(domains.size());
  }
  void validate() const;
};

/// Final unconstrained binary form: minimize expr over {0,1}^n.
struct Qubo {
  QuadExpr expr;
  std::vector<std::string> labels;

  Eigen::Index num_bits() const { return expr.size(); }
  void validate() const;
};

/// Spin form: minimize -(1/2) s^T J s - h^T s + c over {-1,1}^n, with J
/// symmetric and exactly zero on the diagonal.
struct Ising {
  Matrix J;
  Vector h;
  double c = 0.0;
};

struct Solution {
  Bits bits;
  double value = 0.0;
  std::vector<int> violated_eq;
  std::vector<int> violated_ineq;

  bool feasible() const { return violated_eq.empty() && violated_ineq.empty(); }
};

double evaluate(const QuadExpr& e, const Vector& x);
double evaluate(const QuadExpr& e, const Bits& bits);

/// Move the linear part onto the diagonal (x_i^2 = x_i on binary points):
/// Q_ii += 2 v_i, v = 0. Objective values are unchanged on {0,1}^n.
Qubo absorb_linear(Qubo q);

/// J_ij = -(1/4)(1 - delta_ij) q_ij, h_i = -v_i/2 - (1/4) sum_j q_ij,
/// with the constant shifted so values agree pointwise under s = 2x - 1.
Ising qubo_to_ising(const Qubo& q);

/// Inverse direction via x = (s + 1)/2: Q = -4J, v = 2 J 1 - 2 h.
Qubo ising_to_qubo(const Ising& m);

/// A Qubo with a subset of bits pinned to fixed values, plus the embedding
/// back into the full bit vector.
struct FixedQubo {
  Qubo reduced;
  std::vector<int> free_index;   // full-vector position of each reduced bit
  std::vector<int> fixed_index;  // pinned positions, ascending
  Bits fixed_value;

  Bits embed(const Bits& reduced_bits) const;
};

/// Restrict q to the complement of `ind` with bits(ind) = value:
/// Q_y = Q(free,free), v_y = Q(free,ind) b + v(free), and the constant
/// absorbs (1/2) b^T Q(ind,ind) b + v(ind)^T b.
FixedQubo fix_variables(const Qubo& q, const std::vector<int>& ind,
                        const Bits& value);

}  // namespace qubokit

#endif  // QUBOKIT_MODEL_HPP
