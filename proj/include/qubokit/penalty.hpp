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

#ifndef QUBOKIT_PENALTY_HPP
#define QUBOKIT_PENALTY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qubokit/binarize.hpp"
#include "qubokit/model.hpp"

namespace qubokit {

/// Sign-sum screening of linear rows. A row's left-hand side is bounded by
/// the interval [lo_sum, hi_sum] attainable over the variable domains; an
/// equality outside that interval, or an inequality whose lower bound
/// already exceeds the right-hand side, can never hold. An inequality whose
/// upper bound stays within the right-hand side always holds and is
/// redundant.
struct PreanalysisReport {
  std::vector<int> infeasible_eq_rows;
  std::vector<int> infeasible_ineq_rows;
  std::vector<int> redundant_ineq_rows;

  bool clean() const {
    return infeasible_eq_rows.empty() && infeasible_ineq_rows.empty();
  }
};

/// Binary-variable screen (all domains {0,1}).
PreanalysisReport preanalyze(const std::optional<LinearSystem>& eq,
                             const std::optional<LinearSystem>& ineq);

/// Interval screen over arbitrary bounded domains; reduces to the binary
/// screen when every domain is binary.
PreanalysisReport preanalyze(const std::optional<LinearSystem>& eq,
                             const std::optional<LinearSystem>& ineq,
                             const std::vector<Domain>& domains);

/// Sufficient penalty weight for integer-data equality systems:
/// sum |q_ij| + 2 sum |v_i| + 2. Any rho at or above this makes the
/// penalized minimum feasible and equal to the constrained minimum.
double rho_bound(const QuadExpr& e);

/// e + rho * (1/2)||A x - b||^2, i.e. Q + rho A^T A, v - rho A^T b,
/// c + (rho/2)||b||^2.
QuadExpr add_equality_penalty(const QuadExpr& e, const Matrix& A,
                              const Vector& b, double rho);

/// Slack bits turning C x <= d into C x + z = d with z_i in [0, d_i - c_i^-]
/// encoded like a bounded integer. Rows whose range is zero contribute no
/// bits (the inequality is then an equality).
struct SlackEncoding {
  std::vector<Encoding> rows;
  Matrix L;  // rows() x num_bits() block diagonal

  Eigen::Index num_rows() const { return L.rows(); }
  Eigen::Index num_bits() const { return L.cols(); }
};

SlackEncoding assemble_slack(std::vector<Encoding> rows);

/// C, d must be a binary-variable system with integer entries. Throws
/// InfeasibleError when a row can never hold.
SlackEncoding slack_encode(const Matrix& C, const Vector& d);

/// rho/2 ||A y + B z - d||^2 over the concatenated vector [y; z]:
/// S = [[A^T A, A^T B], [B^T A, B^T B]], R = (-A^T d; -B^T d).
QuadExpr block_penalty(const Matrix& A, const Matrix& B, const Vector& d,
                       double rho);

/// rho * sum_{i != j in indices} x_i x_j, zero exactly when at most one of
/// the indexed bits is set. Needs no slack bits.
QuadExpr at_most_one_penalty(Eigen::Index n, const std::vector<int>& indices,
                             double rho);

/// Quadratic penalty for sum_i x_i <= y over bits: rho1 sum_{i != j} x_i x_j
/// + rho2 (1 - y) sum_i x_i, zero exactly on the solution set.
QuadExpr sum_le_indicator_penalty(Eigen::Index n, const std::vector<int>& xs,
                                  int y, double rho1, double rho2);

struct CompileOptions {
  std::optional<double> rho;         // uniform penalty weight
  std::optional<double> rho_eq;      // per-group overrides
  std::optional<double> rho_ineq;
  std::optional<double> rho_onehot;
  bool feasibility_probe = false;    // exhaustive equality-system screen
  std::vector<std::string> names;    // variable names for bit labels
};

/// Everything needed to decode a compiled solution and audit the compile:
/// the binarization, the slack layout, the penalty weights used, and which
/// inequality rows were dropped or routed to the slack-free penalty.
struct CompilePlan {
  BinarizationMap binarization;
  SlackEncoding slack;
  std::vector<int> slack_source_row;          // inequality row per slack row
  std::vector<std::vector<int>> amo_bit_groups;
  std::vector<int> amo_source_row;
  std::vector<int> dropped_ineq_rows;
  double rho_eq = 0.0;
  double rho_ineq = 0.0;
  double rho_onehot = 0.0;
  Eigen::Index original_bits = 0;
  Eigen::Index slack_bits = 0;

  Eigen::Index total_bits() const { return original_bits + slack_bits; }
};

struct CompileResult {
  Qubo qubo;
  CompilePlan plan;
};

/// Full pipeline: screen constraints and drop redundant rows, binarize the
/// domains (substituting objective and constraint systems), slack-encode
/// the remaining inequalities, and add every constraint group as a
/// quadratic penalty. The default weight is rho_bound of the binarized
/// objective and needs integer constraint data; real-valued equality data
/// requires an explicit rho, and real-valued inequality data is rejected
/// because exact slack coverage needs integers.
CompileResult compile(const MixedProblem& p, const CompileOptions& options = {});

/// Original-domain values from a compiled solution's bit vector.
Vector decode_solution(const CompilePlan& plan, const Bits& bits);

}  // namespace qubokit

#endif  // QUBOKIT_PENALTY_HPP
