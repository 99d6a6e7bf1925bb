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

#include "qubokit/penalty.hpp"

#include <algorithm>
#include <cmath>

#include "qubokit/solve.hpp"

namespace qubokit {

namespace {

constexpr double kIntTol = 1e-9;

bool is_integer_valued(double x) { return std::abs(x - std::round(x)) <= kIntTol; }

bool is_integer_valued(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!is_integer_valued(m(i, j))) return false;
    }
  }
  return true;
}

PreanalysisReport interval_screen(const std::optional<LinearSystem>& eq,
                                  const std::optional<LinearSystem>& ineq,
                                  const Vector& lo, const Vector& hi) {
  PreanalysisReport report;
  auto row_bounds = [&](const Matrix& A, Eigen::Index r, double& lo_sum,
                        double& hi_sum) {
    lo_sum = 0.0;
    hi_sum = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double a = A(r, j);
      lo_sum += std::min(a * lo(j), a * hi(j));
      hi_sum += std::max(a * lo(j), a * hi(j));
    }
  };
  if (eq) {
    for (Eigen::Index r = 0; r < eq->rows(); ++r) {
      double lo_sum, hi_sum;
      row_bounds(eq->A, r, lo_sum, hi_sum);
      if (hi_sum < eq->b(r) - kIntTol || lo_sum > eq->b(r) + kIntTol) {
        report.infeasible_eq_rows.push_back(static_cast<int>(r));
      }
    }
  }
  if (ineq) {
    for (Eigen::Index r = 0; r < ineq->rows(); ++r) {
      double lo_sum, hi_sum;
      row_bounds(ineq->A, r, lo_sum, hi_sum);
      if (lo_sum > ineq->b(r) + kIntTol) {
        report.infeasible_ineq_rows.push_back(static_cast<int>(r));
      } else if (hi_sum <= ineq->b(r) + kIntTol) {
        report.redundant_ineq_rows.push_back(static_cast<int>(r));
      }
    }
  }
  return report;
}

std::string row_list(const std::vector<int>& rows) {
  std::string s;
  for (int r : rows) {
    if (!s.empty()) s += ", ";
    s += std::to_string(r);
  }
  return s;
}

}  // namespace

PreanalysisReport preanalyze(const std::optional<LinearSystem>& eq,
                             const std::optional<LinearSystem>& ineq) {
  Eigen::Index n = 0;
  if (eq) n = eq->A.cols();
  if (ineq) n = std::max(n, ineq->A.cols());
  return interval_screen(eq, ineq, Vector::Zero(n), Vector::Ones(n));
}

PreanalysisReport preanalyze(const std::optional<LinearSystem>& eq,
                             const std::optional<LinearSystem>& ineq,
                             const std::vector<Domain>& domains) {
  const Eigen::Index n = static_cast<Eigen::Index>(domains.size());
  Vector lo(n), hi(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    lo(j) = domains[static_cast<std::size_t>(j)].lo();
    hi(j) = domains[static_cast<std::size_t>(j)].hi();
  }
  return interval_screen(eq, ineq, lo, hi);
}

double rho_bound(const QuadExpr& e) {
  return e.Q().cwiseAbs().sum() + 2.0 * e.v().cwiseAbs().sum() + 2.0;
}

QuadExpr add_equality_penalty(const QuadExpr& e, const Matrix& A,
                              const Vector& b, double rho) {
  if (!(rho > 0.0)) throw ValidationError("penalty weight must be positive");
  if (A.cols() != e.size()) {
    throw ValidationError("equality system width does not match expression");
  }
  return e + rho * squared_residual(A, b);
}

SlackEncoding assemble_slack(std::vector<Encoding> rows) {
  SlackEncoding out;
  out.rows = std::move(rows);
  Eigen::Index bits = 0;
  for (const Encoding& enc : out.rows) bits += enc.bits();
  out.L = Matrix::Zero(static_cast<Eigen::Index>(out.rows.size()), bits);
  Eigen::Index at = 0;
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    const Encoding& enc = out.rows[r];
    if (enc.bits() > 0) {
      out.L.block(static_cast<Eigen::Index>(r), at, 1, enc.bits()) =
          enc.coeffs;
      at += enc.bits();
    }
  }
  return out;
}

SlackEncoding slack_encode(const Matrix& C, const Vector& d) {
  if (C.rows() != d.size()) {
    throw ValidationError("slack_encode: rows(C) != length(d)");
  }
  std::vector<Encoding> rows;
  rows.reserve(static_cast<std::size_t>(C.rows()));
  for (Eigen::Index r = 0; r < C.rows(); ++r) {
    double neg_sum = 0.0;
    for (Eigen::Index j = 0; j < C.cols(); ++j) {
      neg_sum += std::min(C(r, j), 0.0);
    }
    const double range = d(r) - neg_sum;
    if (range < -kIntTol) {
      throw InfeasibleError("inequality row " + std::to_string(r) +
                            " can never hold");
    }
    if (!is_integer_valued(range)) {
      throw ValidationError("inequality row " + std::to_string(r) +
                            " has non-integer slack range " +
                            std::to_string(range));
    }
    Encoding enc;
    enc.kind = Encoding::Kind::integer;
    enc.shift = 0.0;
    const auto irange = static_cast<std::int64_t>(std::llround(range));
    if (irange > 0) {
      enc.coeffs = encode_integer(0, irange).coeffs;
    } else {
      enc.coeffs = RowVector(0);
    }
    rows.push_back(std::move(enc));
  }
  return assemble_slack(std::move(rows));
}

QuadExpr block_penalty(const Matrix& A, const Matrix& B, const Vector& d,
                       double rho) {
  if (!(rho > 0.0)) throw ValidationError("penalty weight must be positive");
  if (A.rows() != d.size() || (B.size() > 0 && B.rows() != A.rows())) {
    throw ValidationError("block_penalty: row counts disagree");
  }
  Matrix M(A.rows(), A.cols() + B.cols());
  M.leftCols(A.cols()) = A;
  if (B.cols() > 0) M.rightCols(B.cols()) = B;
  return rho * squared_residual(M, d);
}

QuadExpr at_most_one_penalty(Eigen::Index n, const std::vector<int>& indices,
                             double rho) {
  if (!(rho > 0.0)) throw ValidationError("penalty weight must be positive");
  if (indices.size() < 2) {
    throw ValidationError("at-most-one needs at least two indices");
  }
  Matrix Q = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] < 0 || indices[a] >= n) {
      throw ValidationError("at-most-one index out of range");
    }
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      if (indices[a] == indices[b]) {
        throw ValidationError("at-most-one indices must be distinct");
      }
      Q(indices[a], indices[b]) += 2.0 * rho;
      Q(indices[b], indices[a]) += 2.0 * rho;
    }
  }
  return QuadExpr(std::move(Q), Vector::Zero(n), 0.0);
}

QuadExpr sum_le_indicator_penalty(Eigen::Index n, const std::vector<int>& xs,
                                  int y, double rho1, double rho2) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) {
    throw ValidationError("penalty weights must be positive");
  }
  if (y < 0 || y >= n) throw ValidationError("indicator index out of range");
  for (int i : xs) {
    if (i < 0 || i >= n) throw ValidationError("index out of range");
    if (i == y) {
      throw ValidationError("indicator bit cannot appear in the sum");
    }
  }
  Matrix Q = Matrix::Zero(n, n);
  Vector v = Vector::Zero(n);
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      Q(xs[a], xs[b]) += 2.0 * rho1;
      Q(xs[b], xs[a]) += 2.0 * rho1;
    }
  }
  for (int i : xs) {
    v(i) += rho2;
    Q(i, y) -= rho2;
    Q(y, i) -= rho2;
  }
  return QuadExpr(std::move(Q), std::move(v), 0.0);
}

namespace {

// Exhaustive screen of the binarized equality system (including one-hot
// rows): with integer data an unsolvable system has residual norm >= 1
// everywhere, so a zero minimum is decidable by brute force.
void run_feasibility_probe(const Matrix& A, const Vector& b) {
  if (A.cols() > 25) return;  // too wide to enumerate; skip silently
  Qubo probe;
  probe.expr = squared_residual(A, b);
  probe.labels.assign(static_cast<std::size_t>(A.cols()), "");
  const SolveReport report = brute_force(probe);
  if (report.best.value > 0.25) {
    throw InfeasibleError(
        "equality system has no binary solution (probe minimum " +
        std::to_string(report.best.value) + ")");
  }
}

}  // namespace

CompileResult compile(const MixedProblem& p, const CompileOptions& options) {
  p.validate();

  // 1. Screen constraints against the variable domains.
  const PreanalysisReport screen = preanalyze(p.eq, p.ineq, p.domains);
  if (!screen.clean()) {
    std::string msg = "infeasible constraints:";
    if (!screen.infeasible_eq_rows.empty()) {
      msg += " equality rows " + row_list(screen.infeasible_eq_rows);
    }
    if (!screen.infeasible_ineq_rows.empty()) {
      msg += " inequality rows " + row_list(screen.infeasible_ineq_rows);
    }
    throw InfeasibleError(msg);
  }

  CompilePlan plan;
  plan.dropped_ineq_rows = screen.redundant_ineq_rows;

  // 2. Binarize the domains and substitute.
  plan.binarization = build_map(p);
  const BinarizationMap& map = plan.binarization;
  plan.original_bits = map.num_bits();
  QuadExpr objective = substitute(p.objective, map);

  std::optional<LinearSystem> eq;
  if (p.eq) {
    eq = LinearSystem{p.eq->A * map.L, p.eq->b - p.eq->A * map.g};
  }
  std::optional<LinearSystem> ineq;
  std::vector<int> kept_rows;
  if (p.ineq) {
    std::vector<bool> dropped(static_cast<std::size_t>(p.ineq->rows()), false);
    for (int r : plan.dropped_ineq_rows) {
      dropped[static_cast<std::size_t>(r)] = true;
    }
    for (Eigen::Index r = 0; r < p.ineq->rows(); ++r) {
      if (!dropped[static_cast<std::size_t>(r)]) {
        kept_rows.push_back(static_cast<int>(r));
      }
    }
    if (!kept_rows.empty()) {
      LinearSystem sys;
      sys.A = (p.ineq->A * map.L)(kept_rows, Eigen::all);
      sys.b = (p.ineq->b - p.ineq->A * map.g)(kept_rows);
      ineq = std::move(sys);
    }
  }

  // 3. Resolve penalty weights. The Theorem-style default needs integer
  // constraint data in the binarized system.
  const bool has_constraints =
      eq.has_value() || ineq.has_value() || map.onehot.has_value();
  bool integer_data = true;
  if (eq) {
    integer_data = integer_data && is_integer_valued(eq->A) &&
                   is_integer_valued(Matrix(eq->b));
  }
  if (ineq) {
    integer_data = integer_data && is_integer_valued(ineq->A) &&
                   is_integer_valued(Matrix(ineq->b));
  }
  double base_rho = 0.0;
  if (has_constraints) {
    if (options.rho) {
      base_rho = *options.rho;
      if (!(base_rho > 0.0)) {
        throw ValidationError("penalty weight must be positive");
      }
    } else if (integer_data) {
      base_rho = rho_bound(objective);
    } else {
      throw ValidationError(
          "constraint data is not integer-valued after binarization; "
          "pass an explicit penalty weight");
    }
  }
  plan.rho_eq = options.rho_eq.value_or(base_rho);
  plan.rho_ineq = options.rho_ineq.value_or(base_rho);
  plan.rho_onehot = options.rho_onehot.value_or(base_rho);

  if (options.feasibility_probe && eq) {
    Matrix A = eq->A;
    Vector b = eq->b;
    if (map.onehot) {
      A.conservativeResize(A.rows() + map.onehot->A.rows(), Eigen::NoChange);
      A.bottomRows(map.onehot->A.rows()) = map.onehot->A;
      b.conservativeResize(b.size() + map.onehot->b.size());
      b.tail(map.onehot->b.size()) = map.onehot->b;
    }
    if (integer_data) run_feasibility_probe(A, b);
  }

  // 4. Split inequalities into slack-free at-most-one rows and slack rows.
  std::vector<int> slack_rows;
  if (ineq) {
    for (Eigen::Index r = 0; r < ineq->rows(); ++r) {
      bool amo = std::abs(ineq->b(r) - 1.0) <= kIntTol;
      std::vector<int> ones;
      if (amo) {
        for (Eigen::Index j = 0; j < ineq->A.cols(); ++j) {
          const double a = ineq->A(r, j);
          if (std::abs(a - 1.0) <= kIntTol) {
            ones.push_back(static_cast<int>(j));
          } else if (std::abs(a) > kIntTol) {
            amo = false;
            break;
          }
        }
      }
      if (amo && ones.size() >= 2) {
        plan.amo_bit_groups.push_back(std::move(ones));
        plan.amo_source_row.push_back(kept_rows[static_cast<std::size_t>(r)]);
      } else {
        slack_rows.push_back(static_cast<int>(r));
      }
    }
    if (!slack_rows.empty()) {
      plan.slack = slack_encode(ineq->A(slack_rows, Eigen::all),
                                ineq->b(slack_rows));
      for (int r : slack_rows) {
        plan.slack_source_row.push_back(
            kept_rows[static_cast<std::size_t>(r)]);
      }
    }
  }
  plan.slack_bits = plan.slack.num_bits();
  const Eigen::Index total = plan.total_bits();
  check_capacity(total, total);

  // 5. Assemble the penalized objective over [original bits; slack bits].
  QuadExpr expr = embed_expr(objective, total, 0);
  if (eq && eq->rows() > 0) {
    expr += plan.rho_eq *
            embed_expr(squared_residual(eq->A, eq->b), total, 0);
  }
  if (map.onehot) {
    expr += plan.rho_onehot *
            embed_expr(squared_residual(map.onehot->A, map.onehot->b), total, 0);
  }
  for (const std::vector<int>& group : plan.amo_bit_groups) {
    expr += at_most_one_penalty(total, group, plan.rho_ineq);
  }
  if (plan.slack.num_rows() > 0) {
    const Matrix C_slack = ineq->A(slack_rows, Eigen::all);
    const Vector d_slack = ineq->b(slack_rows);
    Matrix M = Matrix::Zero(C_slack.rows(), total);
    M.leftCols(plan.original_bits) = C_slack;
    M.rightCols(plan.slack_bits) = plan.slack.L;
    expr += plan.rho_ineq * squared_residual(M, d_slack);
  }

  // 6. Bit labels.
  Qubo qubo;
  qubo.expr = std::move(expr);
  qubo.labels.reserve(static_cast<std::size_t>(total));
  for (std::size_t j = 0; j < map.encodings.size(); ++j) {
    const std::string name = j < options.names.size()
                                 ? options.names[j]
                                 : ("x" + std::to_string(j));
    const Encoding& enc = map.encodings[j];
    if (enc.bits() == 1 && enc.kind == Encoding::Kind::passthrough) {
      qubo.labels.push_back(name);
    } else {
      for (int k = 0; k < enc.bits(); ++k) {
        qubo.labels.push_back(name + "[" + std::to_string(k) + "]");
      }
    }
  }
  for (std::size_t r = 0; r < plan.slack.rows.size(); ++r) {
    for (int k = 0; k < plan.slack.rows[r].bits(); ++k) {
      qubo.labels.push_back("slack" + std::to_string(plan.slack_source_row[r]) +
                            "[" + std::to_string(k) + "]");
    }
  }
  return CompileResult{std::move(qubo), std::move(plan)};
}

Vector decode_solution(const CompilePlan& plan, const Bits& bits) {
  if (bits.size() != plan.total_bits()) {
    throw ValidationError("decode_solution: bit count mismatch");
  }
  return decode(plan.binarization, bits.head(plan.original_bits).eval());
}

}  // namespace qubokit
