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

#include "qubokit/solve.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

namespace qubokit {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64_next(sm);
}

Xoshiro256pp::Xoshiro256pp(const std::array<std::uint64_t, 4>& state)
    : s_(state) {}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint32_t Xoshiro256pp::below(std::uint32_t bound) {
  const std::uint64_t hi32 = next() >> 32;
  return static_cast<std::uint32_t>((hi32 * bound) >> 32);
}

namespace {

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string SolveReport::to_string() const {
  std::ostringstream os;
  os << "method=" << method << " value=" << format_value(best.value)
     << " bits=" << to_bitstring(best.bits) << " evaluations=" << evaluations;
  if (!restart_best.empty()) {
    os << " restarts=";
    for (std::size_t r = 0; r < restart_best.size(); ++r) {
      if (r > 0) os << ",";
      os << format_value(restart_best[r]);
    }
  }
  return os.str();
}

namespace {

// Key under which ties are broken: bit 0 is the most significant digit, so
// smaller keys are lexicographically smaller bit vectors.
std::uint64_t lex_key(const Bits& bits) {
  std::uint64_t key = 0;
  for (Eigen::Index i = 0; i < bits.size(); ++i) {
    key = (key << 1) | static_cast<std::uint64_t>(bits(i) & 1);
  }
  return key;
}

}  // namespace

SolveReport brute_force(const Qubo& q, int bit_cap) {
  const Eigen::Index n = q.num_bits();
  if (n > bit_cap) {
    throw CapacityError("brute force over " + std::to_string(n) +
                        " bits exceeds cap " + std::to_string(bit_cap));
  }
  SolveReport report;
  report.method = "brute";

  if (n == 0) {
    report.best.bits = Bits(0);
    report.best.value = q.expr.constant();
    report.evaluations = 1;
    return report;
  }

  const Matrix& Q = q.expr.Q();
  const Vector& v = q.expr.v();

  // Gray-code walk with incremental deltas; flipping bit i changes the
  // objective by delta * ((Qx + v)_i) + Q_ii / 2.
  Bits x = Bits::Zero(n);
  Vector grad = v;
  double value = q.expr.constant();
  std::uint64_t key = 0;

  Bits best_bits = x;
  double best_value = value;
  std::uint64_t best_key = key;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int i = std::countr_zero(step);
    const double delta = x(i) == 0 ? 1.0 : -1.0;
    value += delta * grad(i) + 0.5 * Q(i, i);
    grad += delta * Q.col(i);
    x(i) ^= 1;
    key ^= std::uint64_t{1} << (n - 1 - i);
    if (value < best_value || (value == best_value && key < best_key)) {
      best_value = value;
      best_key = key;
      best_bits = x;
    }
  }

  report.best.bits = best_bits;
  // Re-derive the record exactly; the walk accumulates rounding.
  report.best.value = evaluate(q.expr, best_bits);
  report.evaluations = total;
  return report;
}

namespace {

struct RestartOutcome {
  Bits bits;
  double value = 0.0;
};

RestartOutcome run_restart(const Qubo& q, const AnnealParams& params,
                           Xoshiro256pp rng) {
  const Eigen::Index n = q.num_bits();
  const Matrix& Q = q.expr.Q();

  Bits x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = static_cast<int>(rng.next() & 1u);
  }
  Vector grad = Q * x.cast<double>() + q.expr.v();
  double value = evaluate(q.expr, x);

  Bits best_bits = x;
  double best_value = value;

  const double t_ratio = params.t_end / params.t_start;
  for (int sweep = 0; sweep < params.sweeps; ++sweep) {
    const double progress =
        params.sweeps > 1 ? static_cast<double>(sweep) / (params.sweeps - 1)
                          : 0.0;
    const double temperature = params.t_start * std::pow(t_ratio, progress);
    for (Eigen::Index k = 0; k < n; ++k) {
      const int i =
          static_cast<int>(rng.below(static_cast<std::uint32_t>(n)));
      const double delta_dir = x(i) == 0 ? 1.0 : -1.0;
      const double delta = delta_dir * grad(i) + 0.5 * Q(i, i);
      if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
        if (params.check_deltas) {
          Bits flipped = x;
          flipped(i) ^= 1;
          const double direct = evaluate(q.expr, flipped) - evaluate(q.expr, x);
          if (std::abs(direct - delta) > 1e-9) {
            throw Error("incremental delta drifted from direct evaluation");
          }
        }
        x(i) ^= 1;
        value += delta;
        grad += delta_dir * Q.col(i);
        if (value < best_value) {
          best_value = value;
          best_bits = x;
        }
      }
    }
  }
  return RestartOutcome{best_bits, evaluate(q.expr, best_bits)};
}

}  // namespace

SolveReport anneal(const Qubo& q, const AnnealParams& params) {
  if (params.sweeps < 1 || params.restarts < 1) {
    throw ValidationError("anneal needs at least one sweep and one restart");
  }
  if (!(params.t_start > params.t_end) || !(params.t_end > 0.0)) {
    throw ValidationError("anneal temperatures need t_start > t_end > 0");
  }
  const Eigen::Index n = q.num_bits();

  SolveReport report;
  report.method = "anneal";
  if (n == 0) {
    report.best.bits = Bits(0);
    report.best.value = q.expr.constant();
    report.evaluations = 1;
    return report;
  }

  // Each restart owns its own generator; states come from the seed's
  // SplitMix64 stream, four words per restart.
  std::vector<std::array<std::uint64_t, 4>> states(
      static_cast<std::size_t>(params.restarts));
  std::uint64_t sm = params.seed;
  for (auto& state : states) {
    for (auto& word : state) word = splitmix64_next(sm);
  }

  std::vector<RestartOutcome> outcomes(
      static_cast<std::size_t>(params.restarts));
  const int threads = std::max(1, params.threads);
  if (threads == 1) {
    for (int r = 0; r < params.restarts; ++r) {
      outcomes[static_cast<std::size_t>(r)] =
          run_restart(q, params, Xoshiro256pp(states[static_cast<std::size_t>(r)]));
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next_restart{0};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        while (true) {
          const int r = next_restart.fetch_add(1);
          if (r >= params.restarts) break;
          outcomes[static_cast<std::size_t>(r)] = run_restart(
              q, params, Xoshiro256pp(states[static_cast<std::size_t>(r)]));
        }
      });
    }
    for (auto& worker : pool) worker.join();
  }

  // Min-reduction over (value, lexicographic bits): order independent.
  std::size_t pick = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    const RestartOutcome& cand = outcomes[r];
    const RestartOutcome& cur = outcomes[pick];
    if (cand.value < cur.value ||
        (cand.value == cur.value && lex_key(cand.bits) < lex_key(cur.bits))) {
      pick = r;
    }
  }
  report.best.bits = outcomes[pick].bits;
  report.best.value = outcomes[pick].value;
  report.evaluations = static_cast<std::uint64_t>(params.restarts) *
                       static_cast<std::uint64_t>(params.sweeps) *
                       static_cast<std::uint64_t>(n);
  report.restart_best.reserve(outcomes.size());
  for (const RestartOutcome& outcome : outcomes) {
    report.restart_best.push_back(outcome.value);
  }
  return report;
}

std::vector<Violation> check_feasibility(const Bits& x,
                                         const std::optional<LinearSystem>& eq,
                                         const std::optional<LinearSystem>& ineq,
                                         double tol) {
  std::vector<Violation> out;
  const Vector xd = x.cast<double>();
  if (eq) {
    if (eq->A.cols() != x.size()) {
      throw ValidationError("check_feasibility: equality width mismatch");
    }
    const Vector r = eq->A * xd - eq->b;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (std::abs(r(i)) > tol) {
        out.push_back(Violation{Violation::Type::equality,
                                static_cast<int>(i), r(i)});
      }
    }
  }
  if (ineq) {
    if (ineq->A.cols() != x.size()) {
      throw ValidationError("check_feasibility: inequality width mismatch");
    }
    const Vector r = ineq->A * xd - ineq->b;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (r(i) > tol) {
        out.push_back(Violation{Violation::Type::inequality,
                                static_cast<int>(i), r(i)});
      }
    }
  }
  return out;
}

}  // namespace qubokit
