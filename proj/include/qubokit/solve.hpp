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

#ifndef QUBOKIT_SOLVE_HPP
#define QUBOKIT_SOLVE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubokit/model.hpp"

namespace qubokit {

/// xoshiro256++ generator. State transitions follow the published
/// reference: output rotl(s0 + s3, 23) + s0, then the xor-shift update
/// with rotl(s3, 45); seeding expands a 64-bit seed through SplitMix64.
/// Fixing the algorithm (rather than std::mt19937) keeps seeds
/// reproducible across implementations and platforms.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);
  explicit Xoshiro256pp(const std::array<std::uint64_t, 4>& state);

  std::uint64_t next();
  /// Uniform double in [0, 1), 53 usable bits.
  double uniform();
  /// Uniform integer in [0, bound) via 32-bit multiply-shift.
  std::uint32_t below(std::uint32_t bound);

 private:
  std::array<std::uint64_t, 4> s_;
};

std::uint64_t splitmix64_next(std::uint64_t& state);

struct AnnealParams {
  int sweeps = 2000;     // one sweep = n proposed single-bit flips
  int restarts = 16;
  double t_start = 10.0; // geometric schedule t_start -> t_end
  double t_end = 0.05;
  std::uint64_t seed = 0;
  int threads = 1;       // restarts are independent; result is thread-count
                         // invariant
  bool check_deltas = false;  // re-derive every accepted delta from scratch
};

struct SolveReport {
  Solution best;
  std::uint64_t evaluations = 0;
  std::string method;
  std::vector<double> restart_best;

  /// Canonical text form; identical inputs and seeds give identical bytes.
  std::string to_string() const;
};

/// Exhaustive minimum over {0,1}^n, n <= bit_cap. Ties go to the
/// lexicographically smallest bit vector (bit 0 compared first).
/// evaluations reports exactly 2^n.
SolveReport brute_force(const Qubo& q, int bit_cap = 25);

/// Metropolis single-bit-flip annealing with incremental objective deltas.
/// Deterministic for a given seed; restart r draws its state from the
/// SplitMix64 stream of the seed, so restarts are independent and the
/// merged report does not depend on execution order.
SolveReport anneal(const Qubo& q, const AnnealParams& params = {});

struct Violation {
  enum class Type { equality, inequality };
  Type type;
  int row;
  double residual;  // lhs - rhs
};

/// Rows of A x = b with nonzero residual and rows of C x <= d that
/// overshoot, with the residuals.
std::vector<Violation> check_feasibility(
    const Bits& x, const std::optional<LinearSystem>& eq,
    const std::optional<LinearSystem>& ineq, double tol = 1e-9);

}  // namespace qubokit

#endif  // QUBOKIT_SOLVE_HPP
