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

#ifndef QUBOKIT_COMMON_HPP
#define QUBOKIT_COMMON_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qubokit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Bit assignment; entries are 0 or 1 (spins and domain values live in
/// decoded space, never here).
using Bits = Eigen::VectorXi;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, broken invariants, unparsable files.
struct ValidationError : Error {
  using Error::Error;
};

/// A size or bit-count limit was exceeded.
struct CapacityError : Error {
  using Error::Error;
};

/// Constraints are provably unsatisfiable.
struct InfeasibleError : Error {
  using Error::Error;
};

/// Column cap for dense matrix construction (default 20000). Kronecker
/// blocks grow multiplicatively, so the guard lives where growth happens.
std::int64_t dimension_cap();
void set_dimension_cap(std::int64_t cap);

void check_capacity(std::int64_t rows, std::int64_t cols);

std::string to_bitstring(const Bits& bits);

}  // namespace qubokit

#endif  // QUBOKIT_COMMON_HPP
