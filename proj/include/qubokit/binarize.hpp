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

#ifndef QUBOKIT_BINARIZE_HPP
#define QUBOKIT_BINARIZE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qubokit/model.hpp"

namespace qubokit {

/// Affine bit encoding of one variable: value = coeffs . y + shift.
struct Encoding {
  enum class Kind { passthrough, spin, integer, discrete, continuous };

  Kind kind = Kind::passthrough;
  RowVector coeffs;
  double shift = 0.0;

  int bits() const { return static_cast<int>(coeffs.size()); }
  bool onehot() const { return kind == Kind::discrete; }
  double decode(const Bits& y) const;
};

/// Spin variable: value = 2y - 1, one bit.
Encoding encode_spin();

/// Integer range [lo, hi]: p = ceil(log2(hi - lo + 1)) bits with coefficient
/// row (1, 2, ..., 2^{p-2}, hi - lo - 2^{p-1} + 1) and shift lo. The image
/// of {0,1}^p is exactly {lo, ..., hi}; values in the overlap interval have
/// two preimages. hi - lo = 1 degenerates to a single shifted bit.
Encoding encode_integer(std::int64_t lo, std::int64_t hi);

/// Discrete value set via one-hot: coefficients are the values themselves
/// and exactly one bit must be set (enforced elsewhere as an equality row).
Encoding encode_discrete(const std::vector<double>& values);

/// Continuous range [lo, hi] on a uniform grid of 2^p points with
/// p = ceil(log2((hi - lo)/(2 epsilon) + 1)), so that every point of the
/// range lies within epsilon of the grid. Throws CapacityError when more
/// than bit_cap bits would be needed; loosen epsilon in that case.
Encoding encode_continuous(double lo, double hi, double epsilon,
                           int bit_cap = 32);

Encoding encode_domain(const Domain& domain, double epsilon);

/// Affine map x = L y + g for a whole variable vector, with L the
/// block-diagonal stack of per-variable coefficient rows, plus the one-hot
/// equality system contributed by discrete encodings (absent otherwise).
struct BinarizationMap {
  std::vector<Encoding> encodings;
  Matrix L;  // s x m
  Vector g;  // s
  std::optional<LinearSystem> onehot;
  std::vector<int> bit_offset;  // first bit of each variable
  bool uniform = false;  // all coefficient rows equal: L = E_s (x) P

  Eigen::Index num_vars() const { return L.rows(); }
  Eigen::Index num_bits() const { return L.cols(); }
};

BinarizationMap build_map(const std::vector<Domain>& domains, double epsilon);
BinarizationMap build_map(const MixedProblem& p);

/// Assemble a map from ready-made encodings (deserialization path; build_map
/// funnels through this too).
BinarizationMap assemble_map(std::vector<Encoding> encodings);

/// Change of variables in the objective: Q' = L^T Q L, v' = L^T (Q g + v),
/// c' = c + f(g). Uniform maps take the Kronecker shortcut
/// L^T Q L = Q (x) P^T P; the result is identical either way.
QuadExpr substitute(const QuadExpr& e, const BinarizationMap& map);

/// x = L y + g. One-hot violations are reported separately, not here.
Vector decode(const BinarizationMap& map, const Bits& y);

/// Indices of discrete variables whose one-hot row is violated by y.
std::vector<int> onehot_violations(const BinarizationMap& map, const Bits& y);

/// Canonical preimage of a single value (greedy, most significant
/// coefficient first). The map is deliberately non-injective; any preimage
/// decodes back to the value.
Bits encode_value(const Encoding& enc, double value);

/// Canonical preimage of a whole point, variable by variable.
Bits encode_point(const BinarizationMap& map, const Vector& x);

}  // namespace qubokit

#endif  // QUBOKIT_BINARIZE_HPP
