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

#include "qubokit/binarize.hpp"

#include <bit>
#include <cmath>

#include "qubokit/tensor.hpp"

namespace qubokit {

double Encoding::decode(const Bits& y) const {
  if (y.size() != coeffs.size()) {
    throw ValidationError("encoding decode: bit count mismatch");
  }
  return coeffs.dot(y.cast<double>()) + shift;
}

Encoding encode_spin() {
  Encoding e;
  e.kind = Encoding::Kind::spin;
  e.coeffs = RowVector::Constant(1, 2.0);
  e.shift = -1.0;
  return e;
}

namespace {

// Coefficient row (1, 2, ..., 2^{p-2}, range - 2^{p-1} + 1) representing
// every integer in [0, range] with p = bit_width(range) bits.
RowVector bounded_counter_row(std::int64_t range) {
  const int p = std::bit_width(static_cast<std::uint64_t>(range));
  RowVector coeffs(p);
  for (int i = 0; i < p - 1; ++i) {
    coeffs(i) = static_cast<double>(std::int64_t{1} << i);
  }
  coeffs(p - 1) =
      static_cast<double>(range - (std::int64_t{1} << (p - 1)) + 1);
  return coeffs;
}

}  // namespace

Encoding encode_integer(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) throw ValidationError("integer encoding needs hi > lo");
  const std::int64_t range = hi - lo;
  if (range > (std::int64_t{1} << 62)) {
    throw CapacityError("integer range too wide to binarize");
  }
  Encoding e;
  e.kind = Encoding::Kind::integer;
  e.coeffs = bounded_counter_row(range);
  e.shift = static_cast<double>(lo);
  return e;
}

Encoding encode_discrete(const std::vector<double>& values) {
  // Re-validate through Domain so duplicates are caught on every path.
  Domain::discrete(values);
  Encoding e;
  e.kind = Encoding::Kind::discrete;
  e.coeffs = Eigen::Map<const Eigen::RowVectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size()));
  e.shift = 0.0;
  return e;
}

Encoding encode_continuous(double lo, double hi, double epsilon, int bit_cap) {
  if (!(hi > lo)) throw ValidationError("continuous encoding needs hi > lo");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  const double d = hi - lo;

  // Smallest p with grid step d / (2^p - 1) <= 2 epsilon.
  int p = 1;
  while ((std::ldexp(1.0, p) - 1.0) * 2.0 * epsilon < d) {
    ++p;
    if (p > bit_cap) {
      throw CapacityError(
          "continuous variable needs more than " + std::to_string(bit_cap) +
          " bits at epsilon " + std::to_string(epsilon) +
          "; loosen the precision");
    }
  }
  const double scale = d / (std::ldexp(1.0, p) - 1.0);
  Encoding e;
  e.kind = Encoding::Kind::continuous;
  e.coeffs = RowVector(p);
  for (int i = 0; i < p; ++i) e.coeffs(i) = scale * std::ldexp(1.0, i);
  e.shift = lo;
  return e;
}

Encoding encode_domain(const Domain& domain, double epsilon) {
  switch (domain.kind()) {
    case Domain::Kind::binary: {
      Encoding e;
      e.kind = Encoding::Kind::passthrough;
      e.coeffs = RowVector::Constant(1, 1.0);
      e.shift = 0.0;
      return e;
    }
    case Domain::Kind::spin:
      return encode_spin();
    case Domain::Kind::integer:
      return encode_integer(static_cast<std::int64_t>(domain.lo()),
                            static_cast<std::int64_t>(domain.hi()));
    case Domain::Kind::discrete:
      return encode_discrete(domain.values());
    case Domain::Kind::continuous:
      return encode_continuous(domain.lo(), domain.hi(), epsilon);
  }
  throw ValidationError("unknown domain kind");
}

BinarizationMap build_map(const std::vector<Domain>& domains, double epsilon) {
  if (domains.empty()) throw ValidationError("no variables to binarize");
  std::vector<Encoding> encodings;
  encodings.reserve(domains.size());
  for (const Domain& d : domains) encodings.push_back(encode_domain(d, epsilon));
  return assemble_map(std::move(encodings));
}

BinarizationMap assemble_map(std::vector<Encoding> encodings) {
  if (encodings.empty()) throw ValidationError("no variables to binarize");

  BinarizationMap map;
  map.encodings = std::move(encodings);
  Eigen::Index total_bits = 0;
  for (const Encoding& enc : map.encodings) {
    if (enc.bits() < 1) throw ValidationError("encoding has no bits");
    map.bit_offset.push_back(static_cast<int>(total_bits));
    total_bits += enc.bits();
  }
  const Eigen::Index s = static_cast<Eigen::Index>(map.encodings.size());
  check_capacity(s, total_bits);

  map.L = Matrix::Zero(s, total_bits);
  map.g = Vector(s);
  std::vector<Eigen::Index> onehot_vars;
  for (Eigen::Index j = 0; j < s; ++j) {
    const Encoding& enc = map.encodings[static_cast<std::size_t>(j)];
    map.L.block(j, map.bit_offset[static_cast<std::size_t>(j)], 1,
                enc.bits()) = enc.coeffs;
    map.g(j) = enc.shift;
    if (enc.onehot()) onehot_vars.push_back(j);
  }

  if (!onehot_vars.empty()) {
    LinearSystem sys;
    sys.A = Matrix::Zero(static_cast<Eigen::Index>(onehot_vars.size()),
                         total_bits);
    sys.b = Vector::Ones(static_cast<Eigen::Index>(onehot_vars.size()));
    for (std::size_t r = 0; r < onehot_vars.size(); ++r) {
      const Eigen::Index j = onehot_vars[r];
      const Encoding& enc = map.encodings[static_cast<std::size_t>(j)];
      sys.A.block(static_cast<Eigen::Index>(r),
                  map.bit_offset[static_cast<std::size_t>(j)], 1, enc.bits())
          .setOnes();
    }
    map.onehot = std::move(sys);
  }

  map.uniform = true;
  for (const Encoding& enc : map.encodings) {
    if (enc.coeffs.size() != map.encodings.front().coeffs.size() ||
        enc.coeffs != map.encodings.front().coeffs) {
      map.uniform = false;
      break;
    }
  }
  return map;
}

BinarizationMap build_map(const MixedProblem& p) {
  p.validate();
  return build_map(p.domains, p.epsilon);
}

QuadExpr substitute(const QuadExpr& e, const BinarizationMap& map) {
  if (e.size() != map.num_vars()) {
    throw ValidationError("substitute: expression size does not match map");
  }
  const double constant = e.constant() + evaluate(e, map.g);
  const Vector w = e.Q() * map.g + e.v();

  if (map.uniform) {
    // L = E_s (x) P, so L^T Q L = Q (x) P^T P and L^T w = w (x) P^T.
    const RowVector& P = map.encodings.front().coeffs;
    Matrix Qy = kron(e.Q(), P.transpose() * P);
    Vector vy = kron(w, P.transpose()).col(0);
    return QuadExpr(std::move(Qy), std::move(vy), constant);
  }
  Matrix Qy = map.L.transpose() * e.Q() * map.L;
  Vector vy = map.L.transpose() * w;
  return QuadExpr(std::move(Qy), std::move(vy), constant);
}

Vector decode(const BinarizationMap& map, const Bits& y) {
  if (y.size() != map.num_bits()) {
    throw ValidationError("decode: bit count mismatch");
  }
  return map.L * y.cast<double>() + map.g;
}

std::vector<int> onehot_violations(const BinarizationMap& map, const Bits& y) {
  std::vector<int> bad;
  for (std::size_t j = 0; j < map.encodings.size(); ++j) {
    const Encoding& enc = map.encodings[j];
    if (!enc.onehot()) continue;
    int sum = 0;
    for (int k = 0; k < enc.bits(); ++k) sum += y(map.bit_offset[j] + k);
    if (sum != 1) bad.push_back(static_cast<int>(j));
  }
  return bad;
}

Bits encode_value(const Encoding& enc, double value) {
  Bits y = Bits::Zero(enc.bits());
  switch (enc.kind) {
    case Encoding::Kind::passthrough: {
      if (value != 0.0 && value != 1.0) {
        throw ValidationError("binary variable value must be 0 or 1");
      }
      y(0) = static_cast<int>(value);
      return y;
    }
    case Encoding::Kind::spin: {
      if (value != -1.0 && value != 1.0) {
        throw ValidationError("spin variable value must be -1 or 1");
      }
      y(0) = value > 0.0 ? 1 : 0;
      return y;
    }
    case Encoding::Kind::integer: {
      double remaining = value - enc.shift;
      for (int i = enc.bits() - 1; i >= 0; --i) {
        if (enc.coeffs(i) <= remaining) {
          y(i) = 1;
          remaining -= enc.coeffs(i);
        }
      }
      if (remaining != 0.0) {
        throw ValidationError("value is not representable by the encoding");
      }
      return y;
    }
    case Encoding::Kind::discrete: {
      for (int i = 0; i < enc.bits(); ++i) {
        if (enc.coeffs(i) == value) {
          y(i) = 1;
          return y;
        }
      }
      throw ValidationError("value is not in the discrete set");
    }
    case Encoding::Kind::continuous: {
      const double step = enc.coeffs(0);
      const double hi_count = std::ldexp(1.0, enc.bits()) - 1.0;
      double k = std::round((value - enc.shift) / step);
      k = std::min(std::max(k, 0.0), hi_count);
      auto count = static_cast<std::uint64_t>(k);
      for (int i = 0; i < enc.bits(); ++i) {
        y(i) = static_cast<int>((count >> i) & 1u);
      }
      return y;
    }
  }
  throw ValidationError("unknown encoding kind");
}

Bits encode_point(const BinarizationMap& map, const Vector& x) {
  if (x.size() != map.num_vars()) {
    throw ValidationError("encode_point: dimension mismatch");
  }
  Bits y = Bits::Zero(map.num_bits());
  for (std::size_t j = 0; j < map.encodings.size(); ++j) {
    const Encoding& enc = map.encodings[j];
    const Bits part = encode_value(enc, x(static_cast<Eigen::Index>(j)));
    y.segment(map.bit_offset[j], enc.bits()) = part;
  }
  return y;
}

}  // namespace qubokit
