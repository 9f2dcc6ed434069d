/*
 * Copyright 2026 The MOR-SL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

#include "mor/bigint.hpp"

namespace mor {

/// Seedable generator behind every random draw in the library.
///
/// Sampling is done by rejection on raw 64-bit words rather than through
/// std::uniform_int_distribution so seeded runs are bit-reproducible across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng from_entropy() {
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    return Rng(seed);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) fail(ErrorCode::kDomain, "empty sampling range");
    if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
    // 2^64 mod bound; values below it would bias the low residues
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t v = next();
      if (v >= threshold) return v % bound;
    }
  }

  /// Uniform in [0, bound) for arbitrary-precision bounds.
  BigInt below(const BigInt& bound) {
    if (bound <= 0) fail(ErrorCode::kDomain, "empty sampling range");
    if (fits_u64(bound)) return from_u64(below(to_u64(bound)));
    std::size_t bits = bit_length(bound);
    std::size_t words = (bits + 63) / 64;
    for (;;) {
      BigInt v = 0;
      for (std::size_t w = 0; w < words; ++w) {
        v <<= 64;
        v += from_u64(next());
      }
      std::size_t excess = words * 64 - bits;
      if (excess > 0) v >>= static_cast<mp_bitcnt_t>(excess);
      if (v < bound) return v;
    }
  }

  /// Uniform in the closed range [lo, hi].
  BigInt between(const BigInt& lo, const BigInt& hi) {
    if (hi < lo) fail(ErrorCode::kDomain, "empty sampling range");
    return lo + below(BigInt(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mor
