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

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "mor/error.hpp"

namespace mor {

using BigInt = mpz_class;

inline std::size_t bit_length(const BigInt& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

inline bool fits_u64(const BigInt& n) {
  return n >= 0 && bit_length(n) <= 64;
}

inline std::uint64_t to_u64(const BigInt& n) {
  if (!fits_u64(n)) fail(ErrorCode::kDomain, "integer does not fit 64 bits");
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, n.get_mpz_t());
  return v;
}

inline std::string to_decimal(const BigInt& n) { return n.get_str(10); }

inline BigInt parse_decimal(std::string_view s) {
  if (s.empty()) fail(ErrorCode::kFormat, "empty decimal integer");
  std::size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size()) fail(ErrorCode::kFormat, "bad decimal integer");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      fail(ErrorCode::kFormat, "bad decimal integer '" + std::string(s) + "'");
    }
  }
  return BigInt(std::string(s), 10);
}

inline BigInt parse_hex(std::string_view s) {
  if (s.empty()) fail(ErrorCode::kFormat, "empty hex integer");
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
              (c >= 'A' && c <= 'F');
    if (!ok) fail(ErrorCode::kFormat, "bad hex integer '" + std::string(s) + "'");
  }
  return BigInt(std::string(s), 16);
}

/// log2(n) for n > 0, accurate to double precision even for huge n.
inline double log2_big(const BigInt& n) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace mor
