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

// The MOR public-key cryptosystem over SL(d, q).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mor/automorphism.hpp"
#include "mor/bigint.hpp"
#include "mor/error.hpp"
#include "mor/field.hpp"
#include "mor/matrix.hpp"
#include "mor/rng.hpp"
#include "mor/security.hpp"

namespace mor {

struct MorParams {
  FieldSpec spec;
  std::size_t d = 0;
  /// Only accept conjugators with irreducible characteristic polynomial.
  bool require_irreducible_lift = true;
  unsigned max_keygen_draws = 256;

  void validate() const {
    if (!spec.valid()) fail(ErrorCode::kDomain, "missing field");
    if (d < 2) fail(ErrorCode::kDomain, "degree must be >= 2");
  }
  friend bool operator==(const MorParams& a, const MorParams& b) {
    return a.d == b.d && a.spec == b.spec;
  }
};

struct MorPublicKey {
  MorParams params;
  Automorphism phi;
  Automorphism phi_m;
};

struct MorPrivateKey {
  MorParams params;
  BigInt m;
  Matrix conjugator;
};

struct MorCiphertext {
  Automorphism phi_r;
  Matrix payload;
};

/// How powers of automorphisms are computed. kConjugator recovers a
/// conjugator and raises the matrix; kComposition runs square and multiply
/// over compositions of generator images.
enum class PowerRoute { kConjugator, kComposition };

/// B^e, reducing e modulo q^d - 1 when the characteristic polynomial of B
/// is irreducible (then B generates a copy of GF(q^d)).
inline Matrix conjugator_power(const Matrix& b, const BigInt& e) {
  if (is_irreducible(char_poly(b))) {
    const BigInt group = big_pow(b.spec().q(), b.d()) - 1;
    return mat_pow(b, e % group);
  }
  return mat_pow(b, e);
}

/// phi^e by the chosen route.
inline Automorphism automorphism_power(const Automorphism& phi, const BigInt& e, PowerRoute route) {
  if (route == PowerRoute::kComposition) return power(phi, e);
  return Automorphism::from_conjugator(conjugator_power(recover_conjugator(phi), e));
}

/// Uniform exponent in [2, q^{d^2} - 2].
inline BigInt sample_exponent(const MorParams& params, Rng& rng) {
  const BigInt top = big_pow(params.spec.q(), params.d * params.d) - 2;
  if (top < 2) return BigInt(2);
  return rng.between(BigInt(2), top);
}

inline std::pair<MorPublicKey, MorPrivateKey> keygen_from(const MorParams& params, const Matrix& a, const BigInt& m) {
  params.validate();
  if (a.d() != params.d) fail(ErrorCode::kSpecMismatch, "conjugator degree does not match");
  require_same_spec(params.spec, a.spec());
  MorPublicKey pk{params, Automorphism::from_conjugator(a), Automorphism::from_conjugator(conjugator_power(a, m))};
  MorPrivateKey sk{params, m, a};
  return {std::move(pk), std::move(sk)};
}

inline std::pair<MorPublicKey, MorPrivateKey> keygen(const MorParams& params, Rng& rng) {
  params.validate();
  for (unsigned draw = 0; draw < params.max_keygen_draws; ++draw) {
    Matrix a = random_gl(params.spec, params.d, rng);
    if (params.require_irreducible_lift && !is_irreducible(char_poly(a))) continue;
    return keygen_from(params, a, sample_exponent(params, rng));
  }
  fail(ErrorCode::kKeygenFailure, "no acceptable conjugator in " + std::to_string(params.max_keygen_draws) + " draws");
}

/// Keys with a monomial conjugator diag(w) P(alpha). These are weak and meant
/// for the attack laboratory only.
inline std::pair<MorPublicKey, MorPrivateKey> keygen_monomial(const MorParams& params, Rng& rng,
                                                              std::optional<BigInt> m = std::nullopt) {
  params.validate();
  std::vector<FieldElement> w;
  for (std::size_t k = 0; k < params.d; ++k) w.push_back(params.spec.random_nonzero(rng));
  const Permutation alpha = Permutation::random(params.d, rng);
  MorParams p = params;
  p.require_irreducible_lift = false;
  return keygen_from(p, monomial_matrix(w, alpha), m ? *m : sample_exponent(params, rng));
}

inline void require_params(const MorParams& params, const Automorphism& phi) {
  if (phi.d() != params.d) fail(ErrorCode::kSpecMismatch, "degree does not match the key");
  if (!(phi.spec() == params.spec)) fail(ErrorCode::kSpecMismatch, "field does not match the key");
}

/// Encryption with an explicit exponent r. Callers normally use encrypt().
inline MorCiphertext encrypt_with(const MorPublicKey& pk, const Matrix& a, const BigInt& r,
                                  PowerRoute route = PowerRoute::kConjugator) {
  if (!a.square() || a.d() != pk.params.d) fail(ErrorCode::kSpecMismatch, "plaintext degree does not match the key");
  require_same_spec(pk.params.spec, a.spec());
  if (!in_sl(a)) fail(ErrorCode::kNotInSL, "plaintext must have determinant 1");
  const Automorphism phi_r = automorphism_power(pk.phi, r, route);
  if (route == PowerRoute::kComposition) return {phi_r, power(pk.phi_m, r).apply(a)};
  const Matrix c = conjugator_power(recover_conjugator(pk.phi_m), r);
  return {phi_r, conjugate(a, c)};
}

inline MorCiphertext encrypt(const MorPublicKey& pk, const Matrix& a, Rng& rng,
                             PowerRoute route = PowerRoute::kConjugator) {
  return encrypt_with(pk, a, sample_exponent(pk.params, rng), route);
}

inline Matrix decrypt(const MorPrivateKey& sk, const MorCiphertext& ct, PowerRoute route = PowerRoute::kConjugator) {
  if (ct.phi_r.d() != sk.params.d || !(ct.phi_r.spec() == sk.params.spec) || ct.payload.d() != sk.params.d ||
      !ct.payload.square()) {
    fail(ErrorCode::kSpecMismatch, "ciphertext does not match the key parameters");
  }
  require_same_spec(sk.params.spec, ct.payload.spec());
  if (!in_sl(ct.payload)) fail(ErrorCode::kInvalidCiphertext, "payload is not in SL(d, q)");
  try {
    if (route == PowerRoute::kComposition) {
      const Automorphism psi = power(ct.phi_r, sk.m);
      return invert(psi).apply(ct.payload);
    }
    // phi^{mr} is conjugation by B_r^m; undo it
    const Matrix b = conjugator_power(recover_conjugator(ct.phi_r), sk.m);
    return b * ct.payload * mat_inv(b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidAutomorphism) fail(ErrorCode::kInvalidCiphertext, e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------
// Plaintext encoding: a message becomes the transvection 1 + l e_{1,2}.

/// Bytes that fit in one field element: 0x01 || message must stay below q.
inline std::size_t message_capacity(const FieldSpec& spec) {
  const std::size_t bits = bit_length(spec.q());
  return bits < 2 ? 0 : (bits - 2) / 8;
}

namespace detail {

inline BigInt bytes_to_int(const std::vector<std::uint8_t>& bytes) {
  BigInt n = 1;
  for (auto b : bytes) {
    n <<= 8;
    n += b;
  }
  return n;
}

inline std::vector<std::uint8_t> int_to_bytes(BigInt n) {
  std::vector<std::uint8_t> out;
  while (n > 0) {
    BigInt low = n & 0xff;
    out.push_back(static_cast<std::uint8_t>(low.get_ui()));
    n >>= 8;
  }
  if (out.empty() || out.back() != 0x01) fail(ErrorCode::kFormat, "missing message marker");
  out.pop_back();
  return {out.rbegin(), out.rend()};
}

inline FieldElement read_plaintext_coefficient(const Matrix& m) {
  auto t = as_transvection(m);
  if (!t || t->i != 1 || t->j != 2) fail(ErrorCode::kFormat, "plaintext is not a transvection at (1,2)");
  return t->lambda;
}

}  // namespace detail

inline Matrix encode_message(const std::vector<std::uint8_t>& bytes, const MorParams& params) {
  params.validate();
  if (bytes.size() > message_capacity(params.spec)) {
    fail(ErrorCode::kCapacity, "message of " + std::to_string(bytes.size()) + " bytes exceeds capacity " +
                                   std::to_string(message_capacity(params.spec)));
  }
  return transvection(params.spec, params.d, 1, 2, params.spec.from_integer(detail::bytes_to_int(bytes)));
}

inline std::vector<std::uint8_t> decode_message(const Matrix& m) {
  return detail::int_to_bytes(detail::read_plaintext_coefficient(m).to_integer());
}

/// Messages of any length: 0x01 || message read in base q - 1, most
/// significant digit first, digit t carried by 1 + (t + 1) e_{1,2}.
inline std::vector<Matrix> encode_stream(const std::vector<std::uint8_t>& bytes, const MorParams& params) {
  params.validate();
  const BigInt base = params.spec.q() - 1;
  if (base < 2) fail(ErrorCode::kCapacity, "field too small to carry messages");
  BigInt n = detail::bytes_to_int(bytes);
  std::vector<BigInt> digits;
  while (n > 0) {
    digits.push_back(n % base);
    n /= base;
  }
  std::vector<Matrix> out;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    out.push_back(transvection(params.spec, params.d, 1, 2, params.spec.from_integer(*it + 1)));
  }
  return out;
}

inline std::vector<std::uint8_t> decode_stream(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) fail(ErrorCode::kFormat, "empty message stream");
  const BigInt base = blocks.front().spec().q() - 1;
  BigInt n = 0;
  for (const auto& b : blocks) {
    n = n * base + (detail::read_plaintext_coefficient(b).to_integer() - 1);
  }
  return detail::int_to_bytes(n);
}

}  // namespace mor
