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

// The protocol over a cyclic group Z_n written additively, generated by
// g = 1. An automorphism x -> k x is determined by the image k of g, so the
// flow collapses to ElGamal in the unit group of Z_n.

#include <utility>

#include "mor/bigint.hpp"
#include "mor/error.hpp"
#include "mor/rng.hpp"

namespace mor::cyclic {

struct CyclicAutomorphism {
  BigInt n;
  BigInt k;  // image of the generator

  BigInt apply(const BigInt& a) const {
    BigInt r = (k * a) % n;
    return r < 0 ? BigInt(r + n) : r;
  }
  friend bool operator==(const CyclicAutomorphism& a, const CyclicAutomorphism& b) {
    return a.n == b.n && a.k == b.k;
  }
};

inline CyclicAutomorphism compose(const CyclicAutomorphism& a, const CyclicAutomorphism& b) {
  if (a.n != b.n) fail(ErrorCode::kSpecMismatch, "different cyclic groups");
  return {a.n, BigInt((a.k * b.k) % a.n)};
}

inline CyclicAutomorphism power(const CyclicAutomorphism& phi, const BigInt& e) {
  CyclicAutomorphism r{phi.n, 1};
  for (std::size_t bit = bit_length(e); bit-- > 0;) {
    r = compose(r, r);
    if (mpz_tstbit(e.get_mpz_t(), bit)) r = compose(r, phi);
  }
  return r;
}

struct PublicKey {
  CyclicAutomorphism phi;
  CyclicAutomorphism phi_m;
};

struct Ciphertext {
  CyclicAutomorphism phi_r;
  BigInt payload;
};

inline void require_prime(const BigInt& n) {
  if (mpz_probab_prime_p(n.get_mpz_t(), 64) == 0) fail(ErrorCode::kDomain, "group order must be prime");
}

inline PublicKey make_public_key(const BigInt& n, const BigInt& k, const BigInt& m) {
  require_prime(n);
  if (k % n == 0) fail(ErrorCode::kDomain, "k must be a unit");
  CyclicAutomorphism phi{n, BigInt(k % n)};
  return {phi, power(phi, m)};
}

inline Ciphertext encrypt_with(const PublicKey& pk, const BigInt& a, const BigInt& r) {
  return {power(pk.phi, r), power(pk.phi_m, r).apply(a)};
}

inline Ciphertext encrypt(const PublicKey& pk, const BigInt& a, Rng& rng) {
  return encrypt_with(pk, a, rng.between(BigInt(1), BigInt(pk.phi.n - 2)));
}

/// phi^{mr} from phi^r, then its inverse as phi^{t-1} with t = n - 1, the
/// order of the automorphism group of Z_n.
inline BigInt decrypt(const BigInt& m, const Ciphertext& ct) {
  const CyclicAutomorphism psi = power(ct.phi_r, m);
  const CyclicAutomorphism inv = power(psi, BigInt(ct.phi_r.n - 2));
  return inv.apply(ct.payload);
}

// Textbook ElGamal in the multiplicative group mod p with generator alpha
// and public beta = alpha^m.
struct ElGamalCiphertext {
  BigInt y1;
  BigInt y2;
};

inline BigInt powmod(const BigInt& b, const BigInt& e, const BigInt& p) {
  BigInt r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline ElGamalCiphertext elgamal_encrypt(const BigInt& p, const BigInt& alpha, const BigInt& beta, const BigInt& x,
                                         const BigInt& r) {
  return {powmod(alpha, r, p), BigInt((x * powmod(beta, r, p)) % p)};
}

inline BigInt elgamal_decrypt(const BigInt& p, const BigInt& m, const ElGamalCiphertext& c) {
  BigInt s = powmod(c.y1, m, p);
  BigInt sinv;
  mpz_invert(sinv.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
  return BigInt((c.y2 * sinv) % p);
}

}  // namespace mor::cyclic
