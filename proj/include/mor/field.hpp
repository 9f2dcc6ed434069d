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

// Exact arithmetic in GF(p^gamma), polynomial basis over an explicitly stored
// monic irreducible modulus, plus univariate polynomials over such a field.
//
// Two coefficient backends exist behind one element type: primes below 2^32
// keep coefficients in uint64_t, larger primes fall back to GMP integers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mor/bigint.hpp"
#include "mor/error.hpp"
#include "mor/rng.hpp"

namespace mor {

// ---------------------------------------------------------------------------
// Multiplication counter.

namespace detail {
inline std::atomic<std::uint64_t>& mul_tally() {
  static std::atomic<std::uint64_t> tally{0};
  return tally;
}
}  // namespace detail

/// Number of field multiplications since the last cost_reset(). Additions,
/// negations and inversions through the extended Euclidean algorithm are
/// free.
inline std::uint64_t cost_counter() {
  return detail::mul_tally().load(std::memory_order_relaxed);
}

inline void cost_reset() { detail::mul_tally().store(0, std::memory_order_relaxed); }

/// Scoped measurement: counter delta between construction and count().
class CostScope {
 public:
  CostScope() : start_(cost_counter()) {}
  std::uint64_t count() const { return cost_counter() - start_; }

 private:
  std::uint64_t start_;
};

namespace detail {

// Coefficient arithmetic over GF(p). Both policies expose the same surface so
// the polynomial routines below are written once.
struct SmallOps {
  using T = std::uint64_t;
  std::uint64_t p;

  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const {
    T r = a + b;
    return r >= p ? r - p : r;
  }
  T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T mul(T a, T b) const { return (a * b) % p; }
  T inv(T a) const {
    // extended Euclid on signed 64-bit values; p < 2^32 so nothing overflows
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      std::int64_t quot = r / new_r;
      std::int64_t tmp = t - quot * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - quot * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (r != 1) fail(ErrorCode::kDomain, "inverse of zero");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<T>(t);
  }
};

struct BigOps {
  using T = BigInt;
  const BigInt* p;

  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const {
    T r = a + b;
    if (r >= *p) r -= *p;
    return r;
  }
  T sub(const T& a, const T& b) const {
    T r = a - b;
    if (r < 0) r += *p;
    return r;
  }
  T neg(const T& a) const { return a == 0 ? T(0) : T(*p - a); }
  T mul(const T& a, const T& b) const {
    T r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p->get_mpz_t());
    return r;
  }
  T inv(const T& a) const {
    T r;
    if (a == 0 || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p->get_mpz_t()) == 0) {
      fail(ErrorCode::kDomain, "inverse of zero");
    }
    return r;
  }
};

struct FieldData {
  BigInt p;
  unsigned gamma = 1;
  BigInt q;
  std::vector<BigInt> modulus;  // gamma + 1 coefficients, constant first, monic
  bool small = false;
  std::uint64_t p64 = 0;
  bool lazy_accumulate = false;  // (p-1)^2 * gamma fits in 64 bits
  // x^gamma == sum_t neg_tail[t].second * x^(neg_tail[t].first), nonzero terms
  std::vector<std::pair<unsigned, std::uint64_t>> neg_tail_small;
  std::vector<std::pair<unsigned, BigInt>> neg_tail_big;
};

// Polynomial helpers on raw coefficient vectors (constant first).
template <class Ops>
void trim(const Ops& ops, std::vector<typename Ops::T>& a) {
  while (!a.empty() && ops.is_zero(a.back())) a.pop_back();
}

template <class Ops>
std::vector<typename Ops::T> poly_mod(const Ops& ops, std::vector<typename Ops::T> a,
                                      const std::vector<typename Ops::T>& m) {
  trim(ops, a);
  const std::size_t dm = m.size() - 1;
  auto lead_inv = ops.inv(m.back());
  while (a.size() >= m.size()) {
    auto c = ops.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - m.size();
    for (std::size_t t = 0; t <= dm; ++t) {
      a[shift + t] = ops.sub(a[shift + t], ops.mul(c, m[t]));
    }
    trim(ops, a);
  }
  return a;
}

// Inverse of a modulo the irreducible m via the extended Euclidean algorithm.
template <class Ops>
std::vector<typename Ops::T> poly_inverse_mod(const Ops& ops,
                                              std::vector<typename Ops::T> a,
                                              std::vector<typename Ops::T> m) {
  using T = typename Ops::T;
  using V = std::vector<T>;
  const std::size_t n = m.size() - 1;
  trim(ops, a);
  if (a.empty()) fail(ErrorCode::kDomain, "inverse of zero");
  V r0 = std::move(m), r1 = std::move(a);
  V s0{}, s1{ops.one()};
  auto sub_mul = [&](const V& x, const V& q, const V& y) {
    // x - q*y
    V out = x;
    if (!q.empty() && !y.empty()) {
      if (out.size() < q.size() + y.size() - 1) out.resize(q.size() + y.size() - 1, ops.zero());
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (ops.is_zero(q[i])) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
          out[i + j] = ops.sub(out[i + j], ops.mul(q[i], y[j]));
        }
      }
    }
    trim(ops, out);
    return out;
  };
  while (r1.size() > 1) {
    // quotient of r0 / r1
    V rem = r0;
    V quot(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, ops.zero());
    T lead_inv = ops.inv(r1.back());
    while (rem.size() >= r1.size()) {
      T c = ops.mul(rem.back(), lead_inv);
      std::size_t shift = rem.size() - r1.size();
      quot[shift] = c;
      for (std::size_t t = 0; t < r1.size(); ++t) {
        rem[shift + t] = ops.sub(rem[shift + t], ops.mul(c, r1[t]));
      }
      trim(ops, rem);
    }
    trim(ops, quot);
    V s2 = sub_mul(s0, quot, s1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) fail(ErrorCode::kDomain, "element not invertible modulo the modulus");
  T c = ops.inv(r1[0]);
  for (auto& v : s1) v = ops.mul(v, c);
  s1.resize(n, ops.zero());
  return s1;
}

}  // namespace detail

class FieldElement;

/// Description of GF(p^gamma). Cheap to copy; all copies share one immutable
/// record.
class FieldSpec {
 public:
  FieldSpec() = default;

  /// Builds GF(p^gamma). When no modulus is given the lexicographically
  /// smallest monic irreducible of degree gamma is chosen, comparing
  /// coefficient vectors constant term first.
  static FieldSpec make(const BigInt& p, unsigned gamma,
                        std::optional<std::vector<BigInt>> modulus = std::nullopt);
  static FieldSpec prime(const BigInt& p) { return make(p, 1); }

  bool valid() const { return d_ != nullptr; }
  const BigInt& p() const { return d_->p; }
  unsigned gamma() const { return d_->gamma; }
  const BigInt& q() const { return d_->q; }
  const std::vector<BigInt>& modulus() const { return d_->modulus; }
  bool small() const { return d_->small; }
  const detail::FieldData& data() const { return *d_; }

  FieldElement zero() const;
  FieldElement one() const;
  /// Image of a (possibly negative) machine integer in the prime subfield.
  FieldElement from_int(long long v) const;
  /// Element whose base-p digits are the coefficients: n = sum c_s p^s.
  FieldElement from_integer(const BigInt& n) const;
  FieldElement from_coeffs(const std::vector<BigInt>& coeffs) const;
  /// The class of x in GF(p)[x]/(modulus); equals p-adic 1 when gamma = 1.
  FieldElement generator_x() const;
  FieldElement random(Rng& rng) const;
  FieldElement random_nonzero(Rng& rng) const;
  /// All q elements in integer order; only sensible for tiny fields.
  std::vector<FieldElement> elements() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    if (a.d_ == b.d_) return true;
    if (!a.d_ || !b.d_) return false;
    return a.d_->p == b.d_->p && a.d_->gamma == b.d_->gamma &&
           a.d_->modulus == b.d_->modulus;
  }

  std::string describe() const {
    if (gamma() == 1) return "GF(" + to_decimal(p()) + ")";
    return "GF(" + to_decimal(p()) + "^" + std::to_string(gamma()) + ")";
  }

 private:
  explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  static FieldSpec build_unchecked(const BigInt& p, unsigned gamma,
                                   std::vector<BigInt> modulus);

  std::shared_ptr<const detail::FieldData> d_;
};

inline void require_same_spec(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) fail(ErrorCode::kSpecMismatch, a.describe() + " vs " + b.describe());
}

/// Element of GF(p^gamma) as a length-gamma coefficient vector over GF(p).
class FieldElement {
 public:
  FieldElement() = default;

  const FieldSpec& spec() const { return spec_; }

  bool is_zero() const {
    if (spec_.small()) {
      return std::all_of(s_.begin(), s_.end(), [](std::uint64_t c) { return c == 0; });
    }
    return std::all_of(b_.begin(), b_.end(), [](const BigInt& c) { return c == 0; });
  }
  bool is_one() const {
    if (spec_.small()) {
      if (s_[0] != 1) return false;
      return std::all_of(s_.begin() + 1, s_.end(), [](std::uint64_t c) { return c == 0; });
    }
    if (b_[0] != 1) return false;
    return std::all_of(b_.begin() + 1, b_.end(), [](const BigInt& c) { return c == 0; });
  }

  /// Coefficient of x^s as an integer in [0, p).
  BigInt coeff(unsigned s) const { return spec_.small() ? from_u64(s_[s]) : b_[s]; }
  std::vector<BigInt> coeffs() const {
    std::vector<BigInt> out;
    for (unsigned s = 0; s < spec_.gamma(); ++s) out.push_back(coeff(s));
    return out;
  }
  /// Inverse of FieldSpec::from_integer.
  BigInt to_integer() const {
    BigInt n = 0;
    for (unsigned s = spec_.gamma(); s-- > 0;) n = n * spec_.p() + coeff(s);
    return n;
  }

  FieldElement operator+(const FieldElement& o) const {
    require_same_spec(spec_, o.spec_);
    FieldElement r = *this;
    if (spec_.small()) {
      detail::SmallOps ops{spec_.data().p64};
      for (std::size_t s = 0; s < s_.size(); ++s) r.s_[s] = ops.add(s_[s], o.s_[s]);
    } else {
      detail::BigOps ops{&spec_.p()};
      for (std::size_t s = 0; s < b_.size(); ++s) r.b_[s] = ops.add(b_[s], o.b_[s]);
    }
    return r;
  }
  FieldElement operator-(const FieldElement& o) const {
    require_same_spec(spec_, o.spec_);
    FieldElement r = *this;
    if (spec_.small()) {
      detail::SmallOps ops{spec_.data().p64};
      for (std::size_t s = 0; s < s_.size(); ++s) r.s_[s] = ops.sub(s_[s], o.s_[s]);
    } else {
      detail::BigOps ops{&spec_.p()};
      for (std::size_t s = 0; s < b_.size(); ++s) r.b_[s] = ops.sub(b_[s], o.b_[s]);
    }
    return r;
  }
  FieldElement operator-() const {
    FieldElement r = *this;
    if (spec_.small()) {
      detail::SmallOps ops{spec_.data().p64};
      for (auto& c : r.s_) c = ops.neg(c);
    } else {
      detail::BigOps ops{&spec_.p()};
      for (auto& c : r.b_) c = ops.neg(c);
    }
    return r;
  }
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inverse() const;
  /// Square and multiply, left to right; pow(0) = 1.
  FieldElement pow(const BigInt& n) const;
  /// a^(p^i) for 0 <= i < gamma.
  FieldElement frobenius(unsigned i) const;

  /// Coefficients in hex, big-endian digits, joined constant term first by ':'.
  std::string to_hex() const {
    std::string out;
    for (unsigned s = 0; s < spec_.gamma(); ++s) {
      if (s) out += ':';
      out += coeff(s).get_str(16);
    }
    return out;
  }
  static FieldElement from_hex(const FieldSpec& spec, std::string_view text);

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.spec_ == b.spec_ && a.s_ == b.s_ && a.b_ == b.b_;
  }

 private:
  friend class FieldSpec;

  FieldSpec spec_;
  std::vector<std::uint64_t> s_;
  std::vector<BigInt> b_;
};

// ---------------------------------------------------------------------------
// FieldElement arithmetic.

inline FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_spec(spec_, o.spec_);
  detail::mul_tally().fetch_add(1, std::memory_order_relaxed);
  const auto& fd = spec_.data();
  const unsigned g = fd.gamma;
  FieldElement r;
  r.spec_ = spec_;
  if (fd.small) {
    const std::uint64_t p = fd.p64;
    if (g == 1) {
      r.s_ = {(s_[0] * o.s_[0]) % p};
      return r;
    }
    std::vector<std::uint64_t> prod(2 * g - 1, 0);
    if (fd.lazy_accumulate) {
      // No intermediate reductions: every slot stays below (p-1)^2 (2 gamma + 1).
      auto reduce = [p](std::uint64_t v) { return p == 2 ? (v & 1) : v % p; };
      std::uint64_t* __restrict out = prod.data();
      const std::uint64_t* __restrict rhs = o.s_.data();
      for (unsigned i = 0; i < g; ++i) {
        const std::uint64_t ai = s_[i];
        if (ai == 0) continue;
        std::uint64_t* __restrict row = out + i;
        if (p == 2) {
          for (unsigned j = 0; j < g; ++j) row[j] += rhs[j];
        } else {
          for (unsigned j = 0; j < g; ++j) row[j] += ai * rhs[j];
        }
      }
      for (unsigned k = 2 * g - 2; k >= g; --k) {
        const std::uint64_t c = reduce(prod[k]);
        if (c == 0) continue;
        for (const auto& [t, m] : fd.neg_tail_small) prod[k - g + t] += c * m;
      }
      prod.resize(g);
      for (auto& c : prod) c = reduce(c);
      r.s_ = std::move(prod);
      return r;
    }
    for (unsigned i = 0; i < g; ++i) {
      const std::uint64_t ai = s_[i];
      if (ai == 0) continue;
      for (unsigned j = 0; j < g; ++j) {
        prod[i + j] = (prod[i + j] + (ai * o.s_[j]) % p) % p;
      }
    }
    for (unsigned k = 2 * g - 2; k >= g; --k) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      for (const auto& [t, m] : fd.neg_tail_small) {
        prod[k - g + t] = (prod[k - g + t] + c * m) % p;
      }
    }
    prod.resize(g);
    r.s_ = std::move(prod);
    return r;
  }
  const BigInt& p = fd.p;
  std::vector<BigInt> prod(2 * g - 1, 0);
  for (unsigned i = 0; i < g; ++i) {
    if (b_[i] == 0) continue;
    for (unsigned j = 0; j < g; ++j) {
      mpz_addmul(prod[i + j].get_mpz_t(), b_[i].get_mpz_t(), o.b_[j].get_mpz_t());
    }
  }
  for (auto& c : prod) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
  for (unsigned k = 2 * g - 2; k >= g && k < 2 * g; --k) {
    if (prod[k] == 0) continue;
    for (const auto& [t, m] : fd.neg_tail_big) {
      BigInt& dst = prod[k - g + t];
      mpz_addmul(dst.get_mpz_t(), prod[k].get_mpz_t(), m.get_mpz_t());
      mpz_mod(dst.get_mpz_t(), dst.get_mpz_t(), p.get_mpz_t());
    }
    if (k == 0) break;
  }
  prod.resize(g);
  r.b_ = std::move(prod);
  return r;
}

inline FieldElement FieldElement::inverse() const {
  const auto& fd = spec_.data();
  FieldElement r;
  r.spec_ = spec_;
  if (fd.small) {
    detail::SmallOps ops{fd.p64};
    if (fd.gamma == 1) {
      if (s_[0] == 0) fail(ErrorCode::kDomain, "inverse of zero");
      r.s_ = {ops.inv(s_[0])};
      return r;
    }
    std::vector<std::uint64_t> m;
    for (const auto& c : fd.modulus) m.push_back(to_u64(c));
    r.s_ = detail::poly_inverse_mod(ops, s_, m);
    return r;
  }
  detail::BigOps ops{&fd.p};
  if (fd.gamma == 1) {
    r.b_ = {ops.inv(b_[0])};
    return r;
  }
  r.b_ = detail::poly_inverse_mod(ops, b_, fd.modulus);
  return r;
}

inline FieldElement FieldElement::pow(const BigInt& n) const {
  if (n < 0) return inverse().pow(BigInt(-n));
  if (n == 0) return spec_.one();
  FieldElement r = *this;
  for (std::size_t bit = bit_length(n) - 1; bit-- > 0;) {
    r = r * r;
    if (mpz_tstbit(n.get_mpz_t(), bit)) r = r * *this;
  }
  return r;
}

inline FieldElement FieldElement::frobenius(unsigned i) const {
  if (i >= spec_.gamma()) {
    fail(ErrorCode::kDomain, "Frobenius power " + std::to_string(i) + " outside [0, gamma)");
  }
  if (i == 0) return *this;
  return pow(big_pow(spec_.p(), i));
}

inline FieldElement FieldElement::from_hex(const FieldSpec& spec, std::string_view text) {
  std::vector<BigInt> coeffs;
  std::size_t start = 0;
  for (;;) {
    std::size_t colon = text.find(':', start);
    auto part = text.substr(start, colon == std::string_view::npos ? std::string_view::npos
                                                                  : colon - start);
    coeffs.push_back(parse_hex(part));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (coeffs.size() != spec.gamma()) {
    fail(ErrorCode::kFormat, "field element '" + std::string(text) + "' has " +
                                 std::to_string(coeffs.size()) + " coefficients, expected " +
                                 std::to_string(spec.gamma()));
  }
  for (const auto& c : coeffs) {
    if (c >= spec.p()) fail(ErrorCode::kFormat, "coefficient out of range in '" + std::string(text) + "'");
  }
  return spec.from_coeffs(coeffs);
}

// Spec-named free functions.
inline FieldElement field_add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement field_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement field_neg(const FieldElement& a) { return -a; }
inline FieldElement field_inv(const FieldElement& a) { return a.inverse(); }
inline FieldElement field_pow(const FieldElement& a, const BigInt& n) { return a.pow(n); }
inline FieldElement frobenius(const FieldElement& a, unsigned i) { return a.frobenius(i); }

// ---------------------------------------------------------------------------
// FieldSpec element factories.

inline FieldElement FieldSpec::from_coeffs(const std::vector<BigInt>& coeffs) const {
  FieldElement e;
  e.spec_ = *this;
  const unsigned g = gamma();
  if (coeffs.size() > g) fail(ErrorCode::kDomain, "too many coefficients");
  if (small()) {
    e.s_.assign(g, 0);
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
      BigInt c = coeffs[s] % p();
      if (c < 0) c += p();
      e.s_[s] = to_u64(c);
    }
  } else {
    e.b_.assign(g, 0);
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
      BigInt c = coeffs[s] % p();
      if (c < 0) c += p();
      e.b_[s] = c;
    }
  }
  return e;
}

inline FieldElement FieldSpec::zero() const { return from_coeffs({}); }
inline FieldElement FieldSpec::one() const { return from_coeffs({BigInt(1)}); }
inline FieldElement FieldSpec::from_int(long long v) const {
  return from_coeffs({BigInt(static_cast<long>(v))});
}

inline FieldElement FieldSpec::from_integer(const BigInt& n) const {
  if (n < 0 || n >= q()) fail(ErrorCode::kDomain, "integer outside [0, q)");
  std::vector<BigInt> digits;
  BigInt rest = n;
  while (rest > 0) {
    digits.push_back(rest % p());
    rest /= p();
  }
  return from_coeffs(digits);
}

inline FieldElement FieldSpec::generator_x() const {
  if (gamma() == 1) return one();
  return from_coeffs({BigInt(0), BigInt(1)});
}

inline FieldElement FieldSpec::random(Rng& rng) const {
  std::vector<BigInt> coeffs;
  for (unsigned s = 0; s < gamma(); ++s) coeffs.push_back(rng.below(p()));
  return from_coeffs(coeffs);
}

inline FieldElement FieldSpec::random_nonzero(Rng& rng) const {
  for (;;) {
    FieldElement e = random(rng);
    if (!e.is_zero()) return e;
  }
}

inline std::vector<FieldElement> FieldSpec::elements() const {
  std::vector<FieldElement> out;
  for (BigInt n = 0; n < q(); ++n) out.push_back(from_integer(n));
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials over a FieldSpec.

/// Univariate polynomial over GF(q), coefficients constant term first, with no
/// trailing zeros (the zero polynomial is the empty vector).
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldSpec spec) : spec_(std::move(spec)) {}
  Poly(FieldSpec spec, std::vector<FieldElement> coeffs)
      : spec_(std::move(spec)), c_(std::move(coeffs)) {
    trim();
  }

  static Poly x(const FieldSpec& spec) { return Poly(spec, {spec.zero(), spec.one()}); }
  static Poly constant(const FieldElement& c) { return Poly(c.spec(), {c}); }

  const FieldSpec& spec() const { return spec_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  FieldElement coeff(std::size_t k) const { return k < c_.size() ? c_[k] : spec_.zero(); }
  const FieldElement& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Poly operator+(const Poly& o) const {
    std::vector<FieldElement> out(std::max(c_.size(), o.c_.size()), spec_.zero());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + o.coeff(k);
    return Poly(spec_, std::move(out));
  }
  Poly operator-(const Poly& o) const {
    std::vector<FieldElement> out(std::max(c_.size(), o.c_.size()), spec_.zero());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) - o.coeff(k);
    return Poly(spec_, std::move(out));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(spec_);
    std::vector<FieldElement> out(c_.size() + o.c_.size() - 1, spec_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j].is_zero()) continue;
        out[i + j] += c_[i] * o.c_[j];
      }
    }
    return Poly(spec_, std::move(out));
  }
  Poly scaled(const FieldElement& s) const {
    std::vector<FieldElement> out = c_;
    for (auto& c : out) c = c * s;
    return Poly(spec_, std::move(out));
  }

  /// (quotient, remainder) of *this divided by a nonzero divisor.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const {
    if (divisor.is_zero()) fail(ErrorCode::kDomain, "polynomial division by zero");
    std::vector<FieldElement> rem = c_;
    const std::size_t dd = divisor.c_.size();
    if (rem.size() < dd) return {Poly(spec_), *this};
    std::vector<FieldElement> quot(rem.size() - dd + 1, spec_.zero());
    const FieldElement lead_inv = divisor.lead().inverse();
    const bool monic = divisor.is_monic();
    for (std::size_t top = rem.size() - 1;; --top) {
      if (!rem[top].is_zero()) {
        FieldElement c = monic ? rem[top] : rem[top] * lead_inv;
        std::size_t shift = top - (dd - 1);
        quot[shift] = c;
        for (std::size_t t = 0; t < dd; ++t) {
          if (divisor.c_[t].is_zero()) continue;
          rem[shift + t] -= c * divisor.c_[t];
        }
      }
      if (top == dd - 1) break;
    }
    rem.resize(dd - 1, spec_.zero());
    return {Poly(spec_, std::move(quot)), Poly(spec_, std::move(rem))};
  }
  Poly operator%(const Poly& m) const { return divmod(m).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// base^e mod m by square and multiply.
  static Poly powmod(const Poly& base, const BigInt& e, const Poly& m) {
    Poly result = Poly::constant(base.spec_.one()) % m;
    if (e == 0) return result;
    Poly b = base % m;
    result = b;
    for (std::size_t bit = bit_length(e) - 1; bit-- > 0;) {
      result = (result * result) % m;
      if (mpz_tstbit(e.get_mpz_t(), bit)) result = (result * b) % m;
    }
    return result;
  }

  FieldElement evaluate(const FieldElement& at) const {
    FieldElement acc = spec_.zero();
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * at + c_[k];
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.spec_ == b.spec_ && a.c_ == b.c_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string c = spec_.gamma() == 1 ? to_decimal(c_[k].to_integer()) : "(" + c_[k].to_hex() + ")";
      if (k == 0) {
        out += c;
      } else {
        if (!c_[k].is_one()) out += c + "*";
        out += k == 1 ? "x" : "x^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  FieldSpec spec_;
  std::vector<FieldElement> c_;
};

/// Irreducibility over the coefficient field: f of degree n >= 1 is
/// irreducible iff gcd(x^(q^i) - x, f) = 1 for every i <= n/2.
inline bool is_irreducible(const Poly& f) {
  const long n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly fm = f.monic();
  const Poly x = Poly::x(f.spec());
  const BigInt& q = f.spec().q();
  Poly h = x % fm;
  for (long i = 1; i <= n / 2; ++i) {
    h = Poly::powmod(h, q, fm);
    if (Poly::gcd(fm, h - x).degree() != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldSpec construction.

inline FieldSpec FieldSpec::build_unchecked(const BigInt& p, unsigned gamma,
                                            std::vector<BigInt> modulus) {
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->gamma = gamma;
  d->q = big_pow(p, gamma);
  d->modulus = std::move(modulus);
  d->small = bit_length(p) <= 32;
  if (d->small) {
    d->p64 = to_u64(p);
    const BigInt bound = BigInt(p - 1) * BigInt(p - 1) * (2 * gamma + 1) + p;
    d->lazy_accumulate = bit_length(bound) < 64;
    for (unsigned t = 0; t < gamma; ++t) {
      const BigInt neg = (p - d->modulus[t]) % p;
      if (neg != 0) d->neg_tail_small.emplace_back(t, to_u64(neg));
    }
  } else {
    for (unsigned t = 0; t < gamma; ++t) {
      BigInt neg = (p - d->modulus[t]) % p;
      if (neg != 0) d->neg_tail_big.emplace_back(t, neg);
    }
  }
  return FieldSpec(std::move(d));
}

namespace detail {

// Poly over GF(p) with the given integer coefficients.
inline Poly poly_over_prime(const FieldSpec& prime_field, const std::vector<BigInt>& coeffs) {
  std::vector<FieldElement> c;
  for (const auto& v : coeffs) c.push_back(prime_field.from_coeffs({v}));
  return Poly(prime_field, std::move(c));
}

inline bool has_root_in_prime_field(const FieldSpec& fp, const std::vector<BigInt>& coeffs) {
  // Cheap screen before the full test: only for very small p.
  if (fp.p() > 64) return false;
  Poly f = poly_over_prime(fp, coeffs);
  for (long v = 0; v < fp.p().get_si(); ++v) {
    if (f.evaluate(fp.from_int(v)).is_zero()) return true;
  }
  return false;
}

}  // namespace detail

inline FieldSpec FieldSpec::make(const BigInt& p, unsigned gamma,
                                 std::optional<std::vector<BigInt>> modulus) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 64) == 0) {
    fail(ErrorCode::kDomain, to_decimal(p) + " is not prime");
  }
  if (gamma < 1) fail(ErrorCode::kDomain, "extension degree must be positive");
  if (gamma == 1) {
    if (modulus && !(modulus->size() == 2 && (*modulus)[1] == 1)) {
      fail(ErrorCode::kDomain, "prime field modulus must be monic of degree 1");
    }
    return build_unchecked(p, 1, {BigInt(0), BigInt(1)});
  }
  const FieldSpec fp = build_unchecked(p, 1, {BigInt(0), BigInt(1)});
  if (modulus) {
    auto& m = *modulus;
    if (m.size() != gamma + 1 || m.back() != 1) {
      fail(ErrorCode::kDomain, "modulus must be monic of degree gamma");
    }
    for (const auto& c : m) {
      if (c < 0 || c >= p) fail(ErrorCode::kDomain, "modulus coefficient outside [0, p)");
    }
    if (!is_irreducible(detail::poly_over_prime(fp, m))) {
      fail(ErrorCode::kDomain, "modulus is reducible over GF(" + to_decimal(p) + ")");
    }
    return build_unchecked(p, gamma, m);
  }
  // Enumerate (c_0, ..., c_{gamma-1}) lexicographically with c_0 most
  // significant; c_0 = 0 is skipped because x would divide the candidate.
  std::vector<BigInt> m(gamma + 1, 0);
  m[gamma] = 1;
  m[0] = 1;
  for (;;) {
    if (!detail::has_root_in_prime_field(fp, m) &&
        is_irreducible(detail::poly_over_prime(fp, m))) {
      return build_unchecked(p, gamma, m);
    }
    // increment, least significant digit is c_{gamma-1}
    unsigned pos = gamma - 1;
    for (;;) {
      m[pos] += 1;
      if (m[pos] < p) break;
      m[pos] = 0;
      if (pos == 0) fail(ErrorCode::kDomain, "no irreducible polynomial found");
      --pos;
    }
  }
}

}  // namespace mor
