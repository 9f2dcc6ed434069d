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

// Analysis and attack procedures: the lift of a conjugation to the d^2
// dimensional matrix algebra, characteristic polynomials, parameter
// estimates, baby-step giant-step, the monomial cycle attack, centralizers
// and the eigenvalue reduction of matrix discrete logarithms.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mor/automorphism.hpp"
#include "mor/bigint.hpp"
#include "mor/error.hpp"
#include "mor/field.hpp"
#include "mor/matrix.hpp"

namespace mor {

// ---------------------------------------------------------------------------
// Lift.

/// Matrix of X -> A^{-1} X A on d x d matrices, in the basis of matrix units
/// e_{i,j} ordered row-major. lift(A B) = lift(B) lift(A).
struct LiftedOperator {
  FieldSpec spec;
  std::size_t d = 0;
  Matrix matrix;

  std::size_t dim() const { return d * d; }

  Matrix apply(const Matrix& x) const {
    const Vec v = x.vectorize();
    Vec out(dim(), spec.zero());
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c) {
        if (v[c].is_zero() || matrix.at(r, c).is_zero()) continue;
        out[r] += matrix.at(r, c) * v[c];
      }
    return Matrix::from_vector(spec, d, out);
  }
};

inline LiftedOperator lift_operator(const Matrix& a) {
  if (!a.square()) fail(ErrorCode::kDomain, "conjugator must be square");
  const std::size_t d = a.d();
  const Matrix ainv = mat_inv(a);
  Matrix l(a.spec(), d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // A^{-1} e_{i,j} A = (column i of A^{-1}) (row j of A)
      const std::size_t col = i * d + j;
      for (std::size_t r = 0; r < d; ++r) {
        if (ainv.at(r, i).is_zero()) continue;
        for (std::size_t c = 0; c < d; ++c) {
          if (a.at(j, c).is_zero()) continue;
          l.at(r * d + c, col) = ainv.at(r, i) * a.at(j, c);
        }
      }
    }
  return {a.spec(), d, std::move(l)};
}

/// Reads the lifted operator back as an automorphism presentation: column
/// e_{i,j} of the lift is A^{-1} e_{i,j} A.
inline Automorphism automorphism_from_lift(const LiftedOperator& lift) {
  const std::size_t d = lift.d;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> images;
  for (auto [i, j] : generator_pairs(d)) {
    Vec col(d * d, lift.spec.zero());
    for (std::size_t r = 0; r < d * d; ++r) col[r] = lift.matrix.at(r, (i - 1) * d + (j - 1));
    images.emplace(std::make_pair(i, j), Matrix::identity(lift.spec, d) + Matrix::from_vector(lift.spec, d, col));
  }
  return Automorphism::from_images(lift.spec, d, images);
}

// ---------------------------------------------------------------------------
// Characteristic polynomial.

/// det(x 1 - M) by reduction to upper Hessenberg form followed by the
/// standard recurrence on leading principal minors.
inline Poly char_poly(const Matrix& m) {
  if (!m.square()) fail(ErrorCode::kDomain, "characteristic polynomial of a non-square matrix");
  const FieldSpec& spec = m.spec();
  const std::size_t n = m.rows();
  Matrix h = m;
  for (std::size_t c = 0; c + 2 < n; ++c) {
    const std::size_t piv_row = c + 1;
    std::size_t i = piv_row;
    while (i < n && h.at(i, c).is_zero()) ++i;
    if (i == n) continue;
    if (i != piv_row) {
      for (std::size_t k = 0; k < n; ++k) std::swap(h.at(i, k), h.at(piv_row, k));
      for (std::size_t k = 0; k < n; ++k) std::swap(h.at(k, i), h.at(k, piv_row));
    }
    const FieldElement inv = h.at(piv_row, c).inverse();
    for (std::size_t k = piv_row + 1; k < n; ++k) {
      if (h.at(k, c).is_zero()) continue;
      const FieldElement u = h.at(k, c) * inv;
      for (std::size_t t = 0; t < n; ++t)
        if (!h.at(piv_row, t).is_zero()) h.at(k, t) -= u * h.at(piv_row, t);
      for (std::size_t t = 0; t < n; ++t)
        if (!h.at(t, k).is_zero()) h.at(t, piv_row) += u * h.at(t, k);
    }
  }
  std::vector<Poly> p;
  p.push_back(Poly::constant(spec.one()));
  const Poly x = Poly::x(spec);
  for (std::size_t k = 0; k < n; ++k) {
    Poly next = (x - Poly::constant(h.at(k, k))) * p[k];
    FieldElement prod = spec.one();
    for (std::size_t i = k; i-- > 0;) {
      prod = prod * h.at(i + 1, i);
      if (prod.is_zero()) break;
      const FieldElement& hik = h.at(i, k);
      if (hik.is_zero()) continue;
      next = next - p[i].scaled(hik * prod);
    }
    p.push_back(std::move(next));
  }
  return p.back();
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and
/// -f_0, ..., -f_{n-1} in the last column.
inline Matrix companion_matrix(const Poly& f) {
  if (!f.is_monic() || f.degree() < 1) fail(ErrorCode::kDomain, "companion matrix needs a monic polynomial");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  Matrix c = Matrix::zero(f.spec(), n);
  for (std::size_t i = 1; i < n; ++i) c.at(i, i - 1) = f.spec().one();
  for (std::size_t i = 0; i < n; ++i) c.at(i, n - 1) = -f.coeff(i);
  return c;
}

// ---------------------------------------------------------------------------
// Parameter estimate.

enum class IndexCalculusRegime { kSubexponential, kExponential };

inline const char* regime_name(IndexCalculusRegime r) {
  return r == IndexCalculusRegime::kExponential ? "exponential" : "subexponential";
}

inline constexpr double kIndexCalculusConstant = 1.923;
inline constexpr double kReferenceFieldBits = 160.0;

struct SecurityEstimate {
  std::size_t d = 0;
  BigInt p;
  unsigned gamma = 0;
  BigInt q;
  double log2_q = 0;
  std::size_t dlp_field_exponent = 0;
  std::string target_field;
  std::size_t conjugator_field_exponent = 0;
  double index_calculus_log_cost = 0;
  double index_calculus_constant = kIndexCalculusConstant;
  std::string log_base = "2";
  IndexCalculusRegime index_calculus_regime = IndexCalculusRegime::kSubexponential;
  double sqrt_attack_bits = 0;
  std::optional<bool> lift_charpoly_irreducible;
  std::optional<bool> conjugator_charpoly_irreducible;
  std::vector<std::string> warnings;
};

/// log2 of exp(c (ln Q)^{1/3} (ln ln Q)^{2/3}) for Q = q^{d^2}.
inline double index_calculus_bits(double log2_q, std::size_t d, double c = kIndexCalculusConstant) {
  const double ln_q = log2_q * std::log(2.0) * static_cast<double>(d * d);
  if (ln_q <= 1.0) return 0.0;
  return c * std::cbrt(ln_q) * std::pow(std::log(ln_q), 2.0 / 3.0) / std::log(2.0);
}

inline SecurityEstimate validate_params(std::size_t d, const BigInt& p, unsigned gamma,
                                        const std::optional<Matrix>& conjugator = std::nullopt) {
  if (d < 2) fail(ErrorCode::kDomain, "degree must be >= 2");
  if (gamma < 1) fail(ErrorCode::kDomain, "extension degree must be >= 1");
  SecurityEstimate e;
  e.d = d;
  e.p = p;
  e.gamma = gamma;
  e.q = big_pow(p, gamma);
  e.log2_q = log2_big(e.q);
  e.dlp_field_exponent = d * d;
  e.conjugator_field_exponent = d;
  e.target_field = "F_{" + to_decimal(p) + "^" + std::to_string(static_cast<unsigned long>(gamma) * d * d) + "}";
  e.index_calculus_log_cost = index_calculus_bits(e.log2_q, d);
  e.index_calculus_regime = static_cast<double>(d) > e.log2_q ? IndexCalculusRegime::kExponential
                                                              : IndexCalculusRegime::kSubexponential;
  e.sqrt_attack_bits = static_cast<double>(d * d) * e.log2_q / 2.0;
  if (e.log2_q < kReferenceFieldBits) {
    e.warnings.push_back("field size 2^" + std::to_string(static_cast<long>(std::floor(e.log2_q))) +
                         " is below the 2^160 reference size");
  }
  if (conjugator) {
    if (conjugator->d() != d || big_pow(conjugator->spec().p(), conjugator->spec().gamma()) != e.q) {
      fail(ErrorCode::kSpecMismatch, "conjugator does not match the parameters");
    }
    e.conjugator_charpoly_irreducible = is_irreducible(char_poly(*conjugator));
    e.lift_charpoly_irreducible = is_irreducible(char_poly(lift_operator(*conjugator).matrix));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Baby-step giant-step over a generic group.
//
// A group type provides
//   using Elem = ...;
//   Elem mul(const Elem&, const Elem&) const;
//   Elem inv(const Elem&) const;
//   Elem identity() const;
//   bool eq(const Elem&, const Elem&) const;
//   std::string key(const Elem&) const;   // canonical serialization

enum class DlogStatus { kFound, kNotFound, kBudgetExceeded };

inline const char* dlog_status_name(DlogStatus s) {
  switch (s) {
    case DlogStatus::kFound: return "found";
    case DlogStatus::kNotFound: return "not-found";
    case DlogStatus::kBudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct DlogResult {
  DlogStatus status = DlogStatus::kNotFound;
  BigInt n;
  std::uint64_t group_ops = 0;
  bool found() const { return status == DlogStatus::kFound; }
};

/// Least n in [1, order_bound] with base^n = target. `budget` caps the
/// number of group operations; zero means no cap.
template <class Group>
DlogResult bsgs_dlog(const Group& g, const typename Group::Elem& base, const typename Group::Elem& target,
                     const BigInt& order_bound, std::uint64_t budget = 0) {
  DlogResult res;
  if (order_bound < 1) return res;
  auto spend = [&](std::uint64_t k) {
    res.group_ops += k;
    return budget != 0 && res.group_ops > budget;
  };
  // base^n = target  <=>  base^{n-1} = target base^{-1}, n - 1 in [0, bound)
  const typename Group::Elem goal = g.mul(target, g.inv(base));
  BigInt m_big = sqrt(order_bound - 1) + 1;
  if (!fits_u64(m_big)) fail(ErrorCode::kCapacity, "search range too large");
  const std::uint64_t m = to_u64(m_big);
  if (budget != 0 && m > budget) {
    res.status = DlogStatus::kBudgetExceeded;
    return res;
  }
  std::unordered_map<std::string, std::uint64_t> table;
  table.reserve(m * 2);
  typename Group::Elem cur = g.identity();
  for (std::uint64_t j = 0; j < m; ++j) {
    table.emplace(g.key(cur), j);
    cur = g.mul(cur, base);
    if (spend(1)) {
      res.status = DlogStatus::kBudgetExceeded;
      return res;
    }
  }
  // cur = base^m
  const typename Group::Elem giant = g.inv(cur);
  typename Group::Elem y = goal;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = table.find(g.key(y));
    if (it != table.end()) {
      BigInt n = BigInt(from_u64(i)) * from_u64(m) + from_u64(it->second);
      if (n <= order_bound - 1) {
        res.status = DlogStatus::kFound;
        res.n = n + 1;
        return res;
      }
    }
    y = g.mul(y, giant);
    if (spend(1)) {
      res.status = DlogStatus::kBudgetExceeded;
      return res;
    }
  }
  res.status = DlogStatus::kNotFound;
  return res;
}

/// Multiplicative group of a finite field.
struct FieldGroup {
  using Elem = FieldElement;
  FieldSpec spec;
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  Elem identity() const { return spec.one(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string key(const Elem& a) const { return a.to_hex(); }
};

/// Invertible d x d matrices under multiplication.
struct MatrixGroup {
  using Elem = Matrix;
  FieldSpec spec;
  std::size_t d = 0;
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return mat_inv(a); }
  Elem identity() const { return Matrix::identity(spec, d); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string key(const Elem& a) const {
    std::string s;
    for (const auto& e : a.entries()) {
      s += e.to_hex();
      s += ',';
    }
    return s;
  }
};

/// Units of GF(q)[x] / (f) for an irreducible f, i.e. the field GF(q^n).
struct ExtensionGroup {
  using Elem = Poly;
  Poly modulus;
  BigInt order;  // q^n - 1

  explicit ExtensionGroup(Poly f) : modulus(f.monic()) {
    order = big_pow(f.spec().q(), static_cast<unsigned long>(f.degree())) - 1;
  }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % modulus; }
  Elem inv(const Elem& a) const { return Poly::powmod(a, order - 1, modulus); }
  Elem identity() const { return Poly::constant(modulus.spec().one()); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string key(const Elem& a) const {
    std::string s;
    for (const auto& c : a.coeffs()) {
      s += c.to_hex();
      s += ',';
    }
    return s;
  }
  Elem pow(const Elem& a, const BigInt& e) const { return Poly::powmod(a, e, modulus); }
};

/// Scales a nonzero matrix so its first nonzero entry (row-major) is 1.
inline Matrix normalize_projective(const Matrix& a) {
  for (const auto& e : a.entries()) {
    if (!e.is_zero()) return e.is_one() ? a : a.scaled(e.inverse());
  }
  fail(ErrorCode::kSingular, "zero matrix has no projective class");
}

/// PGL(d, q): invertible matrices modulo scalars, in normalized form. Inner
/// automorphisms compose like this group.
struct ProjectiveGroup {
  using Elem = Matrix;
  FieldSpec spec;
  std::size_t d = 0;
  Elem mul(const Elem& a, const Elem& b) const { return normalize_projective(a * b); }
  Elem inv(const Elem& a) const { return normalize_projective(mat_inv(a)); }
  Elem identity() const { return Matrix::identity(spec, d); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string key(const Elem& a) const { return MatrixGroup{spec, d}.key(a); }
};

/// Generic attack on the public key: least m >= 1 with phi^m = phi_m, by
/// BSGS over the projective classes of the recovered conjugators.
inline DlogResult automorphism_dlog(const Automorphism& phi, const Automorphism& phi_m, std::uint64_t budget = 0) {
  require_same_shape(phi, phi_m);
  const ProjectiveGroup g{phi.spec(), phi.d()};
  const Matrix base = normalize_projective(recover_conjugator(phi));
  const Matrix target = normalize_projective(recover_conjugator(phi_m));
  return bsgs_dlog(g, base, target, pgl_order(phi.d(), phi.spec().q()), budget);
}

/// Multiplicative order of a nonzero field element, by BSGS on base^n = 1.
inline BigInt field_element_order(const FieldElement& a) {
  if (a.is_zero()) fail(ErrorCode::kDomain, "zero has no multiplicative order");
  FieldGroup g{a.spec()};
  DlogResult r = bsgs_dlog(g, a, a.spec().one(), a.spec().q() - 1);
  if (!r.found()) fail(ErrorCode::kNotFound, "order search failed");
  return r.n;
}

// ---------------------------------------------------------------------------
// Congruences.

struct Congruence {
  BigInt residue;
  BigInt modulus;
  bool contains(const BigInt& m) const {
    BigInt diff = m - residue;
    return mpz_divisible_p(diff.get_mpz_t(), modulus.get_mpz_t()) != 0;
  }
};

/// Intersection of two congruence classes, moduli not necessarily coprime.
inline std::optional<Congruence> crt(const Congruence& a, const Congruence& b) {
  BigInt g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.modulus.get_mpz_t(), b.modulus.get_mpz_t());
  BigInt diff = b.residue - a.residue;
  if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  BigInt lcm = a.modulus / g * b.modulus;
  BigInt k = (diff / g) * s;
  BigInt mg = b.modulus / g;
  k %= mg;
  BigInt r = a.residue + a.modulus * k;
  r %= lcm;
  if (r < 0) r += lcm;
  return Congruence{r, lcm};
}

// ---------------------------------------------------------------------------
// Monomial cycle attack.

/// Position and coefficient of 1 + l e_{i,j}, or nothing for other matrices.
struct TransvectionShape {
  std::size_t i = 0;
  std::size_t j = 0;
  FieldElement lambda;
};

inline std::optional<TransvectionShape> as_transvection(const Matrix& m) {
  if (!m.square()) return std::nullopt;
  const std::size_t d = m.d();
  std::optional<TransvectionShape> out;
  for (std::size_t r = 1; r <= d; ++r)
    for (std::size_t c = 1; c <= d; ++c) {
      const FieldElement& e = m(r, c);
      if (r == c) {
        if (!e.is_one()) return std::nullopt;
      } else if (!e.is_zero()) {
        if (out) return std::nullopt;
        out = TransvectionShape{r, c, e};
      }
    }
  return out;
}

struct OrbitReport {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // starting pair first
  FieldElement base;      // product of coefficients of phi over the orbit
  FieldElement target;    // coefficient of phi^m at the start pair over its prefix
  std::size_t shift = 0;  // m mod orbit length
  BigInt base_order;
  DlogStatus dlog_status = DlogStatus::kNotFound;
  Congruence congruence;  // m mod (orbit length * base_order)
};

struct MonomialAttackReport {
  std::vector<std::size_t> beta;      // beta(k), 1-based
  std::vector<std::size_t> beta_m;    // beta^m(k)
  std::size_t nu = 1;                 // order of beta
  std::size_t m_mod_nu = 0;
  std::vector<OrbitReport> orbits;
  std::optional<Congruence> recovered;
  bool consistent = false;

  bool contains(const BigInt& m) const { return recovered && recovered->contains(m); }
};

namespace detail {

struct MonomialShape {
  std::vector<std::size_t> beta;
  std::map<std::pair<std::size_t, std::size_t>, FieldElement> coeff;
};

inline MonomialShape read_monomial(const Automorphism& phi) {
  const std::size_t d = phi.d();
  MonomialShape s;
  s.beta.assign(d, 0);
  for (auto [i, j] : generator_pairs(d)) {
    auto t = as_transvection(phi.image(i, j));
    if (!t) fail(ErrorCode::kWrongAttackModel, "generator image is not an elementary transvection");
    for (auto [k, v] : {std::make_pair(i, t->i), std::make_pair(j, t->j)}) {
      if (s.beta[k - 1] == 0) {
        s.beta[k - 1] = v;
      } else if (s.beta[k - 1] != v) {
        fail(ErrorCode::kWrongAttackModel, "generator images do not follow a single permutation");
      }
    }
    s.coeff.emplace(std::make_pair(i, j), t->lambda);
  }
  Permutation(s.beta);  // validates bijectivity
  return s;
}

}  // namespace detail

/// Recovers m modulo the cycle structure of a monomial public key (phi, phi^m).
inline MonomialAttackReport monomial_cycle_attack(const Automorphism& phi, const Automorphism& phi_m,
                                                  std::uint64_t budget = 0) {
  require_same_shape(phi, phi_m);
  const std::size_t d = phi.d();
  const FieldSpec& spec = phi.spec();
  const detail::MonomialShape a = detail::read_monomial(phi);
  const detail::MonomialShape b = detail::read_monomial(phi_m);

  MonomialAttackReport rep;
  rep.beta = a.beta;
  rep.beta_m = b.beta;
  const Permutation beta(a.beta);
  rep.nu = beta.order();
  {
    Permutation cur = Permutation::identity(d);
    bool hit = false;
    for (std::size_t s = 0; s < rep.nu; ++s) {
      if (cur.images() == b.beta) {
        rep.m_mod_nu = s;
        hit = true;
        break;
      }
      cur = cur.then(beta);
    }
    if (!hit) {
      rep.consistent = false;
      return rep;
    }
  }
  Congruence acc{BigInt(from_u64(rep.m_mod_nu)), BigInt(from_u64(rep.nu))};
  bool ok = true;

  std::map<std::pair<std::size_t, std::size_t>, bool> seen;
  const FieldGroup fg{spec};
  for (auto start : generator_pairs(d)) {
    if (seen[start]) continue;
    OrbitReport o;
    auto cur = start;
    do {
      seen[cur] = true;
      o.pairs.push_back(cur);
      cur = {beta(cur.first), beta(cur.second)};
    } while (cur != start);
    const std::size_t len = o.pairs.size();
    o.shift = rep.m_mod_nu % len;
    // phi^m(1 + e_p) = 1 + (prod_{l<m} lambda_{beta^l p}) e_{beta^m p}
    FieldElement prefix = spec.one();
    for (std::size_t l = 0; l < o.shift; ++l) prefix = prefix * a.coeff.at(o.pairs[l]);
    o.base = spec.one();
    for (const auto& pr : o.pairs) o.base = o.base * a.coeff.at(pr);
    o.target = b.coeff.at(start) / prefix;
    o.base_order = field_element_order(o.base);
    DlogResult r = bsgs_dlog(fg, o.base, o.target, o.base_order, budget);
    o.dlog_status = r.status;
    if (!r.found()) {
      ok = false;
      rep.orbits.push_back(std::move(o));
      continue;
    }
    const BigInt t = r.n % o.base_order;
    const BigInt len_big = from_u64(len);
    o.congruence = Congruence{BigInt(from_u64(o.shift) + len_big * t), BigInt(len_big * o.base_order)};
    o.congruence.residue %= o.congruence.modulus;
    if (ok) {
      auto next = crt(acc, o.congruence);
      if (next) {
        acc = *next;
      } else {
        ok = false;
      }
    }
    rep.orbits.push_back(std::move(o));
  }
  rep.consistent = ok;
  if (ok) rep.recovered = acc;
  return rep;
}

/// Orbit lengths of beta acting on ordered pairs (i, j), i != j.
inline std::vector<std::size_t> pair_orbit_lengths(const Permutation& beta) {
  const std::size_t d = beta.d();
  std::map<std::pair<std::size_t, std::size_t>, bool> seen;
  std::vector<std::size_t> out;
  for (auto start : generator_pairs(d)) {
    if (seen[start]) continue;
    std::size_t len = 0;
    auto cur = start;
    do {
      seen[cur] = true;
      ++len;
      cur = {beta(cur.first), beta(cur.second)};
    } while (cur != start);
    out.push_back(len);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Centralizer.

/// Basis of {Y : X Y = Y X}.
inline std::vector<Matrix> centralizer_space(const Matrix& x) {
  if (!x.square()) fail(ErrorCode::kDomain, "centralizer of a non-square matrix");
  const std::size_t d = x.d();
  const FieldSpec& spec = x.spec();
  RowEchelon ech(spec, d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      // (XY - YX)_{r,c} = sum_k X_{r,k} Y_{k,c} - Y_{r,k} X_{k,c}
      Vec row(d * d, spec.zero());
      for (std::size_t k = 0; k < d; ++k) {
        row[k * d + c] += x.at(r, k);
        row[r * d + k] -= x.at(k, c);
      }
      ech.add(std::move(row));
    }
  std::vector<Matrix> out;
  for (const auto& v : ech.nullspace()) out.push_back(Matrix::from_vector(spec, d, v));
  return out;
}

// ---------------------------------------------------------------------------
// Eigenvalue reduction.

struct MwResult {
  BigInt m;
  Poly charpoly;
  BigInt search_bound;
  std::uint64_t group_ops = 0;
};

namespace detail {

// Coefficients g_0..g_{n-1} with sum g_k A^k = target, if any.
inline std::optional<Vec> polynomial_in(const Matrix& a, const Matrix& target, std::size_t n) {
  const std::size_t dim = a.d() * a.d();
  Matrix sys(a.spec(), dim, n);
  Matrix pk = Matrix::identity(a.spec(), a.d());
  for (std::size_t k = 0; k < n; ++k) {
    const Vec v = pk.vectorize();
    for (std::size_t r = 0; r < dim; ++r) sys.at(r, k) = v[r];
    if (k + 1 < n) pk = pk * a;
  }
  return solve(sys, target.vectorize());
}

}  // namespace detail

/// Least m >= 1 with A^m = A' when the characteristic polynomial of A is
/// irreducible: A' = g(A) for a polynomial g, and x^m = g(x) in
/// GF(q)[x] / chi_A.
inline MwResult mw_reduce(const Matrix& a, const Matrix& a_prime, std::uint64_t budget = 0) {
  if (!a.square() || !a_prime.square() || a.d() != a_prime.d()) fail(ErrorCode::kDomain, "shape mismatch");
  require_same_spec(a.spec(), a_prime.spec());
  MwResult res;
  res.charpoly = char_poly(a);
  if (!is_irreducible(res.charpoly)) fail(ErrorCode::kUnsupportedParameters, "characteristic polynomial is reducible");
  const std::size_t n = a.d();
  auto g = detail::polynomial_in(a, a_prime, n);
  if (!g) fail(ErrorCode::kNotFound, "target is not in the algebra generated by A");
  const ExtensionGroup ext(res.charpoly);
  const Poly target(a.spec(), *g);
  res.search_bound = ext.order;
  DlogResult r = bsgs_dlog(ext, Poly::x(a.spec()), target, ext.order, budget);
  res.group_ops = r.group_ops;
  if (r.status == DlogStatus::kBudgetExceeded) fail(ErrorCode::kCapacity, "iteration budget exceeded");
  if (!r.found() || !(mat_pow(a, r.n) == a_prime)) fail(ErrorCode::kNotFound, "target is not a power of A");
  res.m = r.n;
  return res;
}

/// The same reduction for lifted operators L = lift(A), L' = lift(A^m).
/// The conjugators are read back from the lifts up to scalars, B' = z B^m;
/// the scalar is removed by raising eigenvalues to the power q - 1, so the
/// search runs over powers of xi^{q-1} in GF(q^d). Returns the least m >= 1
/// with L^m = L'.
inline MwResult mw_reduce_lifted(const LiftedOperator& l, const LiftedOperator& l_prime, std::uint64_t budget = 0) {
  if (l.d != l_prime.d) fail(ErrorCode::kDomain, "shape mismatch");
  require_same_spec(l.spec, l_prime.spec);
  const Matrix b = recover_conjugator(automorphism_from_lift(l));
  const Matrix b_prime = recover_conjugator(automorphism_from_lift(l_prime));
  MwResult res;
  res.charpoly = char_poly(b);
  if (!is_irreducible(res.charpoly)) fail(ErrorCode::kUnsupportedParameters, "conjugator characteristic polynomial is reducible");
  auto g = detail::polynomial_in(b, b_prime, b.d());
  if (!g) fail(ErrorCode::kNotFound, "target is not in the algebra generated by the conjugator");
  const ExtensionGroup ext(res.charpoly);
  const BigInt qm1 = l.spec.q() - 1;
  const Poly base = ext.pow(Poly::x(l.spec), qm1);
  const Poly target = ext.pow(Poly(l.spec, *g), qm1);
  res.search_bound = ext.order / qm1;
  DlogResult r = bsgs_dlog(ext, base, target, res.search_bound, budget);
  res.group_ops = r.group_ops;
  if (r.status == DlogStatus::kBudgetExceeded) fail(ErrorCode::kCapacity, "iteration budget exceeded");
  if (!r.found() || !(mat_pow(l.matrix, r.n) == l_prime.matrix)) fail(ErrorCode::kNotFound, "target is not a power of L");
  res.m = r.n;
  return res;
}

}  // namespace mor
