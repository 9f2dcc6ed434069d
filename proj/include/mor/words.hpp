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

// Words in elementary transvections and in the two Albert-Thompson
// generators C, D of SL(d, p).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mor/error.hpp"
#include "mor/field.hpp"
#include "mor/matrix.hpp"

namespace mor {

/// One factor 1 + lambda e_{i,j}, 1-based, i != j, lambda != 0.
struct Letter {
  std::size_t i = 0;
  std::size_t j = 0;
  FieldElement lambda;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Ordered product of elementary transvections, evaluated left to right.
class TransvectionWord {
 public:
  TransvectionWord() = default;
  TransvectionWord(FieldSpec spec, std::size_t d) : spec_(std::move(spec)), d_(d) {}
  TransvectionWord(FieldSpec spec, std::size_t d, std::vector<Letter> letters)
      : spec_(std::move(spec)), d_(d) {
    for (auto& l : letters) push_back(std::move(l));
  }

  const FieldSpec& spec() const { return spec_; }
  std::size_t d() const { return d_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t k) const { return letters_[k]; }

  void push_back(Letter l) {
    if (l.i == l.j) fail(ErrorCode::kIndex, "letter with i == j");
    if (l.i < 1 || l.j < 1 || l.i > d_ || l.j > d_) fail(ErrorCode::kIndex, "letter index out of range");
    require_same_spec(spec_, l.lambda.spec());
    if (l.lambda.is_zero()) fail(ErrorCode::kDomain, "letter with zero coefficient");
    letters_.push_back(std::move(l));
  }

  TransvectionWord inverse() const {
    TransvectionWord w(spec_, d_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back({it->i, it->j, -it->lambda});
    }
    return w;
  }

  friend bool operator==(const TransvectionWord& a, const TransvectionWord& b) {
    return a.d_ == b.d_ && a.spec_ == b.spec_ && a.letters_ == b.letters_;
  }

 private:
  FieldSpec spec_;
  std::size_t d_ = 0;
  std::vector<Letter> letters_;
};

/// Product of the letters. Each letter is a column update costing at most d
/// field multiplications.
inline Matrix evaluate(const TransvectionWord& w) {
  Matrix m = Matrix::identity(w.spec(), w.d());
  const std::size_t d = w.d();
  for (const auto& l : w.letters()) {
    // M (1 + l e_{i,j}): column j += l * column i
    for (std::size_t r = 0; r < d; ++r) {
      const FieldElement& mi = m.at(r, l.i - 1);
      if (mi.is_zero()) continue;
      m.at(r, l.j - 1) += l.lambda * mi;
    }
  }
  return m;
}

/// Writes M in SL(d, q) as a product of at most d^2 elementary transvections.
///
/// Column by column, left to right, with row additions only: the pivot is
/// first forced to 1 using a row from below, then every other entry of the
/// column is cleared. Row operation "row_t += l row_s" is left
/// multiplication by 1 + l e_{t,s}; the word collects the inverses in
/// application order.
inline TransvectionWord decompose(const Matrix& m) {
  if (!m.square()) fail(ErrorCode::kNotInSL, "non-square matrix");
  const std::size_t d = m.d();
  const FieldSpec& spec = m.spec();
  Matrix a = m;
  TransvectionWord word(spec, d);

  auto row_add = [&](std::size_t t, std::size_t s, const FieldElement& l, std::size_t from_col) {
    for (std::size_t c = from_col; c <= d; ++c) {
      const FieldElement& v = a(s, c);
      if (v.is_zero()) continue;
      a(t, c) += l * v;
    }
    word.push_back({t, s, -l});
  };

  for (std::size_t c = 1; c < d; ++c) {
    // Columns < c are unit vectors and row c is zero there, so row
    // operations only need to touch columns >= c.
    if (!a(c, c).is_one()) {
      std::size_t r = c + 1;
      while (r <= d && a(r, c).is_zero()) ++r;
      if (r <= d) {
        row_add(c, r, (spec.one() - a(c, c)) / a(r, c), c);
      } else {
        if (a(c, c).is_zero()) fail(ErrorCode::kNotInSL, "matrix is singular");
        const FieldElement piv = a(c, c);
        row_add(c + 1, c, spec.one(), c);
        row_add(c, c + 1, piv.inverse() - spec.one(), c);
      }
    }
    for (std::size_t r = 1; r <= d; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      row_add(r, c, -a(r, c), c);
    }
  }
  if (!a(d, d).is_one()) fail(ErrorCode::kNotInSL, "determinant is not 1");
  for (std::size_t r = 1; r < d; ++r) {
    if (a(r, d).is_zero()) continue;
    row_add(r, d, -a(r, d), d);
  }
  return word;
}

/// Merges adjacent letters on the same (i, j) and drops letters that cancel,
/// until no adjacent pair is mergeable.
inline TransvectionWord simplify(const TransvectionWord& w) {
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    if (!out.empty() && out.back().i == l.i && out.back().j == l.j) {
      FieldElement sum = out.back().lambda + l.lambda;
      if (sum.is_zero()) {
        out.pop_back();
      } else {
        out.back().lambda = std::move(sum);
      }
      continue;
    }
    out.push_back(l);
  }
  return TransvectionWord(w.spec(), w.d(), std::move(out));
}

/// Replaces each letter (i, j, sum_s c_s x^s) by the letters (i, j, c_s x^s)
/// for nonzero c_s in increasing s.
inline TransvectionWord split_ground(const TransvectionWord& w) {
  const FieldSpec& spec = w.spec();
  if (spec.gamma() == 1) return w;
  TransvectionWord out(spec, w.d());
  for (const auto& l : w.letters()) {
    for (unsigned s = 0; s < spec.gamma(); ++s) {
      BigInt c = l.lambda.coeff(s);
      if (c == 0) continue;
      std::vector<BigInt> coeffs(s + 1, 0);
      coeffs[s] = c;
      out.push_back({l.i, l.j, spec.from_coeffs(coeffs)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Albert-Thompson generators.

/// Index with the wraparound convention e_{i,j} = e_{d+i,j} = e_{i,d+j},
/// mapped into [1, d].
inline std::size_t wrap_index(long k, std::size_t d) {
  long m = static_cast<long>(d);
  long r = ((k - 1) % m + m) % m;
  return static_cast<std::size_t>(r + 1);
}

inline void require_two_generator_params(const FieldSpec& spec, std::size_t d) {
  if (d < 5) fail(ErrorCode::kUnsupportedParameters, "two-generator presentation needs d >= 5");
  if (spec.gamma() != 1) fail(ErrorCode::kUnsupportedParameters, "two-generator presentation needs a prime field");
}

struct CdPair {
  Matrix c;
  Matrix d;
};

/// C = 1 + e_{d-1,2} + e_{d,1} and D = (-1)^d (e_{1,2} - e_{2,3} + sum_{i>=3} e_{i,i+1}).
inline CdPair albert_thompson_generators(const FieldSpec& spec, std::size_t d) {
  require_two_generator_params(spec, d);
  Matrix c = Matrix::identity(spec, d);
  c(d - 1, 2) += spec.one();
  c(d, 1) += spec.one();
  const FieldElement sign = (d % 2 == 0) ? spec.one() : -spec.one();
  Matrix dm = Matrix::zero(spec, d);
  dm(1, 2) = sign;
  dm(2, 3) = -sign;
  for (std::size_t i = 3; i <= d; ++i) dm(i, wrap_index(static_cast<long>(i) + 1, d)) = sign;
  return {std::move(c), std::move(dm)};
}

/// Run-length word over {C, D}; exponents are signed.
class CDWord {
 public:
  struct Run {
    char gen = 'C';
    BigInt exp;
    friend bool operator==(const Run&, const Run&) = default;
  };

  CDWord() = default;
  CDWord(FieldSpec spec, std::size_t d) : spec_(std::move(spec)), d_(d) {
    require_two_generator_params(spec_, d_);
    cap_ = sl_order(d_, spec_.p());
  }

  static CDWord gen(const FieldSpec& spec, std::size_t d, char g, long exp = 1) {
    CDWord w(spec, d);
    w.append(g, BigInt(exp));
    return w;
  }

  const FieldSpec& spec() const { return spec_; }
  std::size_t d() const { return d_; }
  const std::vector<Run>& runs() const { return runs_; }
  /// Total number of generator symbols, sum of |exponent|.
  BigInt length() const {
    BigInt n = 0;
    for (const auto& r : runs_) n += abs(r.exp);
    return n;
  }

  void append(char g, const BigInt& exp) {
    if (g != 'C' && g != 'D') fail(ErrorCode::kFormat, "CD words use only C and D");
    if (exp == 0) return;
    if (!runs_.empty() && runs_.back().gen == g) {
      runs_.back().exp += exp;
      if (runs_.back().exp == 0) runs_.pop_back();
    } else {
      runs_.push_back({g, exp});
    }
    if (!runs_.empty() && abs(runs_.back().exp) > cap_) {
      fail(ErrorCode::kDomain, "CD word exponent run exceeds |SL(d,p)|");
    }
  }

  CDWord operator*(const CDWord& o) const {
    CDWord w = *this;
    for (const auto& r : o.runs_) w.append(r.gen, r.exp);
    return w;
  }
  CDWord inverse() const {
    CDWord w(spec_, d_);
    for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.append(it->gen, BigInt(-it->exp));
    return w;
  }
  CDWord power(long n) const {
    CDWord base = n < 0 ? inverse() : *this;
    CDWord w(spec_, d_);
    for (long k = 0; k < (n < 0 ? -n : n); ++k) w = w * base;
    return w;
  }
  /// D^{-k} w D^{k}.
  CDWord conjugated_by_d(long k) const {
    return gen(spec_, d_, 'D', -k) * *this * gen(spec_, d_, 'D', k);
  }

  friend bool operator==(const CDWord& a, const CDWord& b) {
    return a.d_ == b.d_ && a.runs_ == b.runs_;
  }

 private:
  FieldSpec spec_;
  std::size_t d_ = 0;
  BigInt cap_;
  std::vector<Run> runs_;
};

inline CDWord commutator(const CDWord& a, const CDWord& b) {
  return a * b * a.inverse() * b.inverse();
}

inline Matrix evaluate(const CDWord& w) {
  const CdPair g = albert_thompson_generators(w.spec(), w.d());
  const Matrix cinv = mat_inv(g.c), dinv = mat_inv(g.d);
  Matrix m = Matrix::identity(w.spec(), w.d());
  for (const auto& r : w.runs()) {
    const Matrix& base = r.gen == 'C' ? (r.exp > 0 ? g.c : cinv) : (r.exp > 0 ? g.d : dinv);
    m = m * mat_pow(base, abs(r.exp));
  }
  return m;
}

/// Rewrites elementary transvections of SL(d, p), d >= 5, as words in C, D.
///
/// Bottom-row transvections 1 + e_{d,k} are built first: [C, D^{-1}CD] gives
/// k = 2, commutators with C_k = D^{-k}CD^k step k -> k+1 up to d-2, and the
/// last one is [1 + e_{d,2}, D^{-2}(1 + e_{d,d-3})D^2]. Then
/// D^{-2}(1 + e_{d,d-1})D^2 = 1 + e_{2,1} and [1 + e_{d,2}, 1 + e_{2,1}]
/// gives k = 1. Column d comes from D-conjugates of the bottom row and the
/// remaining positions from commutators [1 + l e_{i,d}, 1 + e_{d,j}].
/// Signs of intermediate commutators are fixed by evaluating them.
class CdRewriter {
 public:
  CdRewriter(const FieldSpec& spec, std::size_t d) : spec_(spec), d_(d) {
    require_two_generator_params(spec, d);
    bottom_.resize(d);
    const CDWord c = CDWord::gen(spec, d, 'C');
    const CDWord c1 = c.conjugated_by_d(1);
    bottom_[2] = unit(commutator(c, c1), d, 2);
    for (std::size_t k = 2; k + 3 <= d; ++k) {
      const CDWord ck = c.conjugated_by_d(static_cast<long>(k));
      bottom_[k + 1] = unit(commutator(bottom_[k], ck), d, k + 1);
    }
    const CDWord top = unit(bottom_[d - 3].conjugated_by_d(2), 2, d - 1);
    bottom_[d - 1] = unit(commutator(bottom_[2], top), d, d - 1);
    t21_ = unit(bottom_[d - 1].conjugated_by_d(2), 2, 1);
    bottom_[1] = unit(commutator(bottom_[2], t21_), d, 1);
  }

  /// Word evaluating to 1 + e_{d,k}, 1 <= k < d.
  const CDWord& bottom_row(std::size_t k) const { return bottom_.at(k); }

  /// Word evaluating to 1 + lambda e_{i,j}, lambda in GF(p)^x.
  CDWord rewrite(std::size_t i, std::size_t j, const FieldElement& lambda) const {
    if (i == j || i < 1 || j < 1 || i > d_ || j > d_) fail(ErrorCode::kIndex, "bad transvection index");
    require_same_spec(spec_, lambda.spec());
    if (lambda.is_zero()) fail(ErrorCode::kDomain, "zero transvection coefficient");
    const long v = lambda.to_integer().get_si();
    const long p = spec_.p().get_si();
    // (1 + e)^v by repetition, or (1 - e)^(p - v) when that is shorter
    auto weighted = [&](const CDWord& w) { return v <= p - v ? w.power(v) : w.inverse().power(p - v); };
    if (i == d_) return weighted(bottom_[j]);
    const CDWord col = unit(bottom_[d_ - i].conjugated_by_d(static_cast<long>(i)), i, d_);
    if (j == d_) return weighted(col);
    return commutator(weighted(col), bottom_[j]);
  }

 private:
  // Returns w or w^{-1}, whichever evaluates to 1 + e_{i,j}.
  CDWord unit(const CDWord& w, std::size_t i, std::size_t j) const {
    const Matrix m = evaluate(w);
    const Matrix target = transvection(spec_, d_, i, j, spec_.one());
    if (m == target) return w;
    if (m == transvection(spec_, d_, i, j, -spec_.one())) return w.inverse();
    fail(ErrorCode::kUnsupportedParameters,
         "commutator chain did not yield a transvection at (" + std::to_string(i) + "," +
             std::to_string(j) + ")");
  }

  FieldSpec spec_;
  std::size_t d_;
  std::vector<CDWord> bottom_;
  CDWord t21_;
};

inline CDWord rewrite_transvection_in_cd(const FieldSpec& spec, std::size_t d, std::size_t i,
                                         std::size_t j, const FieldElement& lambda) {
  return CdRewriter(spec, d).rewrite(i, j, lambda);
}

}  // namespace mor
