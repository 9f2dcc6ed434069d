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

// Dense matrices over GF(q) and the special families used throughout:
// elementary transvections, permutation, diagonal and monomial matrices.
// Indices in the public surface are 1-based, matching e_{i,j}.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mor/bigint.hpp"
#include "mor/error.hpp"
#include "mor/field.hpp"
#include "mor/rng.hpp"

namespace mor {

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec spec, std::size_t rows, std::size_t cols)
      : spec_(std::move(spec)), rows_(rows), cols_(cols), a_(rows * cols, spec_.zero()) {}

  static Matrix zero(const FieldSpec& spec, std::size_t d) { return Matrix(spec, d, d); }
  static Matrix identity(const FieldSpec& spec, std::size_t d) {
    Matrix m(spec, d, d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = spec.one();
    return m;
  }
  static Matrix scalar(const FieldElement& z, std::size_t d) {
    Matrix m(z.spec(), d, d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = z;
    return m;
  }
  /// Builds a matrix from row-major entries; every entry must share `spec`.
  static Matrix from_rows(const FieldSpec& spec, const std::vector<std::vector<FieldElement>>& rows) {
    if (rows.empty()) fail(ErrorCode::kDomain, "matrix needs at least one row");
    Matrix m(spec, rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) fail(ErrorCode::kFormat, "ragged matrix rows");
      for (std::size_t c = 0; c < m.cols_; ++c) {
        require_same_spec(spec, rows[r][c].spec());
        m.at(r, c) = rows[r][c];
      }
    }
    return m;
  }

  const FieldSpec& spec() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// Degree of a square matrix.
  std::size_t d() const { return rows_; }
  bool square() const { return rows_ == cols_; }

  // 0-based access
  FieldElement& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const FieldElement& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  // 1-based access, the e_{i,j} convention
  FieldElement& operator()(std::size_t i, std::size_t j) { return at(i - 1, j - 1); }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return at(i - 1, j - 1); }

  const std::vector<FieldElement>& entries() const { return a_; }

  Matrix operator+(const Matrix& o) const {
    check_shape(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_shape(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const FieldElement& s) const {
    Matrix r = *this;
    for (auto& e : r.a_) {
      if (!e.is_zero()) e = e * s;
    }
    return r;
  }
  Matrix transpose() const {
    Matrix r(spec_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  FieldElement trace() const {
    FieldElement t = spec_.zero();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    return true;
  }
  /// True for z*1 with z possibly zero.
  bool is_scalar() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (i != j && !at(i, j).is_zero()) return false;
        if (i == j && !(at(i, j) == at(0, 0))) return false;
      }
    return true;
  }

  /// Row-major vectorization.
  std::vector<FieldElement> vectorize() const { return a_; }
  static Matrix from_vector(const FieldSpec& spec, std::size_t d, const std::vector<FieldElement>& v) {
    if (v.size() != d * d) fail(ErrorCode::kDomain, "vector length is not d^2");
    Matrix m(spec, d, d);
    m.a_ = v;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      out += "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += " ";
        out += at(i, j).to_hex();
      }
      out += "]\n";
    }
    return out;
  }

 private:
  void check_shape(const Matrix& o) const {
    require_same_spec(spec_, o.spec_);
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::kDomain, "matrix shape mismatch");
  }

  FieldSpec spec_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> a_;
};

// Schoolbook product; zero left-hand entries are skipped.
inline Matrix Matrix::operator*(const Matrix& o) const {
  require_same_spec(spec_, o.spec_);
  if (cols_ != o.rows_) fail(ErrorCode::kDomain, "matrix shape mismatch in product");
  Matrix r(spec_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElement& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const FieldElement& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  }
  return r;
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y) { return x * y; }

namespace detail {

// Gaussian elimination with the first nonzero entry as pivot. Returns the
// determinant and, on request, the inverse.
inline FieldElement eliminate(const Matrix& m, Matrix* inverse) {
  if (!m.square()) fail(ErrorCode::kDomain, "square matrix required");
  const std::size_t n = m.d();
  const FieldSpec& spec = m.spec();
  Matrix a = m;
  Matrix inv = inverse ? Matrix::identity(spec, n) : Matrix();
  FieldElement det = spec.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a.at(piv, c).is_zero()) ++piv;
    if (piv == n) {
      if (inverse) fail(ErrorCode::kSingular, "matrix is singular");
      return spec.zero();
    }
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
      if (inverse)
        for (std::size_t j = 0; j < n; ++j) std::swap(inv.at(piv, j), inv.at(c, j));
      det = -det;
    }
    const FieldElement pivot = a.at(c, c);
    det = det * pivot;
    const FieldElement pinv = pivot.inverse();
    if (!pivot.is_one()) {
      for (std::size_t j = c; j < n; ++j)
        if (!a.at(c, j).is_zero()) a.at(c, j) = a.at(c, j) * pinv;
      if (inverse)
        for (std::size_t j = 0; j < n; ++j)
          if (!inv.at(c, j).is_zero()) inv.at(c, j) = inv.at(c, j) * pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      if (!inverse && r < c) continue;  // determinant only needs the lower part
      const FieldElement f = a.at(r, c);
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < n; ++j)
        if (!a.at(c, j).is_zero()) a.at(r, j) -= f * a.at(c, j);
      if (inverse)
        for (std::size_t j = 0; j < n; ++j)
          if (!inv.at(c, j).is_zero()) inv.at(r, j) -= f * inv.at(c, j);
    }
  }
  if (inverse) *inverse = std::move(inv);
  return det;
}

}  // namespace detail

inline FieldElement det(const Matrix& x) { return detail::eliminate(x, nullptr); }

inline Matrix mat_inv(const Matrix& x) {
  Matrix inv;
  detail::eliminate(x, &inv);
  return inv;
}

inline bool in_sl(const Matrix& x) { return x.square() && det(x).is_one(); }
inline bool in_gl(const Matrix& x) { return x.square() && !det(x).is_zero(); }

/// Matrix power by square and multiply; negative exponents invert first.
inline Matrix mat_pow(const Matrix& x, const BigInt& n) {
  if (n < 0) return mat_pow(mat_inv(x), BigInt(-n));
  if (n == 0) return Matrix::identity(x.spec(), x.d());
  Matrix r = x;
  for (std::size_t bit = bit_length(n) - 1; bit-- > 0;) {
    r = r * r;
    if (mpz_tstbit(n.get_mpz_t(), bit)) r = r * x;
  }
  return r;
}

/// 1 + lambda e_{i,j}. lambda = 0 gives the identity; `degenerate` reports it.
inline Matrix transvection(const FieldSpec& spec, std::size_t d, std::size_t i, std::size_t j,
                           const FieldElement& lambda, bool* degenerate = nullptr) {
  if (i == j) fail(ErrorCode::kIndex, "transvection needs i != j");
  if (i < 1 || j < 1 || i > d || j > d) fail(ErrorCode::kIndex, "transvection index out of range");
  require_same_spec(spec, lambda.spec());
  if (degenerate) *degenerate = lambda.is_zero();
  Matrix m = Matrix::identity(spec, d);
  m(i, j) = lambda;
  return m;
}

/// Bijection of {1..d}; map[k-1] = alpha(k).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images) : map_(std::move(images)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
      if (v < 1 || v > map_.size() || seen[v - 1]) fail(ErrorCode::kDomain, "not a permutation");
      seen[v - 1] = true;
    }
  }
  static Permutation identity(std::size_t d) {
    std::vector<std::size_t> m(d);
    std::iota(m.begin(), m.end(), 1);
    return Permutation(std::move(m));
  }
  static Permutation random(std::size_t d, Rng& rng) {
    std::vector<std::size_t> m(d);
    std::iota(m.begin(), m.end(), 1);
    for (std::size_t k = d; k > 1; --k) std::swap(m[k - 1], m[rng.below(std::uint64_t{k})]);
    return Permutation(std::move(m));
  }

  std::size_t d() const { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_[i - 1]; }
  const std::vector<std::size_t>& images() const { return map_; }

  Permutation inverse() const {
    std::vector<std::size_t> m(map_.size());
    for (std::size_t k = 0; k < map_.size(); ++k) m[map_[k] - 1] = k + 1;
    return Permutation(std::move(m));
  }
  /// (this then other): k -> other(this(k)).
  Permutation then(const Permutation& other) const {
    std::vector<std::size_t> m(map_.size());
    for (std::size_t k = 0; k < map_.size(); ++k) m[k] = other(map_[k]);
    return Permutation(std::move(m));
  }
  Permutation power(std::size_t n) const {
    Permutation r = identity(d());
    for (std::size_t k = 0; k < n; ++k) r = r.then(*this);
    return r;
  }
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t s = 1; s <= map_.size(); ++s) {
      if (seen[s - 1]) continue;
      std::vector<std::size_t> cyc;
      for (std::size_t k = s; !seen[k - 1]; k = (*this)(k)) {
        seen[k - 1] = true;
        cyc.push_back(k);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }
  bool is_even() const {
    std::size_t transpositions = 0;
    for (const auto& c : cycles()) transpositions += c.size() - 1;
    return transpositions % 2 == 0;
  }
  std::size_t order() const {
    std::size_t o = 1;
    for (const auto& c : cycles()) o = std::lcm(o, c.size());
    return o;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// P with P e_m = e_{alpha(m)}, so that P^{-1}(1 + l e_{i,j})P = 1 + l e_{alpha^{-1}(i), alpha^{-1}(j)}.
inline Matrix permutation_matrix(const FieldSpec& spec, const Permutation& alpha) {
  Matrix p = Matrix::zero(spec, alpha.d());
  for (std::size_t m = 1; m <= alpha.d(); ++m) p(alpha(m), m) = spec.one();
  return p;
}

inline Matrix diagonal_matrix(const std::vector<FieldElement>& w) {
  if (w.empty()) fail(ErrorCode::kDomain, "empty diagonal");
  Matrix m = Matrix::zero(w[0].spec(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_zero()) fail(ErrorCode::kDomain, "zero diagonal entry");
    m.at(i, i) = w[i];
  }
  return m;
}

/// A^{-1} X A.
inline Matrix conjugate(const Matrix& x, const Matrix& a) { return mat_inv(a) * x * a; }

inline Matrix random_matrix(const FieldSpec& spec, std::size_t d, Rng& rng) {
  Matrix m = Matrix::zero(spec, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m.at(i, j) = spec.random(rng);
  return m;
}

/// Uniform element of GL(d, q) by rejection on the determinant.
inline Matrix random_gl(const FieldSpec& spec, std::size_t d, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(spec, d, rng);
    if (!det(m).is_zero()) return m;
  }
}

/// Uniform element of SL(d, q): a uniform GL element with its first row
/// divided by the determinant.
inline Matrix random_sl(const FieldSpec& spec, std::size_t d, Rng& rng) {
  Matrix m = random_gl(spec, d, rng);
  const FieldElement dinv = det(m).inverse();
  for (std::size_t j = 0; j < d; ++j) m.at(0, j) = m.at(0, j) * dinv;
  return m;
}

/// |GL(d, q)| = prod_{i<d} (q^d - q^i).
inline BigInt gl_order(std::size_t d, const BigInt& q) {
  BigInt n = 1;
  const BigInt qd = big_pow(q, d);
  for (std::size_t i = 0; i < d; ++i) n *= qd - big_pow(q, i);
  return n;
}
inline BigInt sl_order(std::size_t d, const BigInt& q) { return gl_order(d, q) / (q - 1); }
inline BigInt pgl_order(std::size_t d, const BigInt& q) { return gl_order(d, q) / (q - 1); }

// ---------------------------------------------------------------------------
// Linear algebra on coefficient vectors.

using Vec = std::vector<FieldElement>;

/// Reduced row echelon form maintained incrementally. Rows are added one at a
/// time; the accumulator keeps every stored row normalized and fully reduced.
class RowEchelon {
 public:
  RowEchelon(FieldSpec spec, std::size_t cols) : spec_(std::move(spec)), cols_(cols) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Returns true when the row was independent of the ones already stored.
  bool add(Vec v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const FieldElement f = v[pivots_[k]];
      if (f.is_zero()) continue;
      const Vec& row = rows_[k];
      for (std::size_t c = 0; c < cols_; ++c)
        if (!row[c].is_zero()) v[c] -= f * row[c];
    }
    std::size_t pc = 0;
    while (pc < cols_ && v[pc].is_zero()) ++pc;
    if (pc == cols_) return false;
    const FieldElement inv = v[pc].inverse();
    for (std::size_t c = pc; c < cols_; ++c)
      if (!v[c].is_zero()) v[c] = v[c] * inv;
    for (auto& row : rows_) {
      const FieldElement f = row[pc];
      if (f.is_zero()) continue;
      for (std::size_t c = pc; c < cols_; ++c)
        if (!v[c].is_zero()) row[c] -= f * v[c];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pc);
    return true;
  }

  /// Basis of the right null space, one vector per free column in ascending
  /// order, each with a 1 in its free column.
  std::vector<Vec> nullspace() const {
    std::vector<int> pivot_row(cols_, -1);
    for (std::size_t k = 0; k < pivots_.size(); ++k) pivot_row[pivots_[k]] = static_cast<int>(k);
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (pivot_row[f] >= 0) continue;
      Vec v(cols_, spec_.zero());
      v[f] = spec_.one();
      for (std::size_t k = 0; k < pivots_.size(); ++k) v[pivots_[k]] = -rows_[k][f];
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  FieldSpec spec_;
  std::size_t cols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Null space of a rectangular matrix.
inline std::vector<Vec> nullspace(const Matrix& a) {
  RowEchelon ech(a.spec(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Vec row(a.entries().begin() + static_cast<long>(r * a.cols()),
            a.entries().begin() + static_cast<long>((r + 1) * a.cols()));
    ech.add(std::move(row));
  }
  return ech.nullspace();
}

/// Some solution x of A x = b, or nothing when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  // Null space of [A | -b] restricted to vectors with last coordinate 1.
  Matrix aug(a.spec(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = -b[r];
  }
  for (const auto& v : nullspace(aug)) {
    if (v.back().is_one()) return Vec(v.begin(), v.end() - 1);
  }
  return std::nullopt;
}

}  // namespace mor
