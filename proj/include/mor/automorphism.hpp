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

// Automorphisms of SL(d, q) given by the images of the generators 1 + e_{i,j}.
//
// Composition convention: (phi o psi)(X) = psi(phi(X)), so composing the
// conjugations by A and by B gives the conjugation by A B.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mor/error.hpp"
#include "mor/field.hpp"
#include "mor/matrix.hpp"
#include "mor/words.hpp"

namespace mor {

inline constexpr const char* kCompositionConvention = "(phi o psi)(X) = psi(phi(X))";

/// Ordered pairs (i, j), i != j, sorted lexicographically.
inline std::vector<std::pair<std::size_t, std::size_t>> generator_pairs(std::size_t d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j)
      if (i != j) out.emplace_back(i, j);
  return out;
}

inline std::size_t pair_index(std::size_t d, std::size_t i, std::size_t j) {
  return (i - 1) * (d - 1) + (j < i ? j - 1 : j - 2);
}

class Automorphism {
 public:
  Automorphism() = default;

  static Automorphism identity(const FieldSpec& spec, std::size_t d) {
    return from_conjugator(Matrix::identity(spec, d));
  }

  /// X -> A^{-1} X A.
  static Automorphism from_conjugator(const Matrix& a) {
    if (!a.square() || a.d() < 2) fail(ErrorCode::kDomain, "conjugator must be square of degree >= 2");
    const Matrix ainv = mat_inv(a);
    const std::size_t d = a.d();
    Automorphism phi(a.spec(), d);
    for (auto [i, j] : generator_pairs(d)) {
      // A^{-1}(1 + e_{i,j})A = 1 + (A^{-1} e_i)(e_j^T A)
      Vec u(d, a.spec().zero()), v(d, a.spec().zero());
      for (std::size_t r = 0; r < d; ++r) u[r] = ainv.at(r, i - 1);
      for (std::size_t c = 0; c < d; ++c) v[c] = a.at(j - 1, c);
      phi.push(std::move(u), std::move(v));
    }
    return phi;
  }

  /// Builds a presentation from explicit images. Each image must lie in
  /// SL(d, q) and differ from 1 by a nilpotent rank-one matrix, as every
  /// conjugate of 1 + e_{i,j} does. Whether the images come from a single
  /// conjugation is checked by recover_conjugator.
  static Automorphism from_images(const FieldSpec& spec, std::size_t d,
                                  const std::map<std::pair<std::size_t, std::size_t>, Matrix>& images) {
    if (d < 2) fail(ErrorCode::kDomain, "degree must be >= 2");
    Automorphism phi(spec, d);
    for (auto key : generator_pairs(d)) {
      auto it = images.find(key);
      if (it == images.end()) {
        fail(ErrorCode::kInvalidAutomorphism, "missing image of 1+e_{" + std::to_string(key.first) + "," +
                                                  std::to_string(key.second) + "}");
      }
      const Matrix& m = it->second;
      require_same_spec(spec, m.spec());
      if (!m.square() || m.d() != d) fail(ErrorCode::kInvalidAutomorphism, "image has wrong degree");
      auto uv = rank_one_factor(m);
      if (!uv) fail(ErrorCode::kInvalidAutomorphism, "image is not a transvection conjugate");
      phi.push(std::move(uv->first), std::move(uv->second));
    }
    if (images.size() != d * d - d) fail(ErrorCode::kInvalidAutomorphism, "unexpected generator images");
    return phi;
  }

  const FieldSpec& spec() const { return spec_; }
  std::size_t d() const { return d_; }
  std::size_t size() const { return images_.size(); }

  const Matrix& image(std::size_t i, std::size_t j) const {
    if (i == j || i < 1 || j < 1 || i > d_ || j > d_) fail(ErrorCode::kIndex, "bad generator index");
    return images_[pair_index(d_, i, j)];
  }
  const std::vector<Matrix>& images() const { return images_; }

  /// Image of X in SL(d, q): X is written as a transvection word and every
  /// letter (i, j, l) is replaced by 1 + l (image(i, j) - 1).
  Matrix apply(const Matrix& x) const {
    if (!x.square() || x.d() != d_) fail(ErrorCode::kDomain, "matrix degree does not match automorphism");
    require_same_spec(spec_, x.spec());
    return apply_word(decompose(x));
  }

  Matrix apply_word(const TransvectionWord& w) const {
    const std::size_t d = d_;
    Matrix r = Matrix::identity(spec_, d);
    Vec ru(d, spec_.zero());
    for (const auto& l : w.letters()) {
      // R (1 + l u v^T) = R + (l R u) v^T
      const std::size_t k = pair_index(d, l.i, l.j);
      const Vec& u = us_[k];
      const Vec& v = vs_[k];
      for (std::size_t row = 0; row < d; ++row) {
        FieldElement s = spec_.zero();
        for (std::size_t c = 0; c < d; ++c) {
          if (u[c].is_zero() || r.at(row, c).is_zero()) continue;
          s += r.at(row, c) * u[c];
        }
        ru[row] = s.is_zero() ? s : s * l.lambda;
      }
      for (std::size_t row = 0; row < d; ++row) {
        if (ru[row].is_zero()) continue;
        for (std::size_t c = 0; c < d; ++c) {
          if (v[c].is_zero()) continue;
          r.at(row, c) += ru[row] * v[c];
        }
      }
    }
    return r;
  }

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.d_ == b.d_ && a.spec_ == b.spec_ && a.images_ == b.images_;
  }

 private:
  Automorphism(FieldSpec spec, std::size_t d) : spec_(std::move(spec)), d_(d) {}

  void push(Vec u, Vec v) {
    Matrix m = Matrix::identity(spec_, d_);
    for (std::size_t r = 0; r < d_; ++r) {
      if (u[r].is_zero()) continue;
      for (std::size_t c = 0; c < d_; ++c)
        if (!v[c].is_zero()) m.at(r, c) += u[r] * v[c];
    }
    images_.push_back(std::move(m));
    us_.push_back(std::move(u));
    vs_.push_back(std::move(v));
  }

  // Writes N - 1 = u v^T with v^T u = 0, or nothing if N - 1 has another shape.
  static std::optional<std::pair<Vec, Vec>> rank_one_factor(const Matrix& n) {
    const std::size_t d = n.d();
    const FieldSpec& spec = n.spec();
    Matrix e = n - Matrix::identity(spec, d);
    std::size_t pr = d, pc = d;
    for (std::size_t r = 0; r < d && pr == d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (!e.at(r, c).is_zero()) {
          pr = r;
          pc = c;
          break;
        }
    if (pr == d) return std::nullopt;
    Vec u(d, spec.zero()), v(d, spec.zero());
    const FieldElement inv = e.at(pr, pc).inverse();
    for (std::size_t r = 0; r < d; ++r) u[r] = e.at(r, pc);
    for (std::size_t c = 0; c < d; ++c) v[c] = e.at(pr, c) * inv;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (!(u[r] * v[c] == e.at(r, c))) return std::nullopt;
    FieldElement dot = spec.zero();
    for (std::size_t k = 0; k < d; ++k) dot += v[k] * u[k];
    if (!dot.is_zero()) return std::nullopt;
    return std::make_pair(std::move(u), std::move(v));
  }

  FieldSpec spec_;
  std::size_t d_ = 0;
  std::vector<Matrix> images_;
  std::vector<Vec> us_;
  std::vector<Vec> vs_;
};

inline Matrix apply(const Automorphism& phi, const Matrix& x) { return phi.apply(x); }

inline void require_same_shape(const Automorphism& a, const Automorphism& b) {
  require_same_spec(a.spec(), b.spec());
  if (a.d() != b.d()) fail(ErrorCode::kSpecMismatch, "automorphisms of different degree");
}

/// Field multiplications spent by one composition.
struct CompositionCost {
  std::uint64_t total = 0;
  std::uint64_t max_per_image = 0;
};

/// (phi o psi)(X) = psi(phi(X)).
inline Automorphism compose(const Automorphism& phi, const Automorphism& psi, CompositionCost* cost = nullptr) {
  require_same_shape(phi, psi);
  std::map<std::pair<std::size_t, std::size_t>, Matrix> images;
  CostScope all;
  std::uint64_t worst = 0;
  for (auto [i, j] : generator_pairs(phi.d())) {
    CostScope one;
    images.emplace(std::make_pair(i, j), psi.apply(phi.image(i, j)));
    worst = std::max(worst, one.count());
  }
  Automorphism out = Automorphism::from_images(phi.spec(), phi.d(), images);
  if (cost) {
    cost->total = all.count();
    cost->max_per_image = worst;
  }
  return out;
}

/// phi^m by square and multiply over compositions.
inline Automorphism power(const Automorphism& phi, const BigInt& m) {
  if (m < 0) fail(ErrorCode::kDomain, "negative automorphism exponent");
  if (m == 0) return Automorphism::identity(phi.spec(), phi.d());
  Automorphism r = phi;
  for (std::size_t bit = bit_length(m) - 1; bit-- > 0;) {
    r = compose(r, r);
    if (mpz_tstbit(m.get_mpz_t(), bit)) r = compose(r, phi);
  }
  return r;
}

namespace detail {

// Rows of the linear system e_{i,j} B = (B u) v^T in the entries of B
// (row-major), one row per entry of the d x d equation.
inline void conjugator_equations(const Automorphism& phi, std::size_t i, std::size_t j, RowEchelon& ech) {
  const std::size_t d = phi.d();
  const FieldSpec& spec = phi.spec();
  const Matrix e = phi.image(i, j) - Matrix::identity(spec, d);
  // e = u v^T; recover the factors from the image directly
  std::size_t pr = 0, pc = 0;
  bool found = false;
  for (std::size_t r = 0; r < d && !found; ++r)
    for (std::size_t c = 0; c < d && !found; ++c)
      if (!e.at(r, c).is_zero()) {
        pr = r;
        pc = c;
        found = true;
      }
  if (!found) fail(ErrorCode::kInvalidAutomorphism, "generator image is the identity");
  const FieldElement inv = e.at(pr, pc).inverse();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      Vec row(d * d, spec.zero());
      if (r == i - 1) row[(j - 1) * d + c] += spec.one();
      const FieldElement vc = e.at(pr, c) * inv;
      if (!vc.is_zero()) {
        for (std::size_t k = 0; k < d; ++k) {
          const FieldElement& uk = e.at(k, pc);
          if (uk.is_zero()) continue;
          row[r * d + k] -= uk * vc;
        }
      }
      ech.add(std::move(row));
    }
  }
}

inline bool conjugates_all(const Automorphism& phi, const Matrix& b) {
  for (auto [i, j] : generator_pairs(phi.d())) {
    if (!(transvection(phi.spec(), phi.d(), i, j, phi.spec().one()) * b == b * phi.image(i, j))) return false;
  }
  return true;
}

// First nonsingular combination of the basis vectors, coefficients from
// {0, 1, 2} in lexicographic order, scaled so the first nonzero entry is 1.
inline std::optional<Matrix> pick_nonsingular(const FieldSpec& spec, std::size_t d, const std::vector<Vec>& basis) {
  if (basis.empty()) return std::nullopt;
  const std::size_t n = basis.size();
  const std::size_t scan = std::min<std::size_t>(n, 8);
  std::vector<int> coef(scan, 0);
  std::vector<FieldElement> vals = {spec.zero(), spec.one(), spec.one() + spec.one()};
  for (;;) {
    // advance the odometer, most significant digit first
    std::size_t k = scan;
    while (k > 0) {
      --k;
      if (++coef[k] < 3) break;
      coef[k] = 0;
      if (k == 0) return std::nullopt;
    }
    Vec v(d * d, spec.zero());
    for (std::size_t b = 0; b < scan; ++b) {
      if (coef[b] == 0) continue;
      for (std::size_t c = 0; c < d * d; ++c) v[c] += vals[coef[b]] * basis[b][c];
    }
    Matrix m = Matrix::from_vector(spec, d, v);
    if (det(m).is_zero()) continue;
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      return m.scaled(x.inverse());
    }
  }
}

}  // namespace detail

/// One invertible B with (1 + e_{i,j}) B = B image(i, j) for all generators,
/// unique up to a scalar when the images come from a conjugation.
inline Matrix recover_conjugator(const Automorphism& phi) {
  const std::size_t d = phi.d();
  const FieldSpec& spec = phi.spec();
  RowEchelon ech(spec, d * d);
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 1; i < d; ++i) {
    order.emplace_back(i, i + 1);
    order.emplace_back(i + 1, i);
  }
  for (auto key : generator_pairs(d))
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);

  std::size_t used = 0;
  for (; used < order.size() && ech.rank() + 1 < d * d; ++used) {
    detail::conjugator_equations(phi, order[used].first, order[used].second, ech);
  }
  if (auto b = detail::pick_nonsingular(spec, d, ech.nullspace())) {
    if (detail::conjugates_all(phi, *b)) return *b;
  }
  for (; used < order.size(); ++used) {
    detail::conjugator_equations(phi, order[used].first, order[used].second, ech);
  }
  if (auto b = detail::pick_nonsingular(spec, d, ech.nullspace())) {
    if (detail::conjugates_all(phi, *b)) return *b;
  }
  fail(ErrorCode::kInvalidAutomorphism, "images are not realized by a conjugation");
}

/// Dimension of the solution space of the conjugator equations.
inline std::size_t conjugator_space_dim(const Automorphism& phi) {
  RowEchelon ech(phi.spec(), phi.d() * phi.d());
  for (auto [i, j] : generator_pairs(phi.d())) detail::conjugator_equations(phi, i, j, ech);
  return phi.d() * phi.d() - ech.rank();
}

inline Automorphism invert(const Automorphism& phi) {
  return Automorphism::from_conjugator(mat_inv(recover_conjugator(phi)));
}

/// phi^{t-1}, the inverse when phi^t is the identity. Fails when it is not.
inline Automorphism invert_by_order(const Automorphism& phi, const BigInt& t) {
  if (t < 1) fail(ErrorCode::kDomain, "order must be positive");
  const Automorphism id = Automorphism::identity(phi.spec(), phi.d());
  Automorphism inv = power(phi, t - 1);
  if (!(compose(inv, phi) == id)) fail(ErrorCode::kDomain, "phi^t is not the identity");
  return inv;
}

/// Multiplicative order of phi by repeated composition; nothing past `limit`.
inline std::optional<BigInt> automorphism_order(const Automorphism& phi, std::uint64_t limit) {
  const Automorphism id = Automorphism::identity(phi.spec(), phi.d());
  Automorphism cur = phi;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (cur == id) return BigInt(from_u64(n));
    cur = compose(cur, phi);
  }
  return std::nullopt;
}

/// Conjugation by diag(w) P(alpha); sends 1 + e_{i,j} to
/// 1 + w_i^{-1} w_j e_{beta(i), beta(j)} with beta = alpha^{-1}.
inline Matrix monomial_matrix(const std::vector<FieldElement>& w, const Permutation& alpha) {
  if (w.empty()) fail(ErrorCode::kDomain, "empty diagonal");
  return diagonal_matrix(w) * permutation_matrix(w.front().spec(), alpha);
}

// ---------------------------------------------------------------------------
// Graph and field automorphisms.

/// X -> (X^{-1})^T.
inline Matrix apply_graph(const Matrix& x) { return mat_inv(x).transpose(); }

/// Entrywise Frobenius x -> x^{p^i}.
inline Matrix apply_field(const Matrix& x, unsigned i) {
  if (i >= x.spec().gamma()) fail(ErrorCode::kDomain, "Frobenius power out of range");
  Matrix out = x;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out.at(r, c) = x.at(r, c).frobenius(i);
  return out;
}

/// Element of the group generated by the graph and field automorphisms:
/// X -> graph^g(field^k(X)).
struct BAutomorphism {
  bool graph = false;
  unsigned field_power = 0;

  Matrix apply(const Matrix& x) const {
    Matrix y = field_power == 0 ? x : apply_field(x, field_power);
    return graph ? apply_graph(y) : y;
  }

  /// (this o other)(X) = other(this(X)); the two generators commute.
  BAutomorphism then(const BAutomorphism& other, unsigned gamma) const {
    return {graph != other.graph, (field_power + other.field_power) % gamma};
  }

  /// Order in the group of size 2 gamma.
  unsigned order(unsigned gamma) const {
    unsigned f = field_power == 0 ? 1 : gamma / std::gcd(gamma, field_power);
    return graph ? std::lcm(2u, f) : f;
  }

  friend bool operator==(const BAutomorphism&, const BAutomorphism&) = default;
};

}  // namespace mor
