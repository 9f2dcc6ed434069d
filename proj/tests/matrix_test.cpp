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

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "mor/matrix.hpp"
#include "oracles.hpp"

namespace mor {
namespace {

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b * mat_inv(a) * mat_inv(b); }

std::vector<std::vector<long long>> to_ints(const Matrix& m) {
  std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.at(r, c).to_integer().get_si();
  return out;
}

TEST(MatrixGroup, IdentityProduct) {
  Rng rng(1);
  const FieldSpec f = FieldSpec::make(3, 2);
  const Matrix x = random_matrix(f, 4, rng);
  EXPECT_EQ(x * Matrix::identity(f, 4), x);
  EXPECT_EQ(Matrix::identity(f, 4) * x, x);
}

TEST(MatrixGroup, DeterminantMatchesLeibniz) {
  Rng rng(2);
  const FieldSpec f = FieldSpec::prime(7);
  for (int t = 0; t < 100; ++t) {
    const Matrix x = random_matrix(f, 1 + t % 5, rng);
    EXPECT_EQ(det(x).to_integer().get_si(), oracle::det_leibniz(to_ints(x), 7));
  }
}

TEST(MatrixGroup, InverseAndMultiplicativity) {
  Rng rng(3);
  const FieldSpec f5 = FieldSpec::prime(5);
  for (int t = 0; t < 50; ++t) {
    const Matrix x = random_gl(f5, 3, rng);
    EXPECT_TRUE((x * mat_inv(x)).is_identity());
  }
  const FieldSpec f = FieldSpec::make(2, 4);
  for (int t = 0; t < 50; ++t) {
    const Matrix x = random_matrix(f, 4, rng), y = random_matrix(f, 4, rng);
    EXPECT_EQ(det(x * y), det(x) * det(y));
  }
  try {
    (void)mat_inv(Matrix::zero(f5, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingular);
  }
}

TEST(MatrixGroup, TranspositionDeterminant) {
  for (auto f : {FieldSpec::prime(7), FieldSpec::make(3, 2)}) {
    const Matrix p = permutation_matrix(f, Permutation({2, 1, 3, 4}));
    EXPECT_EQ(det(p), -f.one());
  }
}

TEST(MatrixGroup, PermutationMatrices) {
  Rng rng(4);
  const FieldSpec f = FieldSpec::prime(11);
  EXPECT_TRUE(permutation_matrix(f, Permutation::identity(5)).is_identity());
  for (int t = 0; t < 50; ++t) {
    const Permutation a = Permutation::random(5, rng);
    const Matrix p = permutation_matrix(f, a);
    EXPECT_TRUE((p.transpose() * p).is_identity());
    EXPECT_EQ(det(p), a.is_even() ? f.one() : -f.one());
  }
}

TEST(MatrixGroup, ConjugationByPermutation) {
  Rng rng(5);
  const FieldSpec f = FieldSpec::make(2, 3);
  const std::size_t d = 5;
  for (int t = 0; t < 20; ++t) {
    const Permutation a = Permutation::random(d, rng);
    const Permutation ai = a.inverse();
    const Matrix p = permutation_matrix(f, a);
    const FieldElement l = f.random_nonzero(rng);
    for (std::size_t i = 1; i <= d; ++i)
      for (std::size_t j = 1; j <= d; ++j) {
        if (i == j) continue;
        EXPECT_EQ(conjugate(transvection(f, d, i, j, l), p), transvection(f, d, ai(i), ai(j), l));
      }
  }
}

TEST(MatrixGroup, ConjugationByDiagonal) {
  Rng rng(6);
  const FieldSpec f = FieldSpec::prime(13);
  const std::size_t d = 4;
  std::vector<FieldElement> w;
  for (std::size_t k = 0; k < d; ++k) w.push_back(f.random_nonzero(rng));
  const Matrix dm = diagonal_matrix(w);
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j) {
      if (i == j) continue;
      const FieldElement l = f.random_nonzero(rng);
      EXPECT_EQ(conjugate(transvection(f, d, i, j, l), dm), transvection(f, d, i, j, w[i - 1].inverse() * l * w[j - 1]));
    }
  w[2] = f.zero();
  EXPECT_THROW(diagonal_matrix(w), Error);
}

TEST(MatrixGroup, ConjugationRoundTrip) {
  Rng rng(7);
  const FieldSpec f = FieldSpec::make(5, 2);
  for (int t = 0; t < 20; ++t) {
    const Matrix x = random_matrix(f, 3, rng), a = random_gl(f, 3, rng);
    EXPECT_EQ(conjugate(conjugate(x, a), mat_inv(a)), x);
    EXPECT_EQ(conjugate(x, Matrix::identity(f, 3)), x);
  }
}

TEST(MatrixGroup, TransvectionBasics) {
  const FieldSpec f = FieldSpec::prime(7);
  bool degenerate = false;
  EXPECT_TRUE(transvection(f, 3, 1, 2, f.zero(), &degenerate).is_identity());
  EXPECT_TRUE(degenerate);
  try {
    (void)transvection(f, 3, 2, 2, f.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndex);
  }
  const Matrix t = transvection(f, 3, 1, 2, f.from_int(3));
  EXPECT_EQ(det(t), f.one());
  const FieldElement l = f.from_int(2), m = f.from_int(3);
  EXPECT_EQ(commutator(transvection(f, 3, 1, 2, l), transvection(f, 3, 2, 3, m)), transvection(f, 3, 1, 3, l * m));
}

// All index patterns of [1 + l e_{i,j}, 1 + m e_{k,l'}] for d <= 5.
TEST(MatrixGroup, TransvectionRelationsExhaustive) {
  Rng rng(8);
  for (const auto& f : {FieldSpec::prime(5), FieldSpec::make(2, 3), FieldSpec::make(3, 2)}) {
    for (std::size_t d = 2; d <= 5; ++d) {
      for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = 1; j <= d; ++j)
          for (std::size_t k = 1; k <= d; ++k)
            for (std::size_t l = 1; l <= d; ++l) {
              if (i == j || k == l) continue;
              if (i == l && j == k) continue;
              const FieldElement a = f.random_nonzero(rng), b = f.random_nonzero(rng);
              const Matrix c = commutator(transvection(f, d, i, j, a), transvection(f, d, k, l, b));
              Matrix expect = Matrix::identity(f, d);
              if (j == k && i != l) expect = transvection(f, d, i, l, a * b);
              if (i == l && j != k) expect = transvection(f, d, k, j, -(a * b));
              ASSERT_EQ(c, expect) << d << ": " << i << j << k << l;
            }
    }
  }
}

TEST(MatrixGroup, AdditiveRelations) {
  Rng rng(9);
  const FieldSpec f = FieldSpec::make(3, 3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + t % 5;
    const std::size_t i = 1 + rng.below(std::uint64_t(d));
    std::size_t j = 1 + rng.below(std::uint64_t(d - 1));
    if (j >= i) ++j;
    const FieldElement a = f.random(rng), b = f.random(rng);
    EXPECT_EQ(transvection(f, d, i, j, a) * transvection(f, d, i, j, b), transvection(f, d, i, j, a + b));
    EXPECT_TRUE((transvection(f, d, i, j, a) * transvection(f, d, i, j, -a)).is_identity());
    EXPECT_EQ(mat_inv(transvection(f, d, i, j, a)), transvection(f, d, i, j, -a));
  }
}

TEST(MatrixGroup, PowerRelationWrapsAtCharacteristic) {
  Rng rng(10);
  for (const auto& f : {FieldSpec::prime(5), FieldSpec::make(2, 2)}) {
    const long p = f.p().get_si();
    const FieldElement l = f.random_nonzero(rng);
    const Matrix t = transvection(f, 4, 3, 1, l);
    for (long k = 0; k <= 2 * p; ++k) {
      EXPECT_EQ(mat_pow(t, BigInt(k)), transvection(f, 4, 3, 1, f.from_int(k) * l));
    }
  }
}

TEST(MatrixGroup, RandomSamplers) {
  Rng rng(11);
  const FieldSpec f = FieldSpec::make(2, 4);
  for (int t = 0; t < 50; ++t) {
    EXPECT_EQ(det(random_sl(f, 4, rng)), f.one());
    EXPECT_FALSE(det(random_gl(f, 4, rng)).is_zero());
  }
  // GL(2,2) has exactly 6 elements; every draw is one of them and all appear
  const FieldSpec f2 = FieldSpec::prime(2);
  std::set<std::string> gl22;
  for (int a = 0; a < 16; ++a) {
    const Matrix m = Matrix::from_rows(
        f2, {{f2.from_int(a & 1), f2.from_int((a >> 1) & 1)}, {f2.from_int((a >> 2) & 1), f2.from_int((a >> 3) & 1)}});
    if (!det(m).is_zero()) gl22.insert(m.to_string());
  }
  ASSERT_EQ(gl22.size(), 6u);
  std::set<std::string> seen;
  for (int t = 0; t < 300; ++t) {
    const std::string s = random_gl(f2, 2, rng).to_string();
    EXPECT_TRUE(gl22.count(s));
    seen.insert(s);
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(MatrixGroup, GroupOrders) {
  EXPECT_EQ(gl_order(2, BigInt(2)), 6);
  EXPECT_EQ(sl_order(2, BigInt(3)), 24);
  EXPECT_EQ(pgl_order(2, BigInt(5)), 120);
  EXPECT_EQ(sl_order(3, BigInt(2)), 168);
}

TEST(MatrixGroup, PermutationAlgebra) {
  const Permutation a({2, 3, 1, 5, 4});
  EXPECT_EQ(a.order(), 6u);
  EXPECT_FALSE(a.is_even());
  EXPECT_EQ(a.then(a.inverse()).images(), Permutation::identity(5).images());
  EXPECT_EQ(a.power(6).images(), Permutation::identity(5).images());
  EXPECT_THROW(Permutation({1, 1, 2}), Error);
}

TEST(MatrixGroup, Nullspace) {
  Rng rng(12);
  const FieldSpec f = FieldSpec::prime(7);
  for (int t = 0; t < 30; ++t) {
    Matrix a = random_matrix(f, 4, rng);
    for (std::size_t c = 0; c < 4; ++c) a.at(3, c) = a.at(0, c) + a.at(1, c);
    const auto basis = nullspace(a);
    EXPECT_GE(basis.size(), 1u);
    for (const auto& v : basis) {
      for (std::size_t r = 0; r < 4; ++r) {
        FieldElement s = f.zero();
        for (std::size_t c = 0; c < 4; ++c) s += a.at(r, c) * v[c];
        EXPECT_TRUE(s.is_zero());
      }
    }
    const Matrix g = random_gl(f, 4, rng);
    Vec b(4, f.zero());
    for (auto& x : b) x = f.random(rng);
    const auto x = solve(g, b);
    ASSERT_TRUE(x.has_value());
    for (std::size_t r = 0; r < 4; ++r) {
      FieldElement s = f.zero();
      for (std::size_t c = 0; c < 4; ++c) s += g.at(r, c) * (*x)[c];
      EXPECT_EQ(s, b[r]);
    }
  }
}

}  // namespace
}  // namespace mor
