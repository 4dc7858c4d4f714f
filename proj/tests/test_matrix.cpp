#include <gtest/gtest.h>

#include <set>

#include "fqlin/matrix.hpp"
#include "support.hpp"

using namespace fqlin;
using namespace fqlin::testing;

namespace {

// All F-linear combinations of the rows; |span| = Q^rank.
std::set<Vec> span_scan(const Field& F, const Matrix& m) {
  std::set<Vec> out;
  const std::uint64_t Q = F.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) total *= Q;
  for (std::uint64_t k = 0; k < total; ++k) {
    Vec v(m.cols());
    std::uint64_t t = k;
    for (std::size_t i = 0; i < m.rows(); ++i, t /= Q) v = vec_add(F, v, vec_scale(F, Elem(t % Q), m.row(i)));
    out.insert(v);
  }
  return out;
}

std::size_t log_base(std::uint64_t base, std::uint64_t v) {
  std::size_t k = 0;
  while (v > 1) {
    v /= base;
    ++k;
  }
  return k;
}

Matrix low_rank(const Field& F, std::size_t rows, std::size_t cols, std::size_t rk) {
  return multiply(F, rand_matrix(F, rows, rk), rand_matrix(F, rk, cols));
}

}  // namespace

TEST(Matrix, RankMatchesSpanScan) {
  Field F(3, 1, 2);
  for (int it = 0; it < 60; ++it) {
    const std::size_t rows = uniform(1, 3), cols = uniform(1, 5);
    Matrix m = low_rank(F, rows, cols, uniform(1, 3));
    EXPECT_EQ(rank(F, m), log_base(F.order(), span_scan(F, m).size()));
  }
}

TEST(Matrix, RrefShapeAndIdempotence) {
  auto F = Field::make(2, 2, 3);
  for (int it = 0; it < 200; ++it) {
    const std::size_t rows = uniform(1, 6), cols = uniform(1, 8);
    Matrix m = low_rank(*F, rows, cols, uniform(1, std::min(rows, cols)));
    Rref r = rref(*F, m);
    ASSERT_LE(r.rank, std::min(rows, cols));
    ASSERT_EQ(r.pivots.size(), r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) {
      ASSERT_EQ(r.m(i, r.pivots[i]), F->one());
      for (std::size_t k = 0; k < rows; ++k)
        if (k != i) ASSERT_TRUE(r.m(k, r.pivots[i]).is_zero());
      for (std::size_t j = 0; j < r.pivots[i]; ++j) ASSERT_TRUE(r.m(i, j).is_zero());
      if (i > 0) ASSERT_LT(r.pivots[i - 1], r.pivots[i]);
    }
    for (std::size_t i = r.rank; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) ASSERT_TRUE(r.m(i, j).is_zero());
    Rref rr = rref(*F, r.m);
    ASSERT_EQ(rr.m, r.m);
    ASSERT_EQ(rr.rank, r.rank);
    // same row space under a change of basis
    Matrix A = rand_invertible(*F, rows);
    ASSERT_EQ(row_space(*F, multiply(*F, A, m)), row_space(*F, m));
  }
}

TEST(Matrix, KernelsAndInverse) {
  auto F = Field::make(3, 1, 3);
  for (int it = 0; it < 200; ++it) {
    const std::size_t rows = uniform(1, 6), cols = uniform(1, 7);
    Matrix m = low_rank(*F, rows, cols, uniform(1, std::min(rows, cols)));
    const std::size_t rk = rank(*F, m);
    Matrix K = kernel(*F, m);
    ASSERT_EQ(K.rows(), cols - rk);
    ASSERT_EQ(rank(*F, K), K.rows());
    for (std::size_t i = 0; i < K.rows(); ++i)
      for (auto x : mat_vec(*F, m, K.row(i))) ASSERT_TRUE(x.is_zero());
    Matrix L = left_kernel(*F, m);
    ASSERT_EQ(L.rows(), rows - rk);
    for (std::size_t i = 0; i < L.rows(); ++i)
      for (auto x : vec_mat(*F, L.row(i), m)) ASSERT_TRUE(x.is_zero());

    Matrix sq = rand_matrix(*F, cols, cols);
    auto inv = inverse(*F, sq);
    const Elem det = determinant(*F, sq);
    ASSERT_EQ(inv.has_value(), rank(*F, sq) == cols);
    ASSERT_EQ(det.is_zero(), !inv.has_value());
    if (inv) {
      ASSERT_EQ(multiply(*F, sq, *inv), identity(*F, cols));
      ASSERT_EQ(determinant(*F, *inv), F->inv(det));
    }
    Matrix sq2 = rand_matrix(*F, cols, cols);
    ASSERT_EQ(determinant(*F, multiply(*F, sq, sq2)), F->mul(det, determinant(*F, sq2)));
    ASSERT_EQ(determinant(*F, transpose(sq)), det);
  }
}

TEST(Matrix, SolveFindsSolutionsWhenTheyExist) {
  auto F = Field::make(5, 1, 2);
  for (int it = 0; it < 200; ++it) {
    const std::size_t rows = uniform(1, 5), cols = uniform(1, 5);
    Matrix m = low_rank(*F, rows, cols, uniform(1, std::min(rows, cols)));
    Vec x = rand_vec(*F, cols);
    Vec b = mat_vec(*F, m, x);
    auto y = solve(*F, m, b);
    ASSERT_TRUE(y.has_value());
    ASSERT_EQ(mat_vec(*F, m, *y), b);
    Vec c = rand_vec(*F, rows);
    auto z = solve(*F, m, c);
    ASSERT_EQ(z.has_value(), rank(*F, stack(transpose(m), Matrix::from_rows({c}, rows))) == rank(*F, m));
  }
}

TEST(Matrix, GrassmannIdentity) {
  auto F = Field::make(2, 1, 3);
  for (int it = 0; it < 400; ++it) {
    const std::size_t cols = uniform(1, 8);
    Matrix A = low_rank(*F, uniform(1, cols), cols, uniform(1, cols));
    Matrix B = low_rank(*F, uniform(1, cols), cols, uniform(1, cols));
    Matrix S = subspace_sum(*F, A, B), I = subspace_meet(*F, A, B);
    ASSERT_EQ(rank(*F, A) + rank(*F, B), S.rows() + I.rows());
    for (std::size_t i = 0; i < I.rows(); ++i) {
      ASSERT_TRUE(in_row_space(*F, A, I.row(i)));
      ASSERT_TRUE(in_row_space(*F, B, I.row(i)));
    }
    ASSERT_EQ(I, row_space(*F, I));
  }
}

TEST(Matrix, MeetMatchesScan) {
  Field F(2, 1, 2);
  for (int it = 0; it < 40; ++it) {
    const std::size_t cols = uniform(2, 5);
    Matrix A = rand_matrix(F, uniform(1, 3), cols), B = rand_matrix(F, uniform(1, 3), cols);
    auto sa = span_scan(F, A), sb = span_scan(F, B);
    std::size_t common = 0;
    for (const auto& v : sa) common += sb.count(v);
    EXPECT_EQ(common, ipow(F.order(), subspace_meet(F, A, B).rows()));
  }
}

TEST(Matrix, FlattenRoundTrip) {
  auto F = Field::make(3, 2, 3);
  for (int it = 0; it < 100; ++it) {
    Vec v = rand_vec(*F, uniform(1, 4));
    Vec f = flatten(*F, v);
    ASSERT_EQ(f.size(), v.size() * 3);
    ASSERT_EQ(unflatten(*F, f), v);
    for (auto x : f) ASSERT_TRUE(F->in_subfield(x, 1));
  }
}

TEST(Matrix, FqSubspaceGrassmann) {
  auto F = Field::make(2, 1, 4);
  for (int it = 0; it < 200; ++it) {
    const std::size_t r = uniform(1, 3);
    std::vector<Vec> ga, gb;
    for (std::size_t i = 0, k = uniform(0, 4); i < k; ++i) ga.push_back(rand_vec(*F, r));
    for (std::size_t i = 0, k = uniform(0, 4); i < k; ++i) gb.push_back(rand_vec(*F, r));
    FqSubspace A(F, r, ga), B(F, r, gb);
    FqSubspace S = fq_sum(A, B), I = fq_intersect(A, B);
    ASSERT_EQ(fq_dim(A) + fq_dim(B), fq_dim(S) + fq_dim(I));
    for (const auto& v : ga) ASSERT_TRUE(A.contains(v));
    for (const auto& v : I.basis()) {
      ASSERT_TRUE(A.contains(v));
      ASSERT_TRUE(B.contains(v));
    }
  }
}

TEST(Matrix, FqIntersectMatchesScan) {
  auto F = Field::make(3, 1, 2);
  for (int it = 0; it < 60; ++it) {
    const std::size_t r = 2;
    std::vector<Vec> ga, gb;
    for (std::size_t i = 0, k = uniform(1, 3); i < k; ++i) ga.push_back(rand_vec(*F, r));
    for (std::size_t i = 0, k = uniform(1, 3); i < k; ++i) gb.push_back(rand_vec(*F, r));
    FqSubspace A(F, r, ga), B(F, r, gb);
    // enumerate F_q-combinations of A's basis
    std::uint64_t total = ipow(F->q(), A.basis().size()), common = 0;
    for (std::uint64_t k = 0; k < total; ++k) {
      Vec v(r);
      std::uint64_t t = k;
      for (const auto& b : A.basis()) {
        v = vec_add(*F, v, vec_scale(*F, F->fq_elements()[t % F->q()], b));
        t /= F->q();
      }
      common += B.contains(v);
    }
    EXPECT_EQ(common, ipow(F->q(), fq_dim(fq_intersect(A, B))));
  }
}

TEST(Matrix, FqRankAndScaling) {
  auto F = Field::make(3, 1, 4);
  std::vector<Elem> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(F->pow(F->x(), i));
  EXPECT_EQ(fq_rank(*F, basis), 4u);
  EXPECT_EQ(fq_rank(*F, {F->one(), F->from_int(2)}), 1u);
  FqSubspace U(F, 2, {{F->one(), F->x()}, {F->x(), F->one()}});
  const Elem l = F->generator();
  FqSubspace W = U.scaled(l);
  EXPECT_EQ(fq_dim(W), fq_dim(U));
  for (const auto& v : U.basis()) EXPECT_TRUE(W.contains(vec_scale(*F, l, v)));
  EXPECT_FALSE(W == U);
  EXPECT_TRUE(U.scaled(F->from_int(2)) == U);
}

TEST(Matrix, DimensionMismatch) {
  auto F = Field::make(2, 1, 2);
  EXPECT_THROW(multiply(*F, Matrix(2, 3), Matrix(2, 3)), DimensionMismatch);
  EXPECT_THROW(subspace_meet(*F, Matrix(1, 3), Matrix(1, 4)), DimensionMismatch);
}
