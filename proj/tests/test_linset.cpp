#include <gtest/gtest.h>

#include <map>

#include "fqlin/linset.hpp"
#include "support.hpp"

using namespace fqlin;
using namespace fqlin::testing;

namespace {

// Every vector of U, by F_q-combination of the basis.
std::vector<Vec> all_vectors(const FqSubspace& U) {
  const Field& F = *U.field();
  std::vector<Vec> out;
  const std::uint64_t total = ipow(F.q(), U.basis().size());
  for (std::uint64_t k = 0; k < total; ++k) {
    Vec v(U.ambient_r());
    std::uint64_t t = k;
    for (const auto& b : U.basis()) {
      v = vec_add(F, v, vec_scale(F, F.fq_elements()[t % F.q()], b));
      t /= F.q();
    }
    out.push_back(v);
  }
  return out;
}

// Weights recomputed from the raw vector counts on each point.
std::map<Vec, std::uint32_t> weights_by_scan(const FqSubspace& U) {
  const Field& F = *U.field();
  std::map<Vec, std::uint64_t> cnt;
  for (const auto& v : all_vectors(U)) {
    bool nz = false;
    for (auto x : v) nz = nz || !x.is_zero();
    if (nz) ++cnt[normalize(F, v)];
  }
  std::map<Vec, std::uint32_t> w;
  for (auto& [p, c] : cnt) {
    std::uint32_t k = 0;
    for (std::uint64_t t = c + 1; t > 1; t /= F.q()) ++k;
    w[p] = k;
  }
  return w;
}

FqSubspace rand_subspace(const FieldPtr& F, std::size_t r, std::size_t gens) {
  std::vector<Vec> g;
  for (std::size_t i = 0; i < gens; ++i) g.push_back(rand_vec(*F, r));
  return FqSubspace(F, r, g);
}

Collineation rand_collineation(const Field& F, std::size_t dim) {
  return {rand_invertible(F, dim), static_cast<std::uint32_t>(uniform(0, F.degree() - 1))};
}

}  // namespace

TEST(Linset, WeightsMatchVectorScan) {
  for (auto [p, e, n, r] : std::vector<std::array<std::uint32_t, 4>>{{2, 1, 3, 2}, {3, 1, 2, 3}, {2, 1, 4, 2}, {2, 2, 2, 2}}) {
    auto F = Field::make(p, e, n);
    for (int it = 0; it < 20; ++it) {
      FqSubspace U = rand_subspace(F, r, uniform(1, std::min<std::uint32_t>(r * n, 6)));
      LinearSet L(U, Exec::Serial);
      auto w = weights_by_scan(U);
      ASSERT_EQ(L.size(), w.size());
      for (const auto& wp : L.points()) {
        ASSERT_EQ(w.at(wp.point), wp.weight);
        ASSERT_EQ(L.weight_of(wp.point), wp.weight);
        ASSERT_EQ(point_weight(L, wp.point), wp.weight);
      }
      std::uint64_t lhs = 0;
      for (const auto& wp : L.points()) lhs += ipow(F->q(), wp.weight) - 1;
      ASSERT_EQ(lhs, ipow(F->q(), U.dim()) - 1);
    }
  }
}

TEST(Linset, SerialEqualsParallel) {
  auto F = Field::make(3, 1, 5);
  for (int it = 0; it < 10; ++it) {
    FqSubspace U = rand_subspace(F, 3, uniform(2, 7));
    LinearSet a(U, Exec::Serial), b(U, Exec::Parallel);
    ASSERT_EQ(a.points(), b.points());
    LinearizedPoly f = rand_poly(*F, 2);
    ASSERT_EQ(from_polynomial(F, f, Exec::Serial).points(), from_polynomial(F, f, Exec::Parallel).points());
  }
}

TEST(Linset, SizeCountsScatteredness) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 5}, {3, 4}, {2, 6}, {5, 3}}) {
    auto F = Field::make(p, 1, n);
    const std::uint64_t full = (F->order() - 1) / (F->q() - 1);
    int scattered = 0;
    for (int it = 0; it < 40; ++it) {
      LinearizedPoly f = rand_poly(*F, coprime_to(n)[uniform(0, coprime_to(n).size() - 1)], true);
      LinearSet L = from_polynomial(F, f);
      // the size by dedup, against the weights
      ASSERT_EQ(L.size() == full, is_scattered(L));
      ASSERT_EQ(L.rank(), n);
      // the polynomial set and the subspace set agree
      ASSERT_EQ(L.points(), LinearSet(subspace_of(F, f)).points());
      scattered += is_scattered(L);
    }
    EXPECT_GT(scattered, 0);
  }
}

TEST(Linset, WeightFromCount) {
  for (std::uint64_t q : {2, 3, 4, 5, 9})
    for (std::uint32_t w = 1; w <= 5; ++w) EXPECT_EQ(weight_from_count(q, (ipow(q, w) - 1) / (q - 1)), w);
}

TEST(Linset, AdjointHasSamePointSet) {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 5}, {3, 4}, {3, 5}, {5, 3}}) {
    auto F = Field::make(p, 1, n);
    for (int it = 0; it < 20; ++it) {
      LinearizedPoly f = rand_poly(*F, 1, true);
      LinearSet a = from_polynomial(F, f), b = from_polynomial(F, adjoint(*F, f));
      ASSERT_TRUE(same_point_set(a, b));
      ASSERT_EQ(a.weight_spectrum(), b.weight_spectrum());
    }
  }
}

TEST(Linset, PseudoregulusIsMaximumScattered) {
  auto F = Field::make(3, 1, 5);
  for (auto s : coprime_to(5)) {
    LinearSet L = from_polynomial(F, LinearizedPoly::monomial(*F, s, 1, F->one()));
    EXPECT_TRUE(is_maximum_scattered(L));
    EXPECT_EQ(L.size(), 121u);
  }
  LinearSet T = from_polynomial(F, LinearizedPoly(5, 1, Vec(5, F->one())));  // trace
  EXPECT_FALSE(is_scattered(T));
  EXPECT_EQ(T.max_weight(), 4u);
}

TEST(Linset, CollineationAlgebra) {
  auto F = Field::make(2, 2, 3);
  for (int it = 0; it < 50; ++it) {
    Collineation a = rand_collineation(*F, 3), b = rand_collineation(*F, 3);
    Vec v = rand_vec(*F, 3);
    ASSERT_EQ(apply(*F, compose(*F, a, b), v), apply(*F, a, apply(*F, b, v)));
    ASSERT_EQ(apply(*F, inverse(*F, a), apply(*F, a, v)), v);
    ASSERT_EQ(compose(*F, a, inverse(*F, a)), identity_collineation(*F, 3));
    Matrix rows = rand_matrix(*F, 2, 3);
    Matrix img = apply_rows(*F, a, rows);
    for (std::size_t i = 0; i < 2; ++i) ASSERT_EQ(img.row(i), apply(*F, a, rows.row(i)));
  }
}

TEST(Linset, ImageUnderCollineation) {
  auto F = Field::make(3, 1, 3);
  for (int it = 0; it < 10; ++it) {
    FqSubspace U = rand_subspace(F, 2, 3);
    LinearSet L(U);
    Collineation phi = rand_collineation(*F, 2);
    LinearSet M = apply(phi, L);
    // pointwise image
    std::map<Vec, std::uint32_t> img;
    for (const auto& wp : L.points()) img[normalize(*F, apply(*F, phi, wp.point))] = wp.weight;
    ASSERT_EQ(img.size(), M.size());
    for (const auto& wp : M.points()) ASSERT_EQ(img.at(wp.point), wp.weight);
  }
}

TEST(Linset, ProjectiveEquivalenceReflexiveSymmetric) {
  auto F = Field::make(3, 1, 4);
  for (int it = 0; it < 8; ++it) {
    LinearSet L1 = from_polynomial(F, rand_poly(*F, 1));
    Collineation phi = rand_collineation(*F, 2);
    LinearSet L2 = apply(phi, L1);
    auto self = projective_equivalent(L1, L1);
    ASSERT_TRUE(self.has_value());
    ASSERT_TRUE(same_point_set(apply(*self, L1), L1));
    auto fw = projective_equivalent(L1, L2), bw = projective_equivalent(L2, L1);
    ASSERT_TRUE(fw.has_value());
    ASSERT_TRUE(bw.has_value());
    ASSERT_TRUE(inverse(*F, *fw).M.rows() == 2);  // witness invertible
    ASSERT_TRUE(same_point_set(apply(*fw, L1), L2));
    ASSERT_TRUE(same_point_set(apply(*bw, L2), L1));
  }
  // different spectra
  LinearSet pr = from_polynomial(F, LinearizedPoly::monomial(*F, 1, 1, F->one()));
  LinearSet tr = from_polynomial(F, LinearizedPoly(4, 1, Vec(4, F->one())));
  EXPECT_FALSE(projective_equivalent(pr, tr).has_value());
}

TEST(Linset, EvasiveMatchesHyperplaneScan) {
  auto F = Field::make(2, 1, 3);
  for (int it = 0; it < 15; ++it) {
    FqSubspace U = rand_subspace(F, 3, uniform(2, 5));
    LinearSet L(U);
    const auto vecs = all_vectors(U);
    // worst hyperplane: normals a, count v with a.v = 0
    std::uint32_t worst = 0;
    const std::uint64_t Q = F->order();
    for (std::uint64_t k = 1; k < Q * Q * Q; ++k) {
      Vec a{Elem(k % Q), Elem(k / Q % Q), Elem(k / Q / Q)};
      if (normalize(*F, a) != a) continue;
      std::uint64_t c = 0;
      for (const auto& v : vecs) {
        Elem d = F->zero();
        for (int j = 0; j < 3; ++j) d = F->add(d, F->mul(a[j], v[j]));
        c += d.is_zero();
      }
      std::uint32_t dim = 0;
      for (std::uint64_t t = c; t > 1; t /= F->q()) ++dim;
      worst = std::max(worst, dim);
    }
    for (std::uint32_t k = 0; k <= 6; ++k) ASSERT_EQ(is_evasive(L, 2, k), worst <= k);
    for (std::uint32_t k = 0; k <= 3; ++k) ASSERT_EQ(is_evasive(L, 1, k), L.max_weight() <= k);
    ASSERT_EQ(is_evasive(L, 3, 2), U.dim() <= 2);
  }
  EXPECT_THROW(is_evasive(LinearSet(rand_subspace(F, 3, 4)), 2, 2, 10), EnumerationTooLarge);
}

TEST(Linset, CountSubspaces) {
  EXPECT_EQ(count_subspaces(4, 3, 1), 21u);
  EXPECT_EQ(count_subspaces(2, 4, 2), 35u);
  EXPECT_EQ(count_subspaces(3, 2, 0), 1u);
  EXPECT_EQ(count_subspaces(3, 2, 3), 0u);
  EXPECT_EQ(count_subspaces(1u << 20, 10, 5), UINT64_MAX);
}

TEST(Linset, ScalarEquivalent) {
  auto F = Field::make(3, 1, 4);
  for (int it = 0; it < 20; ++it) {
    FqSubspace U = subspace_of(F, rand_poly(*F, 1));
    const Elem l = rand_nonzero(*F);
    auto got = scalar_equivalent(U, U.scaled(l));
    ASSERT_TRUE(got.has_value());
    ASSERT_TRUE(U.scaled(*got) == U.scaled(l));
  }
  // x^q and its adjoint x^{q^3}: same points, no scalar carries one to the other
  LinearizedPoly f = LinearizedPoly::monomial(*F, 1, 1, F->one());
  EXPECT_FALSE(scalar_equivalent(subspace_of(F, f), subspace_of(F, adjoint(*F, f))).has_value());
}

TEST(Linset, InvariantCounterAdvances) {
  auto F = Field::make(2, 1, 3);
  const auto before = linear_sets_checked();
  LinearSet L(rand_subspace(F, 2, 3));
  EXPECT_GT(linear_sets_checked(), before);
}
