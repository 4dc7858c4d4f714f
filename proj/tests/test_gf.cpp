#include <gtest/gtest.h>

#include <set>

#include "fqlin/gf.hpp"
#include "support.hpp"

using namespace fqlin;
using namespace fqlin::testing;

namespace {

// a^k by repeated reference multiplication
Elem naive_pow(const Field& F, Elem a, std::uint64_t k) {
  Elem r = F.one();
  for (std::uint64_t i = 0; i < k; ++i) r = F.ref_mul(r, a);
  return r;
}

// Multiplicative order of x modulo f, by stepping x^k; 0 if x^k never returns to 1.
std::uint64_t order_of_x(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const std::size_t D = f.size() - 1;
  std::vector<std::uint32_t> cur(D, 0);
  cur[0] = 1;
  std::uint64_t limit = 1;
  for (std::size_t i = 0; i < D; ++i) limit *= p;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const std::uint32_t top = cur[D - 1];
    for (std::size_t i = D - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::size_t i = 0; i < D; ++i) cur[i] = (cur[i] + (p - top) * f[i] % p) % p;
    bool one = cur[0] == 1;
    for (std::size_t i = 1; i < D && one; ++i) one = cur[i] == 0;
    if (one) return k;
  }
  return 0;
}

struct Shape {
  std::uint32_t p, e, n;
};

const std::vector<Shape> kSmall = {{2, 1, 4}, {2, 1, 6}, {3, 1, 4}, {3, 1, 6}, {2, 2, 3},
                                   {3, 2, 3}, {5, 1, 3}, {3, 1, 5}, {2, 3, 2}, {7, 1, 2}};

}  // namespace

TEST(Gf, DefaultModulusIsLeastPrimitive) {
  for (auto [p, D] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {2, 5}, {3, 3}, {3, 6}, {5, 2}}) {
    Field F(p, 1, D);
    std::uint64_t Q = ipow(p, D);
    std::vector<std::uint32_t> expect;
    for (std::uint64_t k = 0; k < Q && expect.empty(); ++k) {
      std::vector<std::uint32_t> f(D + 1, 0);
      f[D] = 1;
      std::uint64_t t = k;
      for (std::uint32_t i = D; i-- > 0;) {
        f[i] = t % p;
        t /= p;
      }
      if (f[0] != 0 && order_of_x(f, p) == Q - 1) expect = f;
    }
    EXPECT_EQ(F.modulus(), expect) << "p=" << p << " D=" << D;
  }
  EXPECT_EQ(Field(3, 1, 6).modulus(), (std::vector<std::uint32_t>{2, 0, 0, 0, 0, 1, 1}));
  EXPECT_EQ(Field(2, 1, 4).modulus(), (std::vector<std::uint32_t>{1, 0, 0, 1, 1}));
}

TEST(Gf, RejectsBadModulus) {
  EXPECT_THROW(Field(2, 1, 2, {1, 0, 1}), DomainError);  // x^2 + 1 = (x+1)^2
  EXPECT_THROW(Field(3, 1, 2, {1, 1}), DomainError);
  EXPECT_THROW(Field(4, 1, 2), DomainError);
  EXPECT_NO_THROW(Field(3, 1, 2, {1, 0, 1}));  // irreducible, x not primitive
}

TEST(Gf, GeneratorHasFullOrder) {
  for (auto [p, e, n] : kSmall) {
    Field F(p, e, n);
    std::set<std::uint32_t> seen;
    Elem g = F.one();
    for (std::uint64_t k = 0; k + 1 < F.order(); ++k) {
      seen.insert(g.code());
      g = F.mul(g, F.generator());
    }
    EXPECT_EQ(seen.size(), F.order() - 1);
    EXPECT_EQ(g, F.one());
  }
}

TEST(Gf, TablesMatchReference) {
  for (auto [p, e, n] : kSmall) {
    Field T(p, e, n);
    Field R(p, e, n, {}, TableMode::Never);
    ASSERT_TRUE(T.has_tables());
    ASSERT_FALSE(R.has_tables());
    for (int it = 0; it < 2000; ++it) {
      Elem a = rand_elem(T), b = rand_elem(T);
      ASSERT_EQ(T.mul(a, b), R.mul(a, b));
      ASSERT_EQ(T.mul(a, b), T.ref_mul(a, b));
      ASSERT_EQ(T.add(a, b), T.ref_add(a, b));
      ASSERT_EQ(T.add(a, b), R.add(a, b));
      ASSERT_EQ(T.sub(a, b), R.sub(a, b));
      if (!a.is_zero()) {
        ASSERT_EQ(T.inv(a), R.inv(a));
        ASSERT_EQ(T.mul(a, T.inv(a)), T.one());
        ASSERT_EQ(T.log(a), R.log(a));
      }
      const std::int64_t k = static_cast<std::int64_t>(uniform(0, 3 * T.order())) - std::int64_t(T.order());
      if (!a.is_zero() || k >= 0) ASSERT_EQ(T.pow(a, k), R.pow(a, k));
    }
  }
}

TEST(Gf, DomainErrors) {
  Field F(3, 1, 3);
  EXPECT_THROW(F.inv(F.zero()), DomainError);
  EXPECT_THROW(F.log(F.zero()), DomainError);
  EXPECT_THROW(F.norm(F.one(), 2), DomainError);  // 2 does not divide 3
  EXPECT_THROW(F.from_coeffs({0, 0, 0, 1}), DomainError);
}

TEST(Gf, FrobeniusMatchesNaivePower) {
  for (auto [p, e, n] : kSmall) {
    Field F(p, e, n);
    if (F.order() > 800) continue;
    for (std::uint32_t c = 0; c < F.order(); c += 7) {
      Elem a(c);
      Elem ak = a;
      for (std::uint32_t k = 0; k <= n; ++k) {
        ASSERT_EQ(F.frobenius(a, k), ak);
        ak = naive_pow(F, ak, F.q());
      }
      EXPECT_EQ(F.frobenius(a, n), a);
      EXPECT_EQ(F.frobenius_p(a, 1), naive_pow(F, a, p));
      EXPECT_EQ(F.frobenius(a, -1), F.frobenius(a, n - 1));
    }
  }
}

TEST(Gf, FrobeniusIsAutomorphism) {
  for (auto [p, e, n] : kSmall) {
    Field F(p, e, n);
    for (int it = 0; it < 300; ++it) {
      Elem x = rand_elem(F), y = rand_elem(F);
      for (std::uint32_t k = 0; k < n; ++k) {
        ASSERT_EQ(F.frobenius(F.mul(x, y), k), F.mul(F.frobenius(x, k), F.frobenius(y, k)));
        ASSERT_EQ(F.frobenius(F.add(x, y), k), F.add(F.frobenius(x, k), F.frobenius(y, k)));
      }
    }
  }
}

TEST(Gf, NormTraceAgainstDefinitions) {
  for (auto [p, e, n] : kSmall) {
    Field F(p, e, n);
    for (std::uint32_t l = 1; l <= n; ++l) {
      if (n % l) continue;
      const std::uint64_t ql = ipow(F.q(), l);
      for (int it = 0; it < 100; ++it) {
        Elem a = rand_elem(F);
        Elem N = F.one(), T = F.zero();
        for (std::uint32_t i = 0; i < n / l; ++i) {
          Elem c = F.frobenius(a, i * l);
          N = F.mul(N, c);
          T = F.add(T, c);
        }
        ASSERT_EQ(F.norm(a, l), N);
        ASSERT_EQ(F.trace(a, l), T);
        if (!a.is_zero()) ASSERT_EQ(F.norm(a, l), naive_pow(F, a, (F.order() - 1) / (ql - 1)));
        ASSERT_TRUE(F.in_subfield(F.norm(a, l), l));
        ASSERT_TRUE(F.in_subfield(F.trace(a, l), l));
      }
    }
  }
}

TEST(Gf, SubfieldsByFixedPoints) {
  for (auto [p, e, n] : kSmall) {
    Field F(p, e, n);
    for (std::uint32_t l = 1; l <= n; ++l) {
      if (n % l) continue;
      std::vector<Elem> fixed;
      for (std::uint32_t c = 0; c < F.order(); ++c)
        if (F.frobenius(Elem(c), l) == Elem(c)) fixed.push_back(Elem(c));
      EXPECT_EQ(F.subfield_elements(l), fixed);
      EXPECT_EQ(fixed.size(), ipow(F.q(), l));
      for (auto a : fixed) ASSERT_TRUE(F.in_subfield(a, l));
    }
    EXPECT_EQ(F.fq_elements(), F.subfield_elements(1));
    for (std::size_t i = 0; i < F.fq_elements().size(); ++i) EXPECT_EQ(F.fq_index(F.fq_elements()[i]), i);
  }
}

// Exhaustive for p^{e n} <= 3^6.
TEST(Gf, NormTraceTransitiveAndSurjective) {
  for (auto [p, e, n] : kSmall) {
    Field F(p, e, n);
    if (F.order() > 729) continue;
    std::vector<std::uint32_t> divs;
    for (std::uint32_t l = 1; l <= n; ++l)
      if (n % l == 0) divs.push_back(l);
    for (auto l : divs) {
      std::set<std::uint32_t> nimg, timg;
      for (std::uint32_t c = 0; c < F.order(); ++c) {
        nimg.insert(F.norm(Elem(c), l).code());
        timg.insert(F.trace(Elem(c), l).code());
      }
      EXPECT_EQ(timg.size(), ipow(F.q(), l)) << "trace onto F_{q^" << l << "}";
      EXPECT_EQ(nimg.size(), ipow(F.q(), l)) << "norm onto F_{q^" << l << "}";
      for (auto lp : divs) {
        if (lp % l || lp == l) continue;
        // N_{n->l} = N_{lp->l} o N_{n->lp}, with N_{lp->l}(y) = prod_i y^{q^{l i}}
        for (std::uint32_t c = 0; c < F.order(); ++c) {
          Elem y = F.norm(Elem(c), lp), Ny = F.one();
          Elem z = F.trace(Elem(c), lp), Tz = F.zero();
          for (std::uint32_t i = 0; i < lp / l; ++i) {
            Ny = F.mul(Ny, F.frobenius(y, i * l));
            Tz = F.add(Tz, F.frobenius(z, i * l));
          }
          ASSERT_EQ(F.norm(Elem(c), l), Ny);
          ASSERT_EQ(F.trace(Elem(c), l), Tz);
        }
      }
    }
  }
}

// All (b, c) with q^l <= 125.
TEST(Gf, QuadraticSolverMatchesScan) {
  const std::vector<Shape> shapes = {{2, 1, 4}, {3, 1, 4}, {2, 2, 2}, {5, 1, 2}, {3, 1, 6}, {2, 1, 6}, {5, 1, 3}, {7, 1, 2}};
  for (auto [p, e, n] : shapes) {
    Field F(p, e, n);
    for (std::uint32_t l = 1; l <= n; ++l) {
      if (n % l || ipow(F.q(), l) > 125) continue;
      const auto sub = F.subfield_elements(l);
      for (auto b : sub)
        for (auto c : sub) {
          std::vector<Elem> roots;
          for (auto y : sub)
            if (F.add(F.add(F.mul(y, y), F.mul(b, y)), c).is_zero()) roots.push_back(y);
          const QuadRoots got = F.solve_monic_quadratic_in_subfield(b, c, l);
          ASSERT_EQ(got.roots, roots) << "p=" << p << " l=" << l;
          // double root: Y^2 + bY + c = (Y - y)^2
          const bool dbl = roots.size() == 1 && F.mul(F.from_int(2), roots[0]) == F.neg(b) &&
                           F.mul(roots[0], roots[0]) == c;
          ASSERT_EQ(got.double_root, dbl);
        }
    }
  }
}

TEST(Gf, QuadraticSolverNeedsSubfieldCoefficients) {
  Field F(3, 1, 6);
  Elem g = F.generator();
  EXPECT_THROW(F.solve_monic_quadratic_in_subfield(g, F.one(), 1), DomainError);
}

TEST(Gf, FqCoordinatesRoundTrip) {
  for (auto [p, e, n] : kSmall) {
    Field F(p, e, n);
    for (int it = 0; it < 200; ++it) {
      Elem a = rand_elem(F), b = rand_elem(F), l = rand_fq(F);
      auto ca = F.fq_coords(a);
      ASSERT_EQ(ca.size(), n);
      for (auto c : ca) ASSERT_TRUE(F.in_subfield(c, 1));
      ASSERT_EQ(F.from_fq_coords(ca), a);
      auto cs = F.fq_coords(F.add(F.mul(l, a), b));
      auto cb = F.fq_coords(b);
      for (std::uint32_t i = 0; i < n; ++i) ASSERT_EQ(cs[i], F.add(F.mul(l, ca[i]), cb[i]));
    }
  }
}

TEST(Gf, SmallExamples) {
  Field F(2, 1, 4);  // x^4 + x^3 + 1
  Elem x = F.x();
  EXPECT_EQ(F.mul(F.pow(x, 3), x), F.add(F.pow(x, 3), F.one()));
  EXPECT_EQ(F.pow(x, 15), F.one());
  EXPECT_EQ(F.trace(F.one(), 1), F.zero());
  Field G(3, 1, 2);  // x^2 + x + 2
  EXPECT_EQ(G.modulus(), (std::vector<std::uint32_t>{2, 1, 1}));
  EXPECT_EQ(G.norm(G.x(), 1), G.from_int(2));
  EXPECT_EQ(G.trace(G.x(), 1), G.from_int(2));
  EXPECT_EQ(G.from_coeffs({1, 2}).code(), 7u);
  EXPECT_EQ(G.coeffs(Elem(7)), (std::vector<std::uint32_t>{1, 2}));
}
