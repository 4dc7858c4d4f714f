#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fqlin/gf.hpp"
#include "fqlin/linpoly.hpp"
#include "fqlin/matrix.hpp"

namespace fqlin::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed1234u);
  return g;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline Elem rand_elem(const Field& F) { return Elem(static_cast<std::uint32_t>(uniform(0, F.order() - 1))); }
inline Elem rand_nonzero(const Field& F) { return Elem(static_cast<std::uint32_t>(uniform(1, F.order() - 1))); }

inline Elem rand_fq(const Field& F) {
  const auto& xs = F.fq_elements();
  return xs[uniform(0, xs.size() - 1)];
}

inline Vec rand_vec(const Field& F, std::size_t len) {
  Vec v(len);
  for (auto& x : v) x = rand_elem(F);
  return v;
}

inline Vec rand_nonzero_vec(const Field& F, std::size_t len) {
  for (;;) {
    Vec v = rand_vec(F, len);
    for (auto x : v)
      if (!x.is_zero()) return v;
  }
}

inline Matrix rand_matrix(const Field& F, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rand_elem(F);
  return m;
}

inline Matrix rand_invertible(const Field& F, std::size_t n) {
  for (;;) {
    Matrix m = rand_matrix(F, n, n);
    if (rank(F, m) == n) return m;
  }
}

// Random nonzero q^s-polynomial with 0 outside the support.
inline LinearizedPoly rand_poly(const Field& F, std::uint32_t s, bool allow_constant = false) {
  const std::uint32_t n = F.n();
  for (;;) {
    Vec a(n);
    for (std::uint32_t i = allow_constant ? 0 : 1; i < n; ++i)
      if (uniform(0, 2) == 0) a[i] = rand_nonzero(F);
    bool nz = false;
    for (auto x : a) nz = nz || !x.is_zero();
    if (nz) return LinearizedPoly(n, s, a);
  }
}

inline std::vector<std::uint32_t> coprime_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 1; s < n; ++s)
    if (gcd_u(s, n) == 1) out.push_back(s);
  if (n == 1) out.push_back(1);
  return out;
}

}  // namespace fqlin::testing
