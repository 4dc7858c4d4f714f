#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqlin/gf.hpp"
#include "fqlin/matrix.hpp"

namespace fqlin {

// sum_i a_i x^{q^{s i}}, i = 0..n-1, over F_{q^n}.
class LinearizedPoly {
 public:
  LinearizedPoly() = default;
  LinearizedPoly(std::uint32_t n, std::uint32_t s, Vec coeffs);

  // Rejects a nonzero constant-index coefficient a_0.
  static LinearizedPoly constant_free(std::uint32_t n, std::uint32_t s, Vec coeffs);
  static LinearizedPoly monomial(const Field& F, std::uint32_t s, std::uint32_t i, Elem a);

  std::uint32_t n() const { return n_; }
  std::uint32_t s() const { return s_; }
  Elem coeff(std::uint32_t i) const { return a_[i % n_]; }
  const Vec& coeffs() const { return a_; }
  bool is_zero() const;
  std::vector<std::uint32_t> support() const;
  std::uint32_t qdegree() const;

  friend bool operator==(const LinearizedPoly&, const LinearizedPoly&) = default;

 private:
  std::uint32_t n_ = 0, s_ = 1;
  Vec a_;
};

Elem eval(const Field& F, const LinearizedPoly& f, Elem x);
LinearizedPoly adjoint(const Field& F, const LinearizedPoly& f);
LinearizedPoly compose(const Field& F, const LinearizedPoly& f, const LinearizedPoly& g);
LinearizedPoly poly_add(const Field& F, const LinearizedPoly& f, const LinearizedPoly& g);
// Same map written in the x^{q^{t i}} basis.
LinearizedPoly rebase(const LinearizedPoly& f, std::uint32_t t);
std::size_t kernel_dim(const Field& F, const LinearizedPoly& f);
bool is_permutation(const Field& F, const LinearizedPoly& f);
std::string to_string(const Field& F, const LinearizedPoly& f);

// F(x) = sum_j f_j(x_j), j = 0..r-2.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<LinearizedPoly> parts);
  explicit MultiPoly(LinearizedPoly f) : MultiPoly(std::vector<LinearizedPoly>{std::move(f)}) {}

  std::uint32_t r() const { return static_cast<std::uint32_t>(parts_.size() + 1); }
  std::uint32_t n() const { return parts_.front().n(); }
  std::uint32_t s() const { return parts_.front().s(); }
  const std::vector<LinearizedPoly>& parts() const { return parts_; }
  const LinearizedPoly& part(std::size_t j) const { return parts_[j]; }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::vector<LinearizedPoly> parts_;
};

Elem eval(const Field& F, const MultiPoly& P, const Vec& x);

std::uint32_t gcd_u(std::uint32_t a, std::uint32_t b);
// Inverse of a modulo m, requires gcd(a, m) = 1.
std::uint32_t inv_mod_u(std::uint32_t a, std::uint32_t m);

}  // namespace fqlin
