#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fqlin/errors.hpp"

namespace fqlin {

// An element of F_{q^n}. The base-p digits of code() are the coefficients
// of the element in the power basis 1, x, ..., x^{D-1} of the modulus,
// least significant first. Zero is code 0, one is code 1.
class Elem {
 public:
  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t code) : code_(code) {}

  constexpr std::uint32_t code() const { return code_; }
  constexpr bool is_zero() const { return code_ == 0; }

  friend constexpr auto operator<=>(Elem, Elem) = default;

 private:
  std::uint32_t code_ = 0;
};

enum class TableMode { Auto, Never };

struct QuadRoots {
  std::vector<Elem> roots;   // ascending by code
  bool double_root = false;  // one root of multiplicity two
};

// F_p < F_q = F_{p^e} < F_{q^n}, realised as a single extension of degree
// D = e*n over F_p. Immutable after construction.
class Field {
 public:
  static constexpr std::uint64_t kTableLimit = 1u << 20;

  // modulus: little-endian coefficients of a monic degree-D polynomial, or
  // empty to pick the default one.
  Field(std::uint32_t p, std::uint32_t e, std::uint32_t n,
        std::vector<std::uint32_t> modulus = {},
        TableMode mode = TableMode::Auto);

  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t e,
                                           std::uint32_t n,
                                           std::vector<std::uint32_t> modulus = {},
                                           TableMode mode = TableMode::Auto);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t degree() const { return D_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t order() const { return Q_; }  // q^n
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }
  bool has_tables() const { return !exp_.empty(); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem x() const;  // the class of the indeterminate

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // DomainError on zero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t k) const;  // negative k inverts
  Elem gen_pow(std::int64_t k) const;      // g^k

  // Discrete logarithm to base generator(); DomainError on zero.
  std::uint64_t log(Elem a) const;

  Elem frobenius(Elem a, std::int64_t k) const;    // a^{q^k}
  Elem frobenius_p(Elem a, std::int64_t j) const;  // a^{p^j}

  Elem norm(Elem a, std::uint32_t l) const;   // N_{q^n/q^l}
  Elem trace(Elem a, std::uint32_t l) const;  // Tr_{q^n/q^l}
  bool in_subfield(Elem a, std::uint32_t l) const;
  std::vector<Elem> subfield_elements(std::uint32_t l) const;  // sorted by code

  // Roots of Y^2 + bY + c inside F_{q^l}.
  QuadRoots solve_monic_quadratic_in_subfield(Elem b, Elem c,
                                              std::uint32_t l) const;

  // Coordinates over F_q in the basis 1, x, ..., x^{n-1}.
  std::vector<Elem> fq_coords(Elem a) const;
  Elem from_fq_coords(const std::vector<Elem>& c) const;

  // F_p-coordinate helpers for F_q elements (e digits of the F_q coordinate
  // with respect to the F_p-basis of F_q given by fq_basis_p()).
  const std::vector<Elem>& fq_elements() const { return fq_elems_; }
  std::uint32_t fq_index(Elem a) const;  // position in fq_elements()

  std::string to_string(Elem a) const;

  // Reference polynomial arithmetic, kept public so tests can compare it
  // against the table path.
  Elem ref_mul(Elem a, Elem b) const;
  Elem ref_inv(Elem a) const;
  Elem ref_add(Elem a, Elem b) const;

 private:
  void check_divisor(std::uint32_t l) const;
  std::uint64_t subfield_order(std::uint32_t l) const;

  std::uint32_t p_, e_, n_, D_;
  std::uint64_t q_, Q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pw_;  // p^i for i <= D
  Elem gen_;

  std::vector<std::uint32_t> exp_;   // size 2(Q-1)
  std::vector<std::uint32_t> log_;   // size Q, log_[0] unused
  std::vector<std::uint32_t> zech_;  // log(1 + g^d), kNoLog if zero
  std::vector<Elem> dual_;           // trace-dual basis of 1, x, ..., x^{n-1}
  std::vector<Elem> fq_elems_;
  std::vector<std::uint32_t> fq_pos_;  // code -> index, only when table size allows
};

using FieldPtr = std::shared_ptr<const Field>;

// Polynomials over F_p as little-endian coefficient vectors (trimmed).
namespace fp_poly {
using Poly = std::vector<std::uint32_t>;
void trim(Poly& a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p);
Poly mod(Poly a, const Poly& m, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
Poly powmod(const Poly& a, std::uint64_t k, const Poly& m, std::uint32_t p);
bool is_irreducible(const Poly& f, std::uint32_t p);
}  // namespace fp_poly

std::vector<std::uint64_t> prime_factors(std::uint64_t v);
std::uint64_t ipow(std::uint64_t b, std::uint32_t k);
bool is_prime(std::uint64_t v);

}  // namespace fqlin
