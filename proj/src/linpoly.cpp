#include "fqlin/linpoly.hpp"

#include <numeric>
#include <sstream>

namespace fqlin {

std::uint32_t gcd_u(std::uint32_t a, std::uint32_t b) { return std::gcd(a, b); }

std::uint32_t inv_mod_u(std::uint32_t a, std::uint32_t m) {
  if (m == 1) return 0;
  for (std::uint32_t x = 1; x < m; ++x)
    if ((std::uint64_t(a) * x) % m == 1) return x;
  throw DomainError("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
}

LinearizedPoly::LinearizedPoly(std::uint32_t n, std::uint32_t s, Vec coeffs)
    : n_(n), s_(n ? s % n : s), a_(std::move(coeffs)) {
  if (n == 0) throw DomainError("n must be positive");
  if (a_.size() != n) throw DimensionMismatch("expected n coefficients");
  if (std::gcd(s, n) != 1) throw DomainError("gcd(s, n) must be 1");
  if (n == 1) s_ = s;
}

LinearizedPoly LinearizedPoly::constant_free(std::uint32_t n, std::uint32_t s, Vec coeffs) {
  LinearizedPoly f(n, s, std::move(coeffs));
  if (!f.a_[0].is_zero()) throw DomainError("polynomial has 0 in its support");
  return f;
}

LinearizedPoly LinearizedPoly::monomial(const Field& F, std::uint32_t s, std::uint32_t i, Elem a) {
  Vec c(F.n(), F.zero());
  c[i % F.n()] = a;
  return LinearizedPoly(F.n(), s, c);
}

bool LinearizedPoly::is_zero() const {
  for (Elem a : a_)
    if (!a.is_zero()) return false;
  return true;
}

std::vector<std::uint32_t> LinearizedPoly::support() const {
  std::vector<std::uint32_t> I;
  for (std::uint32_t i = 0; i < n_; ++i)
    if (!a_[i].is_zero()) I.push_back(i);
  return I;
}

std::uint32_t LinearizedPoly::qdegree() const {
  auto I = support();
  if (I.empty()) throw ZeroPolynomial("q-degree of the zero polynomial");
  return I.back();
}

Elem eval(const Field& F, const LinearizedPoly& f, Elem x) {
  Elem r = F.zero();
  if (x.is_zero()) return r;
  const std::uint32_t n = f.n();
  for (std::uint32_t i = 0; i < n; ++i) {
    const Elem a = f.coeff(i);
    if (a.is_zero()) continue;
    r = F.add(r, F.mul(a, F.frobenius(x, std::int64_t(f.s()) * i)));
  }
  return r;
}

LinearizedPoly adjoint(const Field& F, const LinearizedPoly& f) {
  const std::uint32_t n = f.n();
  Vec b(n, F.zero());
  for (std::uint32_t i = 0; i < n; ++i)
    b[i] = F.frobenius(f.coeff((n - i) % n), std::int64_t(f.s()) * i);
  return LinearizedPoly(n, f.s(), b);
}

LinearizedPoly compose(const Field& F, const LinearizedPoly& f, const LinearizedPoly& g) {
  if (f.n() != g.n() || f.s() != g.s()) throw DimensionMismatch("composing polynomials with different n or s");
  const std::uint32_t n = f.n();
  Vec c(n, F.zero());
  for (std::uint32_t i = 0; i < n; ++i) {
    if (f.coeff(i).is_zero()) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (g.coeff(j).is_zero()) continue;
      const Elem t = F.mul(f.coeff(i), F.frobenius(g.coeff(j), std::int64_t(f.s()) * i));
      c[(i + j) % n] = F.add(c[(i + j) % n], t);
    }
  }
  return LinearizedPoly(n, f.s(), c);
}

LinearizedPoly poly_add(const Field& F, const LinearizedPoly& f, const LinearizedPoly& g) {
  if (f.n() != g.n() || f.s() != g.s()) throw DimensionMismatch("adding polynomials with different n or s");
  return LinearizedPoly(f.n(), f.s(), vec_add(F, f.coeffs(), g.coeffs()));
}

LinearizedPoly rebase(const LinearizedPoly& f, std::uint32_t t) {
  const std::uint32_t n = f.n();
  if (std::gcd(t, n) != 1) throw DomainError("gcd(t, n) must be 1");
  // x^{q^{s i}} = x^{q^{t j}} with j = s i / t mod n.
  const std::uint32_t tinv = inv_mod_u(t % n, n);
  Vec c(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = static_cast<std::uint32_t>((std::uint64_t(f.s()) * i % n) * tinv % n);
    c[j] = f.coeff(i);
  }
  return LinearizedPoly(n, t, c);
}

std::size_t kernel_dim(const Field& F, const LinearizedPoly& f) {
  std::vector<Elem> images;
  Elem xp = F.one();
  for (std::uint32_t i = 0; i < F.n(); ++i) {
    images.push_back(eval(F, f, xp));
    xp = F.mul(xp, F.x());
  }
  return F.n() - fq_rank(F, images);
}

bool is_permutation(const Field& F, const LinearizedPoly& f) { return kernel_dim(F, f) == 0; }

std::string to_string(const Field& F, const LinearizedPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t i = 0; i < f.n(); ++i) {
    const Elem a = f.coeff(i);
    if (a.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (a != F.one()) os << F.to_string(a) << "*";
    os << "X^q^" << (std::uint64_t(f.s()) * i % f.n());
  }
  if (first) os << "0";
  os << " (s=" << f.s() << ",n=" << f.n() << ")";
  return os.str();
}

MultiPoly::MultiPoly(std::vector<LinearizedPoly> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("a multipolynomial needs at least one part");
  for (const auto& f : parts_) {
    if (f.n() != parts_.front().n() || f.s() != parts_.front().s())
      throw DomainError("all parts must share n and s");
    if (!f.coeff(0).is_zero()) throw DomainError("part has 0 in its support");
  }
}

Elem eval(const Field& F, const MultiPoly& P, const Vec& x) {
  if (x.size() != P.parts().size()) throw DimensionMismatch("expected r-1 arguments");
  Elem r = F.zero();
  for (std::size_t j = 0; j < x.size(); ++j) r = F.add(r, eval(F, P.part(j), x[j]));
  return r;
}

}  // namespace fqlin
