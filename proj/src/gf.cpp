#include "fqlin/gf.hpp"

#include <algorithm>
#include <sstream>

namespace fqlin {

namespace {
constexpr std::uint32_t kNoLog = 0xffffffffu;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t k) {
  std::uint64_t r = 1;
  while (k--) r *= b;
  return r;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

namespace fp_poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

static std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t k = p - 2; k; k >>= 1) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    for (std::size_t j = 0; j <= dm; ++j)
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * m[j]) % p);
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      t[i + j] = static_cast<std::uint32_t>((t[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  }
  return mod(std::move(t), m, p);
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t li = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(c * li % p);
  }
  return a;
}

Poly powmod(const Poly& a, std::uint64_t k, const Poly& m, std::uint32_t p) {
  Poly r = mod(Poly{1}, m, p), b = mod(a, m, p);
  for (; k; k >>= 1) {
    if (k & 1) r = mulmod(r, b, m, p);
    b = mulmod(b, b, m, p);
  }
  return r;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  Poly g = f;
  trim(g);
  if (g.size() < 2) return false;
  const std::size_t d = g.size() - 1;
  if (d == 1) return true;
  Poly xp{0, 1};
  const Poly x{0, 1};
  for (std::size_t k = 1; k < d; ++k) {
    xp = powmod(xp, p, g, p);  // x^{p^k} mod f
    Poly h = xp;
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (h.empty()) return false;
    if (gcd(g, h, p).size() > 1) return false;
  }
  return true;
}

}  // namespace fp_poly

namespace {

bool x_is_primitive(const fp_poly::Poly& f, std::uint32_t p, std::uint64_t order) {
  const fp_poly::Poly x{0, 1};
  for (auto r : prime_factors(order - 1))
    if (fp_poly::powmod(x, (order - 1) / r, f, p) == fp_poly::Poly{1}) return false;
  return true;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t e, std::uint32_t n,
             std::vector<std::uint32_t> modulus, TableMode mode)
    : p_(p), e_(e), n_(n), D_(e * n) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (e == 0 || n == 0) throw DomainError("e and n must be positive");
  if (D_ > 31 || ipow(p, D_) > (std::uint64_t(1) << 31))
    throw DomainError("field order p^(e*n) exceeds 2^31");
  q_ = ipow(p, e);
  Q_ = ipow(p, D_);
  pw_.resize(D_ + 1);
  for (std::uint32_t i = 0; i <= D_; ++i) pw_[i] = static_cast<std::uint32_t>(ipow(p, i));

  if (modulus.empty()) {
    // Least primitive polynomial, comparing coefficient arrays from c0 up.
    fp_poly::Poly f(D_ + 1, 0);
    f[D_] = 1;
    for (std::uint64_t k = 0; k < Q_; ++k) {
      std::uint64_t t = k;
      for (std::uint32_t i = D_; i-- > 0;) {
        f[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (f[0] == 0) continue;
      if (!fp_poly::is_irreducible(f, p)) continue;
      if (Q_ > 2 && !x_is_primitive(f, p, Q_)) continue;
      modulus = f;
      break;
    }
  } else {
    if (modulus.size() != D_ + 1 || modulus.back() != 1)
      throw DomainError("modulus must be monic of degree e*n");
    for (auto c : modulus)
      if (c >= p) throw DomainError("modulus coefficient out of range");
    if (!fp_poly::is_irreducible(modulus, p)) throw DomainError("modulus is reducible");
  }
  modulus_ = modulus;

  // Generator: x when primitive, else the least primitive code.
  auto is_primitive = [&](Elem a) {
    if (a.is_zero()) return false;
    for (auto r : prime_factors(Q_ - 1))
      if (pow(a, static_cast<std::int64_t>((Q_ - 1) / r)) == one()) return false;
    return true;
  };
  gen_ = D_ == 1 ? Elem(0) : x();
  if (Q_ == 2) gen_ = one();
  else if (gen_.is_zero() || !is_primitive(gen_)) {
    for (std::uint32_t c = 2; c < Q_; ++c)
      if (is_primitive(Elem(c))) {
        gen_ = Elem(c);
        break;
      }
  }

  if (mode == TableMode::Auto && Q_ <= kTableLimit) {
    const std::uint32_t N = static_cast<std::uint32_t>(Q_ - 1);
    exp_.resize(2 * std::size_t(N));
    log_.assign(Q_, kNoLog);
    Elem cur = one();
    for (std::uint32_t k = 0; k < N; ++k) {
      exp_[k] = cur.code();
      log_[cur.code()] = k;
      cur = ref_mul(cur, gen_);
    }
    for (std::uint32_t k = 0; k < N; ++k) exp_[N + k] = exp_[k];
    zech_.resize(N);
    for (std::uint32_t d = 0; d < N; ++d) {
      const std::uint32_t c = exp_[d];
      const std::uint32_t c0 = c % p;
      const std::uint32_t s = c - c0 + (c0 + 1) % p;
      zech_[d] = s == 0 ? kNoLog : log_[s];
    }
  }

  fq_elems_ = subfield_elements(1);

  // Trace-dual basis of 1, x, ..., x^{n-1} over F_q.
  if (e_ > 1 && n_ > 1) {
    std::vector<Elem> xp(2 * n_);
    xp[0] = one();
    for (std::uint32_t i = 1; i < 2 * n_; ++i) xp[i] = mul(xp[i - 1], x());
    std::vector<std::vector<Elem>> a(n_, std::vector<Elem>(2 * n_));
    for (std::uint32_t i = 0; i < n_; ++i) {
      for (std::uint32_t j = 0; j < n_; ++j) a[i][j] = trace(xp[i + j], 1);
      a[i][n_ + i] = one();
    }
    for (std::uint32_t c = 0; c < n_; ++c) {
      std::uint32_t piv = c;
      while (a[piv][c].is_zero()) ++piv;
      std::swap(a[c], a[piv]);
      const Elem ic = inv(a[c][c]);
      for (auto& v : a[c]) v = mul(v, ic);
      for (std::uint32_t r = 0; r < n_; ++r) {
        if (r == c || a[r][c].is_zero()) continue;
        const Elem f = a[r][c];
        for (std::uint32_t k = 0; k < 2 * n_; ++k) a[r][k] = sub(a[r][k], mul(f, a[c][k]));
      }
    }
    dual_.assign(n_, zero());
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j)
        dual_[i] = add(dual_[i], mul(a[i][n_ + j], xp[j]));
  }
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t e, std::uint32_t n,
                                         std::vector<std::uint32_t> modulus, TableMode mode) {
  return std::make_shared<const Field>(p, e, n, std::move(modulus), mode);
}

Elem Field::x() const {
  if (D_ == 1) return from_int(-static_cast<std::int64_t>(modulus_[0]));
  return Elem(p_);
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % std::int64_t(p_);
  if (r < 0) r += p_;
  return Elem(static_cast<std::uint32_t>(r));
}

Elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > D_) throw DomainError("too many coefficients");
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw DomainError("coefficient out of range");
    code = code * p_ + c[i];
  }
  return Elem(code);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> c(D_);
  std::uint32_t v = a.code();
  for (std::uint32_t i = 0; i < D_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

Elem Field::ref_add(Elem a, Elem b) const {
  if (p_ == 2) return Elem(a.code() ^ b.code());
  std::uint32_t x = a.code(), y = b.code(), r = 0;
  for (std::uint32_t i = 0; i < D_; ++i) {
    r += ((x % p_ + y % p_) % p_) * pw_[i];
    x /= p_;
    y /= p_;
  }
  return Elem(r);
}

Elem Field::ref_mul(Elem a, Elem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  auto ca = coeffs(a), cb = coeffs(b);
  fp_poly::trim(ca);
  fp_poly::trim(cb);
  auto r = fp_poly::mulmod(ca, cb, modulus_, p_);
  r.resize(D_, 0);
  return from_coeffs(r);
}

Elem Field::ref_inv(Elem a) const {
  if (a.is_zero()) throw DomainError("inverse of zero");
  // Extended Euclid: track s with s*a = r (mod modulus).
  using fp_poly::Poly;
  Poly r0 = modulus_, r1 = coeffs(a);
  fp_poly::trim(r1);
  Poly s0{}, s1{1};
  auto sub_mul = [&](const Poly& x, const Poly& y, const Poly& qt) {
    // x - qt*y over F_p
    Poly prod(qt.size() + y.size(), 0);
    for (std::size_t i = 0; i < qt.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(qt[i]) * y[j]) % p_);
    Poly out(std::max(x.size(), prod.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::uint32_t xi = i < x.size() ? x[i] : 0;
      const std::uint32_t pi = i < prod.size() ? prod[i] : 0;
      out[i] = (xi + p_ - pi) % p_;
    }
    fp_poly::trim(out);
    return out;
  };
  while (r1.size() > 1) {
    // polynomial division r0 / r1
    Poly rem = r0, qt(r0.size() - r1.size() + 1, 0);
    std::uint64_t li = 1;
    for (std::uint64_t t = r1.back(), k = p_ - 2; k; k >>= 1) {
      if (k & 1) li = li * t % p_;
      t = t * t % p_;
    }
    while (rem.size() >= r1.size()) {
      const std::size_t sh = rem.size() - r1.size();
      const std::uint64_t c = rem.back() * li % p_;
      qt[sh] = static_cast<std::uint32_t>(c);
      for (std::size_t j = 0; j < r1.size(); ++j)
        rem[sh + j] = static_cast<std::uint32_t>((rem[sh + j] + (p_ - c) * r1[j]) % p_);
      fp_poly::trim(rem);
    }
    Poly s2 = sub_mul(s0, s1, qt);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c; inverse is s1 / c.
  std::uint64_t ci = 1;
  for (std::uint64_t t = r1[0], k = p_ - 2; k; k >>= 1) {
    if (k & 1) ci = ci * t % p_;
    t = t * t % p_;
  }
  for (auto& c : s1) c = static_cast<std::uint32_t>(c * ci % p_);
  s1.resize(D_, 0);
  return from_coeffs(s1);
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem(a.code() ^ b.code());
  if (!has_tables()) return ref_add(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::uint32_t la = log_[a.code()], lb = log_[b.code()];
  if (lb < la) std::swap(la, lb);
  const std::uint32_t z = zech_[lb - la];
  if (z == kNoLog) return zero();
  return Elem(exp_[la + z]);
}

Elem Field::neg(Elem a) const {
  if (p_ == 2 || a.is_zero()) return a;
  if (has_tables()) return Elem(exp_[log_[a.code()] + (Q_ - 1) / 2]);
  std::uint32_t x = a.code(), r = 0;
  for (std::uint32_t i = 0; i < D_; ++i) {
    r += ((p_ - x % p_) % p_) * pw_[i];
    x /= p_;
  }
  return Elem(r);
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  if (!has_tables()) return ref_mul(a, b);
  return Elem(exp_[log_[a.code()] + log_[b.code()]]);
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw DomainError("inverse of zero");
  if (!has_tables()) return ref_inv(a);
  const std::uint32_t l = log_[a.code()];
  return Elem(exp_[l == 0 ? 0 : (Q_ - 1) - l]);
}

Elem Field::pow(Elem a, std::int64_t k) const {
  if (a.is_zero()) {
    if (k < 0) throw DomainError("negative power of zero");
    return k == 0 ? one() : zero();
  }
  const std::int64_t N = static_cast<std::int64_t>(Q_ - 1);
  std::int64_t r = k % N;
  if (r < 0) r += N;
  if (has_tables())
    return Elem(exp_[(std::uint64_t(log_[a.code()]) * std::uint64_t(r)) % std::uint64_t(N)]);
  Elem res = one(), b = a;
  for (std::uint64_t t = static_cast<std::uint64_t>(r); t; t >>= 1) {
    if (t & 1) res = ref_mul(res, b);
    b = ref_mul(b, b);
  }
  return res;
}

Elem Field::gen_pow(std::int64_t k) const { return pow(gen_, k); }

std::uint64_t Field::log(Elem a) const {
  if (a.is_zero()) throw DomainError("log of zero");
  if (has_tables()) return log_[a.code()];
  Elem cur = one();
  for (std::uint64_t k = 0; k + 1 < Q_; ++k) {
    if (cur == a) return k;
    cur = ref_mul(cur, gen_);
  }
  throw DomainError("log: element not reached");
}

Elem Field::frobenius_p(Elem a, std::int64_t j) const {
  std::int64_t r = j % std::int64_t(D_);
  if (r < 0) r += D_;
  if (r == 0 || a.is_zero()) return a;
  return pow(a, static_cast<std::int64_t>(pw_[r] % (Q_ - 1)));
}

Elem Field::frobenius(Elem a, std::int64_t k) const {
  std::int64_t r = k % std::int64_t(n_);
  if (r < 0) r += n_;
  return frobenius_p(a, r * e_);
}

void Field::check_divisor(std::uint32_t l) const {
  if (l == 0 || n_ % l != 0)
    throw DomainError("l = " + std::to_string(l) + " does not divide n = " + std::to_string(n_));
}

std::uint64_t Field::subfield_order(std::uint32_t l) const { return ipow(q_, l); }

Elem Field::norm(Elem a, std::uint32_t l) const {
  check_divisor(l);
  Elem r = one();
  for (std::uint32_t i = 0; i < n_ / l; ++i) r = mul(r, frobenius(a, std::int64_t(i) * l));
  return r;
}

Elem Field::trace(Elem a, std::uint32_t l) const {
  check_divisor(l);
  Elem r = zero();
  for (std::uint32_t i = 0; i < n_ / l; ++i) r = add(r, frobenius(a, std::int64_t(i) * l));
  return r;
}

bool Field::in_subfield(Elem a, std::uint32_t l) const {
  check_divisor(l);
  return frobenius(a, l) == a;
}

std::vector<Elem> Field::subfield_elements(std::uint32_t l) const {
  check_divisor(l);
  const std::uint64_t ql = subfield_order(l);
  std::vector<Elem> out;
  out.reserve(ql);
  out.push_back(zero());
  const Elem gl = pow(gen_, static_cast<std::int64_t>((Q_ - 1) / (ql - 1)));
  Elem cur = one();
  for (std::uint64_t k = 0; k + 1 < ql; ++k) {
    out.push_back(cur);
    cur = mul(cur, gl);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t Field::fq_index(Elem a) const {
  auto it = std::lower_bound(fq_elems_.begin(), fq_elems_.end(), a);
  if (it == fq_elems_.end() || *it != a) throw DomainError("element not in F_q");
  return static_cast<std::uint32_t>(it - fq_elems_.begin());
}

QuadRoots Field::solve_monic_quadratic_in_subfield(Elem b, Elem c, std::uint32_t l) const {
  check_divisor(l);
  if (!in_subfield(b, l) || !in_subfield(c, l))
    throw DomainError("quadratic coefficients outside F_{q^l}");
  const std::uint64_t ql = subfield_order(l);
  QuadRoots out;
  auto finish = [&](Elem r0, Elem r1) {
    if (r0 == r1) {
      out.roots = {r0};
      out.double_root = true;
    } else {
      out.roots = {std::min(r0, r1), std::max(r0, r1)};
    }
    return out;
  };

  if (p_ != 2) {
    const Elem two = from_int(2);
    const Elem disc = sub(mul(b, b), mul(from_int(4), c));
    const Elem half_neg_b = div(neg(b), two);
    if (disc.is_zero()) return finish(half_neg_b, half_neg_b);
    if (pow(disc, static_cast<std::int64_t>((ql - 1) / 2)) != one()) return out;
    // Tonelli-Shanks inside F_{q^l}; the subfield generator is a non-square.
    std::uint64_t odd = ql - 1;
    std::uint32_t S = 0;
    while (odd % 2 == 0) {
      odd /= 2;
      ++S;
    }
    const Elem z = pow(gen_, static_cast<std::int64_t>((Q_ - 1) / (ql - 1)));
    Elem cc = pow(z, static_cast<std::int64_t>(odd));
    Elem t = pow(disc, static_cast<std::int64_t>(odd));
    Elem root = pow(disc, static_cast<std::int64_t>((odd + 1) / 2));
    std::uint32_t M = S;
    while (t != one()) {
      std::uint32_t i = 0;
      Elem t2 = t;
      while (t2 != one()) {
        t2 = mul(t2, t2);
        ++i;
      }
      Elem bb = cc;
      for (std::uint32_t k = 0; k + 1 < M - i; ++k) bb = mul(bb, bb);
      M = i;
      cc = mul(bb, bb);
      t = mul(t, cc);
      root = mul(root, bb);
    }
    const Elem hr = div(root, two);
    return finish(add(half_neg_b, hr), sub(half_neg_b, hr));
  }

  // Characteristic two.
  const std::uint32_t m = e_ * l;  // F_{q^l} = F_{2^m}
  if (b.is_zero()) {
    const Elem r = pow(c, static_cast<std::int64_t>(ql / 2));
    return finish(r, r);
  }
  // Y = bZ turns the equation into Z^2 + Z = a.
  const Elem a = div(c, mul(b, b));
  auto abs_trace = [&](Elem v) {
    Elem s = zero(), cur = v;
    for (std::uint32_t i = 0; i < m; ++i) {
      s = add(s, cur);
      cur = mul(cur, cur);
    }
    return s;
  };
  if (!abs_trace(a).is_zero()) return out;
  Elem zroot = zero();
  if (m % 2 == 1) {
    Elem cur = a;
    for (std::uint32_t i = 0; i <= (m - 1) / 2; ++i) {
      zroot = add(zroot, cur);
      cur = mul(cur, cur);
      cur = mul(cur, cur);
    }
  } else {
    Elem theta = zero();
    for (Elem v : subfield_elements(l))
      if (abs_trace(v) == one()) {
        theta = v;
        break;
      }
    std::vector<Elem> th(m), ap(m);
    th[0] = theta;
    ap[0] = a;
    for (std::uint32_t i = 1; i < m; ++i) {
      th[i] = mul(th[i - 1], th[i - 1]);
      ap[i] = mul(ap[i - 1], ap[i - 1]);
    }
    for (std::uint32_t i = 0; i + 1 < m; ++i) {
      Elem inner = zero();
      for (std::uint32_t j = i + 1; j < m; ++j) inner = add(inner, th[j]);
      zroot = add(zroot, mul(inner, ap[i]));
    }
  }
  return finish(mul(b, zroot), mul(b, add(zroot, one())));
}

std::vector<Elem> Field::fq_coords(Elem a) const {
  std::vector<Elem> out(n_);
  if (e_ == 1 || n_ == 1) {
    if (n_ == 1) {
      out[0] = a;
      return out;
    }
    std::uint32_t v = a.code();
    for (std::uint32_t i = 0; i < n_; ++i) {
      out[i] = Elem(v % p_);
      v /= p_;
    }
    return out;
  }
  for (std::uint32_t i = 0; i < n_; ++i) out[i] = trace(mul(a, dual_[i]), 1);
  return out;
}

Elem Field::from_fq_coords(const std::vector<Elem>& c) const {
  if (c.size() != n_) throw DimensionMismatch("expected n F_q-coordinates");
  Elem r = zero(), xp = one();
  for (std::uint32_t i = 0; i < n_; ++i) {
    r = add(r, mul(c[i], xp));
    xp = mul(xp, x());
  }
  return r;
}

std::string Field::to_string(Elem a) const {
  if (a.is_zero()) return "0";
  if (a == one()) return "1";
  if (has_tables()) return "g^" + std::to_string(log_[a.code()]);
  std::ostringstream os;
  os << '[';
  auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

}  // namespace fqlin
