#include "fqlin/linset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace fqlin {

namespace {

std::atomic<std::uint64_t> g_checked{0};

// Representatives of the nonzero vectors of an F_q-space of dimension u
// modulo F_q^*, as coefficient vectors over F_q with leading entry 1.
std::uint64_t coeff_proj_count(std::uint64_t q, std::size_t u) {
  std::uint64_t total = 0, t = 1;
  for (std::size_t k = 0; k < u; ++k) {
    total += t;
    t *= q;
  }
  return total;
}

void coeff_proj_rep(const Field& F, std::size_t u, std::uint64_t index, std::vector<Elem>& c) {
  const std::uint64_t q = F.q();
  const auto& fq = F.fq_elements();
  c.assign(u, F.zero());
  std::uint64_t block = 1;
  for (std::size_t k = 1; k < u; ++k) block *= q;
  std::size_t k = 0;
  while (index >= block) {
    index -= block;
    block /= q;
    ++k;
  }
  c[k] = F.one();
  for (std::size_t j = u; j-- > k + 1;) {
    c[j] = fq[index % q];
    index /= q;
  }
}

Vec combine(const Field& F, const std::vector<Vec>& basis, const std::vector<Elem>& c) {
  Vec v(basis.front().size(), F.zero());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (c[i].is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.add(v[j], F.mul(c[i], basis[i][j]));
  }
  return v;
}

Tally tally_subspace(const FqSubspace& U, Exec exec) {
  const Field& F = *U.field();
  const std::size_t u = U.dim(), r = U.ambient_r();
  if (u == 0) return {};
  const std::uint64_t count = coeff_proj_count(F.q(), u);
  if (count > 200'000'000ull) throw EnumerationTooLarge("linear set enumeration exceeds 2e8 vectors");
  return tally_points(
      count, r,
      [&](std::uint64_t i, Elem* out) {
        std::vector<Elem> c;
        coeff_proj_rep(F, u, i, c);
        Vec v = combine(F, U.basis(), c);
        normalize_in_place(F, v.data(), r);
        std::copy(v.begin(), v.end(), out);
      },
      exec);
}

Elem det2(const Field& F, const Vec& a, const Vec& b) {
  return F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]));
}

}  // namespace

std::uint32_t weight_from_count(std::uint64_t q, std::uint64_t c) {
  std::uint64_t s = 1, t = 1;
  std::uint32_t w = 1;
  while (s < c) {
    t *= q;
    s += t;
    ++w;
  }
  if (s != c) throw std::logic_error("vector count " + std::to_string(c) + " on a point is not (q^w-1)/(q-1)");
  return w;
}

std::uint64_t linear_sets_checked() { return g_checked.load(); }

LinearSet::LinearSet(FqSubspace U, Exec exec) : LinearSet(U, tally_subspace(U, exec)) {}

LinearSet::LinearSet(FqSubspace U, Tally tally) : U_(std::move(U)) {
  const std::uint64_t q = U_.field()->q();
  pts_.reserve(tally.points.size());
  for (std::size_t i = 0; i < tally.points.size(); ++i)
    pts_.push_back({std::move(tally.points[i]), weight_from_count(q, tally.counts[i])});
  check_invariants();
}

void LinearSet::check_invariants() const {
  const Field& F = *U_.field();
  const std::uint64_t q = F.q();
  std::uint64_t lhs = 0;
  for (const auto& wp : pts_) lhs += ipow(q, wp.weight) - 1;
  const std::uint64_t rhs = ipow(q, static_cast<std::uint32_t>(rank())) - 1;
  if (lhs != rhs)
    throw std::logic_error("weight-sum identity violated: " + std::to_string(lhs) +
                           " != " + std::to_string(rhs));
  for (std::size_t i = 1; i < pts_.size(); ++i)
    if (!(pts_[i - 1].point < pts_[i].point)) throw std::logic_error("point list not strictly sorted");
  if (rank() > 0 && max_weight() == 1 && rank() > (std::size_t(r()) * F.n()) / 2)
    throw std::logic_error("scattered linear set of rank above floor(rn/2)");
  ++g_checked;
}

std::map<std::uint32_t, std::uint64_t> LinearSet::weight_spectrum() const {
  std::map<std::uint32_t, std::uint64_t> m;
  for (const auto& wp : pts_) ++m[wp.weight];
  return m;
}

std::uint32_t LinearSet::max_weight() const {
  std::uint32_t w = 0;
  for (const auto& wp : pts_) w = std::max(w, wp.weight);
  return w;
}

std::uint32_t LinearSet::weight_of(const ProjPoint& p) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), p,
                             [](const WeightedPoint& a, const ProjPoint& b) { return a.point < b; });
  if (it == pts_.end() || it->point != p) return 0;
  return it->weight;
}

FqSubspace subspace_of(const FieldPtr& Fp, const MultiPoly& P) {
  const Field& F = *Fp;
  const std::size_t m = P.r() - 1;
  std::vector<Vec> gens;
  Elem xp = F.one();
  for (std::uint32_t i = 0; i < F.n(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Vec x(m, F.zero());
      x[j] = xp;
      Vec v = x;
      v.push_back(eval(F, P, x));
      gens.push_back(v);
    }
    xp = F.mul(xp, F.x());
  }
  return FqSubspace(Fp, m + 1, gens);
}

FqSubspace subspace_of(const FieldPtr& Fp, const LinearizedPoly& f) {
  const Field& F = *Fp;
  std::vector<Vec> gens;
  Elem xp = F.one();
  for (std::uint32_t i = 0; i < F.n(); ++i) {
    gens.push_back({xp, eval(F, f, xp)});
    xp = F.mul(xp, F.x());
  }
  return FqSubspace(Fp, 2, gens);
}

LinearSet from_polynomial(const FieldPtr& Fp, const MultiPoly& P, Exec exec) {
  const Field& F = *Fp;
  if (P.n() != F.n()) throw DimensionMismatch("polynomial degree n differs from the field");
  const std::size_t m = P.r() - 1;
  Tally t = tally_points(
      fq_proj_count(F, m), m + 1,
      [&](std::uint64_t i, Elem* out) {
        Vec x(m);
        fq_proj_rep(F, m, i, x.data());
        const Elem y = eval(F, P, x);
        std::copy(x.begin(), x.end(), out);
        out[m] = y;
        normalize_in_place(F, out, m + 1);
      },
      exec);
  return LinearSet(subspace_of(Fp, P), std::move(t));
}

LinearSet from_polynomial(const FieldPtr& Fp, const LinearizedPoly& f, Exec exec) {
  const Field& F = *Fp;
  if (f.n() != F.n()) throw DimensionMismatch("polynomial degree n differs from the field");
  Tally t = tally_points(
      fq_proj_count(F, 1), 2,
      [&](std::uint64_t i, Elem* out) {
        const Elem x = F.gen_pow(static_cast<std::int64_t>(i));
        out[0] = F.one();
        out[1] = F.div(eval(F, f, x), x);
      },
      exec);
  return LinearSet(subspace_of(Fp, f), std::move(t));
}

std::size_t point_weight(const LinearSet& L, const ProjPoint& P) {
  const Field& F = *L.field();
  std::vector<Vec> gens;
  Elem xp = F.one();
  for (std::uint32_t i = 0; i < F.n(); ++i) {
    gens.push_back(vec_scale(F, xp, P));
    xp = F.mul(xp, F.x());
  }
  return fq_dim(fq_intersect(L.subspace(), FqSubspace(L.field(), L.r(), gens)));
}

bool is_scattered(const LinearSet& L) { return L.max_weight() <= 1; }

bool is_maximum_scattered(const LinearSet& L) {
  return is_scattered(L) && L.rank() == (std::size_t(L.r()) * L.field()->n()) / 2;
}

bool same_point_set(const LinearSet& a, const LinearSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.points()[i].point != b.points()[i].point) return false;
  return true;
}

std::uint64_t count_subspaces(std::uint64_t Q, std::uint32_t r, std::uint32_t h) {
  if (h > r) return 0;
  // Gaussian binomial via long double to detect overflow, then exact.
  long double approx = 1;
  for (std::uint32_t i = 0; i < h; ++i)
    approx *= (std::pow((long double)Q, (long double)(r - i)) - 1) /
              (std::pow((long double)Q, (long double)(i + 1)) - 1);
  if (approx > 1.8e19L) return UINT64_MAX;
  unsigned __int128 num = 1, den = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    unsigned __int128 a = 1, b = 1;
    for (std::uint32_t k = 0; k < r - i; ++k) a *= Q;
    for (std::uint32_t k = 0; k < i + 1; ++k) b *= Q;
    num *= (a - 1);
    den *= (b - 1);
  }
  return static_cast<std::uint64_t>(num / den);
}

bool is_evasive(const LinearSet& L, std::uint32_t h, std::uint32_t k, std::uint64_t guard) {
  const Field& F = *L.field();
  const std::uint32_t r = L.r();
  const std::size_t u = L.rank();
  if (h == 0) return true;
  if (h >= r) return u <= k;
  if (h == 1) return L.max_weight() <= k;
  const std::uint64_t total = count_subspaces(F.order(), r, h);
  if (total > guard)
    throw EnumerationTooLarge("is_evasive: " + std::to_string(total) + " subspaces exceed guard " +
                              std::to_string(guard));
  const auto& B = L.subspace().basis();
  // dim(U cap T) = u - rank_{F_q} of the images of U under the annihilator of T.
  auto meet_dim = [&](const Matrix& T) {
    const Matrix C = kernel(F, T);
    Matrix img(0, C.rows() * F.n());
    for (const Vec& b : B) img.append_row(flatten(F, mat_vec(F, C, b)));
    return u - rank(F, img);
  };
  // Enumerate RREF h x r matrices by pivot set and free entries.
  std::vector<std::uint32_t> piv(h);
  for (std::uint32_t i = 0; i < h; ++i) piv[i] = i;
  const std::uint64_t Q = F.order();
  while (true) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free;
    std::vector<bool> is_piv(r, false);
    for (auto c : piv) is_piv[c] = true;
    for (std::uint32_t i = 0; i < h; ++i)
      for (std::uint32_t c = piv[i] + 1; c < r; ++c)
        if (!is_piv[c]) free.push_back({i, c});
    std::vector<std::uint64_t> digit(free.size(), 0);
    while (true) {
      Matrix T(h, r);
      for (std::uint32_t i = 0; i < h; ++i) T(i, piv[i]) = F.one();
      for (std::size_t f = 0; f < free.size(); ++f)
        T(free[f].first, free[f].second) = Elem(static_cast<std::uint32_t>(digit[f]));
      if (meet_dim(T) > k) return false;
      std::size_t f = 0;
      while (f < digit.size() && ++digit[f] == Q) digit[f++] = 0;
      if (f == digit.size()) break;
    }
    std::int32_t i = static_cast<std::int32_t>(h) - 1;
    while (i >= 0 && piv[i] == r - h + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (std::uint32_t j = i + 1; j < h; ++j) piv[j] = piv[j - 1] + 1;
  }
  return true;
}

std::optional<Elem> scalar_equivalent(const FqSubspace& U, const FqSubspace& W) {
  if (U.ambient_r() != W.ambient_r() || U.dim() != W.dim()) return std::nullopt;
  const Field& F = *U.field();
  if (U.dim() == 0) return F.one();
  const Vec& u1 = U.basis().front();
  std::size_t lead = 0;
  while (u1[lead].is_zero()) ++lead;
  std::vector<Vec> gens;
  Elem xp = F.one();
  for (std::uint32_t i = 0; i < F.n(); ++i) {
    gens.push_back(vec_scale(F, xp, u1));
    xp = F.mul(xp, F.x());
  }
  // lambda u1 must lie in W.
  const FqSubspace cand = fq_intersect(W, FqSubspace(U.field(), U.ambient_r(), gens));
  const std::size_t d = cand.dim();
  std::vector<Elem> c;
  for (std::uint64_t i = 0; i < coeff_proj_count(F.q(), d); ++i) {
    coeff_proj_rep(F, d, i, c);
    const Vec w = combine(F, cand.basis(), c);
    const Elem lambda = F.div(w[lead], u1[lead]);
    if (U.scaled(lambda) == W) return lambda;
  }
  return std::nullopt;
}

Collineation identity_collineation(const Field& F, std::size_t dim) {
  return {identity(F, dim), 0};
}

Vec apply(const Field& F, const Collineation& phi, const Vec& v) {
  return mat_vec(F, phi.M, frobenius_p(F, v, phi.aut_exp));
}

Matrix apply_rows(const Field& F, const Collineation& phi, const Matrix& rows) {
  return multiply(F, frobenius_p(F, rows, phi.aut_exp), transpose(phi.M));
}

Collineation compose(const Field& F, const Collineation& a, const Collineation& b) {
  return {multiply(F, a.M, frobenius_p(F, b.M, a.aut_exp)), (a.aut_exp + b.aut_exp) % F.degree()};
}

Collineation inverse(const Field& F, const Collineation& phi) {
  auto Mi = fqlin::inverse(F, phi.M);
  if (!Mi) throw DomainError("collineation matrix is singular");
  const std::uint32_t k = (F.degree() - phi.aut_exp % F.degree()) % F.degree();
  return {frobenius_p(F, *Mi, k), k};
}

LinearSet apply(const Collineation& phi, const LinearSet& L, Exec exec) {
  const Field& F = *L.field();
  std::vector<Vec> gens;
  for (const Vec& b : L.subspace().basis()) gens.push_back(apply(F, phi, b));
  return LinearSet(FqSubspace(L.field(), L.r(), gens), exec);
}

std::optional<Collineation> projective_equivalent(const LinearSet& L1, const LinearSet& L2,
                                                  Exec exec, std::uint64_t guard) {
  const Field& F = *L1.field();
  if (L1.r() != 2 || L2.r() != 2) throw PreconditionViolated("projective_equivalent needs r = 2");
  if (L1.size() != L2.size() || L1.weight_spectrum() != L2.weight_spectrum()) return std::nullopt;
  const std::size_t N = L1.size();
  if (N < 3) {
    if (same_point_set(L1, L2)) return identity_collineation(F, 2);
    throw PreconditionViolated("projective_equivalent needs at least three points");
  }
  const std::uint64_t cand = std::uint64_t(N) * (N - 1) * (N - 2) * F.degree();
  if (cand > guard)
    throw EnumerationTooLarge("projective_equivalent: " + std::to_string(cand) +
                              " frames exceed guard " + std::to_string(guard));

  // Frame in L1: lowest weights first.
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return L1.points()[a].weight < L1.points()[b].weight;
  });
  const auto& P1 = L1.points();
  const Vec A = P1[order[0]].point, B = P1[order[1]].point, C = P1[order[2]].point;
  const std::uint32_t wA = P1[order[0]].weight, wB = P1[order[1]].weight, wC = P1[order[2]].weight;
  const Elem dAB = det2(F, A, B);
  // C = alpha A + beta B
  const Elem alpha = F.div(det2(F, C, B), dAB), beta = F.div(det2(F, A, C), dAB);
  const Vec Ah = vec_scale(F, alpha, A), Bh = vec_scale(F, beta, B);
  const Elem dh = det2(F, Ah, Bh);
  struct Test {
    Elem kappa;
    std::uint32_t weight;
  };
  std::vector<Test> tests;
  for (std::size_t t = 3; t < N; ++t) {
    const Vec& D = P1[order[t]].point;
    const Elem x = F.div(det2(F, D, Bh), dh), y = F.div(det2(F, Ah, D), dh);
    tests.push_back({F.div(x, y), P1[order[t]].weight});
  }

  const auto& P2 = L2.points();
  const std::uint64_t Q = F.order();
  std::unordered_map<std::uint64_t, std::uint32_t> lookup;
  lookup.reserve(N * 2);
  for (const auto& wp : P2) lookup[std::uint64_t(wp.point[0].code()) * Q + wp.point[1].code()] = wp.weight;

  struct Hit {
    std::size_t b, c;
    std::uint32_t k;
    Vec a2, b2;
  };
  auto search_from = [&](std::size_t ia) -> std::optional<Hit> {
    if (P2[ia].weight != wA) return std::nullopt;
    for (std::size_t ib = 0; ib < N; ++ib) {
      if (ib == ia || P2[ib].weight != wB) continue;
      for (std::size_t ic = 0; ic < N; ++ic) {
        if (ic == ia || ic == ib || P2[ic].weight != wC) continue;
        const Vec &a = P2[ia].point, &b = P2[ib].point, &c = P2[ic].point;
        const Elem d = det2(F, a, b);
        const Vec a2 = vec_scale(F, F.div(det2(F, c, b), d), a);
        const Vec b2 = vec_scale(F, F.div(det2(F, a, c), d), b);
        for (std::uint32_t k = 0; k < F.degree(); ++k) {
          bool ok = true;
          for (const Test& t : tests) {
            const Elem kk = F.frobenius_p(t.kappa, k);
            Vec img{F.add(F.mul(kk, a2[0]), b2[0]), F.add(F.mul(kk, a2[1]), b2[1])};
            normalize_in_place(F, img.data(), 2);
            auto it = lookup.find(std::uint64_t(img[0].code()) * Q + img[1].code());
            if (it == lookup.end() || it->second != t.weight) {
              ok = false;
              break;
            }
          }
          if (ok) return Hit{ib, ic, k, a2, b2};
        }
      }
    }
    return std::nullopt;
  };

  std::vector<std::optional<Hit>> hits(N);
  std::atomic<std::int64_t> best{static_cast<std::int64_t>(N)};
  const std::int64_t NN = static_cast<std::int64_t>(N);
  if (exec == Exec::Serial) {
    for (std::int64_t ia = 0; ia < NN; ++ia)
      if ((hits[ia] = search_from(ia))) {
        best = ia;
        break;
      }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t ia = 0; ia < NN; ++ia) {
      if (ia > best.load()) continue;
      hits[ia] = search_from(ia);
      if (hits[ia]) {
        std::int64_t cur = best.load();
        while (ia < cur && !best.compare_exchange_weak(cur, ia)) {
        }
      }
    }
  }
  if (best.load() == NN) return std::nullopt;
  const Hit& h = *hits[best.load()];
  // M maps Ah^tau, Bh^tau to a2, b2 (as columns).
  const Vec At = frobenius_p(F, Ah, h.k), Bt = frobenius_p(F, Bh, h.k);
  Matrix S(2, 2), T(2, 2);
  for (int i = 0; i < 2; ++i) {
    S(i, 0) = At[i];
    S(i, 1) = Bt[i];
    T(i, 0) = h.a2[i];
    T(i, 1) = h.b2[i];
  }
  Collineation phi{multiply(F, T, *fqlin::inverse(F, S)), h.k};
  return phi;
}

ClassReport gammaL_class_le2_witnesses(const FieldPtr& Fp, const LinearizedPoly& f, bool universal) {
  const Field& F = *Fp;
  const FqSubspace Uf = subspace_of(Fp, f);
  const LinearizedPoly fh = adjoint(F, f);
  const FqSubspace Ufh = subspace_of(Fp, fh);
  ClassReport rep;
  rep.fhat_lambda = scalar_equivalent(Uf, Ufh);
  rep.fhat_scalar_of_f = rep.fhat_lambda.has_value();
  const std::uint64_t lead = (F.order() - 1) / (F.q() - 1);

  auto classify = [&](const FqSubspace& W) {
    if (auto l = scalar_equivalent(Uf, W)) return ClassWitness{2, *l};
    if (auto l = scalar_equivalent(Ufh, W)) return ClassWitness{3, *l};
    return ClassWitness{0, F.zero()};
  };
  auto record = [&](const ClassWitness& w) {
    if (w.which == 2) ++rep.case2;
    else if (w.which == 3) ++rep.case3;
    else ++rep.other;
    if (rep.sample.size() < 8) rep.sample.push_back(w);
  };

  if (!universal) {
    std::set<Matrix> seen;
    for (int which : {2, 3}) {
      const FqSubspace& base = which == 2 ? Uf : Ufh;
      for (std::uint64_t a = 0; a < lead; ++a) {
        const Elem lambda = F.gen_pow(static_cast<std::int64_t>(a));
        const FqSubspace W = base.scaled(lambda);
        if (!seen.insert(W.canonical()).second) continue;
        record(which == 2 ? ClassWitness{2, lambda} : classify(W));
      }
    }
    return rep;
  }

  if (F.order() > 81) throw EnumerationTooLarge("universal GammaL-class search needs q^n <= 81");
  rep.universal = true;
  const LinearSet L = from_polynomial(Fp, f, Exec::Serial);
  const auto& pts = L.points();
  std::vector<bool> covered(pts.size(), false);
  auto index_of = [&](const Vec& p) -> std::int64_t {
    auto it = std::lower_bound(pts.begin(), pts.end(), p,
                               [](const WeightedPoint& a, const Vec& b) { return a.point < b; });
    if (it == pts.end() || it->point != p) return -1;
    return it - pts.begin();
  };
  std::vector<Vec> basis;
  std::vector<Vec> span{Vec{F.zero(), F.zero()}};  // all vectors of the current span
  const auto& fq = F.fq_elements();
  std::function<void()> dfs = [&]() {
    if (basis.size() == F.n()) {
      record(classify(FqSubspace(Fp, 2, basis)));
      return;
    }
    std::size_t P = 0;
    while (P < pts.size() && covered[P]) ++P;
    if (P == pts.size()) return;
    for (std::uint64_t a = 0; a < lead; ++a) {
      const Vec w = vec_scale(F, F.gen_pow(static_cast<std::int64_t>(a)), pts[P].point);
      // New classes are w + s for s in the span; each must land on a fresh point.
      std::vector<std::size_t> marked;
      bool ok = true;
      for (const Vec& s : span) {
        const std::int64_t idx = index_of(normalize(F, vec_add(F, w, s)));
        if (idx < 0 || covered[idx]) {
          ok = false;
          break;
        }
        covered[idx] = true;
        marked.push_back(idx);
      }
      if (ok) {
        const std::size_t old = span.size();
        for (std::size_t i = 0; i < old; ++i)
          for (std::size_t t = 1; t < fq.size(); ++t)
            span.push_back(vec_add(F, span[i], vec_scale(F, fq[t], w)));
        basis.push_back(w);
        dfs();
        basis.pop_back();
        span.resize(old);
      }
      for (auto idx : marked) covered[idx] = false;
    }
  };
  dfs();
  return rep;
}

}  // namespace fqlin
