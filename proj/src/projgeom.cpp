#include "fqlin/projgeom.hpp"

#include <atomic>
#include <numeric>

namespace fqlin {

ProjSubspace::ProjSubspace(const Field& F, const Matrix& rows) : B_(row_space(F, rows)) {}

ProjSubspace ProjSubspace::from_equations(const Field& F, const Matrix& eqs) {
  return ProjSubspace(F, kernel(F, eqs));
}

ProjSubspace meet(const Field& F, const ProjSubspace& a, const ProjSubspace& b) {
  return ProjSubspace(F, subspace_meet(F, a.basis(), b.basis()));
}

ProjSubspace join(const Field& F, const ProjSubspace& a, const ProjSubspace& b) {
  return ProjSubspace(F, subspace_sum(F, a.basis(), b.basis()));
}

Subgeometry::Subgeometry(FieldPtr F, std::uint32_t r, std::uint32_t s)
    : F_(std::move(F)), r_(r), s_(s % F_->n()) {
  if (r < 2) throw DomainError("r must be at least 2");
  if (std::gcd(s, F_->n()) != 1) throw DomainError("gcd(s, n) must be 1");
  if (F_->n() == 1) s_ = 1;
}

std::uint64_t Subgeometry::point_count() const { return fq_proj_count(*F_, r_ - 1); }

Vec Subgeometry::point(const Vec& x) const {
  if (x.size() != r_ - 1) throw DimensionMismatch("expected r-1 coordinates");
  Vec v(u());
  for (std::uint32_t k = 0; k < n(); ++k)
    for (std::uint32_t j = 0; j + 1 < r_; ++j) v[index(j, k)] = F_->frobenius(x[j], k);
  return v;
}

Vec Subgeometry::point_at(std::uint64_t i) const {
  Vec x(r_ - 1);
  fq_proj_rep(*F_, r_ - 1, i, x.data());
  return normalize(*F_, point(x));
}

Vec Subgeometry::bold_sigma(const Vec& v, std::int64_t k) const {
  const std::int64_t nn = n();
  std::int64_t sh = k % nn;
  if (sh < 0) sh += nn;
  Vec out(u());
  for (std::uint32_t b = 0; b < n(); ++b)
    for (std::uint32_t j = 0; j + 1 < r_; ++j)
      out[index(j, static_cast<std::uint32_t>((b + sh) % nn))] = F_->frobenius(v[index(j, b)], sh);
  return out;
}

Vec Subgeometry::sigma(const Vec& v, std::int64_t k) const { return bold_sigma(v, k * s_); }

ProjSubspace Subgeometry::sigma(const ProjSubspace& S, std::int64_t k) const {
  Matrix m(0, u());
  for (std::size_t i = 0; i < S.basis().rows(); ++i) m.append_row(sigma(S.basis().row(i), k));
  return ProjSubspace(*F_, m);
}

Collineation Subgeometry::sigma_collineation() const {
  // sigma(v) = M v^{q^s}, M the block shift by s.
  Matrix M(u(), u());
  for (std::uint32_t b = 0; b < n(); ++b)
    for (std::uint32_t j = 0; j + 1 < r_; ++j) M(index(j, (b + s_) % n()), index(j, b)) = F_->one();
  return {M, (F_->e() * s_) % F_->degree()};
}

Vec Subgeometry::unit(std::uint32_t j, std::uint32_t k) const {
  Vec v(u(), F_->zero());
  v[index(j, k)] = F_->one();
  return v;
}

ProjSubspace sigma_apply(const Subgeometry& S, const ProjSubspace& X, std::int64_t k) {
  return S.sigma(X, k);
}

Vec sigma_apply(const Subgeometry& S, const Vec& P, std::int64_t k) {
  return normalize(*S.field(), S.sigma(P, k));
}

Matrix sigma_orbit_matrix(const Subgeometry& S, const Vec& P) {
  Matrix m(0, P.size());
  Vec cur = P;
  for (std::uint32_t i = 0; i < S.n(); ++i) {
    m.append_row(cur);
    cur = S.sigma(cur);
  }
  return m;
}

std::size_t moore_rank(const Subgeometry& S, const Vec& P) {
  return rank(*S.field(), sigma_orbit_matrix(S, P));
}

bool is_imaginary(const Subgeometry& S, const Vec& P) { return moore_rank(S, P) == S.n(); }

std::uint64_t count_sigma_points_in(const Subgeometry& S, const ProjSubspace& X, Exec exec) {
  const Field& F = *S.field();
  const Matrix C = X.equations(F);
  const std::int64_t N = static_cast<std::int64_t>(S.point_count());
  std::uint64_t hits = 0;
  auto inside = [&](std::int64_t i) {
    const Vec v = S.point_at(static_cast<std::uint64_t>(i));
    for (std::size_t r = 0; r < C.rows(); ++r) {
      Elem acc = F.zero();
      for (std::size_t c = 0; c < C.cols(); ++c)
        if (!C(r, c).is_zero() && !v[c].is_zero()) acc = F.add(acc, F.mul(C(r, c), v[c]));
      if (!acc.is_zero()) return false;
    }
    return true;
  };
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < N; ++i) hits += inside(i);
  } else {
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (std::int64_t i = 0; i < N; ++i) hits += inside(i);
  }
  return hits;
}

namespace {

void check_poly(const Subgeometry& S, const MultiPoly& P) {
  if (P.r() != S.r()) throw DimensionMismatch("polynomial r differs from the subgeometry");
  if (P.n() != S.n()) throw DimensionMismatch("polynomial n differs from the subgeometry");
  if (P.s() != S.s()) throw DimensionMismatch("polynomial s differs from the subgeometry");
}

}  // namespace

std::vector<Vec> vertex_spanning_points(const Subgeometry& S, const MultiPoly& P) {
  check_poly(S, P);
  const Field& F = *S.field();
  const std::uint32_t n = S.n(), s = S.s(), r = S.r();
  std::vector<Vec> out;
  std::vector<std::uint32_t> m(r - 1);
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    const auto& f = P.part(k);
    if (f.is_zero()) throw DegenerateVertex("part " + std::to_string(k) + " has empty support");
    m[k] = f.qdegree();
    for (std::uint32_t j = 1; j < n; ++j)
      if (f.coeff(j).is_zero()) out.push_back(S.unit(k, j * s % n));
    for (std::uint32_t j : f.support()) {
      if (j == m[k]) continue;
      Vec v(S.u(), F.zero());
      v[S.index(k, j * s % n)] = f.coeff(m[k]);
      v[S.index(k, m[k] * s % n)] = F.neg(f.coeff(j));
      out.push_back(v);
    }
  }
  const auto& last = P.part(r - 2);
  for (std::uint32_t i = 0; i + 2 < r; ++i) {
    Vec v(S.u(), F.zero());
    v[S.index(i, m[i] * s % n)] = last.coeff(m[r - 2]);
    v[S.index(r - 2, m[r - 2] * s % n)] = F.neg(P.part(i).coeff(m[i]));
    out.push_back(v);
  }
  return out;
}

Vertex build_vertex(const Subgeometry& S, const MultiPoly& P) {
  check_poly(S, P);
  const Field& F = *S.field();
  const std::uint32_t n = S.n(), s = S.s(), r = S.r();
  const std::size_t u = S.u();
  Vertex V;
  V.equations = Matrix(r, u);
  for (std::uint32_t k = 0; k + 1 < r; ++k) V.equations(k, S.index(k, 0)) = F.one();
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    const auto& f = P.part(k);
    for (std::uint32_t i : f.support()) V.equations(r - 1, S.index(k, i * s % n)) = f.coeff(i);
  }
  if (rank(F, V.equations) != r) throw DegenerateVertex("vertex equations are dependent");
  V.gamma = ProjSubspace::from_equations(F, V.equations);

  const auto& last = P.part(r - 2);
  if (last.is_zero()) throw DegenerateVertex("last part has empty support");
  const std::uint32_t m = last.qdegree();
  V.lambda_frame = Matrix(0, u);
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    V.P.push_back(S.unit(k, 0));
    V.lambda_frame.append_row(V.P.back());
  }
  Vec top(u, F.zero());
  top[S.index(r - 2, m * s % n)] = F.inv(last.coeff(m));
  V.lambda_frame.append_row(top);
  V.lambda = ProjSubspace(F, V.lambda_frame);

  if (rank(F, stack(V.gamma.basis(), V.lambda.basis())) != u)
    throw DegenerateVertex("vertex meets Lambda");
  if (count_sigma_points_in(S, V.gamma) != 0) throw DegenerateVertex("vertex meets Sigma");
  return V;
}

Projection project(const Subgeometry& S, const ProjSubspace& gamma, const Matrix& lambda_frame,
                   Exec exec) {
  const Field& F = *S.field();
  const std::size_t u = S.u();
  const std::size_t r = lambda_frame.rows();
  if (gamma.ambient() != u || lambda_frame.cols() != u)
    throw PreconditionViolated("projection subspaces live in the wrong ambient space");
  if (static_cast<std::size_t>(gamma.dim() + 1) + r != u)
    throw PreconditionViolated("vertex and Lambda have complementary dimensions only if dim sum is u-2");
  const auto Binv = inverse(F, stack(gamma.basis(), lambda_frame));
  if (!Binv) throw PreconditionViolated("vertex meets Lambda");
  const std::size_t g = gamma.basis().rows();
  const std::uint64_t count = S.point_count();
  if (count > 100'000'000ull) throw EnumerationTooLarge("Sigma has more than 1e8 points");

  auto coords = [&](const Vec& v, Elem* out) {
    for (std::size_t c = 0; c < r; ++c) out[c] = F.zero();
    for (std::size_t k = 0; k < u; ++k) {
      if (v[k].is_zero()) continue;
      for (std::size_t c = 0; c < r; ++c) out[c] = F.add(out[c], F.mul(v[k], (*Binv)(k, g + c)));
    }
  };
  std::atomic<bool> hit_gamma{false};
  Projection out{Tally{}, FqSubspace(S.field(), r)};
  out.image = tally_points(
      count, r,
      [&](std::uint64_t i, Elem* dst) {
        Vec x(S.r() - 1);
        fq_proj_rep(F, S.r() - 1, i, x.data());
        coords(S.point(x), dst);
        bool zero = true;
        for (std::size_t c = 0; c < r; ++c) zero = zero && dst[c].is_zero();
        if (zero) {
          hit_gamma = true;
          dst[0] = F.one();
          return;
        }
        normalize_in_place(F, dst, r);
      },
      exec);
  if (hit_gamma) throw PreconditionViolated("vertex meets Sigma");

  std::vector<Vec> gens;
  Elem xp = F.one();
  for (std::uint32_t i = 0; i < S.n(); ++i) {
    for (std::uint32_t j = 0; j + 1 < S.r(); ++j) {
      Vec x(S.r() - 1, F.zero());
      x[j] = xp;
      Vec img(r);
      coords(S.point(x), img.data());
      gens.push_back(img);
    }
    xp = F.mul(xp, F.x());
  }
  out.U = FqSubspace(S.field(), r, gens);
  return out;
}

std::vector<int> intersection_dims(const Subgeometry& S, const ProjSubspace& gamma, int upto) {
  const Field& F = *S.field();
  std::vector<int> dims{gamma.dim()};
  ProjSubspace cur = gamma;
  for (int i = 1; i <= upto; ++i) {
    cur = meet(F, cur, S.sigma(gamma, i));
    dims.push_back(cur.dim());
  }
  return dims;
}

int intersection_number(const Subgeometry& S, const ProjSubspace& gamma) {
  const Field& F = *S.field();
  const int k = gamma.dim();
  if (k < 0) throw PreconditionViolated("intersection number of the empty subspace");
  ProjSubspace cur = gamma;
  for (int g = 1;; ++g) {
    cur = meet(F, cur, S.sigma(gamma, g));
    if (cur.dim() > k - 2 * g) return g;
  }
}

Reconstruction reconstruct_polynomial(const Subgeometry& S, const ProjSubspace& gamma,
                                      const std::vector<Vec>& P,
                                      const std::vector<std::vector<std::uint32_t>>& I,
                                      ReconstructOptions opt) {
  const Field& F = *S.field();
  const std::uint32_t n = S.n(), s = S.s(), r = S.r();
  const std::size_t u = S.u();
  if (P.size() != r - 1 || I.size() != r - 1)
    throw DimensionMismatch("expected r-1 points and r-1 supports");
  if (gamma.ambient() != u) throw DimensionMismatch("vertex in the wrong ambient space");
  if (gamma.dim() != static_cast<int>(u) - static_cast<int>(r) - 1)
    throw ShapeMismatch("vertex has dimension " + std::to_string(gamma.dim()) + ", expected " +
                        std::to_string(int(u) - int(r) - 1));
  std::vector<std::uint32_t> m(r - 1);
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    if (I[k].empty()) throw ShapeMismatch("empty support");
    for (auto i : I[k])
      if (i == 0 || i >= n) throw ShapeMismatch("support index outside 1..n-1");
    m[k] = *std::max_element(I[k].begin(), I[k].end());
  }
  for (const Vec& v : P)
    if (!is_imaginary(S, v)) throw ShapeMismatch("P is not an imaginary point");

  // Frame rows: e_{k, j s} -> sigma^j(P_k).
  Matrix B(u, u);
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    Vec cur = P[k];
    for (std::uint32_t j = 0; j < n; ++j) {
      B.set_row(S.index(k, j * s % n), cur);
      cur = S.sigma(cur);
    }
  }
  const auto Binv = inverse(F, B);
  if (!Binv) throw ShapeMismatch("the sigma-orbits of the points P_k do not span the space");

  auto Pk = [&](std::uint32_t k, std::uint32_t j) { return B.row(S.index(k, j * s % n)); };
  auto line_meet = [&](const Vec& a, const Vec& b) {
    const Matrix M = subspace_meet(F, Matrix::from_rows({a, b}, u), gamma.basis());
    if (M.rows() != 1) throw ShapeMismatch("a prescribed line does not meet the vertex in a point");
    return M.row(0);
  };
  Matrix span(0, u);
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    for (std::uint32_t j = 1; j < n; ++j) {
      if (std::find(I[k].begin(), I[k].end(), j) != I[k].end()) continue;
      if (!gamma.contains(F, Pk(k, j)))
        throw ShapeMismatch("P_" + std::to_string(k) + "^{sigma^" + std::to_string(j) + "} not in the vertex");
      span.append_row(Pk(k, j));
    }
    for (auto j : I[k])
      if (j != m[k]) span.append_row(line_meet(Pk(k, j), Pk(k, m[k])));
  }
  for (std::uint32_t i = 0; i + 2 < r; ++i) span.append_row(line_meet(Pk(i, m[i]), Pk(r - 2, m[r - 2])));
  if (rank(F, span) != gamma.basis().rows())
    throw ShapeMismatch("the prescribed points do not span the vertex");

  // Vertex in standard coordinates and its equations.
  const ProjSubspace g_std(F, multiply(F, gamma.basis(), *Binv));
  Matrix eqs = g_std.equations(F);
  // Must contain x_{k,0}; remove those coordinates and keep one functional.
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    Vec e(u, F.zero());
    e[S.index(k, 0)] = F.one();
    if (!in_row_space(F, eqs, e)) throw ShapeMismatch("x_{k,0} = 0 is not an equation of the vertex");
  }
  Matrix rest(0, u);
  for (std::size_t i = 0; i < eqs.rows(); ++i) {
    Vec row = eqs.row(i);
    for (std::uint32_t k = 0; k + 1 < r; ++k) row[S.index(k, 0)] = F.zero();
    rest.append_row(row);
  }
  rest = row_space(F, rest);
  if (rest.rows() != 1) throw ShapeMismatch("vertex does not have a single support equation");
  Vec phi = rest.row(0);
  const Elem scale = phi[S.index(r - 2, m[r - 2] * s % n)];
  if (scale.is_zero()) throw ShapeMismatch("q^s-degree coefficient vanishes");
  phi = vec_scale(F, F.inv(scale), phi);

  std::vector<LinearizedPoly> parts;
  for (std::uint32_t k = 0; k + 1 < r; ++k) {
    Vec a(n, F.zero());
    for (std::uint32_t i = 1; i < n; ++i) a[i] = phi[S.index(k, i * s % n)];
    LinearizedPoly f(n, s, a);
    if (f.support() != [&] {
          auto J = I[k];
          std::sort(J.begin(), J.end());
          return J;
        }())
      throw ShapeMismatch("recovered support differs from the prescribed one");
    parts.push_back(f);
  }
  Reconstruction out{MultiPoly(parts), B, Matrix(0, u)};
  const Vertex std_v = build_vertex(S, out.F);
  out.lambda_frame = multiply(F, std_v.lambda_frame, B);

  if (opt.check_evasive) {
    const LinearSet L = project(S, gamma, out.lambda_frame).as_linear_set();
    const std::uint32_t kk = n * (r - 1) - 2;
    bool ev;
    if (r == 2) ev = L.max_weight() <= kk;
    else ev = is_evasive(L, r - 1, kk, opt.guard);
    if (!ev) throw NotEvasive("projected set is not (r-1, n(r-1)-2)_q-evasive");
  }
  return out;
}

bool permutation_criterion(const Subgeometry& S, const ProjSubspace& gamma, const Vec& P) {
  const Field& F = *S.field();
  Matrix m = gamma.basis();
  m.append_row(P);
  return count_sigma_points_in(S, ProjSubspace(F, m)) == 0;
}

}  // namespace fqlin
