#include "fqlin/families.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace fqlin {

std::string to_string(const Field& F, const ExtendedScalar& x) {
  return x.infinite ? "inf" : F.to_string(x.value);
}

bool collinear(const Field& F, const std::vector<Vec>& pts) {
  if (pts.empty()) return true;
  return rank(F, Matrix::from_rows(pts, pts.front().size())) <= 2;
}

namespace {

bool same_point(const Field& F, const Vec& a, const Vec& b) {
  return rank(F, Matrix::from_rows({a, b}, a.size())) < 2;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x.is_zero(); });
}

Elem det2(const Field& F, Elem a0, Elem a1, Elem b0, Elem b1) {
  return F.sub(F.mul(a0, b1), F.mul(a1, b0));
}

}  // namespace

ExtendedScalar cross_ratio(const Field& F, const Vec& A, const Vec& B, const Vec& C, const Vec& D) {
  const std::size_t w = A.size();
  if (B.size() != w || C.size() != w || D.size() != w) throw DimensionMismatch("cross-ratio points differ in length");
  for (const Vec* v : {&A, &B, &C, &D})
    if (is_zero_vec(*v)) throw DomainError("zero vector is not a point");
  if (!collinear(F, {A, B, C, D})) throw NotCollinear("the four points span more than a line");
  if (same_point(F, A, B) || same_point(F, A, C) || same_point(F, B, C))
    throw DegenerateTriple("A, B, C must be pairwise distinct");
  // A and B are independent, so they are the frame.
  const Matrix M = transpose(Matrix::from_rows({A, B}, w));
  auto coords = [&](const Vec& X) {
    auto c = solve(F, M, X);
    if (!c) throw NotCollinear("point off the line");
    return *c;
  };
  const Vec a{F.one(), F.zero()}, b{F.zero(), F.one()}, c = coords(C), d = coords(D);
  const Elem num = F.mul(det2(F, a[0], a[1], c[0], c[1]), det2(F, b[0], b[1], d[0], d[1]));
  const Elem den = F.mul(det2(F, a[0], a[1], d[0], d[1]), det2(F, b[0], b[1], c[0], c[1]));
  if (den.is_zero()) return ExtendedScalar::inf();
  return ExtendedScalar::of(F.div(num, den));
}

bool is_harmonic(const Field& F, const Vec& A, const Vec& B, const Vec& C, const Vec& D) {
  if (F.p() == 2) throw CharacteristicTwo("harmonic separation needs odd characteristic");
  const ExtendedScalar k = cross_ratio(F, A, B, C, D);
  return !k.infinite && k.value == F.neg(F.one());
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    default: return "unknown";
  }
}

const char* to_string(Family f) {
  switch (f) {
    case Family::PR: return "PR";
    case Family::LP: return "LP";
    case Family::CMPZ: return "CMPZ";
    case Family::CMZ: return "CMZ";
    default: return "PSI";
  }
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::PR, Family::LP, Family::CMPZ, Family::CMZ, Family::PSI})
    if (s == to_string(f)) return f;
  throw ParameterViolation("unknown family tag '" + s + "'");
}

// ---------------------------------------------------------------- families

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterViolation(what);
}

// h^{1 - q^k}
Elem hpow(const Field& F, Elem h, std::uint64_t k) { return F.div(h, F.frobenius(h, static_cast<std::int64_t>(k))); }

}  // namespace

FamilyInstance make_pr(const Field& F, std::uint32_t s) {
  const std::uint32_t n = F.n();
  require(n >= 2, "n >= 2");
  require(gcd_u(s, n) == 1, "gcd(s, n) = 1");
  FamilyParams p;
  p.s = s;
  return {Family::PR, p, LinearizedPoly::monomial(F, s, 1, F.one())};
}

FamilyInstance make_lp(const Field& F, std::uint32_t s, Elem eta, Validation v) {
  const std::uint32_t n = F.n();
  require(n >= 3, "n >= 3");
  require(gcd_u(s, n) == 1, "gcd(s, n) = 1");
  if (v == Validation::Strict) {
    const Elem N = F.norm(eta, 1);
    require(!N.is_zero() && N != F.one(), "N_{q^n/q}(eta) not in {0, 1}");
  }
  Vec a(n, F.zero());
  a[1] = eta;
  a[n - 1] = F.add(a[n - 1], F.one());
  FamilyParams p;
  p.s = s;
  p.eta = eta;
  return {Family::LP, p, LinearizedPoly(n, s, a)};
}

FamilyInstance make_cmpz(const Field& F, std::uint32_t ell, Elem eta, Validation v) {
  const std::uint32_t n = F.n();
  require(n == 6 || n == 8, "n in {6, 8}");
  require(ell >= 1 && ell < n, "1 <= ell < n");
  require(gcd_u(ell, n / 2) == 1, "gcd(ell, n/2) = 1");
  if (v == Validation::Strict) {
    const Elem N = F.norm(eta, n / 2);
    require(!N.is_zero() && N != F.one(), "N_{q^n/q^{n/2}}(eta) not in {0, 1}");
  }
  Vec a(n, F.zero());
  a[ell] = eta;
  a[(ell + n / 2) % n] = F.one();
  FamilyParams p;
  p.ell = ell;
  p.eta = eta;
  return {Family::CMPZ, p, LinearizedPoly(n, 1, a)};
}

std::vector<Elem> cmz_deltas(const Field& F) {
  return F.solve_monic_quadratic_in_subfield(F.one(), F.neg(F.one()), F.n()).roots;
}

FamilyInstance make_cmz(const Field& F, Elem delta, Validation v) {
  require(F.n() == 6, "n = 6");
  if (v == Validation::Strict) require(F.p() != 2, "q odd");
  if (delta.is_zero()) {
    const auto roots = cmz_deltas(F);
    require(!roots.empty(), "delta^2 + delta = 1 solvable");
    delta = roots.front();
  }
  require(F.add(F.mul(delta, delta), delta) == F.one(), "delta^2 + delta = 1");
  Vec a(6, F.zero());
  a[1] = F.one();
  a[3] = F.one();
  a[5] = delta;
  FamilyParams p;
  p.delta = delta;
  return {Family::CMZ, p, LinearizedPoly(6, 1, a)};
}

FamilyInstance make_psi(const Field& F, std::uint32_t t, std::uint32_t s, Elem m, Elem h, Validation v) {
  const std::uint32_t n = F.n();
  require(t >= 3, "t >= 3");
  require(n == 2 * t, "n = 2t");
  require(gcd_u(s, n) == 1, "gcd(s, 2t) = 1");
  require(!h.is_zero(), "h nonzero");
  if (v == Validation::Strict) {
    require(F.p() != 2, "q odd");
    const Elem N = F.norm(h, t);
    require(N == F.neg(F.one()) || h == F.one(), "N_{q^{2t}/q^t}(h) = -1 (or h = 1)");
    if (t % 2 == 1 && N == F.neg(F.one()) && F.in_subfield(h, t))
      require(F.q() % 4 == 1, "q = 1 (mod 4) when t is odd and h lies in F_{q^t}");
  }
  Vec a(n, F.zero());
  a[t - 1] = F.one();
  a[2 * t - 1] = hpow(F, h, std::uint64_t(s) * (2 * t - 1));
  a[1] = m;
  a[t + 1] = F.neg(F.mul(m, hpow(F, h, std::uint64_t(s) * (t + 1))));
  FamilyParams p;
  p.t = t;
  p.s = s;
  p.m = m;
  p.h = h;
  return {Family::PSI, p, LinearizedPoly(n, s, a)};
}

FamilyInstance make_family(const Field& F, Family tag, const FamilyParams& p, Validation v) {
  switch (tag) {
    case Family::PR: return make_pr(F, p.s);
    case Family::LP: return make_lp(F, p.s, p.eta, v);
    case Family::CMPZ: return make_cmpz(F, p.ell, p.eta, v);
    case Family::CMZ: return make_cmz(F, p.delta, v);
    default: return make_psi(F, p.t, p.s, p.m, p.h, v);
  }
}

std::vector<Elem> norm_minus_one(const Field& F) {
  if (F.n() % 2) throw DomainError("n must be even");
  if (F.order() > (1u << 24)) throw EnumerationTooLarge("norm fibre scan over " + std::to_string(F.order()) + " elements");
  const Elem m1 = F.neg(F.one());
  std::vector<Elem> out;
  for (std::uint64_t c = 1; c < F.order(); ++c)
    if (F.norm(Elem(static_cast<std::uint32_t>(c)), F.n() / 2) == m1) out.push_back(Elem(static_cast<std::uint32_t>(c)));
  return out;
}

namespace {

// Powers w^{q-1} and w^{q+1} for w in ker Tr_{q^{2t}/q^t}.
std::set<Elem> ker_tr_powers(const Field& F) {
  const std::uint32_t t = F.n() / 2;
  if (F.order() > (1u << 24)) throw EnumerationTooLarge("ker Tr scan over " + std::to_string(F.order()) + " elements");
  Elem omega;
  for (std::uint64_t c = 1; c < F.order(); ++c) {
    const Elem w(static_cast<std::uint32_t>(c));
    if (F.trace(w, t).is_zero()) {
      omega = w;
      break;
    }
  }
  std::set<Elem> out;
  const std::int64_t q = static_cast<std::int64_t>(F.q());
  for (Elem c : F.subfield_elements(t)) {
    const Elem w = F.mul(omega, c);
    out.insert(F.pow(w, q - 1));
    out.insert(F.pow(w, q + 1));
  }
  return out;
}

}  // namespace

bool in_W(const Field& F, Elem z) {
  if (F.n() % 2) throw DomainError("n must be even");
  if (!F.in_subfield(z, F.n() / 2)) return false;
  return !ker_tr_powers(F).count(z);
}

int cmpz6_root_count(const Field& F, Elem g, bool distinct) {
  if (F.n() != 6) throw DomainError("n must be 6");
  if (!F.in_subfield(g, 3)) throw DomainError("gamma must lie in F_{q^3}");
  const Elem g1 = F.frobenius(g, 1), g2 = F.frobenius(g, 2);
  const Elem tr = F.add(F.add(g, g1), g2);
  const Elem nm = F.mul(F.mul(g, g1), g2);
  // Y^2 - (tr - 1) Y + nm
  const QuadRoots r = F.solve_monic_quadratic_in_subfield(F.neg(F.sub(tr, F.one())), nm, 1);
  if (distinct) return static_cast<int>(r.roots.size());
  return r.double_root ? 2 : static_cast<int>(r.roots.size());
}

Elem cmpz6_gamma(const Field& F, std::uint32_t ell, Elem eta) {
  if (F.n() != 6) throw DomainError("n must be 6");
  if (eta.is_zero()) throw DomainError("eta must be nonzero");
  Elem e2;
  switch (ell) {
    case 1: e2 = F.inv(F.frobenius(eta, 5)); break;
    case 2: e2 = eta; break;
    case 4: e2 = F.frobenius(eta, 5); break;
    case 5: e2 = F.inv(eta); break;
    default: throw DomainError("ell must be coprime to 3");
  }
  const Elem z = F.mul(F.frobenius(e2, 3), e2);
  if (z == F.one()) throw DomainError("N(eta) = 1");
  return F.neg(F.div(z, F.sub(F.one(), z)));
}

// Roots counted without multiplicity; see cmpz6_root_count.
static constexpr bool kCmpzDistinct = true;

Tri scattered_predicate(const Field& F, const FamilyInstance& inst) {
  const auto& p = inst.params;
  const Elem one = F.one(), m1 = F.neg(F.one());
  switch (inst.tag) {
    case Family::PR: return Tri::True;
    case Family::LP: {
      if (p.eta.is_zero()) return Tri::True;  // degenerates to x^{q^{n-s}}
      const Elem N = F.norm(p.eta, 1);
      return N != one ? Tri::True : Tri::False;
    }
    case Family::CMPZ: {
      if (p.eta.is_zero()) return Tri::True;
      if (F.n() == 6) {
        if (F.q() == 2) return Tri::Unknown;
        if (F.norm(p.eta, 3) == one) return Tri::Unknown;
        return cmpz6_root_count(F, cmpz6_gamma(F, p.ell, p.eta), kCmpzDistinct) == 2 ? Tri::True : Tri::False;
      }
      const std::uint64_t q = F.q();
      if (q % 2 == 0 || (q > 11 && q < 1039891)) return Tri::Unknown;
      return F.norm(p.eta, 4) == m1 ? Tri::True : Tri::False;
    }
    case Family::CMZ: return F.p() != 2 ? Tri::True : Tri::Unknown;
    case Family::PSI: {
      const std::uint32_t t = p.t;
      if (F.p() == 2 || t < 3) return Tri::Unknown;
      const bool norm_ok = F.norm(p.h, t) == m1;
      if (p.m == one && norm_ok) return Tri::True;  // cases (i) and (ii)
      const auto& a = inst.f.coeffs();
      const bool unit_h = a[2 * t - 1] == one && a[t + 1] == F.neg(p.m);
      if (unit_h && !p.m.is_zero() && in_W(F, p.m)) {
        if (t % 2 == 1 && F.q() % 4 != 1) return Tri::Unknown;
        return Tri::True;
      }
      return Tri::Unknown;
    }
  }
  return Tri::Unknown;
}

// ------------------------------------------------------- characterization

const char* to_string(Characterization c) {
  switch (c) {
    case Characterization::L36: return "L36";
    case Characterization::L38: return "L38";
    case Characterization::L46: return "L46";
    case Characterization::L46Even: return "L46even";
    case Characterization::PSI1: return "PSI1";
    case Characterization::PSI1Harmonic: return "PSI1harmonic";
    default: return "PSIm";
  }
}

Characterization characterization_from_string(const std::string& s) {
  for (auto c : {Characterization::L36, Characterization::L38, Characterization::L46, Characterization::L46Even,
                 Characterization::PSI1, Characterization::PSI1Harmonic, Characterization::PSIm})
    if (s == to_string(c)) return c;
  throw ParameterViolation("unknown characterization '" + s + "'");
}

Characterization characterization_for(const Field& F, const FamilyInstance& inst) {
  switch (inst.tag) {
    case Family::CMPZ: return F.n() == 6 ? Characterization::L36 : Characterization::L38;
    case Family::CMZ: return F.p() == 2 ? Characterization::L46Even : Characterization::L46;
    case Family::PSI: return inst.params.m == F.one() ? Characterization::PSI1 : Characterization::PSIm;
    default: throw DomainError(std::string("no characterization for family ") + to_string(inst.tag));
  }
}

const std::map<std::string, std::string>& anchors() {
  static const std::map<std::string, std::string> A = {
      {"hyp.evasive", "max weight of p_{Gamma,Lambda}(Sigma) <= n-2"},
      {"pre.disjoint", "Gamma cap Sigma = Gamma cap Lambda = empty"},
      {"L36.1", "Gamma = <P^s^i, Q : i in {2,3,5}>, Q in <P^s, P^s^4>"},
      {"L36.2a", "P^s, P^s^4, Q, Q^s^3 collinear"},
      {"L36.2b", "Y^2 - (Tr_{q^3/q}(g) - 1) Y + N_{q^3/q}(g) = 0, g = (P^s; Q; Q^s^3; P^s^4)^tau: two roots in F_q"},
      {"L38.1", "Gamma = <P^s^i, Q : i in {2,3,4,6,7}>, Q in <P^s, P^s^5>"},
      {"L38.2a", "P^s, P^s^5, Q, Q^s^4 collinear"},
      {"L38.2b", "(P^s; P^s^5; Q; Q^s^4) = -1"},
      {"L46.1", "Gamma = <P^s^2, P^s^4, Q, R>, Q in <P^s, P^s^5>, R in <P^s^3, P^s^5>"},
      {"L46.2", "C = <v^s - v^s^3> in Gamma"},
      {"L46.3", "P^s, P^s^5, C^s^4, Q collinear; (P^s; P^s^5; C^s^4; Q) in F_{q^2}"},
      {"L46.3even", "P^s, P^s^5, C^s^4, Q collinear; (P^s; P^s^5; C^s^4; Q) in no proper subfield"},
      {"L46.4", "C, P^s^5, <Q, Q^s^2> cap <R, R^s^2> collinear"},
      {"PSI.1", "Gamma = <P^s^i, Q, R, S : i not in {0,1,t-1,t+1,2t-1}>"},
      {"PSI1.2", "X = <v^s - v^s^(t-1)> in Gamma"},
      {"PSI1.3a", "(P^s; P^s^(2t-1); D; Q) = -h^{1-q^{s(2t-1)}}, D = <v^s + v^s^(2t-1)>, N(h) = -1"},
      {"PSI1.3b", "(P^s; P^s^(t+1); R^s^2; Y) = h^{1+q^{2s}}, Y = <Q, S> cap <P^s, P^s^(t+1)>"},
      {"PSI1h.2", "X = <v^s - v^s^(t-1)> in Gamma"},
      {"PSI1h.3a", "(P^s; P^s^(2t-1); D; Q) = -1"},
      {"PSI1h.3b", "(P^s; P^s^(t+1); R^s^2; Y) = -1"},
      {"PSI1h.4", "t odd => q = 1 (mod 4)"},
      {"PSIm.2", "C = <v^s + v^s^(t+1)> in Gamma"},
      {"PSIm.3a", "(P^s; P^s^(2t-1); X; Q) = mu in W, X = <v^s - v^s^(2t-1)>"},
      {"PSIm.3b", "(P^s^(t-1); P^s^(2t-1); Y; R) = -1, Y = <v^s^(t-1) + v^s^(2t-1)>"},
      {"roundtrip", "p_{Gamma_F,Lambda}(Sigma) = L_F"},
      {"reconstruct", "Gamma shaped by (a), (b), (c) => L = L_F"},
      {"orbit.det", "det orbit(A) = (1-d)(2+d)^2(d^q-1)(2+d^q)^2"},
      {"imaginary", "rank <A, A^s, ..., A^s^{n-1}> = n"},
      {"intn", "intn_sigma(Gamma)"},
      {"scattered", "all weights 1"},
      {"predicate", "family scatteredness criterion"},
      {"evasive", "(h, k)_q-evasive"},
      {"adjoint", "L_f = L_fhat"},
  };
  return A;
}

namespace {

// deque: add() hands out references that must survive later adds
struct Items {
  std::deque<ConditionItem> list;
  std::vector<ConditionItem> vec() const { return {list.begin(), list.end()}; }
  ConditionItem& add(const std::string& id, Tri v) {
    ConditionItem it;
    it.id = id;
    auto a = anchors().find(id);
    it.anchor = a == anchors().end() ? id : a->second;
    it.verdict = v;
    list.push_back(std::move(it));
    return list.back();
  }
  ConditionItem& add(const std::string& id, bool v) { return add(id, v ? Tri::True : Tri::False); }
};

template <class C>
Tri conj(const C& items) {
  Tri out = Tri::True;
  for (const auto& it : items) {
    if (it.verdict == Tri::False) return Tri::False;
    if (it.verdict == Tri::Unknown) out = Tri::Unknown;
  }
  return out;
}

template <class C>
bool all_true(const C& items) { return conj(items) == Tri::True; }

std::string vec_string(const Field& F, const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << F.to_string(v[i]);
  os << ")";
  return os.str();
}

// Standard coordinates: P^{sigma^j} = e_{js}, v^{sigma^j} = lam^{q^{sj}} e_{js}.
struct Frame {
  const Field& F;
  const Subgeometry& S;
  const ProjSubspace& G;
  Elem lam;

  std::uint32_t n() const { return S.n(); }
  Vec P(std::uint32_t j) const {
    Vec x(n(), F.zero());
    x[std::size_t(j) * S.s() % n()] = F.one();
    return x;
  }
  Vec v(std::uint32_t j) const {
    Vec x(n(), F.zero());
    x[std::size_t(j) * S.s() % n()] = F.frobenius(lam, std::int64_t(j) * S.s() % n());
    return x;
  }
  Vec sig(const Vec& x, std::int64_t k) const { return S.sigma(x, k); }
  bool in_gamma(const Vec& x) const { return G.contains(F, x); }
  std::optional<Vec> meet_gamma(const Vec& a, const Vec& b) const {
    const Matrix M = subspace_meet(F, Matrix::from_rows({a, b}, n()), G.basis());
    if (M.rows() != 1) return std::nullopt;
    return M.row(0);
  }
  std::optional<Vec> meet_lines(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const {
    const Matrix M = subspace_meet(F, Matrix::from_rows({a, b}, n()), Matrix::from_rows({c, d}, n()));
    if (M.rows() != 1) return std::nullopt;
    return M.row(0);
  }
};

// Cross-ratio with the failure modes folded into an item.
std::optional<ExtendedScalar> cr_item(const Field& F, ConditionItem& it, const Vec& A, const Vec& B, const Vec& C,
                                      const Vec& D) {
  try {
    auto k = cross_ratio(F, A, B, C, D);
    it.values["cross_ratio"] = to_string(F, k);
    return k;
  } catch (const Error& e) {
    it.values["error"] = e.kind() + std::string(": ") + e.what();
    it.verdict = Tri::False;
    return std::nullopt;
  }
}

using Eval = void (*)(const Frame&, Items&);

void eval_L36(const Frame& f, Items& out) {
  const Field& F = f.F;
  const auto Q = f.meet_gamma(f.P(1), f.P(4));
  auto& a = out.add("L36.2a", false);
  auto& b = out.add("L36.2b", false);
  if (!Q) {
    a.values["error"] = "Q undefined";
    return;
  }
  const Vec Q3 = f.sig(*Q, 3);
  a.verdict = collinear(F, {f.P(1), f.P(4), *Q, Q3}) ? Tri::True : Tri::False;
  a.values["Q"] = vec_string(F, *Q);
  if (a.verdict != Tri::True) return;
  auto k = cr_item(F, b, f.P(1), *Q, Q3, f.P(4));
  if (!k) return;
  if (k->infinite) return;
  for (std::uint32_t j = 0; j < F.degree(); ++j) {
    const Elem g = F.frobenius_p(k->value, j);
    if (!F.in_subfield(g, 3)) continue;
    const int c = cmpz6_root_count(F, g, kCmpzDistinct);
    b.values["roots"] = std::to_string(c);
    if (c == 2) {
      b.verdict = Tri::True;
      b.values["tau"] = "p^" + std::to_string(j);
      return;
    }
  }
}

void eval_L38(const Frame& f, Items& out) {
  const Field& F = f.F;
  const auto Q = f.meet_gamma(f.P(1), f.P(5));
  auto& a = out.add("L38.2a", false);
  auto& b = out.add("L38.2b", false);
  if (!Q) {
    a.values["error"] = "Q undefined";
    return;
  }
  const Vec Q4 = f.sig(*Q, 4);
  a.verdict = collinear(F, {f.P(1), f.P(5), *Q, Q4}) ? Tri::True : Tri::False;
  if (a.verdict != Tri::True) return;
  if (F.p() == 2) {
    b.values["error"] = "characteristic two";
    return;
  }
  auto k = cr_item(F, b, f.P(1), f.P(5), *Q, Q4);
  if (k && !k->infinite && k->value == F.neg(F.one())) b.verdict = Tri::True;
}

void eval_L46_common(const Frame& f, Items& out, bool even) {
  const Field& F = f.F;
  const Vec C = vec_sub(F, f.v(1), f.v(3));
  out.add("L46.2", f.in_gamma(C));
  auto& c3 = out.add(even ? "L46.3even" : "L46.3", false);
  const auto Q = f.meet_gamma(f.P(1), f.P(5));
  const auto R = f.meet_gamma(f.P(3), f.P(5));
  if (!Q || !R) {
    c3.values["error"] = "Q or R undefined";
    if (!even) out.add("L46.4", false).values["error"] = "Q or R undefined";
    return;
  }
  const Vec C4 = f.sig(C, 4);
  if (collinear(F, {f.P(1), f.P(5), C4, *Q})) {
    auto k = cr_item(F, c3, f.P(1), f.P(5), C4, *Q);
    if (k && !k->infinite) {
      bool ok;
      if (!even) {
        ok = F.in_subfield(k->value, 2);
      } else {
        ok = true;
        const std::uint32_t D = F.degree();
        for (auto l : prime_factors(D))
          if (F.frobenius_p(k->value, D / l) == k->value) ok = false;
      }
      c3.verdict = ok ? Tri::True : Tri::False;
    }
  } else {
    c3.values["error"] = "not collinear";
  }
  if (even) return;
  auto& c4 = out.add("L46.4", false);
  const auto M = f.meet_lines(*Q, f.sig(*Q, 2), *R, f.sig(*R, 2));
  if (!M) {
    c4.values["error"] = "lines do not meet in a point";
    return;
  }
  c4.values["meet"] = vec_string(F, *M);
  c4.verdict = collinear(F, {C, f.P(5), *M}) ? Tri::True : Tri::False;
}

void eval_L46(const Frame& f, Items& out) { eval_L46_common(f, out, false); }
void eval_L46even(const Frame& f, Items& out) { eval_L46_common(f, out, true); }

struct PsiPts {
  std::optional<Vec> Q, R, S;
};

PsiPts psi_points(const Frame& f) {
  const std::uint32_t t = f.n() / 2;
  return {f.meet_gamma(f.P(1), f.P(2 * t - 1)), f.meet_gamma(f.P(t - 1), f.P(2 * t - 1)),
          f.meet_gamma(f.P(t + 1), f.P(2 * t - 1))};
}

void eval_PSI1_common(const Frame& f, Items& out, bool harmonic) {
  const Field& F = f.F;
  const std::uint32_t t = f.n() / 2, s = f.S.s();
  out.add(harmonic ? "PSI1h.2" : "PSI1.2", f.in_gamma(vec_sub(F, f.v(1), f.v(t - 1))));
  auto& a = out.add(harmonic ? "PSI1h.3a" : "PSI1.3a", false);
  auto& b = out.add(harmonic ? "PSI1h.3b" : "PSI1.3b", false);
  const auto pts = psi_points(f);
  if (!pts.Q || !pts.R || !pts.S) {
    a.values["error"] = b.values["error"] = "Q, R or S undefined";
    return;
  }
  std::optional<ExtendedScalar> ka, kb;
  const Vec D = vec_add(F, f.v(1), f.v(2 * t - 1));
  if (collinear(F, {f.P(1), f.P(2 * t - 1), D, *pts.Q})) ka = cr_item(F, a, f.P(1), f.P(2 * t - 1), D, *pts.Q);
  else a.values["error"] = "not collinear";
  const auto Y = f.meet_lines(*pts.Q, *pts.S, f.P(1), f.P(t + 1));
  const Vec R2 = f.sig(*pts.R, 2);
  if (!Y) b.values["error"] = "Y undefined";
  else if (collinear(F, {f.P(1), f.P(t + 1), R2, *Y})) kb = cr_item(F, b, f.P(1), f.P(t + 1), R2, *Y);
  else b.values["error"] = "not collinear";
  if (!ka || !kb || ka->infinite || kb->infinite) return;
  const Elem m1 = F.neg(F.one());
  if (harmonic) {
    a.verdict = ka->value == m1 ? Tri::True : Tri::False;
    b.verdict = kb->value == m1 ? Tri::True : Tri::False;
    return;
  }
  // One h must serve both items.
  for (Elem h : norm_minus_one(F)) {
    const Elem va = F.neg(hpow(F, h, std::uint64_t(s) * (2 * t - 1)));
    if (va != ka->value) continue;
    const Elem vb = F.mul(h, F.frobenius(h, 2 * s));
    if (vb != kb->value) continue;
    a.verdict = b.verdict = Tri::True;
    a.values["h"] = b.values["h"] = F.to_string(h);
    return;
  }
}

void eval_PSI1(const Frame& f, Items& out) { eval_PSI1_common(f, out, false); }
void eval_PSI1h(const Frame& f, Items& out) {
  eval_PSI1_common(f, out, true);
  const std::uint32_t t = f.n() / 2;
  out.add("PSI1h.4", t % 2 == 0 || f.F.q() % 4 == 1);
}

void eval_PSIm(const Frame& f, Items& out) {
  const Field& F = f.F;
  const std::uint32_t t = f.n() / 2;
  out.add("PSIm.2", f.in_gamma(vec_add(F, f.v(1), f.v(t + 1))));
  auto& a = out.add("PSIm.3a", false);
  auto& b = out.add("PSIm.3b", false);
  const auto pts = psi_points(f);
  if (!pts.Q || !pts.R) {
    a.values["error"] = b.values["error"] = "Q or R undefined";
    return;
  }
  const Vec X = vec_sub(F, f.v(1), f.v(2 * t - 1));
  if (collinear(F, {f.P(1), f.P(2 * t - 1), X, *pts.Q})) {
    auto k = cr_item(F, a, f.P(1), f.P(2 * t - 1), X, *pts.Q);
    if (k && !k->infinite && in_W(F, k->value)) a.verdict = Tri::True;
  } else {
    a.values["error"] = "not collinear";
  }
  const Vec Y = vec_add(F, f.v(t - 1), f.v(2 * t - 1));
  if (collinear(F, {f.P(t - 1), f.P(2 * t - 1), Y, *pts.R})) {
    auto k = cr_item(F, b, f.P(t - 1), f.P(2 * t - 1), Y, *pts.R);
    if (k && !k->infinite && k->value == F.neg(F.one())) b.verdict = Tri::True;
  } else {
    b.values["error"] = "not collinear";
  }
}

struct Spec {
  std::uint32_t n = 0;  // 0: any even n >= 6
  std::vector<std::uint32_t> I;
  std::string shape_id;
  Eval eval;
  bool uses_v;
};

Spec spec_for(Characterization which, std::uint32_t n) {
  const std::uint32_t t = n / 2;
  switch (which) {
    case Characterization::L36: return {6, {1, 4}, "L36.1", eval_L36, false};
    case Characterization::L38: return {8, {1, 5}, "L38.1", eval_L38, false};
    case Characterization::L46: return {6, {1, 3, 5}, "L46.1", eval_L46, true};
    case Characterization::L46Even: return {6, {1, 3, 5}, "L46.1", eval_L46even, true};
    case Characterization::PSI1: return {0, {1, t - 1, t + 1, 2 * t - 1}, "PSI.1", eval_PSI1, true};
    case Characterization::PSI1Harmonic: return {0, {1, t - 1, t + 1, 2 * t - 1}, "PSI.1", eval_PSI1h, true};
    default: return {0, {1, t - 1, t + 1, 2 * t - 1}, "PSI.1", eval_PSIm, true};
  }
}

}  // namespace

ConditionReport check_characterization(Characterization which, const FieldPtr& Fp, const CharacterizationInput& in) {
  const Field& F = *Fp;
  const std::uint32_t n = F.n();
  const Spec sp = spec_for(which, n);
  if (sp.n ? n != sp.n : (n % 2 || n < 6))
    throw PreconditionViolated(std::string("field degree n = ") + std::to_string(n) + " does not fit " + to_string(which));
  if (in.gamma.ambient() != n || in.lambda_frame.cols() != n || in.lambda_frame.rows() != 2)
    throw PreconditionViolated("vertex and line must live in PG(n-1, q^n)");
  const Subgeometry S1(Fp, 2, 1);
  if (rank(F, stack(in.gamma.basis(), in.lambda_frame)) != in.gamma.basis().rows() + 2)
    throw PreconditionViolated("the vertex meets the line");
  if (count_sigma_points_in(S1, in.gamma) != 0) throw PreconditionViolated("the vertex meets the subgeometry");

  ConditionReport rep;
  rep.which = which;
  Items head;
  {
    const LinearSet L = project(S1, in.gamma, in.lambda_frame).as_linear_set();
    auto& it = head.add("hyp.evasive", L.max_weight() + 2 <= n);
    it.values["max_weight"] = std::to_string(L.max_weight());
  }
  Vec P(n, F.zero());
  P[0] = F.one();
  if (in.P) P = *in.P;

  std::vector<std::uint32_t> ss;
  if (in.s) ss.push_back(*in.s);
  else
    for (std::uint32_t s = 1; s < n; ++s)
      if (gcd_u(s, n) == 1) ss.push_back(s);

  std::optional<std::vector<ConditionItem>> first;
  for (std::uint32_t s : ss) {
    const Subgeometry S(Fp, 2, s);
    std::optional<Reconstruction> rec;
    try {
      rec = reconstruct_polynomial(S, in.gamma, {P}, {sp.I}, {false, 0});
    } catch (const ShapeMismatch&) {
      continue;
    }
    const auto Binv = inverse(F, rec->frame);
    const ProjSubspace G(F, multiply(F, in.gamma.basis(), *Binv));
    const std::uint64_t nlam = sp.uses_v ? fq_proj_count(F, 1) : 1;
    const std::uint64_t limit = std::min<std::uint64_t>(nlam, 2'000'000);
    for (std::uint64_t i = 0; i < limit; ++i) {
      Elem lam = F.one();
      if (i) fq_proj_rep(F, 1, i, &lam);
      const Frame fr{F, S, G, lam};
      Items items = head;
      auto& sh = items.add(sp.shape_id, true);
      sh.values["s"] = std::to_string(s);
      sh.values["polynomial"] = to_string(F, rec->F.part(0));
      sp.eval(fr, items);
      if (!first) {
        first = items.vec();
        rep.s = s;
        rep.v_scale = lam;
      }
      if (all_true(items.list)) {
        rep.items = items.vec();
        rep.s = s;
        rep.v_scale = lam;
        goto done;
      }
    }
  }
  if (first) {
    rep.items = *first;
  } else {
    Items items = head;
    items.add(sp.shape_id, false).values["error"] = "no generator gives the prescribed shape";
    rep.items = items.vec();
  }
done:
  rep.overall = conj(rep.items);
  const std::uint64_t q = F.q();
  if (which == Characterization::L38 && (q % 2 == 0 || (q > 11 && q < 1039891))) rep.overall = Tri::Unknown;
  if (which == Characterization::L46Even && rep.overall == Tri::True) rep.overall = Tri::Unknown;
  if ((which == Characterization::L36 && q == 2) || (which != Characterization::L46Even && which != Characterization::L38 &&
                                                     which != Characterization::L36 && F.p() == 2))
    rep.overall = Tri::Unknown;
  return rep;
}

}  // namespace fqlin
