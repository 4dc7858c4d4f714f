#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fqlin/gf.hpp"
#include "fqlin/linpoly.hpp"
#include "fqlin/matrix.hpp"
#include "fqlin/tally.hpp"

namespace fqlin {

using ProjPoint = Vec;  // always normalised

struct WeightedPoint {
  ProjPoint point;
  std::uint32_t weight = 0;
  friend bool operator==(const WeightedPoint&, const WeightedPoint&) = default;
};

class LinearSet {
 public:
  // Enumerates U up to F_q-scalars and tallies the points.
  explicit LinearSet(FqSubspace U, Exec exec = Exec::Parallel);
  // Points already tallied by the caller; the invariants are still checked.
  LinearSet(FqSubspace U, Tally tally);

  const FieldPtr& field() const { return U_.field(); }
  std::uint32_t r() const { return static_cast<std::uint32_t>(U_.ambient_r()); }
  std::size_t rank() const { return U_.dim(); }
  const FqSubspace& subspace() const { return U_; }
  const std::vector<WeightedPoint>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  std::map<std::uint32_t, std::uint64_t> weight_spectrum() const;
  std::uint32_t max_weight() const;
  // Weight by table lookup; 0 when the point is not in the set.
  std::uint32_t weight_of(const ProjPoint& normalized) const;

 private:
  void check_invariants() const;
  FqSubspace U_;
  std::vector<WeightedPoint> pts_;
};

// Weight from the number c of F_q-classes of vectors on a point.
std::uint32_t weight_from_count(std::uint64_t q, std::uint64_t c);
// How many linear sets have passed the weight-sum and rank-bound checks.
std::uint64_t linear_sets_checked();

FqSubspace subspace_of(const FieldPtr& F, const MultiPoly& P);
FqSubspace subspace_of(const FieldPtr& F, const LinearizedPoly& f);
LinearSet from_polynomial(const FieldPtr& F, const MultiPoly& P, Exec exec = Exec::Parallel);
// r = 2 with no restriction on the support.
LinearSet from_polynomial(const FieldPtr& F, const LinearizedPoly& f, Exec exec = Exec::Parallel);

std::size_t point_weight(const LinearSet& L, const ProjPoint& P);
bool is_scattered(const LinearSet& L);
bool is_maximum_scattered(const LinearSet& L);
bool same_point_set(const LinearSet& a, const LinearSet& b);

// Number of h-dimensional subspaces of F_{q^n}^r, saturating at UINT64_MAX.
std::uint64_t count_subspaces(std::uint64_t Q, std::uint32_t r, std::uint32_t h);
bool is_evasive(const LinearSet& L, std::uint32_t h, std::uint32_t k,
                std::uint64_t guard = 10'000'000);

std::optional<Elem> scalar_equivalent(const FqSubspace& U, const FqSubspace& W);

// x -> M x^{p^k}, vectors as columns.
struct Collineation {
  Matrix M;
  std::uint32_t aut_exp = 0;
  friend bool operator==(const Collineation&, const Collineation&) = default;
};

Collineation identity_collineation(const Field& F, std::size_t dim);
Vec apply(const Field& F, const Collineation& phi, const Vec& v);
// Applies phi to every row (each row a vector of the space).
Matrix apply_rows(const Field& F, const Collineation& phi, const Matrix& rows);
Collineation compose(const Field& F, const Collineation& a, const Collineation& b);
Collineation inverse(const Field& F, const Collineation& phi);
// Image of a linear set; exact, via the image of U.
LinearSet apply(const Collineation& phi, const LinearSet& L, Exec exec = Exec::Parallel);

std::optional<Collineation> projective_equivalent(const LinearSet& L1, const LinearSet& L2,
                                                  Exec exec = Exec::Parallel,
                                                  std::uint64_t guard = 200'000'000);

struct ClassWitness {
  int which = 0;  // 2: W = lambda U_f, 3: W = lambda U_fhat, 0: neither
  Elem lambda;
};

struct ClassReport {
  bool universal = false;
  std::size_t case2 = 0, case3 = 0, other = 0;
  bool fhat_scalar_of_f = false;  // U_fhat = lambda U_f for some lambda
  std::optional<Elem> fhat_lambda;
  std::vector<ClassWitness> sample;  // first few witnesses
};

ClassReport gammaL_class_le2_witnesses(const FieldPtr& F, const LinearizedPoly& f,
                                       bool universal = false);

}  // namespace fqlin
