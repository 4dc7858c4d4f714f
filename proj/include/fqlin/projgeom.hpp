#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fqlin/linpoly.hpp"
#include "fqlin/linset.hpp"
#include "fqlin/matrix.hpp"

namespace fqlin {

// Row space in PG(u-1, q^n), kept as its RREF. dim() is projective: -1 for
// the empty subspace.
class ProjSubspace {
 public:
  ProjSubspace() = default;
  ProjSubspace(const Field& F, const Matrix& rows);
  static ProjSubspace from_equations(const Field& F, const Matrix& eqs);

  const Matrix& basis() const { return B_; }
  std::size_t ambient() const { return B_.cols(); }
  int dim() const { return static_cast<int>(B_.rows()) - 1; }
  Matrix equations(const Field& F) const { return kernel(F, B_); }
  bool contains(const Field& F, const Vec& v) const { return in_row_space(F, B_, v); }

  friend bool operator==(const ProjSubspace&, const ProjSubspace&) = default;

 private:
  Matrix B_;
};

ProjSubspace meet(const Field& F, const ProjSubspace& a, const ProjSubspace& b);
ProjSubspace join(const Field& F, const ProjSubspace& a, const ProjSubspace& b);

// The canonical subgeometry of PG(n(r-1)-1, q^n). Coordinate x_{j,k}
// (j < r-1, k < n) sits at flat index k(r-1)+j. sigma() is the s-th power
// of the basic collineation that shifts blocks by one and raises to q.
class Subgeometry {
 public:
  Subgeometry(FieldPtr F, std::uint32_t r, std::uint32_t s = 1);

  const FieldPtr& field() const { return F_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t n() const { return F_->n(); }
  std::size_t u() const { return std::size_t(n()) * (r_ - 1); }
  std::size_t index(std::uint32_t j, std::uint32_t k) const { return std::size_t(k % n()) * (r_ - 1) + j; }
  Subgeometry with_s(std::uint32_t s) const { return Subgeometry(F_, r_, s); }

  std::uint64_t point_count() const;
  // The vector (x_j^{q^k}) for x in F_{q^n}^{r-1}.
  Vec point(const Vec& x) const;
  // The i-th point of Sigma (normalised), i < point_count().
  Vec point_at(std::uint64_t i) const;

  Vec bold_sigma(const Vec& v, std::int64_t k = 1) const;
  Vec sigma(const Vec& v, std::int64_t k = 1) const;
  ProjSubspace sigma(const ProjSubspace& S, std::int64_t k = 1) const;
  Collineation sigma_collineation() const;

  // Unit vector e_{j,k}.
  Vec unit(std::uint32_t j, std::uint32_t k) const;

 private:
  FieldPtr F_;
  std::uint32_t r_, s_;
};

ProjSubspace sigma_apply(const Subgeometry& S, const ProjSubspace& X, std::int64_t k);
Vec sigma_apply(const Subgeometry& S, const Vec& P, std::int64_t k);

// Rank of the stack P, P^sigma, ..., P^{sigma^{n-1}}.
std::size_t moore_rank(const Subgeometry& S, const Vec& P);
bool is_imaginary(const Subgeometry& S, const Vec& P);
Matrix sigma_orbit_matrix(const Subgeometry& S, const Vec& P);

// Number of points of Sigma lying in X (scan).
std::uint64_t count_sigma_points_in(const Subgeometry& S, const ProjSubspace& X,
                                    Exec exec = Exec::Parallel);

struct Vertex {
  ProjSubspace gamma;
  ProjSubspace lambda;
  Matrix lambda_frame;      // r rows: P_0..P_{r-2}, then P_{r-2}^{sigma^m} / a_{r-2,m}
  std::vector<Vec> P;       // P_0..P_{r-2}
  Matrix equations;         // r rows cutting out gamma
};

Vertex build_vertex(const Subgeometry& S, const MultiPoly& F);
// Spanning points of gamma from the explicit construction, in order.
std::vector<Vec> vertex_spanning_points(const Subgeometry& S, const MultiPoly& F);

struct Projection {
  Tally image;           // points of Lambda in frame coordinates, with multiplicities
  FqSubspace U;          // image of the F_q-rational vectors of Sigma
  LinearSet as_linear_set() const { return LinearSet(U, image); }
};

Projection project(const Subgeometry& S, const ProjSubspace& gamma, const Matrix& lambda_frame,
                   Exec exec = Exec::Parallel);

int intersection_number(const Subgeometry& S, const ProjSubspace& gamma);
// dim of gamma cap gamma^sigma cap ... cap gamma^{sigma^i}, i = 0..upto.
std::vector<int> intersection_dims(const Subgeometry& S, const ProjSubspace& gamma, int upto);

struct Reconstruction {
  MultiPoly F;
  Matrix frame;          // rows b: e_{j,k} maps to row index(j,k)
  Matrix lambda_frame;   // standard Lambda frame carried to the actual coordinates
};

struct ReconstructOptions {
  bool check_evasive = true;
  std::uint64_t guard = 10'000'000;
};

// P holds the r-1 points P_0..P_{r-2}; I[k] is the prescribed q^s-support of part k.
Reconstruction reconstruct_polynomial(const Subgeometry& S, const ProjSubspace& gamma,
                                      const std::vector<Vec>& P,
                                      const std::vector<std::vector<std::uint32_t>>& I,
                                      ReconstructOptions opt = {});

bool permutation_criterion(const Subgeometry& S, const ProjSubspace& gamma, const Vec& P);

}  // namespace fqlin
