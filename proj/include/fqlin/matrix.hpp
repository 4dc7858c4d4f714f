#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fqlin/gf.hpp"

namespace fqlin {

using Vec = std::vector<Elem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Elem& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  Vec row(std::size_t i) const;
  std::vector<Vec> row_list() const;
  void append_row(const Vec& v);
  void set_row(std::size_t i, const Vec& v);
  void resize_rows(std::size_t rows) {
    r_ = rows;
    d_.resize(r_ * c_);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.r_ <=> b.r_; c != 0) return c;
    if (auto c = a.c_ <=> b.c_; c != 0) return c;
    return a.d_ <=> b.d_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Elem> d_;
};

struct Rref {
  Matrix m;  // same shape as the input, zero rows at the bottom
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

Rref rref(const Field& F, Matrix m);
std::size_t rank(const Field& F, const Matrix& m);
// RREF with the zero rows dropped: the canonical form of the row space.
Matrix row_space(const Field& F, const Matrix& m);
// Rows form a basis of {x : m x^T = 0}.
Matrix kernel(const Field& F, const Matrix& m);
// Rows form a basis of {c : c m = 0}.
Matrix left_kernel(const Field& F, const Matrix& m);

Matrix identity(const Field& F, std::size_t n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Field& F, const Matrix& a, const Matrix& b);
Vec vec_mat(const Field& F, const Vec& v, const Matrix& m);
Vec mat_vec(const Field& F, const Matrix& m, const Vec& v);
Matrix stack(const Matrix& a, const Matrix& b);
Matrix frobenius_p(const Field& F, const Matrix& m, std::int64_t k);
Vec frobenius_p(const Field& F, const Vec& v, std::int64_t k);
std::optional<Matrix> inverse(const Field& F, const Matrix& m);
Elem determinant(const Field& F, Matrix m);
// Some x with m x = b, if any.
std::optional<Vec> solve(const Field& F, const Matrix& m, const Vec& b);

// Row-space operations over F_{q^n}, all results in canonical form.
Matrix subspace_meet(const Field& F, const Matrix& a, const Matrix& b);
Matrix subspace_sum(const Field& F, const Matrix& a, const Matrix& b);
bool in_row_space(const Field& F, const Matrix& a, const Vec& v);

Vec vec_add(const Field& F, const Vec& a, const Vec& b);
Vec vec_sub(const Field& F, const Vec& a, const Vec& b);
Vec vec_scale(const Field& F, Elem s, const Vec& v);

// Flattening of F_{q^n}^r into F_q^{rn}: coordinate j of the vector
// becomes entries j*n .. j*n+n-1.
Vec flatten(const Field& F, const Vec& v);
Vec unflatten(const Field& F, const Vec& flat);

// An F_q-subspace of F_{q^n}^r, stored as the RREF over F_q of its
// flattened spanning set.
class FqSubspace {
 public:
  FqSubspace(FieldPtr field, std::size_t ambient_r, const std::vector<Vec>& generators = {});

  std::size_t ambient_r() const { return r_; }
  std::size_t dim() const { return flat_.rows(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const Matrix& canonical() const { return flat_; }
  const FieldPtr& field() const { return field_; }

  bool contains(const Vec& v) const;
  FqSubspace scaled(Elem lambda) const;

  friend bool operator==(const FqSubspace& a, const FqSubspace& b) {
    return a.r_ == b.r_ && a.flat_ == b.flat_;
  }

 private:
  FieldPtr field_;
  std::size_t r_;
  Matrix flat_;
  std::vector<Vec> basis_;
};

std::size_t fq_dim(const FqSubspace& s);
FqSubspace fq_intersect(const FqSubspace& a, const FqSubspace& b);
FqSubspace fq_sum(const FqSubspace& a, const FqSubspace& b);
// F_q-rank of a list of elements of F_{q^n}.
std::size_t fq_rank(const Field& F, const std::vector<Elem>& xs);

}  // namespace fqlin
