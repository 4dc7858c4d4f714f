#include "fqlin/matrix.hpp"

#include <utility>

namespace fqlin {

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(d_.begin() + i * c_, d_.begin() + (i + 1) * c_);
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
  return out;
}

void Matrix::append_row(const Vec& v) {
  if (v.size() != c_) throw DimensionMismatch("row length does not match column count");
  d_.insert(d_.end(), v.begin(), v.end());
  ++r_;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
  if (v.size() != c_) throw DimensionMismatch("row length does not match column count");
  std::copy(v.begin(), v.end(), d_.begin() + i * c_);
}

Rref rref(const Field& F, Matrix m) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(piv, k));
    const Elem ic = F.inv(m(r, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F.mul(m(r, k), ic);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Elem f = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!m(r, k).is_zero()) m(i, k) = F.sub(m(i, k), F.mul(f, m(r, k)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.m = std::move(m);
  return out;
}

std::size_t rank(const Field& F, const Matrix& m) { return rref(F, m).rank; }

Matrix row_space(const Field& F, const Matrix& m) {
  Rref R = rref(F, m);
  R.m.resize_rows(R.rank);
  return R.m;
}

Matrix kernel(const Field& F, const Matrix& m) {
  Rref R = rref(F, m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : R.pivots) is_piv[c] = true;
  Matrix out(0, m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec v(m.cols(), F.zero());
    v[f] = F.one();
    for (std::size_t i = 0; i < R.rank; ++i) v[R.pivots[i]] = F.neg(R.m(i, f));
    out.append_row(v);
  }
  return out;
}

Matrix left_kernel(const Field& F, const Matrix& m) { return kernel(F, transpose(m)); }

Matrix identity(const Field& F, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
    }
  return c;
}

Vec vec_mat(const Field& F, const Vec& v, const Matrix& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("vector-matrix shape");
  Vec out(m.cols(), F.zero());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = F.add(out[j], F.mul(v[k], m(k, j)));
  }
  return out;
}

Vec mat_vec(const Field& F, const Matrix& m, const Vec& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("matrix-vector shape");
  Vec out(m.rows(), F.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) out[i] = F.add(out[i], F.mul(m(i, k), v[k]));
  return out;
}

Matrix stack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("stacking matrices with different widths");
  Matrix m = a;
  for (std::size_t i = 0; i < b.rows(); ++i) m.append_row(b.row(i));
  return m;
}

Matrix frobenius_p(const Field& F, const Matrix& m, std::int64_t k) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = F.frobenius_p(m(i, j), k);
  return out;
}

Vec frobenius_p(const Field& F, const Vec& v, std::int64_t k) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.frobenius_p(v[i], k);
  return out;
}

std::optional<Matrix> inverse(const Field& F, const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F.one();
  }
  Rref R = rref(F, aug);
  if (R.rank < n || R.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = R.m(i, n + j);
  return inv;
}

Elem determinant(const Field& F, Matrix m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Elem det = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(c, k), m(piv, k));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    const Elem ic = F.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Elem f = F.mul(m(i, c), ic);
      for (std::size_t k = c; k < n; ++k) m(i, k) = F.sub(m(i, k), F.mul(f, m(c, k)));
    }
  }
  return det;
}

std::optional<Vec> solve(const Field& F, const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Rref R = rref(F, aug);
  if (R.rank > 0 && R.pivots[R.rank - 1] == m.cols()) return std::nullopt;
  Vec x(m.cols(), F.zero());
  for (std::size_t i = 0; i < R.rank; ++i) x[R.pivots[i]] = R.m(i, m.cols());
  return x;
}

Matrix subspace_meet(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("subspaces in different ambient spaces");
  if (a.rows() == 0 || b.rows() == 0) return Matrix(0, a.cols());
  const Matrix A = row_space(F, a), B = row_space(F, b);
  // c = (c_A, c_B) with c_A A + c_B B = 0 gives c_A A in the meet.
  const Matrix K = left_kernel(F, stack(A, B));
  Matrix gens(0, a.cols());
  for (std::size_t i = 0; i < K.rows(); ++i) {
    const Vec k = K.row(i);
    const Vec cA(k.begin(), k.begin() + A.rows());
    gens.append_row(vec_mat(F, cA, A));
  }
  return row_space(F, gens);
}

Matrix subspace_sum(const Field& F, const Matrix& a, const Matrix& b) {
  return row_space(F, stack(a, b));
}

bool in_row_space(const Field& F, const Matrix& a, const Vec& v) {
  Matrix m = a;
  m.append_row(v);
  return rank(F, m) == rank(F, a);
}

Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
  return out;
}

Vec vec_sub(const Field& F, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.sub(a[i], b[i]);
  return out;
}

Vec vec_scale(const Field& F, Elem s, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.mul(s, v[i]);
  return out;
}

Vec flatten(const Field& F, const Vec& v) {
  Vec out;
  out.reserve(v.size() * F.n());
  for (Elem x : v) {
    auto c = F.fq_coords(x);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Vec unflatten(const Field& F, const Vec& flat) {
  const std::size_t n = F.n();
  if (flat.size() % n) throw DimensionMismatch("flattened length not a multiple of n");
  Vec out(flat.size() / n);
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = F.from_fq_coords(Vec(flat.begin() + j * n, flat.begin() + (j + 1) * n));
  return out;
}

FqSubspace::FqSubspace(FieldPtr field, std::size_t ambient_r, const std::vector<Vec>& generators)
    : field_(std::move(field)), r_(ambient_r), flat_(0, ambient_r * field_->n()) {
  const Field& F = *field_;
  Matrix m(0, r_ * F.n());
  for (const Vec& g : generators) {
    if (g.size() != r_) throw DimensionMismatch("generator length differs from ambient r");
    m.append_row(flatten(F, g));
  }
  flat_ = row_space(F, m);
  for (std::size_t i = 0; i < flat_.rows(); ++i) basis_.push_back(unflatten(F, flat_.row(i)));
}

bool FqSubspace::contains(const Vec& v) const {
  if (v.size() != r_) throw DimensionMismatch("vector length differs from ambient r");
  return in_row_space(*field_, flat_, flatten(*field_, v));
}

FqSubspace FqSubspace::scaled(Elem lambda) const {
  std::vector<Vec> g;
  for (const Vec& b : basis_) g.push_back(vec_scale(*field_, lambda, b));
  return FqSubspace(field_, r_, g);
}

std::size_t fq_dim(const FqSubspace& s) { return s.dim(); }

FqSubspace fq_intersect(const FqSubspace& a, const FqSubspace& b) {
  if (a.ambient_r() != b.ambient_r()) throw DimensionMismatch("F_q-subspaces in different ambients");
  const Field& F = *a.field();
  const Matrix& A = a.canonical();
  const Matrix& B = b.canonical();
  std::vector<Vec> gens;
  if (A.rows() && B.rows()) {
    Matrix negB(B.rows(), B.cols());
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < B.cols(); ++j) negB(i, j) = F.neg(B(i, j));
    const Matrix K = left_kernel(F, stack(A, negB));
    for (std::size_t i = 0; i < K.rows(); ++i) {
      const Vec k = K.row(i);
    const Vec cA(k.begin(), k.begin() + A.rows());
      gens.push_back(unflatten(F, vec_mat(F, cA, A)));
    }
  }
  return FqSubspace(a.field(), a.ambient_r(), gens);
}

FqSubspace fq_sum(const FqSubspace& a, const FqSubspace& b) {
  if (a.ambient_r() != b.ambient_r()) throw DimensionMismatch("F_q-subspaces in different ambients");
  std::vector<Vec> g = a.basis();
  g.insert(g.end(), b.basis().begin(), b.basis().end());
  return FqSubspace(a.field(), a.ambient_r(), g);
}

std::size_t fq_rank(const Field& F, const std::vector<Elem>& xs) {
  Matrix m(0, F.n());
  for (Elem x : xs) m.append_row(F.fq_coords(x));
  return rank(F, m);
}

}  // namespace fqlin
