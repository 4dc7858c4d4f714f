#include "fqlin/tally.hpp"

namespace fqlin {

void normalize_in_place(const Field& F, Elem* v, std::size_t width) {
  std::size_t k = 0;
  while (k < width && v[k].is_zero()) ++k;
  if (k == width) throw DomainError("the zero vector is not a projective point");
  if (v[k] == F.one()) return;
  const Elem s = F.inv(v[k]);
  v[k] = F.one();
  for (std::size_t j = k + 1; j < width; ++j) v[j] = F.mul(v[j], s);
}

Vec normalize(const Field& F, Vec v) {
  normalize_in_place(F, v.data(), v.size());
  return v;
}

std::uint64_t fq_proj_count(const Field& F, std::size_t m) {
  std::uint64_t total = 0, qm = 1;
  const std::uint64_t lead = (F.order() - 1) / (F.q() - 1);
  for (std::size_t k = 0; k < m; ++k) {
    total += lead * qm;
    qm *= F.order();
  }
  return total;
}

void fq_proj_rep(const Field& F, std::size_t m, std::uint64_t index, Elem* out) {
  const std::uint64_t Q = F.order();
  const std::uint64_t lead = (Q - 1) / (F.q() - 1);
  // Blocks ordered by lead position k = 0, 1, ...; block k has lead * Q^{m-1-k} entries.
  std::vector<std::uint64_t> tail(m);
  std::uint64_t t = 1;
  for (std::size_t k = m; k-- > 0;) {
    tail[k] = t;
    t *= Q;
  }
  std::size_t k = 0;
  while (index >= lead * tail[k]) {
    index -= lead * tail[k];
    ++k;
  }
  for (std::size_t j = 0; j < k; ++j) out[j] = F.zero();
  out[k] = F.gen_pow(static_cast<std::int64_t>(index / tail[k]));
  std::uint64_t rest = index % tail[k];
  for (std::size_t j = m; j-- > k + 1;) {
    out[j] = Elem(static_cast<std::uint32_t>(rest % Q));
    rest /= Q;
  }
}

}  // namespace fqlin
