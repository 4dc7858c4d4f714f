#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "fqlin/gf.hpp"
#include "fqlin/matrix.hpp"

namespace fqlin {

enum class Exec { Serial, Parallel };

struct Tally {
  std::vector<Vec> points;  // ascending
  std::vector<std::uint64_t> counts;
};

// Leftmost nonzero coordinate scaled to 1. DomainError on the zero vector.
void normalize_in_place(const Field& F, Elem* v, std::size_t width);
Vec normalize(const Field& F, Vec v);

// Tallies gen(i, out) for i < count, where gen writes a normalised point
// of the given width into out. Serial uses an ordered map; Parallel fills a
// buffer with OpenMP and sorts it. Both return the same sorted table.
template <class Gen>
Tally tally_points(std::uint64_t count, std::size_t width, Gen&& gen, Exec exec) {
  Tally t;
  if (exec == Exec::Serial) {
    std::map<Vec, std::uint64_t> acc;
    Vec buf(width);
    for (std::uint64_t i = 0; i < count; ++i) {
      gen(i, buf.data());
      ++acc[buf];
    }
    for (auto& [pt, c] : acc) {
      t.points.push_back(pt);
      t.counts.push_back(c);
    }
    return t;
  }
  std::vector<Elem> buf(count * width);
  const std::int64_t N = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i) gen(static_cast<std::uint64_t>(i), buf.data() + i * width);
  std::vector<std::uint32_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0u);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(buf.begin() + a * width, buf.begin() + (a + 1) * width,
                                        buf.begin() + b * width, buf.begin() + (b + 1) * width);
  };
  std::sort(idx.begin(), idx.end(), less);
  for (std::size_t k = 0; k < idx.size();) {
    std::size_t j = k + 1;
    while (j < idx.size() && !less(idx[k], idx[j])) ++j;
    t.points.emplace_back(buf.begin() + idx[k] * width, buf.begin() + (idx[k] + 1) * width);
    t.counts.push_back(j - k);
    k = j;
  }
  return t;
}

// Representatives of the nonzero vectors of F_{q^n}^m modulo F_q^*: the
// leading nonzero coordinate is g^a with a < (q^n-1)/(q-1).
std::uint64_t fq_proj_count(const Field& F, std::size_t m);
void fq_proj_rep(const Field& F, std::size_t m, std::uint64_t index, Elem* out);

}  // namespace fqlin
