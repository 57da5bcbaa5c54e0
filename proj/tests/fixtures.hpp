#pragma once

#include "tdsharp/generators.hpp"
#include "tdsharp/linalg.hpp"
#include "tdsharp/sharpen.hpp"

namespace fixtures {

using namespace tdsharp;

inline Field gf(std::int64_t p, std::size_t k = 1) {
  return k == 1 ? Field::prime(p) : Field::extension(Field::prime(p), k);
}

/// The 4x4 nonsharp pair over GF(3) from the seed B = [[0,0],[1,1]], B* = [[0,1+i],[0,1]].
inline MatrixPair flagship() {
  TwistedParams tp;
  tp.gamma = parse_scalar_expression(gf(3, 2), "1+i");
  return twisted_diameter1_nonsharp(tp);
}

/// A = [[0,0],[1,1]], A* = [[0,1],[0,1]]: a sharp diameter-1 pair.
inline MatrixPair sharp_pair(const Field& f) {
  return {ExactMatrix::from_ints(f, {{0, 0}, {1, 1}}), ExactMatrix::from_ints(f, {{0, 1}, {0, 1}})};
}

inline TDSystemRecord verified(const MatrixPair& pair) {
  auto r = verify_td_system(pair.A, pair.Astar);
  if (!r.accepted()) throw Error("fixture does not verify: " + r.failure->detail);
  return *r.record;
}

inline ExactMatrix random_matrix(const Field& f, std::size_t n, Rng& rng) {
  ExactMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(f, rng);
  return m;
}

inline ExactMatrix random_invertible(const Field& f, std::size_t n, Rng& rng) {
  for (;;) {
    ExactMatrix m = random_matrix(f, n, rng);
    if (rank(m) == n) return m;
  }
}

/// Column space of `w` is stable under every generator.
inline bool is_invariant(const ExactMatrix& w, const std::vector<ExactMatrix>& gens) {
  for (const auto& g : gens)
    if (rank(hstack(w, g * w)) != rank(w)) return false;
  return true;
}

/// Dimension of the span of the given matrices (row-major vectorization).
inline std::size_t span_dim(const std::vector<ExactMatrix>& ms) {
  if (ms.empty()) return 0;
  const Field& f = ms[0].field();
  const std::size_t n = ms[0].rows();
  ExactMatrix rows(f, ms.size(), n * n);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < n * n; ++j) rows(i, j) = ms[i].data()[j];
  return rank(rows);
}

/// Every element of a small algebra over a finite field, by coordinates.
inline std::vector<ExactMatrix> all_elements(const AlgebraBasis& alg) {
  const auto elems = enumerate_field(alg.field());
  std::vector<ExactMatrix> out;
  std::vector<std::size_t> idx(alg.dim(), 0);
  for (;;) {
    std::vector<Scalar> c;
    for (auto i : idx) c.push_back(elems[i]);
    out.push_back(alg.element(c));
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

}  // namespace fixtures
