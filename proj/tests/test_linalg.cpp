#include <doctest.h>

#include "tdsharp/linalg.hpp"
#include "tdsharp/random.hpp"

using namespace tdsharp;

namespace {

ExactMatrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng, std::uint64_t sparsity = 0) {
  ExactMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (sparsity == 0 || uniform_below(rng, sparsity) == 0) m(i, j) = random_scalar(f, rng);
  return m;
}

// Every vector of GF(q)^n with M v = 0.
std::size_t brute_kernel_size(const ExactMatrix& m) {
  auto elems = enumerate_field(m.field());
  std::size_t count = 0;
  std::vector<std::size_t> idx(m.cols(), 0);
  for (;;) {
    std::vector<Scalar> v;
    for (auto i : idx) v.push_back(elems[i]);
    bool zero = true;
    for (const auto& a : m.apply(v)) zero = zero && m.field().is_zero(a);
    count += zero;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("rref examples") {
  Field f5 = Field::prime(5);
  auto e = rref(ExactMatrix::from_ints(f5, {{1, 2}, {2, 4}}));
  CHECK(e.form == ExactMatrix::from_ints(f5, {{1, 2}, {0, 0}}));
  CHECK(e.rank() == 1);
  CHECK(rank(ExactMatrix::identity(f5, 3)) == 3);
  CHECK(rank(ExactMatrix(f5, 2, 4)) == 0);
}

TEST_CASE("kernel examples") {
  Field f2 = Field::prime(2);
  CHECK(kernel(ExactMatrix::identity(f2, 3)).cols() == 0);
  CHECK(kernel(ExactMatrix(f2, 3, 3)).cols() == 3);
  auto k = kernel(ExactMatrix::from_ints(f2, {{1, 1}, {1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k.column(0) == std::vector<Scalar>{f2.one(), f2.one()});
}

TEST_CASE("kernel size matches enumeration") {
  Field f3 = Field::prime(3);
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    auto m = random_matrix(f3, 3, 4, rng, 2);
    auto k = kernel(m);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < k.cols(); ++i) expected *= 3;
    CHECK(brute_kernel_size(m) == expected);
    CHECK((m * k).is_zero());
  }
}

TEST_CASE("rank-nullity on random matrices") {
  Rng rng(5);
  for (const Field& f : {Field::prime(2), Field::prime(7), Field::extension(Field::prime(3), 2), Field::rational()}) {
    for (int t = 0; t < 200; ++t) {
      const std::size_t r = 1 + uniform_below(rng, 5), c = 1 + uniform_below(rng, 5);
      auto m = random_matrix(f, r, c, rng, 2);
      auto k = kernel(m);
      CHECK(rank(m) + k.cols() == c);
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());
    }
  }
}

TEST_CASE("solve_linear") {
  Field f7 = Field::prime(7);
  auto id = ExactMatrix::identity(f7, 2);
  auto t = ExactMatrix::from_ints(f7, {{3, 1}, {4, 5}});
  CHECK(*solve_linear(id, t).solution == t);

  auto bad = solve_linear(ExactMatrix::from_ints(f7, {{1, 0}, {0, 0}}), ExactMatrix::from_ints(f7, {{0}, {1}}));
  CHECK_FALSE(bad.consistent);
  REQUIRE(bad.witness.size() == 2);
  CHECK(bad.witness[0] == f7.zero());
  CHECK_FALSE(f7.is_zero(bad.witness[1]));

  Rng rng(21);
  int solved = 0;
  while (solved < 20) {
    auto m = random_matrix(f7, 4, 4, rng);
    if (rank(m) < 4) continue;
    auto x = random_matrix(f7, 4, 2, rng);
    auto sol = solve_linear(m, m * x);
    REQUIRE(sol.consistent);
    CHECK(*sol.solution == x);
    CHECK(inverse(m) * m == ExactMatrix::identity(f7, 4));
    ++solved;
  }
  CHECK_THROWS_AS(inverse(ExactMatrix(f7, 2, 2)), DivisionByZero);
}

TEST_CASE("minimal polynomial examples") {
  Field f3 = Field::prime(3);
  CHECK(minimal_polynomial(ExactMatrix::identity(f3, 3)) == Polynomial::from_ints(f3, {-1, 1}));
  CHECK(minimal_polynomial(ExactMatrix::from_ints(f3, {{0, 0}, {0, 1}})) == Polynomial::from_ints(f3, {0, -1, 1}));
  auto jordan = ExactMatrix::from_ints(f3, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(minimal_polynomial(jordan) == Polynomial::from_ints(f3, {0, 0, 0, 1}));
  CHECK_FALSE((jordan * jordan).is_zero());
  CHECK((jordan * jordan * jordan).is_zero());
}

TEST_CASE("minimal polynomial annihilates and is minimal") {
  Rng rng(8);
  for (const Field& f : {Field::prime(3), Field::prime(5), Field::rational()}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + uniform_below(rng, 4);
      auto m = random_matrix(f, n, n, rng, 2);
      auto mp = minimal_polynomial(m);
      CHECK(mp.is_monic());
      CHECK(evaluate(mp, m).is_zero());
      for (const auto& fac : factor(mp)) CHECK_FALSE(evaluate(mp / fac.poly, m).is_zero());
    }
  }
}

TEST_CASE("eigendecompose") {
  Field f7 = Field::prime(7);
  auto s = eigendecompose(ExactMatrix::from_ints(f7, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  REQUIRE(s.diagonalizable);
  CHECK(s.eigenvalues == std::vector<Scalar>{f7.zero(), f7.one()});
  CHECK(s.eigenspaces[0].cols() == 1);
  CHECK(s.eigenspaces[1].cols() == 2);

  auto nil = eigendecompose(ExactMatrix::from_ints(f7, {{0, 1}, {0, 0}}));
  CHECK_FALSE(nil.diagonalizable);
  CHECK(*nil.witness == Polynomial::from_ints(f7, {0, 0, 1}));

  Field f3 = Field::prime(3);
  Field f9 = Field::extension(f3, 2);
  auto comp3 = eigendecompose(ExactMatrix::from_ints(f3, {{0, -1}, {1, 0}}));
  CHECK_FALSE(comp3.diagonalizable);
  CHECK(roots_in_field(Polynomial::from_ints(f3, {1, 0, 1})).empty());
  auto comp9 = eigendecompose(ExactMatrix::from_ints(f9, {{0, -1}, {1, 0}}));
  CHECK(comp9.diagonalizable);
  CHECK(roots_in_field(Polynomial::from_ints(f9, {1, 0, 1})).size() == 2);
}

TEST_CASE("primitive idempotent examples") {
  Field f5 = Field::prime(5);
  auto b = ExactMatrix::from_ints(f5, {{0, 0}, {1, 1}});
  auto es = primitive_idempotents(b, {f5.zero(), f5.one()});
  CHECK(es[0] == ExactMatrix::from_ints(f5, {{1, 0}, {4, 0}}));
  CHECK(es[1] == ExactMatrix::from_ints(f5, {{0, 0}, {1, 1}}));
  auto single = primitive_idempotents(ExactMatrix::identity(f5, 3).scaled(f5.from_int(2)), {f5.from_int(2)});
  CHECK(single[0] == ExactMatrix::identity(f5, 3));
  Field f3 = Field::prime(3);
  auto d = primitive_idempotents(ExactMatrix::from_ints(f3, {{0, 0}, {0, 1}}), {f3.zero(), f3.one()});
  CHECK(d[0] == ExactMatrix::from_ints(f3, {{1, 0}, {0, 0}}));
  CHECK_THROWS_AS(primitive_idempotents(b, {f5.one(), f5.one()}), DivisionByZero);
}

TEST_CASE("spectral identities on conjugated diagonal matrices") {
  Rng rng(17);
  for (const Field& f : {Field::prime(5), Field::prime(11), Field::extension(Field::prime(2), 3), Field::rational()}) {
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + uniform_below(rng, 4);
      std::vector<Scalar> diag;
      for (std::size_t i = 0; i < n; ++i) diag.push_back(random_scalar(f, rng));
      auto p = random_matrix(f, n, n, rng);
      if (rank(p) < n) continue;
      auto m = inverse(p) * ExactMatrix::diagonal(f, diag) * p;
      auto s = eigendecompose(m);
      REQUIRE(s.diagonalizable);
      ExactMatrix sum(f, n, n), prod = ExactMatrix::identity(f, n);
      std::size_t dims = 0;
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        sum = sum + s.idempotents[i];
        dims += s.eigenspaces[i].cols();
        prod = prod * (m - ExactMatrix::identity(f, n).scaled(s.eigenvalues[i]));
      }
      CHECK(sum == ExactMatrix::identity(f, n));
      CHECK(prod.is_zero());
      CHECK(dims == n);
    }
  }
}

TEST_CASE("row space") {
  Field f3 = Field::prime(3);
  RowSpace rs(f3, 3);
  CHECK(rs.add({f3.one(), f3.one(), f3.zero()}));
  CHECK(rs.add({f3.zero(), f3.one(), f3.one()}));
  CHECK_FALSE(rs.add({f3.one(), f3.from_int(2), f3.one()}));
  CHECK(rs.contains({f3.one(), f3.zero(), f3.from_int(2)}));
  CHECK(rs.dim() == 2);
  auto c = rs.canonical();
  CHECK(c.form == ExactMatrix::from_ints(f3, {{1, 0, 2}, {0, 1, 1}}));
}
