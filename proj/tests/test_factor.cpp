#include <doctest.h>

#include "tdsharp/factor.hpp"
#include "tdsharp/random.hpp"

using namespace tdsharp;

namespace {

Polynomial product(const Field& f, const std::vector<Factor>& facs) {
  Polynomial p = Polynomial::constant(f, f.one());
  for (const auto& fac : facs)
    for (std::size_t i = 0; i < fac.multiplicity; ++i) p = p * fac.poly;
  return p;
}

// Enumerates every monic polynomial of the given degree over a small field.
std::vector<Polynomial> all_monic(const Field& f, int degree) {
  auto elems = enumerate_field(f);
  std::vector<Polynomial> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  for (;;) {
    std::vector<Scalar> c;
    for (auto i : idx) c.push_back(elems[i]);
    c.push_back(f.one());
    out.emplace_back(f, c);
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

bool brute_irreducible(const Polynomial& p) {
  for (int d = 1; 2 * d <= p.degree(); ++d)
    for (const auto& g : all_monic(p.field(), d))
      if ((p % g).is_zero()) return false;
  return p.degree() >= 1;
}

Polynomial qpoly(const Field& q, std::vector<long> c) { return Polynomial::from_ints(q, c); }

// Rational root theorem enumeration for an integer polynomial.
std::vector<mpq_class> rational_roots(const std::vector<long>& c) {
  std::vector<mpq_class> out;
  std::size_t lo = 0;
  while (c[lo] == 0) ++lo;
  if (lo > 0) out.emplace_back(0);
  const long a0 = std::labs(c[lo]), an = std::labs(c.back());
  for (long num = 1; num <= a0; ++num) {
    if (a0 % num) continue;
    for (long den = 1; den <= an; ++den) {
      if (an % den) continue;
      for (int sign : {-1, 1}) {
        mpq_class r(sign * num, den);
        r.canonicalize();
        mpq_class v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * r + c[i];
        if (v == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("factorization over small finite fields matches brute force") {
  Rng rng(7);
  for (const Field& f : {Field::prime(2), Field::prime(3), Field::extension(Field::prime(2), 2)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const int deg = 1 + static_cast<int>(uniform_below(rng, 7));
      std::vector<Scalar> c;
      for (int i = 0; i < deg; ++i) c.push_back(random_scalar(f, rng));
      c.push_back(f.one());
      Polynomial p(f, c);
      auto facs = factor(p);
      CHECK(product(f, facs) == p);
      for (const auto& fac : facs) {
        CHECK(fac.poly.is_monic());
        if (fac.poly.degree() <= 4) CHECK(brute_irreducible(fac.poly));
        CHECK(is_irreducible(fac.poly));
      }
      CHECK(is_irreducible(p) == (facs.size() == 1 && facs[0].multiplicity == 1));
    }
  }
}

TEST_CASE("repeated factors in characteristic p") {
  Field f = Field::prime(3);
  Polynomial x = Polynomial::x(f);
  Polynomial one = Polynomial::constant(f, f.one());
  Polynomial p = (x + one) * (x + one) * (x + one) * (x * x + one) * (x * x + one);
  auto facs = factor(p);
  REQUIRE(facs.size() == 2);
  CHECK(facs[0].poly == x + one);
  CHECK(facs[0].multiplicity == 3);
  CHECK(facs[1].multiplicity == 2);
}

TEST_CASE("larger finite field factorization") {
  Field f = Field::extension(Field::prime(101), 2);
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scalar> c;
    for (int i = 0; i < 8; ++i) c.push_back(random_scalar(f, rng));
    c.push_back(f.one());
    Polynomial p(f, c);
    auto facs = factor(p);
    CHECK(product(f, facs) == p);
    for (const auto& fac : facs) CHECK(is_irreducible(fac.poly));
  }
}

TEST_CASE("factorization over Q") {
  Field q = Field::rational();
  auto f1 = factor(qpoly(q, {4, 0, 0, 0, 1}));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].poly.degree() == 2);
  CHECK(product(q, f1) == qpoly(q, {4, 0, 0, 0, 1}));
  CHECK(is_irreducible(qpoly(q, {1, 0, -10, 0, 1})));
  CHECK(factor(qpoly(q, {-1, 0, 0, 0, 1})).size() == 3);
  CHECK_FALSE(is_irreducible(qpoly(q, {-2, 1, 0, 0, 0, 0, 1}) * qpoly(q, {1, 1})));

  Polynomial x8 = qpoly(q, {1, 0, 0, 0, 0, 0, 0, 0, 1});
  CHECK(is_irreducible(x8));
  auto f2 = factor(qpoly(q, {-1, 0, 0, 0, 0, 0, 0, 0, 1}));
  CHECK(f2.size() == 4);
}

TEST_CASE("random products over Q factor back") {
  Field q = Field::rational();
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    Polynomial p = Polynomial::constant(q, q.one());
    std::size_t parts = 1 + uniform_below(rng, 3);
    for (std::size_t i = 0; i < parts; ++i) {
      std::vector<long> c;
      const auto deg = 1 + uniform_below(rng, 3);
      for (std::size_t j = 0; j < deg; ++j) c.push_back(static_cast<long>(uniform_below(rng, 21)) - 10);
      c.push_back(1 + static_cast<long>(uniform_below(rng, 3)));
      p = p * qpoly(q, c);
    }
    auto facs = factor(p);
    CHECK(product(q, facs) == p.monic());
    std::size_t count = 0;
    for (const auto& fac : facs) count += fac.multiplicity;
    CHECK(count >= parts);
  }
}

TEST_CASE("factorization over number fields") {
  Field k = field_create(FieldKind::extension, 0, 2, std::vector<mpq_class>{-2, 0, 1});
  Polynomial x2m2 = Polynomial::from_ints(k, {-2, 0, 1});
  auto facs = factor(x2m2);
  REQUIRE(facs.size() == 2);
  CHECK(product(k, facs) == x2m2);
  CHECK(is_irreducible(Polynomial::from_ints(k, {1, 0, 1})));

  Field gi = field_create(FieldKind::extension, 0, 2, std::vector<mpq_class>{1, 0, 1});
  Polynomial x4p1 = Polynomial::from_ints(gi, {1, 0, 0, 0, 1});
  auto f2 = factor(x4p1);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].poly.degree() == 2);
  CHECK(product(gi, f2) == x4p1);
  CHECK(number_field_norm(gi, gi.add(gi.one(), gi.generator())) == 2);
}

TEST_CASE("roots over Q agree with the rational root theorem") {
  Field q = Field::rational();
  std::vector<std::vector<long>> polys{{-6, 11, -6, 1}, {2, -3, -3, 2}, {0, 0, 4, -1}, {1, 0, 1}, {-1, 0, 4}, {12, -4, -3, 1}};
  for (const auto& c : polys) {
    auto expected = rational_roots(c);
    auto got = roots_in_field(qpoly(q, c));
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].value.rat[0] == expected[i]);
  }
  auto r = roots_in_field(qpoly(q, {0, 0, 4, -1}));
  CHECK(r[0].multiplicity == 2);
}

TEST_CASE("roots over finite fields") {
  Field f = Field::prime(7);
  Polynomial p = Polynomial::from_ints(f, {-1, 0, 0, 1});  // x^3 - 1: 1, 2, 4
  auto r = roots_in_field(p);
  REQUIRE(r.size() == 3);
  CHECK(r[0].value == f.from_int(1));
  CHECK(r[1].value == f.from_int(2));
  CHECK(r[2].value == f.from_int(4));

  Field big = Field::prime(10007);
  Polynomial q = Polynomial::linear(big, big.from_int(5)) * Polynomial::linear(big, big.from_int(5)) *
                 Polynomial::linear(big, big.from_int(9000)) * Polynomial::from_ints(big, {1, 0, 1, 0, 1});
  auto rb = roots_in_field(q);
  std::size_t brute = 0;
  for (long v = 0; v < 10007; ++v)
    if (big.is_zero(q.evaluate(big.from_int(v)))) ++brute;
  CHECK(rb.size() == brute);
  CHECK(rb[0].value == big.from_int(5));
  CHECK(rb[0].multiplicity == 2);
}
