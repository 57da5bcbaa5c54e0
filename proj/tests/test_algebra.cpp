#include <doctest.h>

#include "fixtures.hpp"
#include "tdsharp/algebra.hpp"
#include "tdsharp/factor.hpp"

using namespace tdsharp;
using namespace fixtures;

namespace {

// Naive closure: span of all words in the generators, grown until stable.
std::size_t naive_closure_dim(const std::vector<ExactMatrix>& gens) {
  const Field& f = gens[0].field();
  const std::size_t n = gens[0].rows();
  std::vector<ExactMatrix> words{ExactMatrix::identity(f, n)};
  std::size_t dim = 1;
  for (;;) {
    std::vector<ExactMatrix> next = words;
    for (const auto& w : words)
      for (const auto& g : gens) next.push_back(w * g);
    const std::size_t nd = span_dim(next);
    if (nd == dim) return dim;
    dim = nd;
    words = next;
  }
}

}  // namespace

TEST_CASE("subalgebra closure examples") {
  const Field f3 = gf(3), f5 = gf(5);
  CHECK(subalgebra_closure({ExactMatrix::identity(f3, 2)}, ExactMatrix::identity(f3, 2)).dim() == 1);
  const ExactMatrix e = ExactMatrix::from_ints(f3, {{0, 0}, {0, 1}});
  CHECK(subalgebra_closure({e}, ExactMatrix::identity(f3, 2)).dim() == 2);

  const auto pair = sharp_pair(f5);
  const AlgebraBasis t = subalgebra_closure({pair.A, pair.Astar}, ExactMatrix::identity(f5, 2));
  CHECK(t.dim() == 4);
  CHECK(span_dim({ExactMatrix::identity(f5, 2), pair.A, pair.Astar, pair.A * pair.Astar}) == 4);
}

TEST_CASE("closure dimension agrees with a naive word enumeration") {
  Rng rng(11);
  for (const Field& f : {gf(2), gf(3), gf(2, 2), gf(5)}) {
    for (int t = 0; t < 15; ++t) {
      const std::size_t n = 1 + uniform_below(rng, 4);
      std::vector<ExactMatrix> gens{random_matrix(f, n, rng)};
      if (t % 3 != 0) gens.push_back(random_matrix(f, n, rng));
      const AlgebraBasis alg = subalgebra_closure(gens, ExactMatrix::identity(f, n));
      CHECK(alg.dim() == naive_closure_dim(gens));
      // closure idempotence
      CHECK(subalgebra_closure(alg.basis(), ExactMatrix::identity(f, n)).same_space(alg));
      for (const auto& a : alg.basis())
        for (const auto& b : alg.basis()) CHECK(alg.contains(a * b));
    }
  }
}

TEST_CASE("closure rejects mismatched generators") {
  CHECK_THROWS_AS(subalgebra_closure({ExactMatrix::identity(gf(3), 2), ExactMatrix::identity(gf(3), 3)},
                                     ExactMatrix::identity(gf(3), 2)),
                  DimensionError);
  CHECK_THROWS_AS(subalgebra_closure({ExactMatrix::identity(gf(3), 2), ExactMatrix::identity(gf(5), 2)},
                                     ExactMatrix::identity(gf(3), 2)),
                  FieldMismatch);
}

TEST_CASE("one-sided spaces") {
  const Field f5 = gf(5);
  const auto pair = sharp_pair(f5);
  const AlgebraBasis t = subalgebra_closure({pair.A, pair.Astar}, ExactMatrix::identity(f5, 2));
  CHECK(one_sided_space(t, ExactMatrix::identity(f5, 2), Side::right).same_space(t));
  CHECK(one_sided_space(t, ExactMatrix(f5, 2, 2), Side::left).dim() == 0);
  CHECK_THROWS(one_sided_space(t, ExactMatrix::from_ints(f5, {{1, 1}, {0, 0}}).scaled(f5.from_int(2)), Side::right));

  const auto fl = flagship();
  const auto rec = verified(fl);
  const AlgebraBasis tf = subalgebra_closure({fl.A, fl.Astar}, ExactMatrix::identity(fl.A.field(), 4));
  CHECK(one_sided_space(tf, rec.E_star[0], Side::right).dim() == 4);
  CHECK(one_sided_space(tf, rec.E_star[0], Side::left).dim() == 4);
}

TEST_CASE("center examples") {
  const Field f5 = gf(5), f3 = gf(3);
  const auto pair = sharp_pair(f5);
  const AlgebraBasis t = subalgebra_closure({pair.A, pair.Astar}, ExactMatrix::identity(f5, 2));
  const AlgebraBasis z = center(t);
  CHECK(z.dim() == 1);
  CHECK(z.contains(ExactMatrix::identity(f5, 2)));

  const AlgebraBasis diag = subalgebra_closure({ExactMatrix::from_ints(f3, {{0, 0}, {0, 1}})}, ExactMatrix::identity(f3, 2));
  CHECK(center(diag).same_space(diag));

  const auto fl = flagship();
  const AlgebraBasis tf = subalgebra_closure({fl.A, fl.Astar}, ExactMatrix::identity(f3, 4));
  CHECK(tf.dim() == 8);
  const AlgebraBasis zf = center(tf);
  CHECK(zf.dim() == 2);
  // Brute force: every element of T commuting with all of T.
  std::size_t central = 0;
  for (const auto& x : all_elements(tf)) {
    bool ok = true;
    for (const auto& b : tf.basis()) ok = ok && x * b == b * x;
    central += ok;
    if (ok) CHECK(zf.contains(x));
  }
  CHECK(central == 9);
  CHECK(center(zf).same_space(zf));
}

TEST_CASE("corner algebras") {
  const Field f5 = gf(5);
  const auto pair = sharp_pair(f5);
  const auto rec = verified(pair);
  const AlgebraBasis t = subalgebra_closure({pair.A, pair.Astar}, ExactMatrix::identity(f5, 2));
  CHECK(corner(t, ExactMatrix::identity(f5, 2)).same_space(t));
  CHECK(corner(t, rec.E_star[0]).dim() == 1);

  const auto fl = flagship();
  const auto rf = verified(fl);
  const AlgebraBasis tf = subalgebra_closure({fl.A, fl.Astar}, ExactMatrix::identity(fl.A.field(), 4));
  const AlgebraBasis c = corner(tf, rf.E_star[0]);
  CHECK(c.dim() == 2);
  CHECK(c.unit() == rf.E_star[0]);
}

TEST_CASE("commutativity and corner generation") {
  const Field f5 = gf(5), f7 = gf(7);
  CHECK(is_commutative(subalgebra_closure({ExactMatrix::identity(f5, 3)}, ExactMatrix::identity(f5, 3))).commutative);
  const auto pair = sharp_pair(f5);
  const AlgebraBasis full = subalgebra_closure({pair.A, pair.Astar}, ExactMatrix::identity(f5, 2));
  const auto res = is_commutative(full);
  REQUIRE_FALSE(res.commutative);
  REQUIRE(res.witness);
  CHECK_FALSE(res.witness->first * res.witness->second == res.witness->second * res.witness->first);

  const ExactMatrix one = ExactMatrix::from_ints(f5, {{3}});
  const AlgebraBasis t1 = subalgebra_closure({one}, ExactMatrix::identity(f5, 1));
  CHECK(corner_generators_check(corner(t1, ExactMatrix::identity(f5, 1)), ExactMatrix::identity(f5, 1), one, 0));

  Rng rng(2);
  const auto sp = split_form_pair(random_leonard_params(f7, {2, false}, rng));
  const auto rec = verified(sp);
  const AlgebraBasis t = subalgebra_closure({sp.A, sp.Astar}, ExactMatrix::identity(f7, 3));
  const AlgebraBasis c = corner(t, rec.E_star[0]);
  CHECK(is_commutative(c).commutative);
  CHECK(corner_generators_check(c, rec.E_star[0], sp.A, 2));

  const auto fl = flagship();
  const auto rf = verified(fl);
  const AlgebraBasis tf = subalgebra_closure({fl.A, fl.Astar}, ExactMatrix::identity(fl.A.field(), 4));
  const AlgebraBasis cf = corner(tf, rf.E_star[0]);
  CHECK(is_commutative(cf).commutative);
  CHECK(corner_generators_check(cf, rf.E_star[0], fl.A, 1));
  // The idempotent alone does not generate the 2-dimensional corner.
  CHECK_FALSE(corner_generators_check(cf, rf.E_star[0], fl.A, 0));
}

TEST_CASE("inversion inside an algebra") {
  const Field f7 = gf(7);
  const ExactMatrix d = ExactMatrix::from_ints(f7, {{2, 0}, {0, 3}});
  const AlgebraBasis diag = subalgebra_closure({d}, ExactMatrix::identity(f7, 2));
  CHECK(*invert_in_algebra(diag.unit(), diag) == diag.unit());
  CHECK(*invert_in_algebra(d, diag) == ExactMatrix::from_ints(f7, {{4, 0}, {0, 5}}));
  const ExactMatrix nil = ExactMatrix::from_ints(f7, {{0, 1}, {0, 0}});
  const AlgebraBasis nalg = subalgebra_closure({nil}, ExactMatrix::identity(f7, 2));
  CHECK_FALSE(invert_in_algebra(nil, nalg).has_value());
  CHECK_THROWS(invert_in_algebra(ExactMatrix::from_ints(f7, {{0, 0}, {1, 0}}), nalg));
}

TEST_CASE("field certification") {
  const Field f3 = gf(3);
  Rng rng(5);
  const AlgebraBasis scalars = subalgebra_closure({ExactMatrix::identity(f3, 2)}, ExactMatrix::identity(f3, 2));
  const auto c1 = field_certify(scalars, rng);
  REQUIRE(c1.verdict == Verdict::yes);
  CHECK(c1.certificate->minpoly.degree() == 1);

  const AlgebraBasis diag = subalgebra_closure({ExactMatrix::from_ints(f3, {{0, 0}, {0, 1}})}, ExactMatrix::identity(f3, 2));
  const auto c2 = field_certify(diag, rng);
  REQUIRE(c2.verdict == Verdict::no);
  REQUIRE(c2.witness);
  CHECK_FALSE(c2.witness->first.is_zero());
  CHECK_FALSE(c2.witness->second.is_zero());
  CHECK((c2.witness->first * c2.witness->second).is_zero());

  const auto fl = flagship();
  const AlgebraBasis z = center(subalgebra_closure({fl.A, fl.Astar}, ExactMatrix::identity(f3, 4)));
  const auto c3 = field_certify(z, rng);
  REQUIRE(c3.verdict == Verdict::yes);
  CHECK(c3.certificate->minpoly.degree() == 2);
  CHECK(is_irreducible(c3.certificate->minpoly));
  // Every nonzero element of Z(T) is invertible.
  std::size_t nonzero = 0;
  for (const auto& x : all_elements(z)) {
    if (x.is_zero()) continue;
    ++nonzero;
    CHECK(invert_in_algebra(x, z).has_value());
  }
  CHECK(nonzero == 8);
}

TEST_CASE("certified fields have no zero divisors") {
  Rng rng(9);
  for (const std::size_t k : {2u, 3u}) {
    const Field f = gf(5);
    // The companion matrix of an irreducible polynomial generates a field.
    const Field ext = gf(5, k);
    const auto mod = ext.modulus();
    ExactMatrix comp(f, k, k);
    for (std::size_t i = 0; i + 1 < k; ++i) comp(i + 1, i) = f.one();
    for (std::size_t i = 0; i < k; ++i) comp(i, k - 1) = f.neg(mod[i]);
    const AlgebraBasis alg = subalgebra_closure({comp}, ExactMatrix::identity(f, k));
    const auto cert = field_certify(alg, rng);
    REQUIRE(cert.verdict == Verdict::yes);
    auto random_nonzero = [&]() {
      for (;;) {
        std::vector<Scalar> c;
        for (std::size_t i = 0; i < alg.dim(); ++i) c.push_back(random_scalar(f, rng));
        ExactMatrix x = alg.element(c);
        if (!x.is_zero()) return x;
      }
    };
    for (int t = 0; t < 200; ++t) CHECK_FALSE((random_nonzero() * random_nonzero()).is_zero());
    for (int t = 0; t < 50; ++t) {
      const ExactMatrix x = random_nonzero();
      const auto inv = invert_in_algebra(x, alg);
      REQUIRE(inv);
      CHECK(x * *inv == alg.unit());
    }
    const FieldPresentation pres(alg, *cert.certificate);
    for (int t = 0; t < 50; ++t) {
      const ExactMatrix x = random_nonzero(), y = random_nonzero();
      CHECK(pres.from_field(pres.to_field(x)) == x);
      CHECK(pres.field().equal(pres.to_field(x * y), pres.field().mul(pres.to_field(x), pres.to_field(y))));
    }
  }
}

TEST_CASE("irreducibility examples") {
  const Field f3 = gf(3), f2 = gf(2), f5 = gf(5);
  Rng rng(1);
  CHECK(norton_irreducible({ExactMatrix::from_ints(f5, {{2}})}, 1, rng).verdict == Verdict::yes);

  const std::vector<ExactMatrix> diag{ExactMatrix::from_ints(f5, {{0, 0}, {0, 1}}), ExactMatrix::identity(f5, 2)};
  const auto r = norton_irreducible(diag, 2, rng);
  REQUIRE(r.verdict == Verdict::no);
  REQUIRE(r.witness);
  CHECK(r.witness->cols() == 1);
  CHECK(is_invariant(*r.witness, diag));

  CHECK(bruteforce_invariant_subspaces({ExactMatrix::identity(f2, 2)}, 2).size() == 3);
  const auto sp = sharp_pair(f3);
  CHECK(bruteforce_invariant_subspaces({sp.A, sp.Astar}, 2).empty());
  const auto fl = flagship();
  CHECK(bruteforce_invariant_subspaces({fl.A, fl.Astar}, 4).empty());
  CHECK(norton_irreducible({fl.A, fl.Astar}, 4, rng).verdict == Verdict::yes);
  CHECK_THROWS_AS(bruteforce_invariant_subspaces({ExactMatrix::identity(f5, 2)}, 2), BoundError);
  CHECK_THROWS_AS(bruteforce_invariant_subspaces({ExactMatrix::identity(f2, 5)}, 5), BoundError);
}

TEST_CASE("Norton agrees with exhaustive search on small random modules") {
  Rng rng(2024);
  std::size_t reducible = 0, irreducible = 0;
  for (const Field& f : {gf(2), gf(3), gf(2, 2)}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 2 + uniform_below(rng, 3);
      std::vector<ExactMatrix> gens{random_matrix(f, n, rng)};
      if (t % 2) gens.push_back(random_matrix(f, n, rng));
      const auto subs = bruteforce_invariant_subspaces(gens, n);
      for (const auto& s : subs) CHECK(is_invariant(s, gens));
      const auto fast = norton_irreducible(gens, n, rng);
      REQUIRE(fast.verdict != Verdict::inconclusive);
      CHECK((fast.verdict == Verdict::yes) == subs.empty());
      if (fast.witness) {
        CHECK(is_invariant(*fast.witness, gens));
        CHECK(fast.witness->cols() > 0);
        CHECK(fast.witness->cols() < n);
      }
      (subs.empty() ? irreducible : reducible)++;
    }
  }
  CHECK(reducible > 10);
  CHECK(irreducible > 10);
}
