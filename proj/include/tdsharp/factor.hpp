#pragma once

#include <cstddef>
#include <vector>

#include "tdsharp/polynomial.hpp"

namespace tdsharp {

struct Factor {
  Polynomial poly;  // monic irreducible
  std::size_t multiplicity = 1;
};

/// Complete factorization into monic irreducibles, sorted by poly_less.
/// Finite fields: squarefree split, distinct-degree and Cantor-Zassenhaus
/// equal-degree splitting. Q: Zassenhaus (Hensel lifting + recombination).
/// Number fields: Trager's norm method on top of the Q factorizer.
std::vector<Factor> factor(const Polynomial& f);

bool is_irreducible(const Polynomial& f);

/// Squarefree decomposition: f = lc * prod g_i^i.
std::vector<Factor> squarefree_decomposition(const Polynomial& f);

/// Norm of a number-field element down to Q.
mpq_class number_field_norm(const Field& field, const Scalar& a);

struct Root {
  Scalar value;
  std::size_t multiplicity = 1;
};

/// Finite fields up to this order are scanned exhaustively.
inline const mpz_class kExhaustiveRootBound = 4096;

/// Distinct roots in the coefficient field with multiplicities, sorted by
/// Field::compare. Small finite fields are scanned; larger ones use
/// gcd(f, x^q - x) and equal-degree splitting; Q and number fields read off
/// the linear factors.
std::vector<Root> roots_in_field(const Polynomial& f);

}  // namespace tdsharp
