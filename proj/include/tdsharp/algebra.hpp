#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tdsharp/linalg.hpp"
#include "tdsharp/random.hpp"

namespace tdsharp {

/// A subspace of n x n matrices held in canonical form: the basis is the
/// reduced echelon form of the row-major vectorizations, so coordinates of a
/// member are its entries at the pivot positions.
class AlgebraBasis {
 public:
  /// Span of `elements`; `unit` is recorded as the multiplicative identity
  /// (or the defining idempotent for one-sided spaces).
  static AlgebraBasis span(const Field& field, std::size_t n, const std::vector<ExactMatrix>& elements,
                           const ExactMatrix& unit);

  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<ExactMatrix>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const ExactMatrix& unit() const { return unit_; }
  const std::vector<ExactMatrix>& generators() const { return generators_; }

  bool contains(const ExactMatrix& m) const;
  /// Coordinates in the canonical basis; throws DimensionError if `m` is not a member.
  std::vector<Scalar> coords(const ExactMatrix& m) const;
  ExactMatrix element(const std::vector<Scalar>& coords) const;
  /// Coordinates over the prime subfield (length dim * degree).
  std::vector<Scalar> prime_coords(const ExactMatrix& m) const;
  std::size_t prime_dim() const { return dim() * field_.degree(); }

  bool same_space(const AlgebraBasis& o) const { return basis_ == o.basis_; }

 private:
  friend AlgebraBasis subalgebra_closure(const std::vector<ExactMatrix>&, const ExactMatrix&);
  AlgebraBasis(Field field, std::size_t n, ExactMatrix unit) : field_(std::move(field)), n_(n), unit_(std::move(unit)) {}

  Field field_;
  std::size_t n_;
  std::vector<ExactMatrix> basis_;
  std::vector<std::size_t> pivots_;
  ExactMatrix unit_;
  std::vector<ExactMatrix> generators_;
};

std::vector<Scalar> vectorize(const ExactMatrix& m);

/// Smallest subalgebra with identity `unit` containing the generators.
AlgebraBasis subalgebra_closure(const std::vector<ExactMatrix>& generators, const ExactMatrix& unit);

enum class Side { right, left };

/// right: span{b e}; left: span{e b}.
AlgebraBasis one_sided_space(const AlgebraBasis& t, const ExactMatrix& e, Side side);

/// Center of a unital algebra. Commutation is tested against the recorded
/// generators when present, otherwise against every basis element.
AlgebraBasis center(const AlgebraBasis& t);

/// e T e with unit e.
AlgebraBasis corner(const AlgebraBasis& t, const ExactMatrix& e);

struct CommutativityResult {
  bool commutative = true;
  std::optional<std::pair<ExactMatrix, ExactMatrix>> witness;
};

CommutativityResult is_commutative(const AlgebraBasis& a);

/// True iff the unital subalgebra generated by e A^i e (1 <= i <= d) is the corner.
bool corner_generators_check(const AlgebraBasis& corner_algebra, const ExactMatrix& e, const ExactMatrix& a,
                             std::size_t d);

/// Minimal polynomial of `a` inside `alg` (a^0 is the algebra unit), over the base field.
Polynomial algebra_minimal_polynomial(const AlgebraBasis& alg, const ExactMatrix& a);
/// The same over the prime subfield.
Polynomial prime_minimal_polynomial(const AlgebraBasis& alg, const ExactMatrix& a);

/// Inverse of `a` in `alg`, or nullopt when `a` is not invertible. Throws if a is not a member.
std::optional<ExactMatrix> invert_in_algebra(const ExactMatrix& a, const AlgebraBasis& alg);

struct FieldCertificate {
  ExactMatrix primitive;
  Polynomial minpoly;  // over the prime subfield, irreducible, degree == prime_dim
  std::size_t dim = 0; // dimension over the base field
};

enum class Verdict { yes, no, inconclusive };

struct FieldCertification {
  Verdict verdict = Verdict::inconclusive;
  std::optional<FieldCertificate> certificate;
  /// Disproof: nonzero a, b with a b == 0, or a non-commuting pair.
  std::optional<std::pair<ExactMatrix, ExactMatrix>> witness;
};

/// Certifies that a commutative algebra is a field by finding a primitive
/// element over the prime subfield. Candidates: prime-subfield multiples of
/// basis elements, sums of up to three basis elements, then `budget` random
/// combinations.
FieldCertification field_certify(const AlgebraBasis& alg, Rng& rng, std::size_t budget = 200);

/// Isomorphism between a certified field algebra and GF(p)[x]/(m) or Q[x]/(m).
class FieldPresentation {
 public:
  FieldPresentation(const AlgebraBasis& alg, const FieldCertificate& cert);

  const Field& field() const { return field_; }
  const AlgebraBasis& algebra() const { return alg_; }
  const FieldCertificate& certificate() const { return cert_; }

  Scalar to_field(const ExactMatrix& z) const;
  ExactMatrix from_field(const Scalar& c) const;
  /// Image of a base-field scalar theta (as theta * unit).
  Scalar embed_base(const Scalar& theta) const;

 private:
  AlgebraBasis alg_;
  FieldCertificate cert_;
  Field field_;
  std::vector<ExactMatrix> powers_;
  ExactMatrix to_power_coords_;  // prime coords -> power-basis coords
};

struct IrreducibilityResult {
  Verdict verdict = Verdict::inconclusive;  // yes == irreducible
  std::optional<ExactMatrix> witness;       // column basis of a proper invariant subspace
};

/// Smallest subspace containing the columns of `vectors` and stable under the generators.
ExactMatrix spin(const ExactMatrix& vectors, const std::vector<ExactMatrix>& generators);

/// MeatAxe-style test with Norton's dual criterion; seeded random words of
/// length at most `max_word` over the generators.
IrreducibilityResult norton_irreducible(const std::vector<ExactMatrix>& generators, std::size_t n, Rng& rng,
                                        std::size_t budget = 200, std::size_t max_word = 8);

/// Every proper nonzero invariant subspace (column bases). Only for fields of
/// order at most 4 and n at most 4.
std::vector<ExactMatrix> bruteforce_invariant_subspaces(const std::vector<ExactMatrix>& generators, std::size_t n);

}  // namespace tdsharp
