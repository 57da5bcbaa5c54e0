#pragma once

#include <optional>
#include <vector>

#include "tdsharp/factor.hpp"
#include "tdsharp/matrix.hpp"
#include "tdsharp/polynomial.hpp"

namespace tdsharp {

struct Echelon {
  ExactMatrix form;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

Echelon rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);

/// Column-basis matrix of the right null space (cols x nullity).
ExactMatrix kernel(const ExactMatrix& m);
/// Columns of `m` at the pivot positions: a basis of its column space.
ExactMatrix column_space(const ExactMatrix& m);

struct LinearSolution {
  bool consistent = false;
  std::optional<ExactMatrix> solution;     // M * X == targets
  std::vector<Scalar> witness;             // y with y*M == 0, y*targets != 0
};

LinearSolution solve_linear(const ExactMatrix& m, const ExactMatrix& targets);

/// Throws DivisionByZero when singular.
ExactMatrix inverse(const ExactMatrix& m);

Polynomial minimal_polynomial(const ExactMatrix& m);
ExactMatrix evaluate(const Polynomial& f, const ExactMatrix& m);

struct SpectralData {
  Polynomial minpoly;
  bool diagonalizable = false;
  std::vector<Scalar> eigenvalues;           // canonical order
  std::vector<ExactMatrix> eigenspaces;      // column bases
  std::vector<ExactMatrix> idempotents;
  /// When not diagonalizable: an irreducible factor of degree > 1 or a repeated factor.
  std::optional<Polynomial> witness;
};

SpectralData eigendecompose(const ExactMatrix& m);

/// E_i = prod_{j != i} (M - theta_j I) / (theta_i - theta_j), with the
/// standard identities asserted afterwards.
std::vector<ExactMatrix> primitive_idempotents(const ExactMatrix& m, const std::vector<Scalar>& eigenvalues);

/// Incrementally maintained echelon basis of a row space.
class RowSpace {
 public:
  RowSpace(Field field, std::size_t ambient);

  const Field& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// Residual of `v` after reduction by the current basis.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;
  bool contains(const std::vector<Scalar>& v) const;
  /// Adds `v` if independent; returns whether the dimension grew.
  bool add(const std::vector<Scalar>& v);

  /// Vectors in insertion order (as given, not reduced).
  const std::vector<std::vector<Scalar>>& inserted() const { return inserted_; }
  /// Canonical reduced echelon basis with its pivot columns.
  Echelon canonical() const;

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<std::vector<Scalar>> rows_;  // pivot entry normalized to 1
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<Scalar>> inserted_;
};

}  // namespace tdsharp
