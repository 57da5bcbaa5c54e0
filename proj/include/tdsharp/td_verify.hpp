#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdsharp/algebra.hpp"

namespace tdsharp {

struct TDSystemRecord {
  Field field;
  ExactMatrix A, Astar;
  std::size_t d = 0;
  std::vector<Scalar> theta, theta_star;
  std::vector<ExactMatrix> E, E_star;
  std::vector<std::size_t> shape;
  bool sharp = false;

  std::size_t n() const { return A.rows(); }
};

enum class FailureTag {
  not_diagonalizable_A,
  not_diagonalizable_Astar,
  no_standard_ordering_A,
  no_standard_ordering_Astar,
  reducible,
  diameter_mismatch,
  inconclusive,
};

std::string to_string(FailureTag tag);

struct VerificationFailure {
  FailureTag tag;
  std::string detail;
  std::optional<Polynomial> minpoly_factor;         // not diagonalizable
  std::vector<std::pair<std::size_t, std::size_t>> graph_edges;  // no standard ordering
  std::optional<ExactMatrix> subspace;              // reducible: column basis
};

struct VerificationResult {
  std::optional<TDSystemRecord> record;
  std::optional<VerificationFailure> failure;
  std::size_t orderings_A = 0, orderings_Astar = 0;

  bool accepted() const { return record.has_value(); }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 200;
};

/// Orderings of the idempotents under which `b` acts block-tridiagonally:
/// the two traversals of the adjacency path, one ordering when there is a
/// single idempotent, none when the adjacency graph is not a path.
std::vector<std::vector<std::size_t>> find_standard_orderings(const std::vector<ExactMatrix>& idempotents,
                                                              const ExactMatrix& b);

VerificationResult verify_td_system(const ExactMatrix& A, const ExactMatrix& Astar, const VerifyOptions& options = {});

/// Reverses the ordering of E (and theta) and/or E* (and theta*).
TDSystemRecord reoriented(const TDSystemRecord& record, bool reverse_E, bool reverse_E_star);

struct ShapeProfile {
  std::vector<std::size_t> shape;
  bool sharp = false;
  std::size_t d = 0;
};

/// Ranks of the idempotents; throws InternalError when rank E_i != rank E*_i.
ShapeProfile shape_profile(const TDSystemRecord& record);

bool is_symmetric_unimodal(const std::vector<std::size_t>& shape);

/// Exact checks of the TD system identities on a record: sum E_i = I,
/// E_i E_j = delta_ij E_i, A = sum theta_i E_i, prod (A - theta_i I) = 0, and
/// E_i A* E_j == 0 exactly when |i - j| > 1 (likewise for the dual side).
/// Returns one message per violated identity.
std::vector<std::string> td_identity_violations(const TDSystemRecord& record);

}  // namespace tdsharp
