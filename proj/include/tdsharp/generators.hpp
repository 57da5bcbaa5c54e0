#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdsharp/matrix.hpp"
#include "tdsharp/random.hpp"
#include "tdsharp/td_verify.hpp"

namespace tdsharp {

struct MatrixPair {
  ExactMatrix A, Astar;
};

struct SplitFormParams {
  Field field;
  std::vector<Scalar> theta;       // d+1 distinct
  std::vector<Scalar> theta_star;  // d+1 distinct
  std::vector<Scalar> phi;         // d nonzero
};

/// A lower bidiagonal (theta on the diagonal, 1 below), A* upper bidiagonal
/// (theta* on the diagonal, phi above). Not verified.
MatrixPair split_form_pair(const SplitFormParams& params);

struct SplitOptions {
  std::size_t d = 1;
  /// Draw theta and theta* from the prime subfield.
  bool base_eigenvalues = false;
};

/// Seeded random split-form parameters satisfying the Leonard
/// parameter-array conditions, so the pair is tridiagonal by construction.
/// Requires d < p when d >= 3 (or d >= 2 with base eigenvalues).
SplitFormParams random_leonard_params(const Field& field, const SplitOptions& options, Rng& rng);

/// Entrywise regular representation over the prime subfield (k x k blocks
/// in the power basis of the generator). Identity when k == 1.
ExactMatrix restrict_scalars(const ExactMatrix& m);

/// Restricts both matrices; every eigenvalue in the field must lie in the
/// prime subfield.
MatrixPair restrict_scalars(const MatrixPair& pair);

struct TwistedParams {
  std::int64_t p = 3;
  std::int64_t theta0 = 0, theta1 = 1, theta_star0 = 0, theta_star1 = 1;
  Scalar gamma;  // element of GF(p^2) with the default modulus
};

/// B = [[t0,0],[1,t1]], B* = [[s0,g],[0,s1]] over GF(p^2).
MatrixPair twisted_seed(const TwistedParams& params);
/// The 4x4 restriction of twisted_seed to GF(p).
MatrixPair twisted_diameter1_nonsharp(const TwistedParams& params);

/// Tensor product of d diameter-1 split-form pairs: A = sum of A_j acting on
/// the j-th factor. Shape (binomial(d, i)); n = 2^d.
MatrixPair tensor_split_pair(const std::vector<SplitFormParams>& factors);

enum class SplitShape {
  leonard,   // shape all ones
  binomial,  // tensor product of d diameter-1 pairs, shape (binomial(d, i))
};

SplitShape split_shape_from_string(const std::string& name);
std::string to_string(SplitShape shape);

struct GeneratedInstance {
  MatrixPair pair;
  TDSystemRecord record;               // verification of `pair`
  std::optional<TDSystemRecord> seed;  // restriction instances: the sharp seed over the extension
  std::size_t attempts = 0;
};

/// Draws seeded split-form pairs over `field` until one verifies.
GeneratedInstance generate_split(const Field& field, const SplitOptions& options, SplitShape shape,
                                 std::uint64_t seed, const VerifyOptions& verify = {}, std::size_t max_attempts = 200);

/// Draws a sharp seed over the extension `field` with eigenvalues in the
/// prime subfield, restricts scalars and retries until the restriction verifies.
GeneratedInstance generate_restriction(const Field& field, const SplitOptions& options, SplitShape shape,
                                       std::uint64_t seed, const VerifyOptions& verify = {},
                                       std::size_t max_attempts = 200);

/// Parses "a", "1+i", "2+2*i", "i" etc. (i denotes the generator) into a field element.
Scalar parse_scalar_expression(const Field& field, const std::string& text);

}  // namespace tdsharp
