#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdsharp/td_verify.hpp"

namespace tdsharp {

enum class Outcome { accepted, rejected, corrupted, inconclusive };

std::string to_string(Outcome outcome);
int exit_code(Outcome outcome);

/// Names of the per-instance checks, in certificate order.
const std::vector<std::string>& lemma_names();

struct SharpenOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 200;
  std::size_t surjectivity_samples = 10;
};

/// subalgebra_closure({A, A*}, I), asserting every idempotent is a member.
AlgebraBasis build_T(const TDSystemRecord& record);

struct CenterField {
  AlgebraBasis Z;
  FieldCertification certification;
  std::size_t rho() const { return Z.dim(); }
};

CenterField center_field(const AlgebraBasis& T, Rng& rng, std::size_t budget);

struct CornerReport {
  std::string name;  // "E0", "Ed", "E*0", "E*d"
  std::size_t dim = 0;
  bool commutative = false;
  bool generated = false;
  FieldCertification certification;
  bool lands_in_corner = false;
  bool multiplicative = false;
  bool unital = false;
  bool injective = false;
  bool surjective = false;
  std::optional<ExactMatrix> iso_matrix;  // corner coordinates of z_i e, one column per Z-basis element

  bool iso() const { return lands_in_corner && multiplicative && unital && injective && surjective; }
};

/// Checks z -> z e from Z(T) onto the corner e T e. The corner is generated
/// by e X^i e, i = 1..d, where X is A for the E* corners and A* for the E corners.
CornerReport corner_iso_check(const AlgebraBasis& T, const AlgebraBasis& Z, const ExactMatrix& e,
                              const ExactMatrix& generator, std::size_t d, const std::string& name, Rng& rng,
                              std::size_t budget);

struct DualBasisPair {
  std::size_t n = 0;
  std::vector<ExactMatrix> x;        // basis of T E*0 over the corner field
  std::vector<ExactMatrix> x_dual;   // elements of E*0 T with x'_i x_j = delta_ij E*0
  std::optional<ExactMatrix> gram;   // over the corner field presentation
  bool nondegenerate = false;
  bool dual_identity = false;
};

DualBasisPair bilinear_dual_basis(const AlgebraBasis& T, const ExactMatrix& e, const FieldPresentation& corner_field);

/// z = sum x_i a x'_i. Returns z; `ok` reports z central, in Z, and z e == a.
ExactMatrix center_surjectivity_witness(const ExactMatrix& a, const DualBasisPair& dual, const AlgebraBasis& T,
                                        const AlgebraBasis& Z, const ExactMatrix& e, bool& ok);

struct ModuleIsoReport {
  std::vector<Scalar> v;
  std::size_t dim_TE0 = 0;
  std::size_t rank_of_map = 0;
  bool vbij = false;
  bool es0inj = false;
  bool ete0 = false;
};

ModuleIsoReport tv_module_iso_check(const AlgebraBasis& T, const ExactMatrix& e, const AlgebraBasis& corner_algebra,
                                    const FieldCertificate& corner_cert, Rng& rng, std::size_t budget);

struct RebaseResult {
  std::optional<TDSystemRecord> record;  // over the field presenting Z(T); set once re-verified
  std::vector<Scalar> embedded_theta, embedded_theta_star;
  bool verified = false;
  bool eigenvalues_match = false;
  bool shape_law = false;
  bool sharp = false;
  bool dimension_law = false;
  bool round_trip = false;
  std::optional<ExactMatrix> conjugator;  // X with X A = A'' X, X A* = A*'' X over the prime subfield
};

/// Rebases V over Z(T). When rho == 1 the input record is returned unchanged.
RebaseResult rebase_over_center(const TDSystemRecord& record, const AlgebraBasis& Z, const FieldCertificate& cert,
                                const SharpenOptions& options);

/// An invertible X with X A = B X and X A* = B* X, if the solver finds one.
std::optional<ExactMatrix> simultaneous_conjugator(const ExactMatrix& A, const ExactMatrix& Astar, const ExactMatrix& B,
                                                   const ExactMatrix& Bstar, Rng& rng);

struct SharpeningCertificate {
  explicit SharpeningCertificate(TDSystemRecord in) : input(std::move(in)) {}

  TDSystemRecord input;
  std::size_t T_dim = 0;
  std::size_t rho = 0;
  std::optional<FieldCertificate> Z_certificate;
  std::vector<CornerReport> corners;
  std::optional<DualBasisPair> dual;
  std::size_t surjectivity_checked = 0;
  bool surjectivity_ok = false;
  std::optional<ModuleIsoReport> module;
  std::optional<RebaseResult> sharpened;
  std::map<std::string, bool> lemma_passes;
  std::string failed;  // first failing check, empty on success
};

struct SharpenResult {
  Outcome outcome = Outcome::rejected;
  VerificationResult verification;
  std::optional<SharpeningCertificate> certificate;
};

SharpenResult sharpen_pipeline(const ExactMatrix& A, const ExactMatrix& Astar, const SharpenOptions& options = {});

}  // namespace tdsharp
