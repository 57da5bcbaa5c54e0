#include "tdsharp/sharpen.hpp"

#include <algorithm>
#include <span>

#include "tdsharp/generators.hpp"

namespace tdsharp {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::accepted: return "accepted";
    case Outcome::rejected: return "rejected";
    case Outcome::corrupted: return "corrupted";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "unknown";
}

int exit_code(Outcome outcome) {
  switch (outcome) {
    case Outcome::accepted: return 0;
    case Outcome::rejected: return 2;
    case Outcome::corrupted: return 3;
    case Outcome::inconclusive: return 4;
  }
  return 1;
}

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names{"char", "center_field", "comgen", "ete0", "es0inj", "vbij", "ext",
                                              "ndeg", "dualb", "centact", "last", "tdk", "final"};
  return names;
}

namespace {

std::vector<Scalar> unit_vector(const Field& f, std::size_t n, std::size_t i, const Scalar& value) {
  std::vector<Scalar> v(n, f.zero());
  v[i] = value;
  return v;
}

ExactMatrix random_element(const AlgebraBasis& alg, Rng& rng) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < alg.dim(); ++i) c.push_back(random_scalar(alg.field(), rng));
  return alg.element(c);
}

std::size_t span_rank(const std::vector<ExactMatrix>& ms, const Field& f, std::size_t n) {
  RowSpace rs(f, n * n);
  for (const auto& m : ms) rs.add(vectorize(m));
  return rs.dim();
}

// Restriction of `c` to the column space of `basis` (basis * X == c * basis).
ExactMatrix restrict_to(const ExactMatrix& c, const ExactMatrix& basis) {
  auto sol = solve_linear(basis, c * basis);
  if (!sol.consistent) throw InternalError("subspace is not invariant under the corner element");
  return *sol.solution;
}

Verdict irreducible_action(const std::vector<ExactMatrix>& gens, std::size_t dim, Rng& rng, std::size_t budget) {
  if (dim <= 1) return Verdict::yes;
  const Field& f = gens[0].field();
  if (f.is_finite() && f.order() <= 4 && dim <= 4)
    return bruteforce_invariant_subspaces(gens, dim).empty() ? Verdict::yes : Verdict::no;
  return norton_irreducible(gens, dim, rng, budget).verdict;
}

}  // namespace

AlgebraBasis build_T(const TDSystemRecord& record) {
  const Field& f = record.field;
  AlgebraBasis t = subalgebra_closure({record.A, record.Astar}, ExactMatrix::identity(f, record.n()));
  for (std::size_t i = 0; i <= record.d; ++i) {
    if (!t.contains(record.E[i])) throw InternalError("E_" + std::to_string(i) + " is not in T");
    if (!t.contains(record.E_star[i])) throw InternalError("E*_" + std::to_string(i) + " is not in T");
  }
  return t;
}

CenterField center_field(const AlgebraBasis& T, Rng& rng, std::size_t budget) {
  AlgebraBasis z = center(T);
  FieldCertification cert = field_certify(z, rng, budget);
  return {std::move(z), std::move(cert)};
}

CornerReport corner_iso_check(const AlgebraBasis& T, const AlgebraBasis& Z, const ExactMatrix& e,
                              const ExactMatrix& generator, std::size_t d, const std::string& name, Rng& rng,
                              std::size_t budget) {
  const Field& f = T.field();
  const std::size_t n = T.n();
  CornerReport out;
  out.name = name;
  AlgebraBasis c = corner(T, e);
  out.dim = c.dim();
  out.commutative = is_commutative(c).commutative;
  out.generated = corner_generators_check(c, e, generator, d);
  if (out.commutative) {
    out.certification = field_certify(c, rng, budget);
  } else {
    out.certification.verdict = Verdict::no;
    out.certification.witness = is_commutative(c).witness;
  }

  std::vector<ExactMatrix> images;
  out.lands_in_corner = true;
  for (const auto& z : Z.basis()) {
    ExactMatrix ze = z * e;
    if (!(ze == e * z * e) || !c.contains(ze)) out.lands_in_corner = false;
    images.push_back(std::move(ze));
  }
  out.multiplicative = true;
  for (std::size_t i = 0; i < Z.dim() && out.multiplicative; ++i)
    for (std::size_t j = 0; j < Z.dim(); ++j)
      if (!(Z.basis()[i] * Z.basis()[j] * e == images[i] * images[j])) {
        out.multiplicative = false;
        break;
      }
  out.unital = Z.unit() * e == e && c.unit() == e;
  out.injective = span_rank(images, f, n) == Z.dim();
  out.surjective = out.injective && out.lands_in_corner && c.dim() == Z.dim();
  if (out.lands_in_corner) {
    std::vector<std::vector<Scalar>> cols;
    for (const auto& im : images) cols.push_back(c.coords(im));
    out.iso_matrix = ExactMatrix::from_columns(f, c.dim(), cols);
  }
  return out;
}

DualBasisPair bilinear_dual_basis(const AlgebraBasis& T, const ExactMatrix& e, const FieldPresentation& corner_field) {
  const Field& f = T.field();
  const std::size_t n = T.n();
  const AlgebraBasis& c = corner_field.algebra();
  const AlgebraBasis right = one_sided_space(T, e, Side::right);
  const AlgebraBasis left = one_sided_space(T, e, Side::left);

  // Greedy basis over the corner field: keep a candidate when its corner-span leaves the current span.
  auto greedy = [&](const AlgebraBasis& space, bool act_right) {
    RowSpace span(f, n * n);
    std::vector<ExactMatrix> chosen;
    for (const auto& cand : space.basis()) {
      if (span.dim() == space.dim()) break;
      if (span.contains(vectorize(cand))) continue;
      chosen.push_back(cand);
      for (const auto& s : c.basis()) span.add(vectorize(act_right ? cand * s : s * cand));
    }
    if (span.dim() != space.dim()) throw InternalError("corner-field span of a one-sided space stalled");
    return chosen;
  };

  DualBasisPair out;
  out.x = greedy(right, true);
  const std::vector<ExactMatrix> y = greedy(left, false);
  out.n = out.x.size();
  if (y.size() != out.n) return out;

  const Field& ef = corner_field.field();
  ExactMatrix gram(ef, out.n, out.n);
  for (std::size_t k = 0; k < out.n; ++k)
    for (std::size_t j = 0; j < out.n; ++j) gram(k, j) = corner_field.to_field(y[k] * out.x[j]);
  out.gram = gram;
  ExactMatrix h(ef, 0, 0);
  try {
    h = inverse(gram);
  } catch (const DivisionByZero&) {
    return out;
  }
  out.nondegenerate = true;

  for (std::size_t i = 0; i < out.n; ++i) {
    ExactMatrix xd(f, n, n);
    for (std::size_t k = 0; k < out.n; ++k) xd = xd + corner_field.from_field(h(i, k)) * y[k];
    out.x_dual.push_back(std::move(xd));
  }
  out.dual_identity = true;
  const ExactMatrix zero(f, n, n);
  for (std::size_t i = 0; i < out.n && out.dual_identity; ++i)
    for (std::size_t j = 0; j < out.n; ++j)
      if (!(out.x_dual[i] * out.x[j] == (i == j ? e : zero))) {
        out.dual_identity = false;
        break;
      }
  return out;
}

ExactMatrix center_surjectivity_witness(const ExactMatrix& a, const DualBasisPair& dual, const AlgebraBasis& T,
                                        const AlgebraBasis& Z, const ExactMatrix& e, bool& ok) {
  const std::size_t n = T.n();
  ExactMatrix z(T.field(), n, n);
  for (std::size_t i = 0; i < dual.n; ++i) z = z + dual.x[i] * a * dual.x_dual[i];
  ok = Z.contains(z) && z * e == a;
  for (const auto& t : T.basis()) {
    if (!ok) break;
    ok = z * t == t * z;
  }
  return z;
}

ModuleIsoReport tv_module_iso_check(const AlgebraBasis& T, const ExactMatrix& e, const AlgebraBasis& corner_algebra,
                                    const FieldCertificate& corner_cert, Rng& rng, std::size_t budget) {
  const Field& f = T.field();
  const std::size_t n = T.n();
  ModuleIsoReport out;
  const ExactMatrix image = column_space(e);
  if (image.cols() == 0) throw InternalError("E*0 is zero");
  out.v = image.column(0);

  const AlgebraBasis right = one_sided_space(T, e, Side::right);
  out.dim_TE0 = right.dim();
  std::vector<std::vector<Scalar>> cols;
  for (const auto& s : right.basis()) cols.push_back(s.apply(out.v));
  out.rank_of_map = rank(ExactMatrix::from_columns(f, n, cols));
  out.vbij = out.rank_of_map == out.dim_TE0 && out.rank_of_map == n;

  std::vector<std::vector<Scalar>> corner_cols;
  for (const auto& s : corner_algebra.basis()) corner_cols.push_back(s.apply(out.v));
  const bool corner_injective = rank(ExactMatrix::from_columns(f, n, corner_cols)) == corner_algebra.dim();
  const ExactMatrix restricted_primitive = restrict_to(corner_cert.primitive, image);
  const bool primitive_injective = rank(restricted_primitive) == image.cols();
  out.es0inj = corner_injective && primitive_injective;

  std::vector<ExactMatrix> gens;
  for (const auto& s : corner_algebra.basis()) gens.push_back(restrict_to(s, image));
  out.ete0 = irreducible_action(gens, image.cols(), rng, budget) == Verdict::yes;
  return out;
}

std::optional<ExactMatrix> simultaneous_conjugator(const ExactMatrix& A, const ExactMatrix& Astar, const ExactMatrix& B,
                                                   const ExactMatrix& Bstar, Rng& rng) {
  const Field& f = A.field();
  const std::size_t n = A.rows();
  if (B.rows() != n || !(B.field() == f)) return std::nullopt;
  const std::vector<const ExactMatrix*> gens{&A, &Astar}, targets{&B, &Bstar};

  // X is determined by u = X v for a cyclic vector v: X (w v) = w'' u for every word w.
  for (std::size_t start = 0; start < n; ++start) {
    RowSpace span(f, n);
    std::vector<std::vector<Scalar>> vecs{unit_vector(f, n, start, f.one())};
    std::vector<ExactMatrix> words{ExactMatrix::identity(f, n)};
    span.add(vecs[0]);
    for (std::size_t idx = 0; idx < vecs.size() && vecs.size() < n; ++idx)
      for (std::size_t g = 0; g < gens.size(); ++g) {
        auto w = gens[g]->apply(vecs[idx]);
        if (span.add(w)) {
          vecs.push_back(std::move(w));
          words.push_back(*targets[g] * words[idx]);
        }
      }
    if (vecs.size() < n) continue;

    const ExactMatrix s = ExactMatrix::from_columns(f, n, vecs);
    const ExactMatrix s_inv = inverse(s);
    ExactMatrix system(f, 2 * n * n, n);
    std::size_t row = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const ExactMatrix coeffs = s_inv * *gens[g] * s;
      for (std::size_t i = 0; i < n; ++i) {
        ExactMatrix block = *targets[g] * words[i];
        for (std::size_t j = 0; j < n; ++j)
          if (!f.is_zero(coeffs(j, i))) block = block - words[j].scaled(coeffs(j, i));
        for (std::size_t r = 0; r < n; ++r, ++row)
          for (std::size_t c = 0; c < n; ++c) system(row, c) = block(r, c);
      }
    }
    const ExactMatrix ker = kernel(system);
    if (ker.cols() == 0) return std::nullopt;

    auto build = [&](const std::vector<Scalar>& u) -> std::optional<ExactMatrix> {
      std::vector<std::vector<Scalar>> images;
      for (const auto& w : words) images.push_back(w.apply(u));
      ExactMatrix x = ExactMatrix::from_columns(f, n, images) * s_inv;
      if (rank(x) != n || !(x * A == B * x) || !(x * Astar == Bstar * x)) return std::nullopt;
      return x;
    };
    for (std::size_t j = 0; j < ker.cols(); ++j)
      if (auto x = build(ker.column(j))) return x;
    for (int trial = 0; trial < 32; ++trial) {
      std::vector<Scalar> u(n, f.zero());
      for (std::size_t j = 0; j < ker.cols(); ++j) {
        const Scalar c = random_scalar(f, rng);
        for (std::size_t r = 0; r < n; ++r) f.add_product(u[r], c, ker(r, j));
      }
      if (auto x = build(u)) return x;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

RebaseResult rebase_over_center(const TDSystemRecord& record, const AlgebraBasis& Z, const FieldCertificate& cert,
                                const SharpenOptions& options) {
  const Field& f = record.field;
  const std::size_t n = record.n();
  const std::size_t rho = Z.dim();
  RebaseResult out;
  Rng rng(options.seed ^ 0x5eba5eULL);

  auto finish_laws = [&](const TDSystemRecord& rebased, std::size_t factor) {
    const std::size_t rho0 = record.shape.empty() ? 0 : record.shape[0];
    out.sharp = rebased.sharp;
    out.shape_law = rebased.shape.size() == record.shape.size() && rho0 > 0;
    for (std::size_t i = 0; out.shape_law && i < record.shape.size(); ++i)
      out.shape_law = record.shape[i] % rho0 == 0 && rebased.shape[i] == record.shape[i] / rho0;
    out.dimension_law = rebased.E.size() == record.E.size() && rebased.E_star.size() == record.E_star.size();
    for (std::size_t i = 0; out.dimension_law && i < record.E.size(); ++i)
      out.dimension_law = factor * rank(rebased.E[i]) == rank(record.E[i]) &&
                          factor * rank(rebased.E_star[i]) == rank(record.E_star[i]);
  };

  if (rho == 1) {
    out.record = record;
    out.embedded_theta = record.theta;
    out.embedded_theta_star = record.theta_star;
    out.verified = true;
    out.eigenvalues_match = true;
    finish_laws(record, 1);
    out.conjugator = simultaneous_conjugator(record.A, record.Astar, record.A, record.Astar, rng);
    out.round_trip = out.conjugator.has_value();
    return out;
  }

  const Field prime = f.prime_subfield();
  const std::size_t k = f.degree();
  const std::size_t big = k * n;
  const FieldPresentation pres(Z, cert);
  const Field& ef = pres.field();
  const std::size_t deg = static_cast<std::size_t>(cert.minpoly.degree());
  if (deg == 0 || big % deg != 0) throw InternalError("dimension of Z(T) does not divide dim V");
  const std::size_t m = big / deg;

  auto vec_prime = [&](const std::vector<Scalar>& u) {
    std::vector<Scalar> out_v;
    out_v.reserve(big);
    for (const auto& x : u)
      for (auto& c : f.coordinates(x)) out_v.push_back(std::move(c));
    return out_v;
  };
  std::vector<ExactMatrix> wpow{ExactMatrix::identity(f, n)};
  for (std::size_t l = 1; l < deg; ++l) wpow.push_back(wpow.back() * cert.primitive);
  std::vector<Scalar> fbasis{f.one()};
  for (std::size_t t = 1; t < k; ++t) fbasis.push_back(f.mul(fbasis.back(), f.generator()));

  // Greedy Z(T)-basis of V in standard vector order.
  RowSpace span(prime, big);
  std::vector<std::vector<Scalar>> b;
  std::vector<std::vector<Scalar>> qcols;
  for (std::size_t i = 0; i < n && span.dim() < big; ++i)
    for (std::size_t t = 0; t < k && span.dim() < big; ++t) {
      auto u = unit_vector(f, n, i, fbasis[t]);
      if (span.contains(vec_prime(u))) continue;
      for (std::size_t l = 0; l < deg; ++l) {
        auto col = vec_prime(wpow[l].apply(u));
        if (!span.add(col)) throw InternalError("greedy Z(T)-basis stalled");
        qcols.push_back(std::move(col));
      }
      b.push_back(std::move(u));
    }
  if (b.size() != m) throw InternalError("greedy Z(T)-basis stalled");
  const ExactMatrix q_inv = inverse(ExactMatrix::from_columns(prime, big, qcols));

  auto to_e = [&](const std::vector<Scalar>& u) {
    auto c = q_inv.apply(vec_prime(u));
    std::vector<Scalar> coords;
    for (std::size_t j = 0; j < m; ++j)
      coords.push_back(ef.from_coordinates(std::span<const Scalar>(c.data() + j * deg, deg)));
    return coords;
  };
  auto over_e = [&](const ExactMatrix& a) {
    std::vector<std::vector<Scalar>> cols;
    for (const auto& bj : b) cols.push_back(to_e(a.apply(bj)));
    return ExactMatrix::from_columns(ef, m, cols);
  };
  const ExactMatrix ae = over_e(record.A), ase = over_e(record.Astar);

  for (const auto& t : record.theta) out.embedded_theta.push_back(pres.embed_base(t));
  for (const auto& t : record.theta_star) out.embedded_theta_star.push_back(pres.embed_base(t));

  VerificationResult vr = verify_td_system(ae, ase, {options.seed, options.budget});
  if (!vr.accepted()) return out;
  out.verified = true;
  TDSystemRecord rebased = *vr.record;
  auto reversed = [](std::vector<Scalar> v) {
    std::reverse(v.begin(), v.end());
    return v;
  };
  const bool flip = rebased.theta != out.embedded_theta && rebased.theta == reversed(out.embedded_theta);
  const bool flip_star =
      rebased.theta_star != out.embedded_theta_star && rebased.theta_star == reversed(out.embedded_theta_star);
  rebased = reoriented(rebased, flip, flip_star);
  out.eigenvalues_match = rebased.theta == out.embedded_theta && rebased.theta_star == out.embedded_theta_star;
  finish_laws(rebased, rho);
  out.record = rebased;

  out.conjugator = simultaneous_conjugator(restrict_scalars(record.A), restrict_scalars(record.Astar),
                                           restrict_scalars(ae), restrict_scalars(ase), rng);
  out.round_trip = out.conjugator.has_value();
  return out;
}

SharpenResult sharpen_pipeline(const ExactMatrix& A, const ExactMatrix& Astar, const SharpenOptions& options) {
  SharpenResult result;
  result.verification = verify_td_system(A, Astar, {options.seed, options.budget});
  if (!result.verification.accepted()) {
    result.outcome = result.verification.failure && result.verification.failure->tag == FailureTag::inconclusive
                         ? Outcome::inconclusive
                         : Outcome::rejected;
    return result;
  }
  const TDSystemRecord& rec = *result.verification.record;
  result.certificate.emplace(rec);
  SharpeningCertificate& cert = *result.certificate;
  cert.input = rec;
  auto& passes = cert.lemma_passes;
  Rng rng(options.seed);

  // Records a check; the first failure ends the pipeline.
  auto check = [&](const std::string& name, bool ok) {
    passes[name] = ok;
    if (!ok && cert.failed.empty()) cert.failed = name;
    return ok;
  };
  auto stop = [&](Outcome outcome) {
    result.outcome = outcome;
    return result;
  };

  if (!check("char", td_identity_violations(rec).empty())) return stop(Outcome::corrupted);

  const AlgebraBasis T = build_T(rec);
  cert.T_dim = T.dim();
  CenterField cf = center_field(T, rng, options.budget);
  cert.rho = cf.rho();
  if (cf.certification.verdict == Verdict::inconclusive) {
    cert.failed = "center_field";
    return stop(Outcome::inconclusive);
  }
  if (!check("center_field", cf.certification.verdict == Verdict::yes)) return stop(Outcome::corrupted);
  cert.Z_certificate = cf.certification.certificate;

  const std::size_t d = rec.d;
  struct CornerSpec {
    const char* name;
    const ExactMatrix* e;
    const ExactMatrix* gen;
  };
  const CornerSpec specs[] = {{"E0", &rec.E[0], &rec.Astar},
                              {"Ed", &rec.E[d], &rec.Astar},
                              {"E*0", &rec.E_star[0], &rec.A},
                              {"E*d", &rec.E_star[d], &rec.A}};
  for (const auto& s : specs) cert.corners.push_back(corner_iso_check(T, cf.Z, *s.e, *s.gen, d, s.name, rng, options.budget));

  bool comgen = true, ext = true, iso = true, inconclusive = false;
  for (const auto& c : cert.corners) {
    comgen = comgen && c.commutative && c.generated;
    inconclusive = inconclusive || c.certification.verdict == Verdict::inconclusive;
    ext = ext && c.certification.verdict == Verdict::yes && c.certification.certificate &&
          c.certification.certificate->dim == c.dim;
    iso = iso && c.iso();
  }
  if (!check("comgen", comgen)) return stop(Outcome::corrupted);
  if (inconclusive) {
    cert.failed = "ext";
    return stop(Outcome::inconclusive);
  }
  if (!check("ext", ext)) return stop(Outcome::corrupted);
  if (!check("last", cert.rho == rec.shape[0])) return stop(Outcome::corrupted);

  const ExactMatrix& es0 = rec.E_star[0];
  const CornerReport& star_corner = cert.corners[2];
  const AlgebraBasis corner_alg = corner(T, es0);
  const FieldPresentation corner_field(corner_alg, *star_corner.certification.certificate);

  cert.dual = bilinear_dual_basis(T, es0, corner_field);
  if (!check("ndeg", cert.dual->nondegenerate)) return stop(Outcome::corrupted);
  if (!check("dualb", cert.dual->dual_identity && cert.dual->n * corner_alg.dim() == one_sided_space(T, es0, Side::right).dim()))
    return stop(Outcome::corrupted);

  bool surj = true;
  std::vector<ExactMatrix> samples{es0, ExactMatrix(rec.field, rec.n(), rec.n())};
  for (std::size_t i = 0; i < options.surjectivity_samples; ++i) samples.push_back(random_element(corner_alg, rng));
  for (const auto& a : samples) {
    bool ok = false;
    center_surjectivity_witness(a, *cert.dual, T, cf.Z, es0, ok);
    surj = surj && ok;
    ++cert.surjectivity_checked;
  }
  cert.surjectivity_ok = surj;
  if (!check("centact", iso && surj)) return stop(Outcome::corrupted);

  cert.module = tv_module_iso_check(T, es0, corner_alg, *star_corner.certification.certificate, rng, options.budget);
  if (!check("es0inj", cert.module->es0inj)) return stop(Outcome::corrupted);
  if (!check("ete0", cert.module->ete0)) return stop(Outcome::corrupted);
  if (!check("vbij", cert.module->vbij)) return stop(Outcome::corrupted);

  cert.sharpened = rebase_over_center(rec, cf.Z, *cert.Z_certificate, options);
  const RebaseResult& rb = *cert.sharpened;
  if (!check("tdk", rb.verified && rb.eigenvalues_match && rb.shape_law && rb.dimension_law))
    return stop(Outcome::corrupted);
  bool corners_match = true;
  for (const auto& c : cert.corners) corners_match = corners_match && c.dim == cert.rho;
  if (!check("final", rb.sharp && corners_match && rb.round_trip)) return stop(Outcome::corrupted);
  return stop(Outcome::accepted);
}

}  // namespace tdsharp
