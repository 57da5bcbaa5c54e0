#include "tdsharp/generators.hpp"

#include <cctype>

#include "tdsharp/factor.hpp"
#include "tdsharp/linalg.hpp"

namespace tdsharp {

namespace {

bool all_distinct(const Field& f, const std::vector<Scalar>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (f.equal(v[i], v[j])) return false;
  return true;
}

Scalar draw(const Field& f, bool base, Rng& rng) {
  if (!base) return random_scalar(f, rng);
  return f.embed_prime(random_scalar(f.prime_subfield(), rng));
}

Scalar draw_nonzero(const Field& f, bool base, Rng& rng) {
  for (;;) {
    Scalar s = draw(f, base, rng);
    if (!f.is_zero(s)) return s;
  }
}

// Eigenvalue sequence; for d >= 3 it satisfies the three-term recurrence with parameter beta.
std::vector<Scalar> draw_sequence(const Field& f, std::size_t d, const Scalar& beta_plus_one, bool base, Rng& rng) {
  std::vector<Scalar> t;
  for (std::size_t i = 0; i <= std::min<std::size_t>(d, 2); ++i) t.push_back(draw(f, base, rng));
  for (std::size_t i = 2; i < d; ++i)
    t.push_back(f.sub(t[i - 2], f.mul(beta_plus_one, f.sub(t[i - 1], t[i]))));
  return t;
}

ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
  const Field& f = a.field();
  ExactMatrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
  return out;
}

}  // namespace

MatrixPair split_form_pair(const SplitFormParams& params) {
  const Field& f = params.field;
  const std::size_t n = params.theta.size();
  if (n == 0) throw PreconditionError("split form needs at least one eigenvalue");
  if (params.theta_star.size() != n || params.phi.size() + 1 != n)
    throw PreconditionError("split form sequences have inconsistent lengths");
  if (!all_distinct(f, params.theta)) throw PreconditionError("eigenvalues theta are not distinct");
  if (!all_distinct(f, params.theta_star)) throw PreconditionError("dual eigenvalues theta* are not distinct");
  for (const auto& x : params.phi)
    if (f.is_zero(x)) throw PreconditionError("split sequence phi has a zero entry");
  ExactMatrix a(f, n, n), as(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = params.theta[i];
    as(i, i) = params.theta_star[i];
    if (i + 1 < n) {
      a(i + 1, i) = f.one();
      as(i, i + 1) = params.phi[i];
    }
  }
  return {a, as};
}

SplitFormParams random_leonard_params(const Field& f, const SplitOptions& options, Rng& rng) {
  const std::size_t d = options.d;
  const bool base = options.base_eigenvalues;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    SplitFormParams p{f, {}, {}, {}};
    const Scalar beta_plus_one = draw(f, base, rng);
    p.theta = draw_sequence(f, d, beta_plus_one, base, rng);
    p.theta_star = draw_sequence(f, d, beta_plus_one, base, rng);
    if (!all_distinct(f, p.theta) || !all_distinct(f, p.theta_star)) continue;
    if (d == 0) return p;
    const Scalar varphi1 = draw_nonzero(f, false, rng);
    const Scalar denom = f.inv(f.sub(p.theta[0], p.theta[d]));
    const Scalar phi1 = f.add(varphi1, f.mul(f.sub(p.theta_star[1], p.theta_star[0]), f.sub(p.theta[0], p.theta[d])));
    Scalar partial = f.zero();
    bool ok = true;
    for (std::size_t i = 1; i <= d && ok; ++i) {
      partial = f.add(partial, f.mul(f.sub(p.theta[i - 1], p.theta[d - i + 1]), denom));
      const Scalar ds = f.sub(p.theta_star[i], p.theta_star[0]);
      const Scalar phi = f.add(f.mul(varphi1, partial), f.mul(ds, f.sub(p.theta[i - 1], p.theta[d])));
      const Scalar varphi = f.add(f.mul(phi1, partial), f.mul(ds, f.sub(p.theta[d - i + 1], p.theta[0])));
      ok = !f.is_zero(phi) && !f.is_zero(varphi);
      p.phi.push_back(phi);
    }
    if (ok) return p;
  }
  throw PreconditionError("no Leonard parameter array found for d=" + std::to_string(d) + " over " + f.describe());
}

ExactMatrix restrict_scalars(const ExactMatrix& m) {
  const Field& f = m.field();
  const std::size_t k = f.degree();
  if (k == 1) return m;
  const Field base = f.prime_subfield();
  std::vector<Scalar> powers{f.one()};
  for (std::size_t j = 1; j < k; ++j) powers.push_back(f.mul(powers.back(), f.generator()));
  ExactMatrix out(base, m.rows() * k, m.cols() * k);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (f.is_zero(m(r, c))) continue;
      for (std::size_t j = 0; j < k; ++j) {
        auto col = f.coordinates(f.mul(m(r, c), powers[j]));
        for (std::size_t i = 0; i < k; ++i) out(r * k + i, c * k + j) = col[i];
      }
    }
  return out;
}

MatrixPair restrict_scalars(const MatrixPair& pair) {
  const Field& f = pair.A.field();
  for (const ExactMatrix* m : {&pair.A, &pair.Astar})
    for (const auto& root : roots_in_field(minimal_polynomial(*m)))
      if (!f.in_prime_subfield(root.value))
        throw PreconditionError("eigenvalue " + f.to_string(root.value) + " lies outside the base field");
  return {restrict_scalars(pair.A), restrict_scalars(pair.Astar)};
}

MatrixPair twisted_seed(const TwistedParams& params) {
  const Field base = Field::prime(params.p);
  const Field f = Field::extension(base, 2);
  f.validate(params.gamma);
  const Scalar t0 = f.from_int(params.theta0), t1 = f.from_int(params.theta1);
  const Scalar s0 = f.from_int(params.theta_star0), s1 = f.from_int(params.theta_star1);
  const Scalar& g = params.gamma;
  if (f.equal(t0, t1)) throw PreconditionError("theta0 equals theta1");
  if (f.equal(s0, s1)) throw PreconditionError("theta*0 equals theta*1");
  if (f.in_prime_subfield(g)) throw PreconditionError("gamma lies in the base field");
  if (f.equal(g, f.mul(f.sub(t0, t1), f.sub(s1, s0))))
    throw PreconditionError("gamma equals (theta0-theta1)(theta*1-theta*0): the seed is reducible");
  if (f.in_prime_subfield(f.mul(g, g))) throw PreconditionError("gamma^2 lies in the base field");
  ExactMatrix b(f, 2, 2), bs(f, 2, 2);
  b(0, 0) = t0;
  b(1, 0) = f.one();
  b(1, 1) = t1;
  bs(0, 0) = s0;
  bs(0, 1) = g;
  bs(1, 1) = s1;
  return {b, bs};
}

MatrixPair twisted_diameter1_nonsharp(const TwistedParams& params) { return restrict_scalars(twisted_seed(params)); }

MatrixPair tensor_split_pair(const std::vector<SplitFormParams>& factors) {
  if (factors.empty()) throw PreconditionError("tensor product needs at least one factor");
  const Field& f = factors[0].field;
  std::vector<MatrixPair> pairs;
  for (const auto& p : factors) {
    if (!(p.field == f)) throw FieldMismatch();
    pairs.push_back(split_form_pair(p));
  }
  auto sum_over = [&](bool star) {
    std::size_t total = 1;
    for (const auto& p : pairs) total *= p.A.rows();
    ExactMatrix out(f, total, total);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      ExactMatrix term = ExactMatrix::identity(f, 1);
      for (std::size_t l = 0; l < pairs.size(); ++l) {
        const ExactMatrix& m = star ? pairs[l].Astar : pairs[l].A;
        term = kronecker(term, l == j ? m : ExactMatrix::identity(f, m.rows()));
      }
      out = out + term;
    }
    return out;
  };
  return {sum_over(false), sum_over(true)};
}

Scalar parse_scalar_expression(const Field& f, const std::string& text) {
  Scalar total = f.zero();
  std::size_t pos = 0;
  auto fail = [&]() -> Scalar { throw PreconditionError("cannot parse field element '" + text + "'"); };
  auto skip = [&]() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos == text.size()) fail();
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    }
    std::string digits;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
      digits += text[pos++];
    skip();
    Scalar coeff = f.one();
    if (!digits.empty()) {
      mpq_class q;
      if (q.set_str(digits, 10) != 0) fail();
      q.canonicalize();
      if (f.is_finite()) {
        mpz_class num = q.get_num() % f.characteristic(), den = q.get_den() % f.characteristic();
        coeff = f.div(f.from_int(num.get_si()), f.from_int(den.get_si()));
      } else {
        coeff = f.from_rational(q);
      }
    }
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      skip();
    }
    Scalar term = coeff;
    if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'a')) {
      if (f.degree() == 1) fail();
      ++pos;
      long e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::string ed;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ed += text[pos++];
        if (ed.empty()) fail();
        e = std::stol(ed);
      }
      term = f.mul(coeff, f.pow(f.generator(), e));
    } else if (digits.empty()) {
      fail();
    }
    total = sign > 0 ? f.add(total, term) : f.sub(total, term);
    skip();
    if (pos < text.size() && text[pos] != '+' && text[pos] != '-') fail();
  }
  return total;
}

SplitShape split_shape_from_string(const std::string& name) {
  if (name == "leonard") return SplitShape::leonard;
  if (name == "binomial") return SplitShape::binomial;
  throw ParseError("unknown split shape '" + name + "' (expected leonard or binomial)");
}

std::string to_string(SplitShape shape) { return shape == SplitShape::leonard ? "leonard" : "binomial"; }

namespace {

MatrixPair draw_split_pair(const Field& f, const SplitOptions& options, SplitShape shape, Rng& rng) {
  if (shape == SplitShape::leonard) return split_form_pair(random_leonard_params(f, options, rng));
  if (options.d == 0) throw PreconditionError("binomial shape needs d >= 1");
  if (f.is_finite() && static_cast<std::int64_t>(options.d) >= f.characteristic())
    throw PreconditionError("binomial shape needs d < p");
  std::vector<SplitFormParams> factors;
  for (std::size_t j = 0; j < options.d; ++j) {
    SplitFormParams p{f, {f.zero(), f.one()}, {f.zero(), f.one()}, {}};
    Scalar phi = f.zero();
    while (f.is_zero(phi)) phi = random_scalar(f, rng);
    p.phi.push_back(phi);
    factors.push_back(std::move(p));
  }
  return tensor_split_pair(factors);
}

}  // namespace

GeneratedInstance generate_split(const Field& field, const SplitOptions& options, SplitShape shape,
                                 std::uint64_t seed, const VerifyOptions& verify, std::size_t max_attempts) {
  Rng rng(seed);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    MatrixPair pair = draw_split_pair(field, options, shape, rng);
    VerificationResult r = verify_td_system(pair.A, pair.Astar, verify);
    if (r.accepted()) return {std::move(pair), std::move(*r.record), std::nullopt, attempt};
  }
  throw PreconditionError("no verified split-form instance within " + std::to_string(max_attempts) + " attempts");
}

GeneratedInstance generate_restriction(const Field& field, const SplitOptions& options, SplitShape shape,
                                       std::uint64_t seed, const VerifyOptions& verify, std::size_t max_attempts) {
  if (!field.is_finite() || field.degree() < 2) throw PreconditionError("restriction needs an extension GF(p^k), k >= 2");
  SplitOptions seed_options = options;
  seed_options.base_eigenvalues = true;
  Rng rng(seed);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    MatrixPair seed_pair = draw_split_pair(field, seed_options, shape, rng);
    VerificationResult sr = verify_td_system(seed_pair.A, seed_pair.Astar, verify);
    if (!sr.accepted()) continue;
    MatrixPair pair = restrict_scalars(seed_pair);
    VerificationResult r = verify_td_system(pair.A, pair.Astar, verify);
    if (r.accepted()) return {std::move(pair), std::move(*r.record), std::move(*sr.record), attempt};
  }
  throw PreconditionError("no verified restriction instance within " + std::to_string(max_attempts) + " attempts");
}

}  // namespace tdsharp
