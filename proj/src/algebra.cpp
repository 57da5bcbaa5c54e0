#include "tdsharp/algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace tdsharp {

namespace {

ExactMatrix unvectorize(const Field& f, std::size_t n, const std::vector<Scalar>& v) {
  return ExactMatrix(f, n, n, v);
}

void require_square(const ExactMatrix& m, const Field& f, std::size_t n) {
  if (!(m.field() == f)) throw FieldMismatch();
  if (m.rows() != n || m.cols() != n) throw DimensionError("algebra elements must be " + std::to_string(n) + "x" +
                                                           std::to_string(n));
}

bool is_idempotent(const ExactMatrix& e) { return e * e == e; }

// Minimal polynomial of the sequence x^0 = unit, x^1, ... given a coordinate
// map into a vector space over `coeff_field`.
Polynomial sequence_minpoly(const Field& coeff_field, std::size_t ambient, const ExactMatrix& unit,
                            const ExactMatrix& a, const std::function<std::vector<Scalar>(const ExactMatrix&)>& to_vec) {
  RowSpace span(coeff_field, ambient);
  std::vector<std::vector<Scalar>> vecs;
  ExactMatrix power = unit;
  for (;;) {
    auto v = to_vec(power);
    if (!span.add(v)) {
      auto sol = solve_linear(ExactMatrix::from_columns(coeff_field, ambient, vecs),
                              ExactMatrix::from_columns(coeff_field, ambient, {v}));
      if (!sol.consistent) throw InternalError("power dependency not found");
      std::vector<Scalar> c;
      for (std::size_t i = 0; i < vecs.size(); ++i) c.push_back(coeff_field.neg((*sol.solution)(i, 0)));
      c.push_back(coeff_field.one());
      return Polynomial(coeff_field, std::move(c));
    }
    vecs.push_back(std::move(v));
    power = power * a;
  }
}

// Evaluates a prime-subfield polynomial at `a` with a^0 = unit.
ExactMatrix evaluate_prime_poly(const Polynomial& p, const ExactMatrix& a, const ExactMatrix& unit) {
  const Field& f = a.field();
  ExactMatrix acc(f, a.rows(), a.cols());
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * a + unit.scaled(f.embed_prime(c[i]));
  return acc;
}

}  // namespace

std::vector<Scalar> vectorize(const ExactMatrix& m) { return m.data(); }

AlgebraBasis AlgebraBasis::span(const Field& field, std::size_t n, const std::vector<ExactMatrix>& elements,
                                const ExactMatrix& unit) {
  require_square(unit, field, n);
  RowSpace rs(field, n * n);
  for (const auto& e : elements) {
    require_square(e, field, n);
    rs.add(vectorize(e));
  }
  AlgebraBasis out(field, n, unit);
  Echelon ech = rs.canonical();
  for (std::size_t i = 0; i < ech.rank(); ++i) out.basis_.push_back(unvectorize(field, n, ech.form.row(i)));
  out.pivots_ = ech.pivots;
  return out;
}

std::vector<Scalar> AlgebraBasis::coords(const ExactMatrix& m) const {
  require_square(m, field_, n_);
  std::vector<Scalar> c;
  c.reserve(basis_.size());
  for (auto p : pivots_) c.push_back(m.data()[p]);
  if (!(element(c) == m)) throw DimensionError("matrix is not in the algebra");
  return c;
}

bool AlgebraBasis::contains(const ExactMatrix& m) const {
  if (!(m.field() == field_) || m.rows() != n_ || m.cols() != n_) return false;
  std::vector<Scalar> c;
  for (auto p : pivots_) c.push_back(m.data()[p]);
  return element(c) == m;
}

ExactMatrix AlgebraBasis::element(const std::vector<Scalar>& coords) const {
  if (coords.size() != basis_.size()) throw DimensionError("coordinate vector has the wrong length");
  ExactMatrix m(field_, n_, n_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (field_.is_zero(coords[i])) continue;
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) field_.add_product(m(r, c), coords[i], basis_[i](r, c));
  }
  return m;
}

std::vector<Scalar> AlgebraBasis::prime_coords(const ExactMatrix& m) const {
  auto c = coords(m);
  if (field_.degree() == 1) return c;
  std::vector<Scalar> out;
  for (const auto& a : c) {
    auto pc = field_.coordinates(a);
    out.insert(out.end(), pc.begin(), pc.end());
  }
  return out;
}

AlgebraBasis subalgebra_closure(const std::vector<ExactMatrix>& generators, const ExactMatrix& unit) {
  const Field& f = unit.field();
  const std::size_t n = unit.rows();
  require_square(unit, f, n);
  for (const auto& g : generators) require_square(g, f, n);
  RowSpace rs(f, n * n);
  std::deque<ExactMatrix> frontier;
  if (rs.add(vectorize(unit))) frontier.push_back(unit);
  for (const auto& g : generators)
    if (rs.add(vectorize(g))) frontier.push_back(g);
  while (!frontier.empty()) {
    ExactMatrix x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      for (ExactMatrix prod : {g * x, x * g}) {
        if (rs.add(vectorize(prod))) frontier.push_back(std::move(prod));
      }
    }
  }
  std::vector<ExactMatrix> spanning;
  for (const auto& v : rs.inserted()) spanning.push_back(unvectorize(f, n, v));
  AlgebraBasis out = AlgebraBasis::span(f, n, spanning, unit);
  out.generators_ = generators;
  for (const auto& b : out.basis()) {
    if (!(b * unit == b) || !(unit * b == b)) throw InternalError("closure unit does not act as identity");
    for (const auto& g : generators)
      if (!out.contains(g * b) || !out.contains(b * g)) throw InternalError("closure is not multiplicatively closed");
  }
  return out;
}

AlgebraBasis one_sided_space(const AlgebraBasis& t, const ExactMatrix& e, Side side) {
  if (!is_idempotent(e)) throw DimensionError("one-sided space needs an idempotent");
  if (!t.contains(e)) throw DimensionError("idempotent is not in the algebra");
  std::vector<ExactMatrix> elems;
  for (const auto& b : t.basis()) elems.push_back(side == Side::right ? b * e : e * b);
  return AlgebraBasis::span(t.field(), t.n(), elems, e);
}

AlgebraBasis center(const AlgebraBasis& t) {
  const Field& f = t.field();
  const std::size_t n = t.n();
  const std::vector<ExactMatrix>& tests = t.generators().empty() ? t.basis() : t.generators();
  std::vector<std::vector<Scalar>> cols;
  for (const auto& b : t.basis()) {
    std::vector<Scalar> col;
    for (const auto& g : tests) {
      auto v = vectorize(b * g - g * b);
      col.insert(col.end(), v.begin(), v.end());
    }
    cols.push_back(std::move(col));
  }
  std::vector<ExactMatrix> elems;
  if (tests.empty()) {
    elems = t.basis();
  } else {
    ExactMatrix k = kernel(ExactMatrix::from_columns(f, n * n * tests.size(), cols));
    for (std::size_t j = 0; j < k.cols(); ++j) elems.push_back(t.element(k.column(j)));
  }
  return AlgebraBasis::span(f, n, elems, t.unit());
}

AlgebraBasis corner(const AlgebraBasis& t, const ExactMatrix& e) {
  if (!is_idempotent(e)) throw DimensionError("corner needs an idempotent");
  if (!t.contains(e)) throw DimensionError("idempotent is not in the algebra");
  std::vector<ExactMatrix> elems;
  for (const auto& b : t.basis()) elems.push_back(e * b * e);
  return AlgebraBasis::span(t.field(), t.n(), elems, e);
}

CommutativityResult is_commutative(const AlgebraBasis& a) {
  const auto& b = a.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!(b[i] * b[j] == b[j] * b[i])) return {false, std::make_pair(b[i], b[j])};
  return {};
}

bool corner_generators_check(const AlgebraBasis& corner_algebra, const ExactMatrix& e, const ExactMatrix& a,
                             std::size_t d) {
  std::vector<ExactMatrix> gens;
  ExactMatrix power = a;
  for (std::size_t i = 1; i <= d; ++i) {
    gens.push_back(e * power * e);
    power = power * a;
  }
  return subalgebra_closure(gens, e).same_space(corner_algebra);
}

Polynomial algebra_minimal_polynomial(const AlgebraBasis& alg, const ExactMatrix& a) {
  alg.coords(a);
  return sequence_minpoly(alg.field(), alg.dim(), alg.unit(), a,
                          [&](const ExactMatrix& m) { return alg.coords(m); });
}

Polynomial prime_minimal_polynomial(const AlgebraBasis& alg, const ExactMatrix& a) {
  alg.coords(a);
  return sequence_minpoly(alg.field().prime_subfield(), alg.prime_dim(), alg.unit(), a,
                          [&](const ExactMatrix& m) { return alg.prime_coords(m); });
}

std::optional<ExactMatrix> invert_in_algebra(const ExactMatrix& a, const AlgebraBasis& alg) {
  const Field& f = alg.field();
  Polynomial mp = algebra_minimal_polynomial(alg, a);
  const Scalar c0 = mp.coeff(0);
  if (f.is_zero(c0)) return std::nullopt;
  ExactMatrix acc(f, alg.n(), alg.n());
  const auto& c = mp.coefficients();
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * a + alg.unit().scaled(c[i]);
  acc = acc.scaled(f.neg(f.inv(c0)));
  if (!(acc * a == alg.unit()) || !(a * acc == alg.unit())) throw InternalError("polynomial inverse check failed");
  return acc;
}

FieldCertification field_certify(const AlgebraBasis& alg, Rng& rng, std::size_t budget) {
  FieldCertification out;
  auto comm = is_commutative(alg);
  if (!comm.commutative) {
    out.verdict = Verdict::no;
    out.witness = comm.witness;
    return out;
  }
  const Field& f = alg.field();
  const std::size_t target = alg.prime_dim();
  if (target == 0) {
    out.verdict = Verdict::no;
    return out;
  }

  // Returns true once the verdict is settled.
  auto attempt = [&](const ExactMatrix& w) {
    Polynomial mp = prime_minimal_polynomial(alg, w);
    auto facs = factor(mp);
    if (facs.size() > 1 || facs[0].multiplicity > 1) {
      Polynomial g = facs[0].poly;
      Polynomial h = mp / g;
      out.verdict = Verdict::no;
      out.witness = std::make_pair(evaluate_prime_poly(g, w, alg.unit()), evaluate_prime_poly(h, w, alg.unit()));
      return true;
    }
    if (static_cast<std::size_t>(mp.degree()) == target) {
      out.verdict = Verdict::yes;
      out.certificate = FieldCertificate{w, mp, alg.dim()};
      return true;
    }
    return false;
  };

  const auto& b = alg.basis();
  Scalar c = f.one();
  for (std::size_t j = 0; j < f.degree(); ++j) {
    for (const auto& bi : b)
      if (attempt(bi.scaled(c))) return out;
    c = f.mul(c, f.generator());
  }
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (attempt(b[i] + b[j])) return out;
      for (std::size_t l = j + 1; l < b.size(); ++l)
        if (attempt(b[i] + b[j] + b[l])) return out;
    }
  for (std::size_t trial = 0; trial < budget; ++trial) {
    std::vector<Scalar> coords;
    for (std::size_t i = 0; i < b.size(); ++i) coords.push_back(random_scalar(f, rng));
    ExactMatrix w = alg.element(coords);
    if (w.is_zero()) continue;
    if (attempt(w)) return out;
  }
  return out;
}

FieldPresentation::FieldPresentation(const AlgebraBasis& alg, const FieldCertificate& cert)
    : alg_(alg), cert_(cert), field_(alg.field().prime_subfield()), to_power_coords_(field_, 0, 0) {
  const std::size_t d = static_cast<std::size_t>(cert.minpoly.degree());
  if (d != alg.prime_dim()) throw InternalError("certificate degree differs from algebra dimension");
  if (d > 1) field_ = Field::extension(field_, cert.minpoly.coefficients());
  ExactMatrix power = alg.unit();
  std::vector<std::vector<Scalar>> cols;
  for (std::size_t l = 0; l < d; ++l) {
    powers_.push_back(power);
    cols.push_back(alg.prime_coords(power));
    power = power * cert.primitive;
  }
  to_power_coords_ = inverse(ExactMatrix::from_columns(alg.field().prime_subfield(), d, cols));
}

Scalar FieldPresentation::to_field(const ExactMatrix& z) const {
  auto r = to_power_coords_.apply(alg_.prime_coords(z));
  return field_.from_coordinates(r);
}

ExactMatrix FieldPresentation::from_field(const Scalar& c) const {
  const Field& f = alg_.field();
  auto r = field_.coordinates(c);
  ExactMatrix out(f, alg_.n(), alg_.n());
  for (std::size_t l = 0; l < r.size(); ++l) out = out + powers_[l].scaled(f.embed_prime(r[l]));
  return out;
}

Scalar FieldPresentation::embed_base(const Scalar& theta) const { return to_field(alg_.unit().scaled(theta)); }

ExactMatrix spin(const ExactMatrix& vectors, const std::vector<ExactMatrix>& generators) {
  const Field& f = vectors.field();
  const std::size_t n = vectors.rows();
  RowSpace rs(f, n);
  std::deque<std::vector<Scalar>> queue;
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    auto v = vectors.column(j);
    if (rs.add(v)) queue.push_back(std::move(v));
  }
  while (!queue.empty() && rs.dim() < n) {
    auto v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      auto w = g.apply(v);
      if (rs.add(w)) queue.push_back(std::move(w));
    }
  }
  return ExactMatrix::from_columns(f, n, rs.inserted());
}

IrreducibilityResult norton_irreducible(const std::vector<ExactMatrix>& generators, std::size_t n, Rng& rng,
                                        std::size_t budget, std::size_t max_word) {
  IrreducibilityResult out;
  if (n == 0) throw DimensionError("module dimension must be positive");
  if (n == 1) {
    out.verdict = Verdict::yes;
    return out;
  }
  if (generators.empty()) throw DimensionError("irreducibility test needs a generator to fix the field");
  const Field& f = generators[0].field();
  for (const auto& g : generators) require_square(g, f, n);
  std::vector<ExactMatrix> transposes;
  for (const auto& g : generators) transposes.push_back(g.transpose());

  auto reducible = [&](ExactMatrix w) {
    out.verdict = Verdict::no;
    out.witness = std::move(w);
    return out;
  };

  for (std::size_t trial = 0; trial < budget; ++trial) {
    ExactMatrix a(f, n, n);
    const std::size_t terms = 1 + uniform_below(rng, 3);
    for (std::size_t t = 0; t < terms; ++t) {
      ExactMatrix word = ExactMatrix::identity(f, n);
      const std::size_t len = 1 + uniform_below(rng, max_word);
      for (std::size_t l = 0; l < len; ++l) word = word * generators[uniform_below(rng, generators.size())];
      Scalar c = random_scalar(f, rng);
      if (f.is_zero(c)) c = f.one();
      a = a + word.scaled(c);
    }
    for (const auto& fac : factor(minimal_polynomial(a))) {
      ExactMatrix t = evaluate(fac.poly, a);
      ExactMatrix k = kernel(t);
      ExactMatrix s = spin(k.columns({0}), generators);
      if (s.cols() < n) return reducible(std::move(s));
      if (k.cols() != static_cast<std::size_t>(fac.poly.degree())) continue;
      ExactMatrix kt = kernel(t.transpose());
      ExactMatrix s2 = spin(kt.columns({0}), transposes);
      if (s2.cols() == n) {
        out.verdict = Verdict::yes;
        return out;
      }
      return reducible(kernel(s2.transpose()));
    }
  }
  return out;
}

std::vector<ExactMatrix> bruteforce_invariant_subspaces(const std::vector<ExactMatrix>& generators, std::size_t n) {
  if (generators.empty()) throw DimensionError("need at least one generator");
  const Field& f = generators[0].field();
  if (!f.is_finite() || f.order() > 4 || n > 4)
    throw BoundError("exhaustive subspace enumeration is limited to fields of order <= 4 and n <= 4");
  for (const auto& g : generators) require_square(g, f, n);
  const auto elems = enumerate_field(f);
  std::vector<ExactMatrix> found;
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
      std::vector<std::size_t> piv;
      for (std::size_t j = 0; j < n; ++j)
        if (mask[j]) piv.push_back(j);
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = piv[i] + 1; j < n; ++j)
          if (!mask[j]) free.emplace_back(i, j);
      std::vector<std::size_t> idx(free.size(), 0);
      for (;;) {
        ExactMatrix rows(f, r, n);
        for (std::size_t i = 0; i < r; ++i) rows(i, piv[i]) = f.one();
        for (std::size_t q = 0; q < free.size(); ++q) rows(free[q].first, free[q].second) = elems[idx[q]];
        RowSpace rs(f, n);
        for (std::size_t i = 0; i < r; ++i) rs.add(rows.row(i));
        bool invariant = true;
        for (const auto& g : generators) {
          for (std::size_t i = 0; i < r && invariant; ++i) invariant = rs.contains(g.apply(rows.row(i)));
          if (!invariant) break;
        }
        if (invariant) found.push_back(rows.transpose());
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return found;
}

}  // namespace tdsharp
