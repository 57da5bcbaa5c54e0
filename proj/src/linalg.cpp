#include "tdsharp/linalg.hpp"

namespace tdsharp {

namespace {

// Scales each row of a rational matrix to integer entries.
void clear_denominators(ExactMatrix& m) {
  const Field& f = m.field();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class den = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) den = lcm(den, m(i, j).rat[0].get_den());
    if (den == 1) continue;
    const Scalar s = f.from_rational(mpq_class(den));
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.mul(m(i, j), s);
  }
}

// In-place Gauss-Jordan on the first `limit` columns.
std::vector<std::size_t> gauss_jordan(ExactMatrix& m, std::size_t limit) {
  const Field& f = m.field();
  if (f.kind() == FieldKind::rational) clear_denominators(m);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Scalar inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const Scalar factor = f.neg(m(i, c));
      for (std::size_t j = c; j < m.cols(); ++j) f.add_product(m(i, j), factor, m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

ExactMatrix shifted_by(const ExactMatrix& m, const Scalar& theta) {
  ExactMatrix out = m;
  const Field& f = m.field();
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) = f.sub(out(i, i), theta);
  return out;
}

}  // namespace

Echelon rref(const ExactMatrix& m) {
  ExactMatrix form = m;
  auto pivots = gauss_jordan(form, form.cols());
  return {std::move(form), std::move(pivots)};
}

std::size_t rank(const ExactMatrix& m) { return rref(m).rank(); }

ExactMatrix kernel(const ExactMatrix& m) {
  const Field& f = m.field();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.form(r, free));
    basis.push_back(std::move(v));
  }
  return ExactMatrix::from_columns(f, m.cols(), basis);
}

ExactMatrix column_space(const ExactMatrix& m) { return m.columns(rref(m).pivots); }

LinearSolution solve_linear(const ExactMatrix& m, const ExactMatrix& targets) {
  const Field& f = m.field();
  if (!(f == targets.field())) throw FieldMismatch();
  if (m.rows() != targets.rows()) throw DimensionError("solve_linear: row counts differ");
  const std::size_t n = m.cols(), k = targets.cols(), r = m.rows();
  ExactMatrix aug = hstack(hstack(m, targets), ExactMatrix::identity(f, r));
  auto pivots = gauss_jordan(aug, n);
  LinearSolution out;
  for (std::size_t row = pivots.size(); row < r; ++row) {
    for (std::size_t j = 0; j < k; ++j) {
      if (f.is_zero(aug(row, n + j))) continue;
      for (std::size_t i = 0; i < r; ++i) out.witness.push_back(aug(row, n + k + i));
      return out;
    }
  }
  ExactMatrix x(f, n, k);
  for (std::size_t row = 0; row < pivots.size(); ++row)
    for (std::size_t j = 0; j < k; ++j) x(pivots[row], j) = aug(row, n + j);
  out.consistent = true;
  out.solution = std::move(x);
  return out;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  auto sol = solve_linear(m, ExactMatrix::identity(m.field(), m.rows()));
  if (!sol.consistent || rank(m) != m.rows()) throw DivisionByZero("matrix is singular");
  return *sol.solution;
}

Polynomial minimal_polynomial(const ExactMatrix& m) {
  if (!m.is_square()) throw DimensionError("minimal polynomial of a non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Polynomial result = Polynomial::constant(f, f.one());
  RowSpace span(f, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Scalar> e(n, f.zero());
    e[j] = f.one();
    if (span.contains(e)) continue;
    RowSpace local(f, n);
    std::vector<std::vector<Scalar>> krylov;
    std::vector<Scalar> v = e;
    while (local.add(v)) {
      krylov.push_back(v);
      v = m.apply(v);
    }
    auto sol = solve_linear(ExactMatrix::from_columns(f, n, krylov), ExactMatrix::from_columns(f, n, {v}));
    if (!sol.consistent) throw InternalError("Krylov dependency not found");
    std::vector<Scalar> coeffs;
    for (std::size_t i = 0; i < krylov.size(); ++i) coeffs.push_back(f.neg((*sol.solution)(i, 0)));
    coeffs.push_back(f.one());
    result = lcm(result, Polynomial(f, std::move(coeffs)));
    for (const auto& w : krylov) span.add(w);
  }
  return result;
}

ExactMatrix evaluate(const Polynomial& p, const ExactMatrix& m) {
  if (!m.is_square()) throw DimensionError("evaluate on a non-square matrix");
  const Field& f = m.field();
  ExactMatrix acc(f, m.rows(), m.cols());
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < m.rows(); ++d) acc(d, d) = f.add(acc(d, d), c[i]);
  }
  return acc;
}

SpectralData eigendecompose(const ExactMatrix& m) {
  SpectralData out{minimal_polynomial(m), false, {}, {}, {}, std::nullopt};
  auto roots = roots_in_field(out.minpoly);
  bool split = static_cast<int>(roots.size()) == out.minpoly.degree();
  for (const auto& r : roots) split = split && r.multiplicity == 1;
  if (!split) {
    for (const auto& fac : factor(out.minpoly)) {
      if (fac.poly.degree() > 1) {
        out.witness = fac.poly;
        break;
      }
      if (fac.multiplicity > 1) {
        Polynomial w = fac.poly;
        for (std::size_t i = 1; i < fac.multiplicity; ++i) w = w * fac.poly;
        out.witness = w;
        break;
      }
    }
    return out;
  }
  out.diagonalizable = true;
  for (const auto& r : roots) {
    out.eigenvalues.push_back(r.value);
    out.eigenspaces.push_back(kernel(shifted_by(m, r.value)));
  }
  out.idempotents = primitive_idempotents(m, out.eigenvalues);
  return out;
}

std::vector<ExactMatrix> primitive_idempotents(const ExactMatrix& m, const std::vector<Scalar>& eigenvalues) {
  const Field& f = m.field();
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (eigenvalues[i] == eigenvalues[j]) throw DivisionByZero("repeated eigenvalue in idempotent formula");
  std::vector<ExactMatrix> es;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    ExactMatrix e = ExactMatrix::identity(f, n);
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
      if (j == i) continue;
      const Scalar denom = f.inv(f.sub(eigenvalues[i], eigenvalues[j]));
      e = (e * shifted_by(m, eigenvalues[j])).scaled(denom);
    }
    es.push_back(std::move(e));
  }
  ExactMatrix sum(f, n, n), weighted(f, n, n);
  for (std::size_t i = 0; i < es.size(); ++i) {
    sum = sum + es[i];
    weighted = weighted + es[i].scaled(eigenvalues[i]);
    for (std::size_t j = 0; j < es.size(); ++j) {
      ExactMatrix prod = es[i] * es[j];
      if (i == j ? !(prod == es[i]) : !prod.is_zero()) throw InternalError("idempotents are not orthogonal");
    }
    if (rank(es[i]) != n - rank(shifted_by(m, eigenvalues[i])))
      throw InternalError("idempotent image differs from eigenspace");
  }
  if (!(sum == ExactMatrix::identity(f, n))) throw InternalError("idempotents do not sum to the identity");
  if (!(weighted == m)) throw InternalError("matrix differs from its spectral sum");
  return es;
}

RowSpace::RowSpace(Field field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

std::vector<Scalar> RowSpace::reduce(std::vector<Scalar> v) const {
  if (v.size() != ambient_) throw DimensionError("vector length differs from ambient dimension");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (field_.is_zero(v[p])) continue;
    const Scalar c = field_.neg(v[p]);
    const auto& row = rows_[r];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!field_.is_zero(row[j])) field_.add_product(v[j], c, row[j]);
  }
  return v;
}

bool RowSpace::contains(const std::vector<Scalar>& v) const {
  for (const auto& a : reduce(v))
    if (!field_.is_zero(a)) return false;
  return true;
}

bool RowSpace::add(const std::vector<Scalar>& v) {
  auto res = reduce(v);
  std::size_t p = 0;
  while (p < ambient_ && field_.is_zero(res[p])) ++p;
  if (p == ambient_) return false;
  const Scalar inv = field_.inv(res[p]);
  for (auto& a : res) a = field_.mul(a, inv);
  rows_.push_back(std::move(res));
  pivots_.push_back(p);
  inserted_.push_back(v);
  return true;
}

Echelon RowSpace::canonical() const {
  std::vector<Scalar> data;
  for (const auto& r : rows_) data.insert(data.end(), r.begin(), r.end());
  return rref(ExactMatrix(field_, rows_.size(), ambient_, std::move(data)));
}

}  // namespace tdsharp
