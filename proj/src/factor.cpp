#include "tdsharp/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "tdsharp/random.hpp"

namespace tdsharp {

namespace {

Polynomial one_poly(const Field& f) { return Polynomial::constant(f, f.one()); }

// ---------------------------------------------------------------------------
// Finite fields

// Coefficientwise p-th root of a polynomial in x^p.
Polynomial pth_root(const Polynomial& f) {
  const Field& F = f.field();
  const std::int64_t p = F.characteristic();
  mpz_class e;  // a^(1/p) = a^(p^(k-1))
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), F.degree() - 1);
  std::vector<Scalar> out;
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i < c.size(); i += static_cast<std::size_t>(p)) out.push_back(F.pow(c[i], e));
  return Polynomial(F, std::move(out));
}

void squarefree_finite(const Polynomial& f, std::size_t scale, std::vector<Factor>& out) {
  const Field& F = f.field();
  const std::size_t p = static_cast<std::size_t>(F.characteristic());
  if (f.degree() < 1) return;
  Polynomial g = f.derivative();
  if (g.is_zero()) {
    squarefree_finite(pth_root(f), scale * p, out);
    return;
  }
  Polynomial c = gcd(f, g);
  Polynomial w = f / c;
  std::size_t i = 1;
  while (!w.is_one()) {
    Polynomial y = gcd(w, c);
    Polynomial fac = (w / y).monic();
    if (fac.degree() > 0) out.push_back({fac, i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  c = c.monic();
  if (c.degree() > 0) squarefree_finite(pth_root(c), scale * p, out);
}

void squarefree_char0(const Polynomial& f, std::vector<Factor>& out) {
  // Yun's algorithm.
  Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = f / a;
  Polynomial c = fp / a;
  Polynomial d = c - b.derivative();
  std::size_t i = 1;
  while (b.degree() > 0) {
    Polynomial g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g.monic(), i});
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
}

std::vector<std::pair<Polynomial, std::size_t>> distinct_degree(const Polynomial& f) {
  const Field& F = f.field();
  const mpz_class q = F.order();
  std::vector<std::pair<Polynomial, std::size_t>> out;
  Polynomial rest = f;
  const Polynomial x = Polynomial::x(F);
  Polynomial h = x % rest;
  std::size_t i = 1;
  while (rest.degree() >= static_cast<int>(2 * i)) {
    h = powmod(h, q, rest);
    Polynomial g = gcd(rest, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      rest = rest / g;
      h = h % rest;
    }
    ++i;
  }
  if (rest.degree() > 0) out.emplace_back(rest.monic(), static_cast<std::size_t>(rest.degree()));
  return out;
}

Polynomial random_poly(const Field& F, int degree_bound, Rng& rng) {
  std::vector<Scalar> c;
  for (int i = 0; i < degree_bound; ++i) c.push_back(random_scalar(F, rng));
  return Polynomial(F, std::move(c));
}

void equal_degree(const Polynomial& f, std::size_t d, Rng& rng, std::vector<Polynomial>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const Field& F = f.field();
  const std::int64_t p = F.characteristic();
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(p), F.degree() * d);
  for (;;) {
    Polynomial a = random_poly(F, f.degree(), rng);
    if (a.degree() < 1) continue;
    Polynomial b(F);
    if (p == 2) {
      Polynomial term = a % f;
      b = term;
      for (std::size_t j = 1; j < F.degree() * d; ++j) {
        term = (term * term) % f;
        b = b + term;
      }
    } else {
      b = powmod(a, (qd - 1) / 2, f) - one_poly(F);
    }
    Polynomial g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

std::vector<Polynomial> factor_squarefree_finite(const Polynomial& f) {
  std::vector<Polynomial> out;
  Rng rng(0x7d5eedULL);
  for (auto& [g, d] : distinct_degree(f.monic())) equal_degree(g, d, rng, out);
  return out;
}

bool irreducible_finite(const Polynomial& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Field& F = f.field();
  const mpz_class q = F.order();
  const Polynomial x = Polynomial::x(F);
  Polynomial h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = powmod(h, q, f);
    if (gcd(f, h - x).degree() > 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Integer polynomials (Zassenhaus)

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  ztrim(out);
  return out;
}

mpz_class zcontent(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly zprimitive(ZPoly a) {
  ztrim(a);
  if (a.empty()) return a;
  mpz_class g = zcontent(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

// Exact division over Z; nullopt when b does not divide a.
std::optional<ZPoly> zdivide(ZPoly a, const ZPoly& b) {
  ztrim(a);
  if (zdeg(a) < zdeg(b)) {
    if (a.empty()) return ZPoly{};
    return std::nullopt;
  }
  const std::size_t db = b.size() - 1;
  ZPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    if (a[i] == 0) continue;
    if (a[i] % b.back() != 0) return std::nullopt;
    const mpz_class c = a[i] / b.back();
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) return std::nullopt;
  ztrim(q);
  return q;
}

void zmod(ZPoly& a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(a);
}

ZPoly zsymmetric(ZPoly a, const mpz_class& m) {
  const mpz_class half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

Polynomial z_to_modp(const ZPoly& a, const Field& F) {
  std::vector<Scalar> c;
  const mpz_class p = F.characteristic();
  for (const auto& v : a) {
    mpz_class r = v % p;
    if (r < 0) r += p;
    c.push_back(F.from_int(r.get_si()));
  }
  return Polynomial(F, std::move(c));
}

ZPoly modp_to_z(const Polynomial& a) {
  ZPoly out;
  for (const auto& c : a.coefficients()) out.emplace_back(static_cast<long>(c.mod[0]));
  ztrim(out);
  return out;
}

std::pair<Polynomial, Polynomial> ext_gcd_coeffs(const Polynomial& a, const Polynomial& b) {
  // s*a + t*b == 1 for coprime a, b.
  const Field& F = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = one_poly(F), s1(F), t0(F), t1 = one_poly(F);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    Polynomial s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Polynomial t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0.degree() != 0) throw InternalError("Hensel factors are not coprime");
  const Scalar inv = F.inv(r0.coeff(0));
  return {s0.scaled(inv), t0.scaled(inv)};
}

// Lifts f == g*h (mod l) to (mod l^e); g monic.
void hensel_lift(const ZPoly& f, ZPoly& g, ZPoly& h, const Field& Fl, std::size_t e) {
  const mpz_class l = Fl.characteristic();
  auto [s, t] = ext_gcd_coeffs(z_to_modp(g, Fl), z_to_modp(h, Fl));
  mpz_class m = l;
  for (std::size_t step = 1; step < e; ++step) {
    ZPoly diff = f;
    ZPoly gh = zmul(g, h);
    diff.resize(std::max(diff.size(), gh.size()), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    for (auto& c : diff) c /= m;
    ztrim(diff);
    const Polynomial ebar = z_to_modp(diff, Fl);
    const Polynomial gbar = z_to_modp(g, Fl);
    const Polynomial hbar = z_to_modp(h, Fl);
    auto [q, dg] = (t * ebar).divmod(gbar);
    const Polynomial dh = s * ebar + q * hbar;
    const ZPoly zdg = modp_to_z(dg), zdh = modp_to_z(dh);
    g.resize(std::max(g.size(), zdg.size()), 0);
    for (std::size_t i = 0; i < zdg.size(); ++i) g[i] += m * zdg[i];
    h.resize(std::max(h.size(), zdh.size()), 0);
    for (std::size_t i = 0; i < zdh.size(); ++i) h[i] += m * zdh[i];
    m *= l;
    zmod(g, m);
    zmod(h, m);
  }
}

// Factor a primitive squarefree integer polynomial of degree >= 1.
std::vector<ZPoly> zassenhaus(const ZPoly& F0) {
  const int n = zdeg(F0);
  if (n <= 1) return {F0};
  const mpz_class lc = F0.back();

  // Choose among the first few admissible primes the one with fewest factors.
  std::optional<Field> best_field;
  std::vector<Polynomial> best;
  int admissible = 0;
  for (std::int64_t l = 3; admissible < 6 && l < 100000; l += 2) {
    if (!is_prime(l)) continue;
    if (lc % l == 0) continue;
    Field Fl = Field::prime(l);
    Polynomial fb = z_to_modp(F0, Fl);
    if (gcd(fb, fb.derivative()).degree() > 0) continue;
    ++admissible;
    std::vector<Polynomial> facs = factor_squarefree_finite(fb);
    if (!best_field || facs.size() < best.size()) {
      best_field = Fl;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (!best_field) throw InternalError("no admissible prime for factorization");
  if (best.size() == 1) return {F0};
  const Field& Fl = *best_field;
  const mpz_class l = Fl.characteristic();

  mpz_class maxc = 0;
  for (const auto& c : F0) maxc = std::max(maxc, mpz_class(abs(c)));
  mpz_class bound = maxc * abs(lc) * (n + 1);
  bound <<= static_cast<unsigned>(n);
  bound = 2 * bound + 1;
  std::size_t e = 1;
  mpz_class M = l;
  while (M <= bound) {
    M *= l;
    ++e;
  }

  // Multifactor lifting by successive two-factor splits.
  std::vector<ZPoly> lifted;
  ZPoly current = F0;
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    ZPoly g = modp_to_z(best[i]);
    Polynomial rest = Polynomial::constant(Fl, Fl.from_int(mpz_class(((lc % l) + l) % l).get_si()));
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = rest * best[j];
    ZPoly h = modp_to_z(rest);
    hensel_lift(current, g, h, Fl, e);
    lifted.push_back(g);
    current = h;
  }
  {
    mpz_class lcinv;
    mpz_invert(lcinv.get_mpz_t(), mpz_class(lc % M + M).get_mpz_t(), M.get_mpz_t());
    for (auto& c : current) c *= lcinv;
    zmod(current, M);
    lifted.push_back(current);
  }

  // Recombination.
  std::vector<ZPoly> result;
  ZPoly F = F0;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    const mpz_class lcF = F.back();
    for (;;) {
      ZPoly cand{lcF};
      for (auto i : idx) {
        cand = zmul(cand, lifted[i]);
        zmod(cand, M);
      }
      cand = zprimitive(zsymmetric(cand, M));
      if (zdeg(cand) > 0) {
        if (auto q = zdivide(F, cand)) {
          result.push_back(cand);
          F = *q;
          for (std::size_t j = s; j-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[j]));
          found = true;
          break;
        }
      }
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == lifted.size() - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  F = zprimitive(F);
  if (zdeg(F) > 0) result.push_back(F);
  return result;
}

ZPoly q_to_z(const Polynomial& f) {
  mpz_class den = 1;
  for (const auto& c : f.coefficients()) den = lcm(den, c.rat[0].get_den());
  ZPoly out;
  for (const auto& c : f.coefficients()) {
    mpq_class v = c.rat[0] * den;
    out.push_back(v.get_num());
  }
  return zprimitive(out);
}

Polynomial z_to_q_monic(const ZPoly& a, const Field& Q) {
  std::vector<Scalar> c;
  for (const auto& v : a) c.push_back(Q.from_rational(mpq_class(v)));
  return Polynomial(Q, std::move(c)).monic();
}

std::vector<Polynomial> factor_squarefree_rational(const Polynomial& f) {
  std::vector<Polynomial> out;
  if (f.degree() < 1) return out;
  for (const auto& z : zassenhaus(q_to_z(f))) out.push_back(z_to_q_monic(z, f.field()));
  return out;
}

// ---------------------------------------------------------------------------
// Number fields (Trager)

mpq_class det_rational(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      const mpq_class factor = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= factor * m[c][j];
    }
  }
  return det;
}

// Interpolating polynomial through (x_i, y_i), Newton form.
Polynomial interpolate(const Field& Q, const std::vector<mpq_class>& xs, std::vector<mpq_class> ys) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  Polynomial result(Q);
  for (std::size_t i = n; i-- > 0;) {
    result = result * Polynomial(Q, {Q.from_rational(-xs[i]), Q.one()}) + Polynomial::constant(Q, Q.from_rational(ys[i]));
  }
  return result;
}

// Norm_{K/Q} of g(x - s*alpha), as a polynomial in x.
Polynomial norm_poly(const Polynomial& g, long s) {
  const Field& K = g.field();
  const Field Q = K.prime_subfield();
  const std::size_t D = K.degree() * static_cast<std::size_t>(g.degree());
  const Scalar salpha = K.mul(K.from_int(s), K.generator());
  std::vector<mpq_class> xs, ys;
  for (std::size_t i = 0; i <= D; ++i) {
    const Scalar x0 = K.sub(K.from_int(static_cast<long>(i)), salpha);
    xs.emplace_back(static_cast<long>(i));
    ys.push_back(number_field_norm(K, g.evaluate(x0)));
  }
  return interpolate(Q, xs, ys);
}

Polynomial lift_to_field(const Polynomial& f, const Field& K) {
  std::vector<Scalar> c;
  for (const auto& v : f.coefficients()) c.push_back(K.embed_prime(v));
  return Polynomial(K, std::move(c));
}

std::vector<Polynomial> factor_squarefree_number_field(const Polynomial& g) {
  const Field& K = g.field();
  if (g.degree() <= 1) return {g.monic()};
  for (long attempt = 0; attempt < 64; ++attempt) {
    const long s = (attempt % 2 == 0) ? attempt / 2 : -(attempt + 1) / 2;
    Polynomial N = norm_poly(g, s);
    if (gcd(N, N.derivative()).degree() > 0) continue;
    std::vector<Polynomial> out;
    const Scalar salpha = K.mul(K.from_int(s), K.generator());
    for (const auto& Ni : factor_squarefree_rational(N)) {
      Polynomial h = gcd(g, lift_to_field(Ni, K).shifted(salpha));
      if (h.degree() > 0) out.push_back(h.monic());
    }
    return out;
  }
  throw InternalError("no squarefree norm found");
}

std::vector<Polynomial> factor_squarefree(const Polynomial& f) {
  const Field& F = f.field();
  if (F.is_finite()) return factor_squarefree_finite(f);
  if (F.kind() == FieldKind::rational) return factor_squarefree_rational(f);
  return factor_squarefree_number_field(f);
}

}  // namespace

mpq_class number_field_norm(const Field& field, const Scalar& a) {
  if (field.is_finite() || field.degree() == 1) {
    if (field.degree() == 1 && !field.is_finite()) return a.rat[0];
    throw FieldError("norm is only defined here for number fields");
  }
  const std::size_t k = field.degree();
  std::vector<std::vector<mpq_class>> m(k, std::vector<mpq_class>(k));
  Scalar basis = field.one();
  const Scalar x = field.generator();
  for (std::size_t j = 0; j < k; ++j) {
    const Scalar col = field.mul(a, basis);
    for (std::size_t i = 0; i < k; ++i) m[i][j] = col.rat[i];
    basis = field.mul(basis, x);
  }
  return det_rational(std::move(m));
}

std::vector<Factor> squarefree_decomposition(const Polynomial& f) {
  std::vector<Factor> out;
  if (f.degree() < 1) return out;
  if (f.field().is_finite())
    squarefree_finite(f.monic(), 1, out);
  else
    squarefree_char0(f.monic(), out);
  return out;
}

std::vector<Factor> factor(const Polynomial& f) {
  if (f.is_zero()) throw DivisionByZero("cannot factor the zero polynomial");
  std::vector<Factor> out;
  for (const auto& part : squarefree_decomposition(f)) {
    for (auto& g : factor_squarefree(part.poly)) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Factor& x) { return x.poly == g; });
      if (it != out.end())
        it->multiplicity += part.multiplicity;
      else
        out.push_back({g, part.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return poly_less(a.poly, b.poly); });
  return out;
}

bool is_irreducible(const Polynomial& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  if (f.field().is_finite()) return irreducible_finite(f.monic());
  auto facs = factor(f);
  return facs.size() == 1 && facs[0].multiplicity == 1;
}

std::vector<Root> roots_in_field(const Polynomial& f) {
  if (f.is_zero()) throw DivisionByZero("roots of the zero polynomial");
  const Field& F = f.field();
  std::vector<Root> out;
  if (F.is_finite()) {
    auto multiplicity = [&](const Scalar& r) {
      std::size_t m = 0;
      Polynomial g = f;
      const Polynomial lin = Polynomial::linear(F, r);
      for (;;) {
        auto [q, rem] = g.divmod(lin);
        if (!rem.is_zero()) break;
        ++m;
        g = q;
      }
      return m;
    };
    if (F.order() <= kExhaustiveRootBound) {
      for (const auto& a : enumerate_field(F))
        if (F.is_zero(f.evaluate(a))) out.push_back({a, multiplicity(a)});
    } else if (f.degree() > 0) {
      const Polynomial m = f.monic();
      const Polynomial x = Polynomial::x(F);
      Polynomial split = gcd(m, powmod(x, F.order(), m) - x);
      std::vector<Polynomial> lins;
      Rng rng(0x600dULL);
      if (split.degree() > 0) equal_degree(split, 1, rng, lins);
      for (const auto& l : lins) {
        const Scalar r = F.neg(l.coeff(0));
        out.push_back({r, multiplicity(r)});
      }
    }
  } else {
    for (const auto& fac : factor(f))
      if (fac.poly.degree() == 1) out.push_back({F.neg(fac.poly.coeff(0)), fac.multiplicity});
  }
  std::sort(out.begin(), out.end(), [&](const Root& a, const Root& b) { return F.compare(a.value, b.value) < 0; });
  return out;
}

}  // namespace tdsharp
