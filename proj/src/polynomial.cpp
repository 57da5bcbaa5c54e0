#include "tdsharp/polynomial.hpp"

namespace tdsharp {

Polynomial::Polynomial(Field field) : field_(std::move(field)) {}

Polynomial::Polynomial(Field field, std::vector<Scalar> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  normalize();
}

void Polynomial::normalize() {
  while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
}

void Polynomial::check(const Polynomial& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch();
}

Polynomial Polynomial::constant(const Field& field, const Scalar& c) { return Polynomial(field, {c}); }

Polynomial Polynomial::x(const Field& field) { return Polynomial(field, {field.zero(), field.one()}); }

Polynomial Polynomial::linear(const Field& field, const Scalar& root) {
  return Polynomial(field, {field.neg(root), field.one()});
}

Polynomial Polynomial::from_ints(const Field& field, const std::vector<long>& coeffs) {
  std::vector<Scalar> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.push_back(field.from_int(v));
  return Polynomial(field, std::move(c));
}

bool Polynomial::is_one() const { return c_.size() == 1 && field_.is_one(c_[0]); }

bool Polynomial::is_monic() const { return !c_.empty() && field_.is_one(c_.back()); }

Scalar Polynomial::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

const Scalar& Polynomial::leading() const {
  if (c_.empty()) throw DivisionByZero("zero polynomial has no leading coefficient");
  return c_.back();
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  return scaled(field_.inv(c_.back()));
}

Polynomial Polynomial::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(field_.mul(c_[i], field_.from_int(static_cast<long>(i))));
  return Polynomial(field_, std::move(d));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  std::vector<Scalar> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(field_.mul(a, c));
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::shifted(const Scalar& a) const {
  // Horner in terms of (x + a).
  Polynomial result(field_);
  const Polynomial xa(field_, {a, field_.one()});
  for (std::size_t i = c_.size(); i-- > 0;) result = result * xa + constant(field_, c_[i]);
  return result;
}

Scalar Polynomial::evaluate(const Scalar& at) const {
  Scalar acc = field_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, at), c_[i]);
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check(o);
  std::vector<Scalar> out(std::max(c_.size(), o.c_.size()), field_.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < c_.size() && i < o.c_.size())
      out[i] = field_.add(c_[i], o.c_[i]);
    else if (i < c_.size())
      out[i] = c_[i];
    else
      out[i] = o.c_[i];
  }
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  std::vector<Scalar> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(field_.neg(a));
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check(o);
  if (c_.empty() || o.c_.empty()) return Polynomial(field_);
  std::vector<Scalar> out(c_.size() + o.c_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (field_.is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) field_.add_product(out[i + j], c_[i], o.c_[j]);
  }
  return Polynomial(field_, std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  check(divisor);
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial(field_), *this};
  std::vector<Scalar> rem = c_;
  const std::size_t dd = divisor.c_.size() - 1;
  const Scalar lead_inv = field_.inv(divisor.c_.back());
  std::vector<Scalar> quot(c_.size() - dd, field_.zero());
  for (std::size_t i = rem.size(); i-- > dd;) {
    if (field_.is_zero(rem[i])) continue;
    const Scalar q = field_.mul(rem[i], lead_inv);
    quot[i - dd] = q;
    const Scalar nq = field_.neg(q);
    for (std::size_t j = 0; j <= dd; ++j) field_.add_product(rem[i - dd + j], nq, divisor.c_[j]);
  }
  rem.resize(dd);
  return {Polynomial(field_, std::move(quot)), Polynomial(field_, std::move(rem))};
}

bool Polynomial::operator==(const Polynomial& o) const { return field_ == o.field_ && c_ == o.c_; }

std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (field_.is_zero(c_[i])) continue;
    std::string c = field_.to_string(c_[i]);
    if (c.find_first_of("+-/a") != std::string::npos && i > 0) c = "(" + c + ")";
    if (!out.empty()) out += " + ";
    if (i == 0)
      out += c;
    else {
      if (c != "1") out += c + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Polynomial r = r0 % r1;
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return r0.monic();
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field());
  return ((a * b) / gcd(a, b)).monic();
}

Polynomial powmod(const Polynomial& base, const mpz_class& exponent, const Polynomial& modulus) {
  const Field& f = base.field();
  Polynomial result = Polynomial::constant(f, f.one()) % modulus;
  Polynomial b = base % modulus;
  const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % modulus;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = (result * b) % modulus;
  }
  return result;
}

bool poly_less(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    const int c = f.compare(a.coefficients()[i], b.coefficients()[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace tdsharp
