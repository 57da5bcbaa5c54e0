#include "tdsharp/field.hpp"

#include <algorithm>
#include <sstream>

#include "tdsharp/factor.hpp"
#include "tdsharp/polynomial.hpp"

namespace tdsharp {

namespace detail {
struct FieldData {
  FieldSpec spec;
  std::shared_ptr<const FieldData> prime;  // null for prime fields and Q
};
}  // namespace detail

namespace {

constexpr std::int64_t kMaxCharacteristic = (std::int64_t{1} << 31) - 1;

inline std::int64_t addm(std::int64_t a, std::int64_t b, std::int64_t p) {
  const std::int64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::int64_t subm(std::int64_t a, std::int64_t b, std::int64_t p) {
  const std::int64_t s = a - b;
  return s < 0 ? s + p : s;
}
inline std::int64_t mulm(std::int64_t a, std::int64_t b, std::int64_t p) { return (a * b) % p; }

std::int64_t invm(std::int64_t a, std::int64_t p) {
  if (a == 0) throw DivisionByZero();
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return s0 < 0 ? s0 + p : s0;
}

std::shared_ptr<const detail::FieldData> make_data(FieldSpec spec) {
  auto data = std::make_shared<detail::FieldData>();
  data->spec = std::move(spec);
  if (data->spec.k > 1) {
    auto prime = std::make_shared<detail::FieldData>();
    if (data->spec.p == 0) {
      prime->spec.kind = FieldKind::rational;
      prime->spec.p = 0;
    } else {
      prime->spec.kind = FieldKind::prime;
      prime->spec.p = data->spec.p;
    }
    prime->spec.k = 1;
    data->prime = std::move(prime);
  }
  return data;
}

// Extended Euclid in base[x]: returns s with s*a == 1 mod m.
Polynomial inverse_mod(const Polynomial& a, const Polynomial& m) {
  Polynomial r0 = m, r1 = a;
  Polynomial s0(m.field()), s1 = Polynomial::constant(m.field(), m.field().one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw DivisionByZero();
  return s0.scaled(m.field().inv(r0.coeff(0)));
}

}  // namespace

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::prime: return "prime";
    case FieldKind::extension: return "extension";
    case FieldKind::rational: return "rational";
  }
  return "?";
}

FieldKind field_kind_from_string(const std::string& name) {
  if (name == "prime") return FieldKind::prime;
  if (name == "extension") return FieldKind::extension;
  if (name == "rational") return FieldKind::rational;
  throw FieldError("unknown field kind '" + name + "'");
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

const FieldSpec& Field::spec() const { return data_->spec; }

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (p > kMaxCharacteristic) throw FieldError("characteristic exceeds 2^31-1");
  FieldSpec spec;
  spec.kind = FieldKind::prime;
  spec.p = p;
  spec.k = 1;
  return Field(make_data(std::move(spec)));
}

Field Field::rational() {
  FieldSpec spec;
  spec.kind = FieldKind::rational;
  spec.p = 0;
  spec.k = 1;
  return Field(make_data(std::move(spec)));
}

Field Field::extension(const Field& base, const std::vector<Scalar>& modulus) {
  if (!base.is_prime_field()) throw FieldError("extensions must be built over GF(p) or Q");
  if (modulus.size() < 2) throw FieldError("extension degree must be at least 1");
  const std::size_t k = modulus.size() - 1;
  for (const auto& c : modulus) base.validate(c);
  if (!base.is_one(modulus.back())) throw FieldError("modulus is not monic");
  if (k == 1) return base;
  Polynomial m(base, modulus);
  if (!is_irreducible(m)) throw FieldError("modulus " + m.to_string() + " is reducible");
  FieldSpec spec;
  spec.kind = FieldKind::extension;
  spec.p = base.characteristic();
  spec.k = k;
  if (base.is_finite()) {
    for (const auto& c : modulus) spec.modulus_mod.push_back(c.mod[0]);
  } else {
    for (const auto& c : modulus) spec.modulus_rat.push_back(c.rat[0]);
  }
  return Field(make_data(std::move(spec)));
}

Field Field::extension(const Field& base, std::size_t k) {
  if (k < 1) throw FieldError("extension degree must be at least 1");
  if (!base.is_prime_field()) throw FieldError("extensions must be built over GF(p) or Q");
  if (k == 1) return base;
  if (!base.is_finite()) throw FieldError("a modulus is required for extensions of Q");
  const std::int64_t p = base.characteristic();
  // Lexicographic order with c0 most significant; c0 == 0 is always reducible.
  std::vector<std::int64_t> digits(k, 0);
  digits[0] = 1;
  for (;;) {
    std::vector<Scalar> coeffs;
    for (auto d : digits) coeffs.push_back(base.from_int(d));
    coeffs.push_back(base.one());
    if (is_irreducible(Polynomial(base, coeffs))) return extension(base, coeffs);
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < p) break;
      digits[pos] = 0;
      if (pos == 0) throw InternalError("no irreducible polynomial found");
    }
  }
}

mpz_class Field::order() const {
  if (!is_finite()) throw BoundError("the rationals are infinite");
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(spec().p), spec().k);
  return q;
}

Field Field::prime_subfield() const {
  if (!data_->prime) return *this;
  return Field(data_->prime);
}

std::vector<Scalar> Field::modulus() const {
  std::vector<Scalar> out;
  const Field base = prime_subfield();
  for (auto c : spec().modulus_mod) out.push_back(base.from_int(c));
  for (const auto& c : spec().modulus_rat) out.push_back(base.from_rational(c));
  return out;
}

Scalar Field::zero() const {
  Scalar s;
  if (is_finite())
    s.mod.assign(spec().k, 0);
  else
    s.rat.assign(spec().k, mpq_class(0));
  return s;
}

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long value) const {
  Scalar s = zero();
  if (is_finite()) {
    const std::int64_t p = spec().p;
    std::int64_t v = value % p;
    if (v < 0) v += p;
    s.mod[0] = v;
  } else {
    s.rat[0] = value;
  }
  return s;
}

Scalar Field::from_rational(const mpq_class& value) const {
  if (is_finite()) {
    mpz_class num = value.get_num() % spec().p;
    mpz_class den = value.get_den() % spec().p;
    Scalar n = from_int(num.get_si());
    Scalar d = from_int(den.get_si());
    return div(n, d);
  }
  Scalar s = zero();
  s.rat[0] = value;
  s.rat[0].canonicalize();
  return s;
}

Scalar Field::generator() const {
  if (spec().k < 2) throw FieldError("field has no extension generator");
  Scalar s = zero();
  if (is_finite())
    s.mod[1] = 1;
  else
    s.rat[1] = 1;
  return s;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  Scalar r;
  if (is_finite()) {
    const std::int64_t p = spec().p;
    r.mod.resize(a.mod.size());
    for (std::size_t i = 0; i < a.mod.size(); ++i) r.mod[i] = addm(a.mod[i], b.mod[i], p);
  } else {
    r.rat.resize(a.rat.size());
    for (std::size_t i = 0; i < a.rat.size(); ++i) r.rat[i] = a.rat[i] + b.rat[i];
  }
  return r;
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  Scalar r;
  if (is_finite()) {
    const std::int64_t p = spec().p;
    r.mod.resize(a.mod.size());
    for (std::size_t i = 0; i < a.mod.size(); ++i) r.mod[i] = subm(a.mod[i], b.mod[i], p);
  } else {
    r.rat.resize(a.rat.size());
    for (std::size_t i = 0; i < a.rat.size(); ++i) r.rat[i] = a.rat[i] - b.rat[i];
  }
  return r;
}

Scalar Field::neg(const Scalar& a) const { return sub(zero(), a); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  const std::size_t k = spec().k;
  if (is_finite()) {
    const std::int64_t p = spec().p;
    if (k == 1) {
      Scalar r;
      r.mod.push_back(mulm(a.mod[0], b.mod[0], p));
      return r;
    }
    boost::container::small_vector<std::int64_t, 8> prod(2 * k - 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (a.mod[i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a.mod[i] * b.mod[j]) % p;
    }
    const auto& m = spec().modulus_mod;
    for (std::size_t d = 2 * k - 2; d >= k; --d) {
      const std::int64_t c = prod[d];
      if (c == 0) continue;
      for (std::size_t t = 0; t < k; ++t) prod[d - k + t] = subm(prod[d - k + t], mulm(c, m[t], p), p);
    }
    Scalar r;
    r.mod.assign(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
  }
  if (k == 1) {
    Scalar r;
    r.rat.push_back(a.rat[0] * b.rat[0]);
    return r;
  }
  std::vector<mpq_class> prod(2 * k - 1, mpq_class(0));
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn(a.rat[i]) == 0) continue;
    for (std::size_t j = 0; j < k; ++j) prod[i + j] += a.rat[i] * b.rat[j];
  }
  const auto& m = spec().modulus_rat;
  for (std::size_t d = 2 * k - 2; d >= k; --d) {
    if (sgn(prod[d]) == 0) continue;
    const mpq_class c = prod[d];
    for (std::size_t t = 0; t < k; ++t) prod[d - k + t] -= c * m[t];
  }
  prod.resize(k);
  Scalar r;
  r.rat = std::move(prod);
  return r;
}

void Field::add_product(Scalar& a, const Scalar& b, const Scalar& c) const {
  if (is_finite() && spec().k == 1) {
    a.mod[0] = (a.mod[0] + b.mod[0] * c.mod[0]) % spec().p;
    return;
  }
  if (!is_finite() && spec().k == 1) {
    a.rat[0] += b.rat[0] * c.rat[0];
    return;
  }
  a = add(a, mul(b, c));
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw DivisionByZero();
  if (spec().k == 1) {
    Scalar r;
    if (is_finite())
      r.mod.push_back(invm(a.mod[0], spec().p));
    else
      r.rat.push_back(1 / a.rat[0]);
    return r;
  }
  const Field base = prime_subfield();
  Polynomial pa(base, coordinates(a));
  Polynomial pm(base, modulus());
  Polynomial s = inverse_mod(pa, pm);
  std::vector<Scalar> coords = s.coefficients();
  coords.resize(spec().k, base.zero());
  return from_coordinates(coords);
}

Scalar Field::pow(const Scalar& a, const mpz_class& exponent) const {
  if (exponent < 0) return pow(inv(a), -exponent);
  Scalar result = one();
  Scalar base = a;
  mpz_class e = exponent;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool Field::is_zero(const Scalar& a) const {
  for (auto c : a.mod)
    if (c != 0) return false;
  for (const auto& c : a.rat)
    if (sgn(c) != 0) return false;
  return true;
}

bool Field::is_one(const Scalar& a) const {
  if (is_finite()) {
    if (a.mod[0] != 1) return false;
    for (std::size_t i = 1; i < a.mod.size(); ++i)
      if (a.mod[i] != 0) return false;
    return true;
  }
  if (a.rat[0] != 1) return false;
  for (std::size_t i = 1; i < a.rat.size(); ++i)
    if (sgn(a.rat[i]) != 0) return false;
  return true;
}

int Field::compare(const Scalar& a, const Scalar& b) const {
  if (is_finite()) {
    for (std::size_t i = 0; i < a.mod.size(); ++i) {
      if (a.mod[i] != b.mod[i]) return a.mod[i] < b.mod[i] ? -1 : 1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < a.rat.size(); ++i) {
    const int c = cmp(a.rat[i], b.rat[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::vector<Scalar> Field::coordinates(const Scalar& a) const {
  std::vector<Scalar> out;
  out.reserve(spec().k);
  if (is_finite()) {
    for (auto c : a.mod) {
      Scalar s;
      s.mod.push_back(c);
      out.push_back(std::move(s));
    }
  } else {
    for (const auto& c : a.rat) {
      Scalar s;
      s.rat.push_back(c);
      out.push_back(std::move(s));
    }
  }
  return out;
}

Scalar Field::from_coordinates(std::span<const Scalar> coords) const {
  if (coords.size() != spec().k) throw DimensionError("coordinate vector has wrong length");
  Scalar s;
  if (is_finite()) {
    for (const auto& c : coords) s.mod.push_back(c.mod.at(0));
  } else {
    for (const auto& c : coords) s.rat.push_back(c.rat.at(0));
  }
  return s;
}

Scalar Field::embed_prime(const Scalar& a) const {
  Scalar s = zero();
  if (is_finite())
    s.mod[0] = a.mod.at(0);
  else
    s.rat[0] = a.rat.at(0);
  return s;
}

bool Field::in_prime_subfield(const Scalar& a) const {
  for (std::size_t i = 1; i < a.mod.size(); ++i)
    if (a.mod[i] != 0) return false;
  for (std::size_t i = 1; i < a.rat.size(); ++i)
    if (sgn(a.rat[i]) != 0) return false;
  return true;
}

void Field::validate(const Scalar& a) const {
  const std::size_t k = spec().k;
  if (is_finite()) {
    if (a.mod.size() != k || !a.rat.empty()) throw FieldError("element has wrong shape for " + describe());
    for (auto c : a.mod)
      if (c < 0 || c >= spec().p)
        throw FieldError("coefficient out of range for p=" + std::to_string(spec().p));
  } else {
    if (a.rat.size() != k || !a.mod.empty()) throw FieldError("element has wrong shape for " + describe());
    for (const auto& c : a.rat)
      if (c.get_den() <= 0 || gcd(c.get_num(), c.get_den()) != 1) throw FieldError("fraction not in lowest terms");
  }
}

std::string Field::to_string(const Scalar& a) const {
  const std::size_t k = spec().k;
  std::vector<std::string> coeffs;
  if (is_finite()) {
    for (auto c : a.mod) coeffs.push_back(std::to_string(c));
  } else {
    for (const auto& c : a.rat) coeffs.push_back(c.get_str());
  }
  if (k == 1) return coeffs[0];
  std::string out;
  for (std::size_t i = k; i-- > 0;) {
    if (coeffs[i] == "0") continue;
    if (!out.empty()) out += "+";
    const bool paren = coeffs[i].find_first_of("/-") != std::string::npos;
    const std::string c = paren ? "(" + coeffs[i] + ")" : coeffs[i];
    if (i == 0)
      out += c;
    else if (coeffs[i] == "1")
      out += (i == 1 ? "a" : "a^" + std::to_string(i));
    else
      out += c + (i == 1 ? "a" : "a^" + std::to_string(i));
  }
  return out.empty() ? "0" : out;
}

std::string Field::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case FieldKind::prime: os << "GF(" << spec().p << ")"; break;
    case FieldKind::rational: os << "Q"; break;
    case FieldKind::extension: {
      const Field base = prime_subfield();
      if (is_finite())
        os << "GF(" << spec().p << "^" << spec().k << ")";
      else
        os << "Q(a)";
      os << " = " << base.describe() << "[a]/(" << Polynomial(base, modulus()).to_string("a") << ")";
      break;
    }
  }
  return os.str();
}

FieldElement::FieldElement(Field field, Scalar value) : field_(std::move(field)), value_(std::move(value)) {
  field_.validate(value_);
}

void FieldElement::check(const FieldElement& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch();
}

FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_)}; }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check(o);
  return {field_, field_.add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check(o);
  return {field_, field_.sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check(o);
  return {field_, field_.mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check(o);
  return {field_, field_.div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }
bool FieldElement::operator==(const FieldElement& o) const {
  check(o);
  return value_ == o.value_;
}

Field field_create(FieldKind kind, std::int64_t p, std::size_t k,
                   const std::optional<std::vector<mpq_class>>& modulus) {
  if (k < 1) throw FieldError("extension degree must be at least 1");
  switch (kind) {
    case FieldKind::rational:
      if (k != 1) throw FieldError("kind rational requires k = 1");
      return Field::rational();
    case FieldKind::prime:
      if (k != 1) throw FieldError("kind prime requires k = 1");
      return Field::prime(p);
    case FieldKind::extension: {
      const Field base = p == 0 ? Field::rational() : Field::prime(p);
      if (!modulus) return Field::extension(base, k);
      if (modulus->size() != k + 1)
        throw FieldError("modulus must have k+1 = " + std::to_string(k + 1) + " coefficients");
      std::vector<Scalar> coeffs;
      for (const auto& c : *modulus) {
        if (base.is_finite()) {
          if (c.get_den() != 1 || c < 0 || c >= p)
            throw FieldError("coefficient out of range for p=" + std::to_string(p));
        }
        coeffs.push_back(base.from_rational(c));
      }
      return Field::extension(base, coeffs);
    }
  }
  throw FieldError("unknown field kind");
}

FieldElement embed_base(const FieldElement& a, const Field& target) {
  const Field& source = a.field();
  if (source == target) return a;
  if (!source.is_prime_field() || !(target.prime_subfield() == source))
    throw FieldMismatch("cannot embed " + source.describe() + " into " + target.describe());
  return {target, target.embed_prime(a.value())};
}

std::vector<Scalar> enumerate_field(const Field& field) {
  if (!field.is_finite()) throw BoundError("cannot enumerate an infinite field");
  const mpz_class q = field.order();
  if (q > 1'000'000) throw BoundError("field too large to enumerate");
  const std::size_t count = q.get_ui();
  const std::size_t k = field.degree();
  const std::int64_t p = field.characteristic();
  std::vector<Scalar> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Scalar s;
    s.mod.assign(k, 0);
    std::size_t rest = i;
    for (std::size_t pos = k; pos-- > 0;) {
      s.mod[pos] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(p));
      rest /= static_cast<std::size_t>(p);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tdsharp
