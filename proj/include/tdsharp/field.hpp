#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "tdsharp/error.hpp"

namespace tdsharp {

enum class FieldKind { prime, extension, rational };

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& name);

using ModCoeffs = boost::container::small_vector<std::int64_t, 4>;

/// Raw element storage. Only meaningful together with the Field that
/// produced it: finite fields use `mod` (k residues in [0,p), little-endian
/// in the generator), rational-based fields use `rat` (k canonical fractions).
struct Scalar {
  ModCoeffs mod;
  std::vector<mpq_class> rat;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.mod == b.mod && a.rat == b.rat;
  }
};

/// Immutable description of a coefficient field. Extensions are always
/// simple and built directly over the prime field GF(p) or over Q.
struct FieldSpec {
  FieldKind kind = FieldKind::prime;
  std::int64_t p = 0;  // 0 for rational base
  std::size_t k = 1;
  std::vector<std::int64_t> modulus_mod;  // k+1 coefficients, finite extensions
  std::vector<mpq_class> modulus_rat;     // k+1 coefficients, number fields

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p && a.k == b.k &&
           a.modulus_mod == b.modulus_mod && a.modulus_rat == b.modulus_rat;
  }
};

namespace detail {
struct FieldData;
}

class Field {
 public:
  static Field prime(std::int64_t p);
  static Field rational();
  /// Simple extension of `base` (a prime field or Q) by a monic irreducible
  /// modulus given as base-field coefficients c0..ck.
  static Field extension(const Field& base, const std::vector<Scalar>& modulus);
  /// GF(p^k) with the lexicographically smallest monic irreducible modulus.
  static Field extension(const Field& base, std::size_t k);

  const FieldSpec& spec() const;
  FieldKind kind() const { return spec().kind; }
  std::int64_t characteristic() const { return spec().p; }
  std::size_t degree() const { return spec().k; }
  bool is_finite() const { return spec().p != 0; }
  bool is_prime_field() const { return spec().k == 1; }
  /// p^k for finite fields.
  mpz_class order() const;

  /// GF(p) or Q; the field itself when k == 1.
  Field prime_subfield() const;
  /// Modulus as a list of prime-subfield scalars (empty when k == 1).
  std::vector<Scalar> modulus() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long value) const;
  Scalar from_rational(const mpq_class& value) const;
  /// Class of the extension generator x.
  Scalar generator() const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, const mpz_class& exponent) const;
  /// a += b * c
  void add_product(Scalar& a, const Scalar& b, const Scalar& c) const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  bool equal(const Scalar& a, const Scalar& b) const { return a == b; }
  /// Coefficient-vector lexicographic order (c0 compared first).
  int compare(const Scalar& a, const Scalar& b) const;

  /// Coordinates over the prime subfield (length k).
  std::vector<Scalar> coordinates(const Scalar& a) const;
  Scalar from_coordinates(std::span<const Scalar> coords) const;
  /// Canonical inclusion of a prime-subfield scalar.
  Scalar embed_prime(const Scalar& a) const;
  /// True when `a` lies in the prime subfield.
  bool in_prime_subfield(const Scalar& a) const;

  /// Throws FieldError when `a` is not a valid reduced representation.
  void validate(const Scalar& a) const;

  std::string to_string(const Scalar& a) const;
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.data_ == b.data_ || a.spec() == b.spec();
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// A scalar paired with its field; arithmetic checks that fields agree.
class FieldElement {
 public:
  FieldElement(Field field, Scalar value);

  const Field& field() const { return field_; }
  const Scalar& value() const { return value_; }

  bool is_zero() const { return field_.is_zero(value_); }
  FieldElement inverse() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const;

  std::string to_string() const { return field_.to_string(value_); }

 private:
  void check(const FieldElement& o) const;
  Field field_;
  Scalar value_;
};

bool is_prime(std::int64_t n);

/// Validated construction. For kind == extension with no modulus the
/// lexicographically smallest monic irreducible of degree k is installed
/// (finite fields only). `p == 0` with kind == extension builds a number field.
Field field_create(FieldKind kind, std::int64_t p, std::size_t k = 1,
                   const std::optional<std::vector<mpq_class>>& modulus = std::nullopt);

/// Image of `a` under the inclusion of its field into `target`.
FieldElement embed_base(const FieldElement& a, const Field& target);

/// All p^k elements in coefficient-vector lexicographic order.
std::vector<Scalar> enumerate_field(const Field& field);

}  // namespace tdsharp
