#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdsharp/field.hpp"

namespace tdsharp {

/// Univariate polynomial over a Field; little-endian coefficients with no
/// trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  explicit Polynomial(Field field);
  Polynomial(Field field, std::vector<Scalar> coeffs);

  static Polynomial constant(const Field& field, const Scalar& c);
  static Polynomial x(const Field& field);
  /// x - root
  static Polynomial linear(const Field& field, const Scalar& root);
  static Polynomial from_ints(const Field& field, const std::vector<long>& coeffs);

  const Field& field() const { return field_; }
  const std::vector<Scalar>& coefficients() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_monic() const;
  Scalar coeff(std::size_t i) const;
  const Scalar& leading() const;

  Polynomial monic() const;
  Polynomial derivative() const;
  Polynomial scaled(const Scalar& c) const;
  /// f(x + a)
  Polynomial shifted(const Scalar& a) const;
  Scalar evaluate(const Scalar& at) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  /// Exact quotient and remainder; throws DivisionByZero for a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial operator/(const Polynomial& o) const { return divmod(o).first; }
  Polynomial operator%(const Polynomial& o) const { return divmod(o).second; }
  bool operator==(const Polynomial& o) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  void check(const Polynomial& o) const;
  Field field_;
  std::vector<Scalar> c_;
};

/// Monic gcd (zero when both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);
/// base^exponent mod modulus.
Polynomial powmod(const Polynomial& base, const mpz_class& exponent, const Polynomial& modulus);
/// Canonical order on monic polynomials: degree, then coefficient lexicographic.
bool poly_less(const Polynomial& a, const Polynomial& b);

}  // namespace tdsharp
