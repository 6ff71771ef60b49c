#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace k3lat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Renders a rational as "p" or "p/q" (denominator positive, lowest terms).
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "p", "-p" or "p/q". Throws Error on malformed input or q == 0.
Rational parse_rational(std::string_view text);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

/// Exact value in Q[t]: a univariate polynomial with rational coefficients in
/// a single formal parameter. Constant polynomials are the plain rationals.
///
/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero scalar has an empty coefficient list and equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& value);  // NOLINT(google-explicit-constructor)
  Scalar(const Integer& value);   // NOLINT(google-explicit-constructor)
  Scalar(long value);             // NOLINT(google-explicit-constructor)
  Scalar(int value) : Scalar(static_cast<long>(value)) {}  // NOLINT

  /// c0 + c1 t + c2 t^2 + ...
  static Scalar from_coefficients(std::vector<Rational> coefficients);
  /// The formal parameter t itself.
  static Scalar parameter();

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// -1 for the zero scalar.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_integer() const;
  /// Every coefficient is an integer (an integral polynomial).
  bool has_integer_coefficients() const;
  Rational coefficient(std::size_t power) const;

  /// The value of a constant scalar. Throws Error if the parameter occurs.
  Rational constant() const;
  Scalar evaluate(const Rational& t) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  /// Division by a nonzero rational constant.
  Scalar& operator/=(const Rational& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Rational& rhs) { return lhs /= rhs; }
  friend bool operator==(const Scalar& lhs, const Scalar& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

  /// Canonical text "c0 + c1*n + c2*n^2": ascending degree, zero terms
  /// dropped, negative terms written with " - ", unit coefficients omitted on
  /// non-constant terms.
  std::string to_string(std::string_view parameter_name = "t") const;

 private:
  void normalize();

  std::vector<Rational> coeffs_;
};

/// Parses a sum of terms "c", "c*n", "c*n^k", "n", "n^k" with rational c and
/// optional whitespace; the canonical rendering round-trips. Throws Error on
/// malformed input.
Scalar parse_scalar(std::string_view text, std::string_view parameter_name);

/// Ordering of constant scalars; throws Error if either depends on the parameter.
int compare(const Scalar& lhs, const Scalar& rhs);

}  // namespace k3lat
