#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/scalar.hpp"

namespace k3lat {

/// g - (r + 1)(g - d + r).
Integer rho(const Integer& g, const Integer& r, const Integer& d);
Scalar rho(const Scalar& g, const Scalar& r, const Scalar& d);
inline Integer rho(long g, long r, long d) { return rho(Integer(g), Integer(r), Integer(d)); }

struct RhoSingReport {
  Integer p_a, r, d, g;
  Integer rho;
  Integer rho_sing;
  bool nonexistence_triggered = false;
};

/// rho(g, r, d) + p_a - g. Throws Error unless 0 <= g <= p_a.
RhoSingReport rho_sing(const Integer& p_a, const Integer& r, const Integer& d, const Integer& g);
Scalar rho_sing(const Scalar& p_a, const Scalar& r, const Scalar& d, const Scalar& g);
inline RhoSingReport rho_sing(long p_a, long r, long d, long g) {
  return rho_sing(Integer(p_a), Integer(r), Integer(d), Integer(g));
}

/// Admissible geometric genera 3 <= p_g <= floor((p_a + 2)/2); empty for p_a < 4.
std::optional<std::pair<Integer, Integer>> hep_range(const Integer& p_a);
/// 4/(p_a + 4) for even p_a, 4/(p_a + 3) for odd p_a. Throws Error if p_a < 4.
Rational hep_bound(const Integer& p_a);

/// sqrt(radicand) for a non-negative rational radicand, compared exactly.
struct Surd {
  Rational radicand;
  /// Correctly rounded decimal with the given number of fractional digits.
  std::string decimal(unsigned digits = 12) const;
  /// Exact value when the radicand is a rational square.
  std::optional<Rational> rational_value() const;
};

/// x < sqrt(c), x <= sqrt(c) for rational x and c >= 0, without floating point.
bool less_than(const Rational& x, const Surd& s);
bool less_equal(const Rational& x, const Surd& s);

/// Integer square root of a non-negative integer.
Integer isqrt(const Integer& n);

struct SeshadriBounds {
  /// sqrt(2/(p_a - 1)), the upper bound through eps(H) <= sqrt(H^2).
  Surd upper;
  /// (floor(sqrt(2 p_a - 2)) - 1)/(p_a - 1), below which eps(H)/(p_a - 1) cannot go.
  Rational lower;
  /// eps(H)/(p_a - 1) when eps(H) is known (quartics: eps = 2).
  std::optional<Rational> known;
  std::string note;
};

SeshadriBounds seshadri_bounds(const Integer& p_a);

/// (p_a + 4)/4, the largest k with Y - k P effective.
Rational thm_eff_bound(const Integer& p_a);

struct NamedBound {
  std::string name;
  /// Either an exact rational or a surd.
  std::optional<Rational> value;
  std::optional<Surd> surd;
  bool conditional = false;
  std::string note;
};

struct BoundComparison {
  std::string statement;
  bool holds = false;
  /// Asserted comparisons must hold; the others are informational.
  bool asserted = true;
};

struct SlopeBoundReport {
  Integer p_a;
  std::vector<NamedBound> bounds;
  std::vector<BoundComparison> comparisons;
  bool all_hold() const;
};

/// Collects every applicable slope bound for genus p_a, optionally with the
/// plane family parameter n (p_a = n^2 - 9n + 20) or the P^1-bundle family
/// parameter d (p_a = d^2), and checks their ordering exactly.
SlopeBoundReport compare_bounds(const Integer& p_a, const std::optional<Integer>& n = std::nullopt,
                                const std::optional<Integer>& d = std::nullopt);

/// binom(delta + t, delta).
Integer marker_count(const Integer& delta, const Integer& t);

}  // namespace k3lat
