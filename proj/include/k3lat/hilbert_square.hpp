#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// Pic(S) + Z e with e orthogonal to Pic(S) and e^2 = -2. The extended
/// lattice keeps the base basis names in order and appends "e".
class HilbertSquareLattice {
 public:
  explicit HilbertSquareLattice(LatticePtr base, std::string e_name = "e");

  const LatticePtr& base() const { return base_; }
  const LatticePtr& lattice() const { return extended_; }
  std::size_t e_index() const { return base_->rank(); }
  DivisorClass e() const;
  /// The class of a divisor of S on the Hilbert square.
  DivisorClass lift(const DivisorClass& base_class) const;
  DivisorClass basis(std::string_view name) const { return DivisorClass::basis(extended_, name); }

 private:
  LatticePtr base_;
  LatticePtr extended_;
};

HilbertSquareLattice extend(const LatticePtr& pic);

/// The class w with q(w, v_i) = pairings[i] for every basis vector v_i of the
/// extended lattice. Throws Error if the Gram matrix is degenerate or symbolic.
DivisorClass dual_divisor_class(const std::vector<Rational>& pairings, const HilbertSquareLattice& lattice);

/// Whether 2w has integer coordinates.
bool doubled_is_integral(const DivisorClass& w);

/// a Y - b P, with P the class of a line in the exceptional divisor, on the
/// Hilbert square of a K3 with Pic = Z H of genus p_a.
struct CurveClass {
  Rational a;
  Rational b;
  Integer p_a;
};

/// Pairings of a curve class against (H, e): (a (2 p_a - 2), 2b).
std::vector<Rational> curve_pairings(const CurveClass& x);

/// The rank-1 Hilbert square lattice [2 p_a - 2] + Z e with basis (H, e).
HilbertSquareLattice rank_one_hilbert_square(const Integer& p_a);

struct RationalCurve {
  CurveClass curve;
  DivisorClass dual;
};

/// m Y - ((g0 + 1)/2) P and its dual m H - ((g0 + 1)/2) e.
RationalCurve rational_curve_class(const Integer& m, const Integer& g0, const Integer& p_a);

struct Slope {
  bool infinite = false;
  Rational value;
  std::string to_string() const { return infinite ? "infinity" : k3lat::to_string(value); }
};

/// a / b for b > 0, infinite for b <= 0. Throws Error unless a > 0.
Slope slope(const CurveClass& x);

/// 2 m^2 (p_a - 1) - (g0 + 1)^2 / 2.
Rational q_of_curve(const Integer& m, const Integer& g0, const Integer& p_a);
Scalar q_of_curve(const Scalar& m, const Scalar& g0, const Scalar& p_a);

/// v -> q(G - e, v) (G - e) - v for a quartic polarization G (G^2 = 4) of the
/// base lattice; G may be given on the base or on the extended lattice.
DivisorClass quartic_involution(const HilbertSquareLattice& lattice, const DivisorClass& v,
                                const DivisorClass& g);

/// g0 = X.e - 1 (X.e >= 1) and g0 = mult - 1 (mult >= 1).
Integer g0_from_e_pairing(const Integer& x_dot_e);
Integer g0_from_multiplicity(const Integer& mult);

}  // namespace k3lat
