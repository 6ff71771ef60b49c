#include "k3lat/hilbert_square.hpp"

#include "k3lat/error.hpp"

namespace k3lat {

HilbertSquareLattice::HilbertSquareLattice(LatticePtr base, std::string e_name) : base_(std::move(base)) {
  require(base_ != nullptr, "no base lattice");
  require(!base_->index_of(e_name), "base lattice already has a basis vector named '" + e_name + "'");
  const std::size_t r = base_->rank();
  Matrix<Scalar> g(r + 1, r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) g(i, j) = base_->gram()(i, j);
  }
  g(r, r) = Scalar(-2);
  auto names = base_->basis_names();
  names.push_back(std::move(e_name));
  extended_ = make_lattice(std::move(names), std::move(g), base_->parameter());
}

DivisorClass HilbertSquareLattice::e() const { return DivisorClass::basis(extended_, e_index()); }

DivisorClass HilbertSquareLattice::lift(const DivisorClass& base_class) const {
  if (same_lattice(base_class.lattice(), extended_)) return base_class;
  require(same_lattice(base_class.lattice(), base_), "class does not live on the base lattice");
  auto coords = base_class.coords();
  coords.emplace_back();
  return DivisorClass(extended_, std::move(coords));
}

HilbertSquareLattice extend(const LatticePtr& pic) { return HilbertSquareLattice(pic); }

DivisorClass dual_divisor_class(const std::vector<Rational>& pairings, const HilbertSquareLattice& lattice) {
  const auto& lat = lattice.lattice();
  require(pairings.size() == lat->rank(), "expected " + std::to_string(lat->rank()) + " pairings");
  require(lat->is_rational(), "dual class needs a numeric lattice");
  require(determinant(lat->rational_gram()) != 0, "degenerate form has no dual classes");
  const auto sol = solve(lat->rational_gram(), pairings);
  std::vector<Scalar> coords(sol.begin(), sol.end());
  return DivisorClass(lat, std::move(coords));
}

bool doubled_is_integral(const DivisorClass& w) { return (Scalar(2) * w).is_integral(); }

std::vector<Rational> curve_pairings(const CurveClass& x) {
  return {x.a * Rational(2 * x.p_a - 2), 2 * x.b};
}

HilbertSquareLattice rank_one_hilbert_square(const Integer& p_a) {
  require(p_a >= 2, "genus must be at least 2");
  Matrix<Scalar> g(1, 1);
  g(0, 0) = Scalar(Integer(2 * p_a - 2));
  return extend(make_lattice({"H"}, std::move(g)));
}

RationalCurve rational_curve_class(const Integer& m, const Integer& g0, const Integer& p_a) {
  require(m >= 1, "m must be positive");
  require(g0 >= 0, "g0 must be non-negative");
  CurveClass x{Rational(m), Rational(Integer(g0 + 1), Integer(2)), p_a};
  x.b.canonicalize();
  const auto lat = rank_one_hilbert_square(p_a);
  DivisorClass w = dual_divisor_class(curve_pairings(x), lat);
  ensure(w == DivisorClass(lat.lattice(), {Scalar(m), Scalar(Rational(-x.b))}), "dual of a rational curve class");
  ensure(doubled_is_integral(w), "2w must be integral");
  return {x, w};
}

Slope slope(const CurveClass& x) {
  require(x.a > 0, "slope is defined only for a > 0");
  if (x.b <= 0) return {true, Rational(0)};
  return {false, Rational(x.a / x.b)};
}

Rational q_of_curve(const Integer& m, const Integer& g0, const Integer& p_a) {
  Rational t(Integer((g0 + 1) * (g0 + 1)), Integer(2));
  t.canonicalize();
  return Rational(2 * m * m * (p_a - 1)) - t;
}

Scalar q_of_curve(const Scalar& m, const Scalar& g0, const Scalar& p_a) {
  const Scalar s = g0 + Scalar(1);
  return Scalar(2) * m * m * (p_a - Scalar(1)) - s * s / Rational(2);
}

DivisorClass quartic_involution(const HilbertSquareLattice& lattice, const DivisorClass& v,
                                const DivisorClass& g) {
  const DivisorClass gl = lattice.lift(g);
  require(gl[lattice.e_index()].is_zero(), "polarization must come from the base lattice");
  require(square(gl) == Scalar(4), "quartic involution needs G^2 = 4, got " + square(gl).to_string());
  const DivisorClass vl = lattice.lift(v);
  const DivisorClass u = gl - lattice.e();
  return pair(u, vl) * u - vl;
}

Integer g0_from_e_pairing(const Integer& x_dot_e) {
  require(x_dot_e >= 1, "X.e must be at least 1");
  return x_dot_e - 1;
}

Integer g0_from_multiplicity(const Integer& mult) {
  require(mult >= 1, "multiplicity must be at least 1");
  return mult - 1;
}

}  // namespace k3lat
