#include <gtest/gtest.h>

#include <k3lat/error.hpp>
#include <k3lat/hilbert_square.hpp>

#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace k3lat;
using testing_support::class_of;
using testing_support::lattice_of;

TEST(HilbertSquare, ExtendsByAnOrthogonalRoot) {
  const auto hs = extend(lattice_of({{2, 7}, {7, 4}}, {"F", "G"}));
  EXPECT_EQ(hs.lattice()->rank(), 3u);
  EXPECT_EQ(hs.lattice()->basis_names().back(), "e");
  EXPECT_EQ(square(hs.e()), Scalar(-2));
  EXPECT_EQ(pair(hs.e(), hs.basis("F")), Scalar(0));
  EXPECT_EQ(square(hs.lift(DivisorClass::basis(hs.base(), "G"))), Scalar(4));
  EXPECT_EQ(hs.e_index(), 2u);
}

TEST(HilbertSquare, RationalCurveExamples) {
  const auto c = rational_curve_class(1, 3, 7);
  EXPECT_EQ(c.dual.to_string(), "H - 2*e");
  EXPECT_EQ(slope(c.curve).to_string(), "1/2");
  EXPECT_EQ(square(c.dual), Scalar(4));
  const auto quartic = rational_curve_class(1, 2, 3);
  EXPECT_EQ(quartic.dual.to_string(), "H - 3/2*e");
  EXPECT_EQ(square(quartic.dual), Scalar(Rational(-1, 2)));
  EXPECT_TRUE(doubled_is_integral(quartic.dual));
  EXPECT_FALSE(quartic.dual.is_integral());
}

TEST(HilbertSquare, DualRoundTripAndSquareOverGrid) {
  for (long m = 1; m <= 3; ++m) {
    for (long g0 = 0; g0 <= 9; ++g0) {
      for (long pa = 2; pa <= 12; ++pa) {
        const auto hs = rank_one_hilbert_square(pa);
        Rational half(g0 + 1, 2);
        half.canonicalize();
        const CurveClass x{Rational(m), half, pa};
        const auto pairings = curve_pairings(x);
        const auto w = dual_divisor_class(pairings, hs);
        // pairing the dual with each basis vector gives back the pairings
        EXPECT_EQ(pair(w, hs.basis("H")), Scalar(pairings[0]));
        EXPECT_EQ(pair(w, hs.e()), Scalar(pairings[1]));
        // direct evaluation of q(m H - b e) = m^2 (2 p_a - 2) - 2 b^2
        Rational b(g0 + 1, 2);
        b.canonicalize();
        const Rational direct = Rational(m * m * (2 * pa - 2)) - 2 * b * b;
        EXPECT_EQ(q_of_curve(Integer(m), Integer(g0), Integer(pa)), direct);
        EXPECT_EQ(square(w), Scalar(direct));
        EXPECT_EQ(rational_curve_class(Integer(m), Integer(g0), Integer(pa)).dual, w);
      }
    }
  }
}

TEST(HilbertSquare, SymbolicCurveSquare) {
  const Scalar n = Scalar::parameter();
  EXPECT_EQ(q_of_curve(Scalar(1), Scalar(2) * n - Scalar(10), n * n - Scalar(9) * n + Scalar(20)),
            Scalar(Rational(-5, 2)));
  EXPECT_EQ(q_of_curve(Scalar(1), Scalar(2) * n - Scalar(1), n * n), Scalar(-2));
}

TEST(HilbertSquare, SlopeEdgeCases) {
  EXPECT_TRUE(slope({Rational(1), Rational(0), 4}).infinite);
  EXPECT_EQ(slope({Rational(2), Rational(3), 4}).to_string(), "2/3");
  EXPECT_THROW(slope({Rational(0), Rational(1), 4}), Error);
}

TEST(HilbertSquare, GenusFromIntersections) {
  EXPECT_EQ(g0_from_e_pairing(3), 2);
  EXPECT_EQ(g0_from_multiplicity(1), 0);
  EXPECT_THROW(g0_from_e_pairing(0), Error);
}

TEST(QuarticInvolution, IsAnIsometricInvolution) {
  std::mt19937_64 rng(61);
  const std::vector<oracle::Gram> bases{{{2, 7}, {7, 4}}, {{2, 9}, {9, 4}}, {{-2, 3}, {3, 4}}, {{-2, 5}, {5, 4}}};
  int checked = 0;
  for (const auto& base : bases) {
    const auto hs = extend(lattice_of(base, {"F", "G"}));
    const auto g = DivisorClass::basis(hs.base(), "G");
    for (int trial = 0; trial < 250; ++trial) {
      const auto v = class_of(hs.lattice(), oracle::random_vec(rng, 3, 20));
      const auto w = class_of(hs.lattice(), oracle::random_vec(rng, 3, 20));
      const auto iv = quartic_involution(hs, v, g);
      EXPECT_EQ(quartic_involution(hs, iv, g), v);
      EXPECT_EQ(pair(iv, quartic_involution(hs, w, g)), pair(v, w));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 1000);
}

TEST(QuarticInvolution, RequiresAQuarticPolarization) {
  const auto hs = extend(lattice_of({{2, 7}, {7, 4}}, {"F", "G"}));
  EXPECT_THROW(quartic_involution(hs, hs.e(), DivisorClass::basis(hs.base(), "F")), Error);
  EXPECT_THROW(quartic_involution(hs, hs.e(), hs.basis("G") + hs.e()), Error);
}

TEST(QuarticInvolution, LineAndFibreClasses) {
  const Scalar n = Scalar::parameter();
  const auto plane = extend(make_lattice({"F", "G"}, Matrix<Scalar>{{Scalar(2), n}, {n, Scalar(4)}}, "n"));
  const auto f = plane.basis("F"), g = plane.basis("G"), e = plane.e();
  EXPECT_EQ(quartic_involution(plane, Scalar(2) * f - Scalar(3) * e, g),
            Scalar(2) * ((n - Scalar(3)) * g - f) - (Scalar(2) * n - Scalar(9)) * e);
  const auto bundle = extend(make_lattice({"F", "G"}, Matrix<Scalar>{{Scalar(-2), n}, {n, Scalar(4)}}, "n"));
  EXPECT_EQ(quartic_involution(bundle, bundle.basis("F"), bundle.basis("G")),
            n * bundle.basis("G") - bundle.basis("F") - n * bundle.e());
}

TEST(DualClass, RejectsDegenerateOrSymbolicForms) {
  const auto hs = extend(lattice_of({{0, 0}, {0, 2}}));
  EXPECT_THROW(dual_divisor_class({Rational(1), Rational(0), Rational(0)}, hs), Error);
  const Scalar n = Scalar::parameter();
  const auto sym = extend(make_lattice({"F"}, Matrix<Scalar>{{n}}, "n"));
  EXPECT_THROW(dual_divisor_class({Rational(1), Rational(0)}, sym), Error);
}
