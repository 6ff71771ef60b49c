#include <gtest/gtest.h>

#include <k3lat/error.hpp>
#include <k3lat/lattice.hpp>
#include <k3lat/lattice_io.hpp>

#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace k3lat;
using testing_support::class_of;
using testing_support::lattice_of;

namespace {

Matrix<Rational> rational(const oracle::Gram& g) {
  Matrix<Rational> m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = Rational(static_cast<long>(g[i][j]));
  }
  return m;
}

/// U^T G U for a random unimodular U built from elementary column operations.
oracle::Gram unimodular_conjugate(std::mt19937_64& rng, oracle::Gram g) {
  const std::size_t n = g.size();
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    const std::int64_t c = static_cast<std::int64_t>(rng() % 5) - 2;
    // column i += c column j, then the same on rows
    for (std::size_t k = 0; k < n; ++k) g[k][i] += c * g[k][j];
    for (std::size_t k = 0; k < n; ++k) g[i][k] += c * g[j][k];
  }
  return g;
}

}  // namespace

TEST(Lattice, SignatureAgreesWithEigenvalueOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto g = oracle::random_gram(rng, n, 10);
    const auto expected = oracle::inertia(g);
    const auto got = signature(rational(g));
    EXPECT_EQ(got.positive, static_cast<std::size_t>(expected.pos));
    EXPECT_EQ(got.negative, static_cast<std::size_t>(expected.neg));
    EXPECT_EQ(got.zero, static_cast<std::size_t>(expected.zero));
  }
}

TEST(Lattice, SignatureIsUnimodularInvariant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_gram(rng, 3, 6);
    const auto h = unimodular_conjugate(rng, g);
    EXPECT_EQ(signature(rational(g)), signature(rational(h)));
    EXPECT_EQ(determinant(rational(g)), determinant(rational(h)));
  }
}

TEST(Lattice, DeterminantAgreesWithLeibniz) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_gram(rng, 1 + trial % 5, 9);
    EXPECT_EQ(determinant(rational(g)), Rational(static_cast<long>(oracle::determinant(g))));
  }
}

TEST(Lattice, SymbolicDeterminantSpecializes) {
  const Scalar n = Scalar::parameter();
  const auto lat = make_lattice({"F", "G"}, Matrix<Scalar>{{Scalar(2), n}, {n, Scalar(4)}}, "n");
  const Scalar det = determinant(lat->gram());
  EXPECT_EQ(det, Scalar(8) - n * n);
  for (long v = 6; v <= 12; ++v) {
    EXPECT_EQ(det.evaluate(v), Scalar(determinant(evaluate(lat, v)->rational_gram())));
  }
}

TEST(Lattice, SolveInvertsTheGram) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_gram(rng, 3, 7);
    if (oracle::determinant(g) == 0) continue;
    const auto m = rational(g);
    const std::vector<Rational> rhs{Rational(1), Rational(-2, 3), Rational(5)};
    const auto x = solve(m, rhs);
    for (std::size_t i = 0; i < 3; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < 3; ++j) s += m(i, j) * x[j];
      EXPECT_EQ(s, rhs[i]);
    }
  }
  EXPECT_THROW(solve(Matrix<Rational>{{1, 2}, {2, 4}}, {Rational(1), Rational(0)}), Error);
}

TEST(Lattice, RejectsMalformedInput) {
  EXPECT_THROW(make_lattice({}, Matrix<Scalar>()), Error);
  EXPECT_THROW(make_lattice({"a", "b"}, Matrix<Scalar>{{Scalar(0), Scalar(1)}, {Scalar(2), Scalar(0)}}), Error);
  EXPECT_THROW(make_lattice({"a"}, Matrix<Scalar>{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}), Error);
}

TEST(Lattice, PairingIsBilinearAndSymmetric) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_gram(rng, 3, 8);
    const auto lat = lattice_of(g);
    const auto a = oracle::random_vec(rng, 3, 6), b = oracle::random_vec(rng, 3, 6);
    const auto ca = class_of(lat, a), cb = class_of(lat, b);
    EXPECT_EQ(pair(ca, cb), Scalar(static_cast<long>(oracle::dot(g, a, b))));
    EXPECT_EQ(pair(ca, cb), pair(cb, ca));
    EXPECT_EQ(square(ca + cb), square(ca) + Scalar(2) * pair(ca, cb) + square(cb));
  }
}

TEST(Lattice, ClassesOnDifferentLatticesDoNotPair) {
  const auto a = make_lattice({"x"}, Matrix<Scalar>{{Scalar(2)}});
  const auto b = make_lattice({"x"}, Matrix<Scalar>{{Scalar(4)}});
  EXPECT_THROW(pair(DivisorClass::basis(a, 0), DivisorClass::basis(b, 0)), Error);
}

TEST(Lattice, ParseAndPrintClasses) {
  const auto lat = lattice_of({{0, 2, 1}, {2, 0, 1}, {1, 1, -2}}, {"E", "F", "R"});
  const auto h = parse_class(lat, "E+F+R");
  EXPECT_EQ(h, parse_class(lat, "[1,1,1]"));
  EXPECT_EQ(square(h), Scalar(6));
  const auto c = parse_class(lat, "2*F - 3/2*R");
  EXPECT_EQ(c.to_string(), "2*F - 3/2*R");
  EXPECT_FALSE(c.is_integral());
  EXPECT_THROW(c.integer_coords(), Error);
  EXPECT_THROW(parse_class(lat, "E + Q"), Error);
  EXPECT_EQ(DivisorClass::zero(lat).to_string(), "0");
}

TEST(Lattice, SymbolicIntegrality) {
  const Scalar n = Scalar::parameter();
  const auto lat = make_lattice({"F", "G"}, Matrix<Scalar>{{Scalar(2), n}, {n, Scalar(4)}}, "n");
  const DivisorClass h = (n - Scalar(3)) * DivisorClass::basis(lat, "G") - DivisorClass::basis(lat, "F");
  EXPECT_TRUE(h.is_integral());
  EXPECT_FALSE(h.is_rational());
  EXPECT_THROW(h.integer_coords(), Error);
  EXPECT_EQ(h.to_string(), "-F + (-3 + n)*G");
}

TEST(LatticeIo, JsonRoundTrip) {
  const auto j = nlohmann::json::parse(
      R"({"basis": ["F", "G"], "gram": [[2, "n"], ["n", 4]], "parameter": "n"})");
  const auto lat = lattice_from_json(j);
  EXPECT_FALSE(lat->is_rational());
  const auto back = lattice_from_json(nlohmann::json::parse(lattice_to_json(*lat).dump()));
  EXPECT_EQ(*lat, *back);
  EXPECT_THROW(lattice_from_json(nlohmann::json::parse(R"({"basis": ["a","b"], "gram": [[0,1],[2,0]]})")), Error);
  EXPECT_THROW(lattice_from_json(nlohmann::json::parse(R"({"basis": ["a"], "gram": [["x"]]})")), Error);
}
