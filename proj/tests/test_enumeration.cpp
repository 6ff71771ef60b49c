#include <gtest/gtest.h>

#include <k3lat/enumeration.hpp>
#include <k3lat/error.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace k3lat;
using testing_support::class_of;
using testing_support::lattice_of;
using testing_support::vecs_of;

namespace {

Matrix<Rational> rational(const oracle::Gram& g) {
  Matrix<Rational> m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = Rational(static_cast<long>(g[i][j]));
  }
  return m;
}

/// Random negative definite Gram: -(A^T A + I) for a small integer A.
oracle::Gram random_negdef(std::mt19937_64& rng, std::size_t n) {
  const auto a = oracle::random_gram(rng, n, 2);
  oracle::Gram g(n, oracle::Vec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = i == j ? 1 : 0;
      for (std::size_t k = 0; k < n; ++k) s += a[k][i] * a[k][j];
      g[i][j] = -s;
    }
  }
  return g;
}

/// Random hyperbolic Gram of rank 2 or 3 with entries in [-10, 10].
oracle::Gram random_hyperbolic(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    auto g = oracle::random_gram(rng, n, 10);
    const auto in = oracle::inertia(g);
    if (in.pos == 1 && in.zero == 0) return g;
  }
}

}  // namespace

TEST(ShortVectors, MatchesBoxOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto g = random_negdef(rng, n);
    const std::int64_t lo = -static_cast<std::int64_t>(rng() % 12) - 1;
    // -g >= I, so every solution has |x_i|^2 <= -lo
    const auto expected = oracle::filter_box(n, 4, [&](const oracle::Vec& v) {
      const auto s = oracle::sq(g, v);
      return s >= lo && s <= 0;
    });
    const auto got = vecs_of(short_vectors(rational(g), Rational(static_cast<long>(lo)), Rational(0)));
    EXPECT_EQ(got, expected);
  }
}

TEST(ShortVectors, ShiftedMatchesBoxOracle) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto g = random_negdef(rng, n);
    std::vector<Rational> shift;
    for (std::size_t i = 0; i < n; ++i) shift.emplace_back(static_cast<long>(rng() % 13) - 6, 4);
    for (auto& s : shift) s.canonicalize();
    const Rational lo(-static_cast<long>(rng() % 9) - 1, 2);
    const auto expected = oracle::filter_box(n, 8, [&](const oracle::Vec& v) {
      Rational s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          s += (Rational(static_cast<long>(v[i])) + shift[i]) * static_cast<long>(g[i][j]) *
               (Rational(static_cast<long>(v[j])) + shift[j]);
        }
      }
      return s >= lo && s <= 0;
    });
    EXPECT_EQ(vecs_of(shifted_short_vectors(rational(g), shift, lo, Rational(0))), expected);
  }
}

TEST(ShortVectors, RejectsIndefiniteForms) {
  EXPECT_THROW(short_vectors(Matrix<Rational>{{1, 0}, {0, -1}}, -1, 0), Error);
  EXPECT_THROW(short_vectors(Matrix<Rational>{{-1, 0}, {0, 0}}, -1, 0), Error);
}

TEST(ShortVectors, NegationSymmetry) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_negdef(rng, 3);
    const auto vs = vecs_of(short_vectors(rational(g), -10, -1));
    for (const auto& v : vs) {
      oracle::Vec w(v.size());
      std::transform(v.begin(), v.end(), w.begin(), [](std::int64_t x) { return -x; });
      EXPECT_TRUE(std::binary_search(vs.begin(), vs.end(), w));
    }
  }
}

TEST(Relations, ParseAndHold) {
  EXPECT_EQ(parse_relation("<="), Relation::LessEqual);
  EXPECT_EQ(parse_relation("gt"), Relation::Greater);
  EXPECT_THROW(parse_relation("~"), Error);
  EXPECT_TRUE(holds(Rational(1, 2), Relation::Less, Rational(1)));
  EXPECT_FALSE(holds(Rational(1), Relation::Greater, Rational(1)));
  EXPECT_TRUE(holds(Rational(1), Relation::GreaterEqual, Rational(1)));
}

TEST(EnumerateClasses, MatchesBoxOracleOnRandomHyperbolicLattices) {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto g = random_hyperbolic(rng, n);
    // a positive class with small coordinates
    oracle::Vec w;
    for (int tries = 0; tries < 200 && w.empty(); ++tries) {
      auto v = oracle::random_vec(rng, n, 2);
      if (oracle::sq(g, v) > 0) w = v;
    }
    if (w.empty()) continue;
    const std::int64_t s = static_cast<std::int64_t>(rng() % 5) * 2 - 4;  // -4..4
    const std::int64_t lo = static_cast<std::int64_t>(rng() % 3), hi = lo + static_cast<std::int64_t>(rng() % 4);
    const auto lat = lattice_of(g);
    ClassQuery q{lat, Rational(static_cast<long>(s)), {}, class_of(lat, w), lo, hi};
    const auto res = enumerate_classes(q);
    ASSERT_TRUE(res.complete);
    auto pred = [&](const oracle::Vec& v) {
      const auto k = oracle::dot(g, v, w);
      return oracle::sq(g, v) == s && k >= lo && k <= hi;
    };
    const auto got = vecs_of(res.solutions);
    for (const auto& v : got) EXPECT_TRUE(pred(v));
    // For s < 0 and s == 0 with lo > 0, the solution set is finite; the box
    // oracle must then reproduce it exactly.
    const std::int64_t box = 25;
    if (oracle::max_abs(got) >= box) continue;
    const auto expected = oracle::filter_box(n, box, pred);
    EXPECT_EQ(got, expected) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(EnumerateClasses, ConstraintsFilter) {
  const auto lat = lattice_of({{0, 2, 1}, {2, 0, 1}, {1, 1, -2}}, {"E", "F", "R"});
  const auto h0 = parse_class(lat, "E+F+R");
  const auto e = parse_class(lat, "E");
  ClassQuery all{lat, -2, {}, h0, 0, 3};
  ClassQuery neg{lat, -2, {{e, Relation::Less, 0}}, h0, 0, 3};
  const auto a = enumerate_classes(all).solutions;
  const auto b = enumerate_classes(neg).solutions;
  std::vector<DivisorClass> filtered;
  for (const auto& c : a) {
    if (compare(pair(c, e), Scalar(0)) < 0) filtered.push_back(c);
  }
  EXPECT_EQ(b, filtered);
  EXPECT_EQ(b, std::vector<DivisorClass>{-parse_class(lat, "R")});
}

TEST(EnumerateClasses, WiderWindowIsASuperset) {
  const auto lat = lattice_of({{2, 7}, {7, 4}}, {"F", "G"});
  const auto g = parse_class(lat, "G");
  const auto narrow = enumerate_classes({lat, -2, {}, g, 0, 3}).solutions;
  const auto wide = enumerate_classes({lat, -2, {}, g, 0, 8}).solutions;
  for (const auto& c : narrow) EXPECT_NE(std::find(wide.begin(), wide.end(), c), wide.end());
}

TEST(EnumerateClasses, ThreadedSlicesAgree) {
  const auto lat = lattice_of({{0, 3, 2}, {3, 0, 2}, {2, 2, -2}}, {"E", "F", "R"});
  const auto h0 = parse_class(lat, "E+F+R");
  const ClassQuery q{lat, -2, {}, h0, 0, 12};
  EnumerationOptions four;
  four.threads = 4;
  EXPECT_EQ(enumerate_classes(q).solutions, enumerate_classes(q, four).solutions);
}

TEST(EnumerateClasses, RejectsBadQueries) {
  const auto lat = lattice_of({{2, 7}, {7, 4}}, {"F", "G"});
  const auto g = parse_class(lat, "G");
  EXPECT_THROW(enumerate_classes({lat, -2, {}, g, 3, 1}), Error);
  EXPECT_THROW(enumerate_classes({lat, -2, {}, parse_class(lat, "0,0"), 0, 1}), Error);
  const auto definite = lattice_of({{2, 0}, {0, 2}});
  EXPECT_THROW(enumerate_classes({definite, -2, {}, DivisorClass::basis(definite, 0), 0, 1}), Error);
}

TEST(EnumerateClasses, RootsInWindow) {
  const auto lat = lattice_of({{-2, 3}, {3, 4}}, {"F", "G"});
  const auto g = parse_class(lat, "G");
  const auto roots = roots_in_window(g, 0, 3);
  const auto expected = oracle::filter_box(2, 20, [&](const oracle::Vec& v) {
    const auto k = oracle::dot({{-2, 3}, {3, 4}}, v, {0, 1});
    return oracle::sq({{-2, 3}, {3, 4}}, v) == -2 && k >= 0 && k <= 3;
  });
  EXPECT_EQ(vecs_of(roots), expected);
  EXPECT_NE(std::find(roots.begin(), roots.end(), parse_class(lat, "F")), roots.end());
}
