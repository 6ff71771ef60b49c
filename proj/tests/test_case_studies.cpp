#include <gtest/gtest.h>

#include <k3lat/error.hpp>
#include <k3lat/case_studies.hpp>

#include <set>

#include "oracles.hpp"
#include "support.hpp"

using namespace k3lat;
using testing_support::class_of;
using testing_support::lattice_of;

namespace {

bool any_failed(const CaseStudy& cs) {
  for (const auto& c : cs.claims) {
    if (c.status == ClaimStatus::Fail) return true;
  }
  return false;
}

}  // namespace

TEST(Cases, DefaultRunPasses) {
  const auto report = verify_all();
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.count(ClaimStatus::Fail), 0u);
  EXPECT_GT(report.count(ClaimStatus::Pass), 300u);
  for (const auto& cs : report.cases) {
    for (const auto& c : cs.claims) EXPECT_NE(c.status, ClaimStatus::Fail) << cs.name << " " << c.id << ": " << c.got;
  }
}

TEST(Cases, ReportKeepsDeclarationOrderUnderThreads) {
  VerifyConfig one, many;
  many.threads = 4;
  const auto a = report_to_json(verify_all(one));
  const auto b = report_to_json(verify_all(many));
  EXPECT_EQ(a.dump(), b.dump());
  ASSERT_FALSE(a.empty());
  for (const char* key : {"case", "claim", "status", "expected", "got"}) EXPECT_TRUE(a[0].contains(key)) << key;
}

TEST(Cases, SymbolicClaimsAreIdentities) {
  const auto plane = build_plane_case(std::nullopt);
  const auto bundle = build_bundle_case(std::nullopt);
  for (const auto* cs : {&plane, &bundle}) {
    EXPECT_TRUE(cs->passed());
    for (const auto& c : cs->claims) EXPECT_EQ(c.kind, CheckKind::SymbolicIdentity) << c.id;
  }
  auto find = [](const CaseStudy& cs, const std::string& id) -> const Claim& {
    for (const auto& c : cs.claims) {
      if (c.id == id) return c;
    }
    throw std::runtime_error("missing claim " + id);
  };
  EXPECT_EQ(find(plane, "line_square").got, "-5/2");
  EXPECT_EQ(find(plane, "H_square").got, "38 - 18*n + 2*n^2");
  EXPECT_EQ(find(plane, "rho_sing").got, "42 - 13*n + n^2");
  EXPECT_EQ(find(plane, "conic_rho_sing").got, "117 - 44*n + 4*n^2");
  EXPECT_EQ(find(bundle, "fibre_square").got, "-2");
  EXPECT_EQ(find(bundle, "H_square").got, "-2 + 2*d^2");
  EXPECT_EQ(find(bundle, "rho_sing").got, "4 - 4*d + d^2");
}

TEST(Cases, EveryGramPerturbationIsDetected) {
  std::vector<std::function<CaseStudy(const CaseOptions&)>> builders{
      [](const CaseOptions& o) { return build_pencil_case(2, 1, o); },
      [](const CaseOptions& o) { return build_pencil_case(3, 2, o); },
      [](const CaseOptions& o) { return build_plane_case(Integer(7), o); },
      [](const CaseOptions& o) { return build_plane_case(std::nullopt, o); },
      [](const CaseOptions& o) { return build_bundle_case(Integer(3), o); },
      [](const CaseOptions& o) { return build_bundle_case(std::nullopt, o); },
      [](const CaseOptions& o) { return build_quartic_case(o); }};
  for (const auto& build : builders) {
    const auto pristine = build({});
    ASSERT_TRUE(pristine.passed()) << pristine.name;
    const std::size_t r = pristine.lattice->rank();
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i; j < r; ++j) {
        for (long delta : {-1, 1}) {
          CaseOptions o;
          o.perturbation = GramPerturbation{i, j, delta};
          EXPECT_TRUE(any_failed(build(o))) << pristine.name << " (" << i << "," << j << ") " << delta;
        }
      }
    }
  }
}

TEST(Cases, PencilParameters) {
  EXPECT_EQ(pencil_parameters_for_genus(4), std::make_pair(Integer(1), Integer(2)));
  EXPECT_EQ(pencil_parameters_for_genus(7), std::make_pair(Integer(2), Integer(3)));
  EXPECT_THROW(build_pencil_case(1, 1), Error);
  EXPECT_THROW(build_plane_case(Integer(5)), Error);
}

TEST(Cases, EffectiveDecompositionsOfThePencilClass) {
  for (auto [d, k] : {std::pair<long, long>{2, 1}, {3, 2}}) {
    const auto cs = build_pencil_case(d, k);
    const oracle::Gram g{{0, d, k}, {d, 0, k}, {k, k, -2}};
    const auto expected =
        oracle::decompositions(g, {1, 1, 1}, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, 3, {{0, 0, 1}});
    const std::set<std::pair<oracle::Vec, oracle::Vec>> listed{
        {{0, 0, 1}, {1, 1, 0}}, {{0, 1, 0}, {1, 0, 1}}, {{0, 1, 1}, {1, 0, 0}}};
    using PairSet = std::set<std::pair<oracle::Vec, oracle::Vec>>;
    EXPECT_EQ(PairSet(expected.begin(), expected.end()), listed);
    for (const auto& c : cs.claims) {
      if (c.id == "decompositions" || c.id == "three_way_split") EXPECT_NE(c.status, ClaimStatus::Fail) << c.got;
    }
  }
}

TEST(HodgeWindow, BoundsEveryRootInTheWindow) {
  for (long n = 6; n <= 12; ++n) {
    const oracle::Gram g{{2, n}, {n, 4}};
    const auto lat = lattice_of(g, {"F", "G"});
    const auto hi = hodge_window(class_of(lat, {0, 1}), class_of(lat, {1, 0}), -2);
    ASSERT_TRUE(hi.has_value());
    EXPECT_EQ(*hi, Integer(static_cast<long>(std::sqrt(static_cast<double>(n * n - 8)))));
    const auto roots = oracle::filter_box(2, 60, [&](const oracle::Vec& v) {
      return oracle::sq(g, v) == -2 && oracle::dot(g, v, {1, 0}) <= 0 && oracle::dot(g, v, {0, 1}) >= 0;
    });
    for (const auto& v : roots) EXPECT_LE(oracle::dot(g, v, {0, 1}), hi->get_si()) << n;
  }
  for (long d = 2; d <= 5; ++d) {
    for (long k = 1; k <= 2; ++k) {
      const oracle::Gram g{{0, d, k}, {d, 0, k}, {k, k, -2}};
      const auto lat = lattice_of(g, {"E", "F", "R"});
      const auto hi = hodge_window(class_of(lat, {1, 1, 1}), class_of(lat, {1, 0, 0}), -2);
      ASSERT_TRUE(hi.has_value());
      EXPECT_EQ(*hi, d + k);
      const auto roots = oracle::filter_box(3, 15, [&](const oracle::Vec& v) {
        return oracle::sq(g, v) == -2 && oracle::dot(g, v, {1, 0, 0}) < 0 && oracle::dot(g, v, {1, 1, 1}) >= 0;
      });
      for (const auto& v : roots) EXPECT_LE(oracle::dot(g, v, {1, 1, 1}), hi->get_si());
    }
  }
}

TEST(Cases, AnnotationsAreNotClaims) {
  const auto cs = build_plane_case(Integer(6));
  EXPECT_FALSE(cs.annotations.empty());
  EXPECT_TRUE(cs.passed());
}
