#pragma once

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/enumeration.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

enum class CheckKind { SymbolicIdentity, EnumerationNonexistence, EnumerationExactSet, NumericEquality };
enum class ClaimStatus { Pass, Fail, Bounded };

std::string to_string(CheckKind k);
std::string to_string(ClaimStatus s);

struct Claim {
  std::string id;
  std::string description;
  CheckKind kind = CheckKind::NumericEquality;
  std::string expected;
  std::string got;
  ClaimStatus status = ClaimStatus::Fail;
  /// Search window and why it is complete, or why the claim is only bounded.
  std::string note;
};

struct CaseStudy {
  std::string name;
  LatticePtr lattice;
  std::vector<std::pair<std::string, DivisorClass>> classes;
  std::vector<Claim> claims;
  std::vector<std::string> annotations;

  const DivisorClass& distinguished(std::string_view name) const;
  bool passed() const;
};

/// Adds delta to the Gram entries (i, j) and (j, i) of the case lattice
/// before any claim is evaluated. A negative control: some claim must fail.
struct GramPerturbation {
  std::size_t i = 0;
  std::size_t j = 0;
  Integer delta = 1;
};

struct CaseOptions {
  std::optional<GramPerturbation> perturbation;
  EnumerationOptions enumeration;
  /// Coordinate box for the decomposition search.
  int decomposition_box = 3;
};

/// Rank 3, Gram ((0,d,k),(d,0,k),(k,k,-2)) with basis E, F, R and H0 = E + F + R.
CaseStudy build_pencil_case(const Integer& d, const Integer& k, const CaseOptions& options = {});
/// Rank 2, Gram ((2,n),(n,4)) with basis F, G and H = (n-3)G - F. nullopt keeps n symbolic.
CaseStudy build_plane_case(const std::optional<Integer>& n, const CaseOptions& options = {});
/// Rank 2, Gram ((-2,d),(d,4)) with basis F, G and H = dG - F. nullopt keeps d symbolic.
CaseStudy build_bundle_case(const std::optional<Integer>& d, const CaseOptions& options = {});
/// Rank 1, Gram (4): the general quartic and its genus-2 tangent plane sections.
CaseStudy build_quartic_case(const CaseOptions& options = {});

/// Largest k = G.W for classes G with G^2 = s < 0 and G.A <= 0, for W with
/// W^2 > 0 and W.A >= 0, from the Hodge index inequality on span(W, A, G).
/// Needs A^2 > 0, or A^2 = 0 and G.A <= -1. Returns nullopt when neither holds.
std::optional<Integer> hodge_window(const DivisorClass& w, const DivisorClass& a, const Rational& s);

/// k = 1 for even p, k = 2 for odd p, and d = p - 2k.
std::pair<Integer, Integer> pencil_parameters_for_genus(const Integer& p);

struct VerifyConfig {
  /// One of "pencils", "plane", "bundle", "quartic"; empty runs all.
  std::string case_name;
  /// Parameter value for the selected case: n, d, or for pencils "d,k" or a genus p.
  std::optional<std::string> param;
  CaseOptions options;
  /// Cases run concurrently on this many workers; the report keeps declaration order.
  unsigned threads = 1;
};

struct VerificationReport {
  std::vector<CaseStudy> cases;
  bool passed() const;
  std::size_t count(ClaimStatus s) const;
};

VerificationReport verify_all(const VerifyConfig& config = {});

/// [{"case", "claim", "status", "expected", "got", "kind", "note"}, ...]
nlohmann::ordered_json report_to_json(const VerificationReport& report);

}  // namespace k3lat
