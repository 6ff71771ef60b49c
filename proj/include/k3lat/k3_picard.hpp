#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/enumeration.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

/// Necessary condition for D to be effective and irreducible on a K3:
/// D^2 >= -2 and D.N > 0 for the nef class N. Not a sufficient one.
bool effectivity_necessary(const DivisorClass& d, const DivisorClass& nef_witness);

/// Approximation of a moving class: D^2 >= 0 and the effectivity condition.
bool moving_candidate(const DivisorClass& d, const DivisorClass& nef_witness);

/// Picard-Lefschetz reflection v + (v.root) root. Throws Error unless root^2 = -2.
DivisorClass reflect(const DivisorClass& v, const DivisorClass& root);

/// 4 |H.W|, at least 1; the default root search bound.
Integer default_root_bound(const DivisorClass& h, const DivisorClass& witness);

struct ReflectionStep {
  DivisorClass root;
  DivisorClass image;
};

struct ReflectionTrace {
  std::vector<ReflectionStep> steps;
  DivisorClass final_class;
  /// False when max_iters was reached with a violating root still present.
  bool converged = false;
  Integer bound;
};

/// Reflects v in roots G with 0 < G.W <= bound and v.G < 0 (most negative
/// pairing first, ties broken lexicographically) until none is left.
/// Throws Error unless v^2 > 0 and v.W > 0.
ReflectionTrace reflect_to_nef(const DivisorClass& v, const DivisorClass& positivity_witness,
                               const Integer& bound, std::size_t max_iters = 64);

enum class NefStatus { NefCertified, Counterexample, Inconclusive };
std::string to_string(NefStatus s);

struct NefnessVerdict {
  NefStatus status = NefStatus::Inconclusive;
  std::optional<DivisorClass> witness;
  Integer bound_used;
  std::string note;
};

/// Searches roots G with 0 < G.W <= bound for one with H.G < 0. Without a
/// violating root the verdict is NefCertified only if the caller supplies the
/// argument that makes the window complete, otherwise Inconclusive.
NefnessVerdict is_nef_up_to_bound(const DivisorClass& h, const DivisorClass& positivity_witness,
                                  const Integer& bound,
                                  const std::optional<std::string>& completeness = std::nullopt);

struct SaintDonatFlags {
  bool has_square0_deg1 = false;
  bool has_square0_deg2 = false;
  bool has_root_deg_le1 = false;
  std::vector<DivisorClass> square0_deg1;
  std::vector<DivisorClass> square0_deg2;
  std::vector<DivisorClass> root_deg_le1;
};

/// The three queries E^2 = 0, E.H = 1; E^2 = 0, E.H = 2; G^2 = -2, 0 < G.H <= 1,
/// each filtered by effectivity_necessary against the witness. The windows are
/// windows against H itself, so the answer is complete. Throws Error unless H^2 > 0.
SaintDonatFlags saintdonat_flags(const DivisorClass& h, const DivisorClass& positivity_witness);

struct DecompositionSearch {
  /// Unordered pairs (A, B), A <= B lexicographically, A + B = H.
  std::vector<std::pair<DivisorClass, DivisorClass>> pairs;
  /// Registered roots that were admitted with a zero pairing.
  std::vector<DivisorClass> relaxed;
  std::string kernel;
};

/// Splits H = A + B with A in the coordinate box |a_i| <= box such that both
/// summands satisfy effectivity_necessary for some witness. A registered root
/// pairing >= 0 with every witness is admitted as well. H = 0 gives {(0, 0)}.
DecompositionSearch effective_decompositions(const DivisorClass& h, const std::vector<DivisorClass>& witnesses,
                                             int box, const std::vector<DivisorClass>& registered_roots = {});

}  // namespace k3lat
