#pragma once

#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// All integer vectors v with square_lo <= v^T G v <= square_hi for a negative
/// definite rational G, in lexicographic order. Exact Fincke-Pohst; the zero
/// vector is included iff 0 lies in the range. Throws Error if G is not
/// negative definite.
std::vector<std::vector<Integer>> short_vectors(const Matrix<Rational>& negdef_gram,
                                                const Rational& square_lo,
                                                const Rational& square_hi);

/// Same, for the shifted form (y + shift)^T G (y + shift) with a rational shift.
std::vector<std::vector<Integer>> shifted_short_vectors(const Matrix<Rational>& negdef_gram,
                                                        const std::vector<Rational>& shift,
                                                        const Rational& square_lo,
                                                        const Rational& square_hi);

enum class Relation { Less, LessEqual, Equal, GreaterEqual, Greater };

std::string to_string(Relation r);
Relation parse_relation(std::string_view text);
bool holds(const Rational& lhs, Relation r, const Rational& rhs);

struct DegreeConstraint {
  DivisorClass against;
  Relation relation;
  Rational value;
};

/// Classes G with G^2 = square_target, lo <= G.positive_class <= hi and every
/// degree constraint satisfied.
struct ClassQuery {
  LatticePtr lattice;
  Rational square_target;
  std::vector<DegreeConstraint> constraints;
  DivisorClass positive_class;
  Integer lo;
  Integer hi;
};

struct EnumerationResult {
  std::vector<DivisorClass> solutions;
  bool complete = false;
  std::string completeness_note;
};

struct EnumerationOptions {
  /// Worker threads for the per-degree slices; 0 picks hardware_concurrency.
  unsigned threads = 1;
};

/// Exhaustive enumeration of a ClassQuery on a hyperbolic lattice. Each
/// degree k in [lo, hi] is an affine slice G0 + K with K = N^perp (integral),
/// on which the form is negative definite by the Hodge index theorem; the
/// slice is searched with shifted_short_vectors. The result is complete for
/// the stated window and sorted lexicographically.
///
/// Throws Error if the lattice is not numeric or not hyperbolic, if the
/// positive class is not integral with positive square, or if lo > hi.
EnumerationResult enumerate_classes(const ClassQuery& query, const EnumerationOptions& options = {});

/// Roots (square -2) with lo <= G.positive_class <= hi.
std::vector<DivisorClass> roots_in_window(const DivisorClass& positive_class, const Integer& lo,
                                          const Integer& hi);

}  // namespace k3lat
