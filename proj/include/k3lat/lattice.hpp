#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/matrix.hpp"
#include "k3lat/scalar.hpp"

namespace k3lat {

/// Sylvester inertia of a symmetric form.
struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& s);

/// Inertia of a symmetric rational matrix, by fraction-free symmetric
/// elimination over Z (after clearing denominators). No floating point.
Signature signature(const Matrix<Rational>& gram);

/// Exact determinant. Rational entries use Gaussian elimination; entries
/// depending on the parameter use cofactor expansion.
Scalar determinant(const Matrix<Scalar>& m);
Rational determinant(const Matrix<Rational>& m);

/// Solves m x = rhs exactly. Throws Error when m is singular.
std::vector<Rational> solve(const Matrix<Rational>& m, const std::vector<Rational>& rhs);

/// A lattice with a named basis and a symmetric Gram matrix whose entries may
/// depend on one formal parameter. Immutable; shared by the classes on it.
class PicardLattice {
 public:
  /// Throws Error on an empty basis, a size mismatch or a non-symmetric Gram.
  PicardLattice(std::vector<std::string> basis_names, Matrix<Scalar> gram,
                std::optional<std::string> parameter = std::nullopt);

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const Matrix<Scalar>& gram() const { return gram_; }
  const std::optional<std::string>& parameter() const { return parameter_; }
  std::string parameter_name() const { return parameter_.value_or("t"); }

  /// True when no Gram entry depends on the parameter.
  bool is_rational() const { return rational_gram_.has_value(); }
  bool is_integral() const;
  /// The Gram matrix as rationals. Throws Error if the parameter occurs.
  const Matrix<Rational>& rational_gram() const;
  /// Cached inertia. Throws Error if the parameter occurs.
  const Signature& signature() const;
  bool is_hyperbolic() const;

  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const PicardLattice& a, const PicardLattice& b) {
    return a.names_ == b.names_ && a.gram_ == b.gram_;
  }

 private:
  std::vector<std::string> names_;
  Matrix<Scalar> gram_;
  std::optional<std::string> parameter_;
  std::optional<Matrix<Rational>> rational_gram_;
  std::optional<Signature> signature_;
};

using LatticePtr = std::shared_ptr<const PicardLattice>;

LatticePtr make_lattice(std::vector<std::string> basis_names, Matrix<Scalar> gram,
                        std::optional<std::string> parameter = std::nullopt);

/// Specializes the parameter to a rational value.
LatticePtr evaluate(const LatticePtr& lattice, const Rational& value);

/// A coordinate vector over the basis of a lattice.
class DivisorClass {
 public:
  DivisorClass(LatticePtr lattice, std::vector<Scalar> coords);
  static DivisorClass zero(LatticePtr lattice);
  /// The i-th basis vector.
  static DivisorClass basis(LatticePtr lattice, std::size_t index);
  /// The basis vector with the given name. Throws Error if absent.
  static DivisorClass basis(LatticePtr lattice, std::string_view name);

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Scalar>& coords() const { return coords_; }
  std::size_t rank() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const;
  bool is_rational() const;
  /// Integer coordinates, or polynomials with integer coefficients.
  bool is_integral() const;
  /// Integer coordinates; throws Error unless numeric and integral.
  std::vector<Integer> integer_coords() const;

  DivisorClass operator-() const;
  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator*(const Scalar& c, const DivisorClass& v);

  /// Same lattice (by identity or structure) and same coordinates.
  friend bool operator==(const DivisorClass& a, const DivisorClass& b);

  /// Linear combination of basis names, e.g. "2*F - 3*e" or "(-6 + 2*n)*G".
  std::string to_string() const;

 private:
  LatticePtr lattice_;
  std::vector<Scalar> coords_;
};

bool same_lattice(const LatticePtr& a, const LatticePtr& b);

/// v^T Gram w. Throws Error if the classes live on different lattices.
Scalar pair(const DivisorClass& v, const DivisorClass& w);
Scalar square(const DivisorClass& v);

DivisorClass evaluate(const DivisorClass& v, const Rational& value);
/// Re-homes the coordinates of v on another lattice of the same rank.
DivisorClass rebase(const DivisorClass& v, LatticePtr lattice);

/// Lexicographic order on rational coordinates.
bool lex_less(const DivisorClass& a, const DivisorClass& b);

/// Parses a class either as a coordinate list "1,0,-2" / "[1,0,-2]" or as a
/// linear combination of basis names such as "E+F+R" or "2*F - 3/2*e".
DivisorClass parse_class(const LatticePtr& lattice, std::string_view text);

}  // namespace k3lat
