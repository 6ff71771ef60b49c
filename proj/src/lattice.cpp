#include "k3lat/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <utility>

#include "k3lat/error.hpp"

namespace k3lat {

std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," +
         std::to_string(s.zero) + ")";
}

Signature signature(const Matrix<Rational>& gram) {
  require(gram.symmetric(), "signature needs a symmetric matrix");
  const std::size_t n = gram.rows();

  Integer lcm_den = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lcm_den = lcm(lcm_den, Integer(gram(i, j).get_den()));
  }
  Matrix<Integer> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = gram(i, j).get_num() * (lcm_den / gram(i, j).get_den());
    }
  }

  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  Signature sig;
  while (!active.empty()) {
    auto pivot = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return a(i, i) != 0; });
    if (pivot == active.end()) {
      // Zero diagonal: e_i -> e_i + e_j turns a nonzero off-diagonal entry
      // into the diagonal entry 2 a_ij.
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i : active) {
        for (std::size_t j : active) {
          if (i != j && a(i, j) != 0) {
            off = {i, j};
            break;
          }
        }
        if (off) break;
      }
      if (!off) {
        sig.zero += active.size();
        break;
      }
      const auto [i, j] = *off;
      for (std::size_t k : active) a(i, k) += a(j, k);
      for (std::size_t k : active) a(k, i) += a(k, j);
      pivot = std::find(active.begin(), active.end(), i);
    }
    const std::size_t p = *pivot;
    const Integer pv = a(p, p);
    const int sign = sgn(pv);
    if (sign > 0) ++sig.positive; else ++sig.negative;
    active.erase(pivot);
    // |p| times the Schur complement keeps the inertia of the remaining block.
    Integer content = 0;
    for (std::size_t r : active) {
      for (std::size_t s : active) {
        a(r, s) = sign * (pv * a(r, s) - a(r, p) * a(p, s));
      }
    }
    for (std::size_t r : active) {
      for (std::size_t s : active) content = gcd(content, a(r, s));
    }
    if (content > 1) {
      for (std::size_t r : active) {
        for (std::size_t s : active) a(r, s) /= content;
      }
    }
  }
  return sig;
}

Rational determinant(const Matrix<Rational>& m) {
  require(m.square(), "determinant needs a square matrix");
  Matrix<Rational> a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(pivot, k), a(col, k));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t k = col; k < n; ++k) a(r, k) -= f * a(col, k);
    }
  }
  return det;
}

namespace {

Scalar cofactor_determinant(const Matrix<Scalar>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Scalar(1);
  if (n == 1) return m(0, 0);
  Scalar det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Matrix<Scalar> minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c != j) minor(r - 1, cc++) = m(r, c);
      }
    }
    const Scalar term = m(0, j) * cofactor_determinant(minor);
    if (j % 2 == 0) det += term; else det -= term;
  }
  return det;
}

}  // namespace

Scalar determinant(const Matrix<Scalar>& m) {
  require(m.square(), "determinant needs a square matrix");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_constant()) return cofactor_determinant(m);
    }
  }
  return Scalar(determinant(m.map([](const Scalar& s) { return s.constant(); })));
}

std::vector<Rational> solve(const Matrix<Rational>& m, const std::vector<Rational>& rhs) {
  require(m.square() && m.rows() == rhs.size(), "solve: dimension mismatch");
  const std::size_t n = m.rows();
  Matrix<Rational> a = m;
  std::vector<Rational> b = rhs;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Error("solve: singular matrix");
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(pivot, k), a(col, k));
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t k = col; k < n; ++k) a(r, k) -= f * a(col, k);
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a(i, i);
  return b;
}

PicardLattice::PicardLattice(std::vector<std::string> basis_names, Matrix<Scalar> gram,
                             std::optional<std::string> parameter)
    : names_(std::move(basis_names)), gram_(std::move(gram)), parameter_(std::move(parameter)) {
  require(!names_.empty(), "lattice needs a nonempty basis");
  require(gram_.rows() == names_.size() && gram_.cols() == names_.size(),
          "Gram matrix size does not match the basis");
  require(gram_.symmetric(), "Gram matrix is not symmetric");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    require(!names_[i].empty(), "empty basis name");
    for (std::size_t j = 0; j < i; ++j) require(names_[i] != names_[j], "duplicate basis name " + names_[i]);
  }
  bool rational = true;
  for (std::size_t i = 0; i < rank() && rational; ++i) {
    for (std::size_t j = 0; j < rank(); ++j) rational = rational && gram_(i, j).is_constant();
  }
  if (rational) {
    rational_gram_ = gram_.map([](const Scalar& s) { return s.constant(); });
    signature_ = k3lat::signature(*rational_gram_);
    ensure(signature_->positive + signature_->negative + signature_->zero == rank(),
           "signature does not add up to the rank");
  }
}

bool PicardLattice::is_integral() const {
  if (!is_rational()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) {
      if ((*rational_gram_)(i, j).get_den() != 1) return false;
    }
  }
  return true;
}

const Matrix<Rational>& PicardLattice::rational_gram() const {
  if (!rational_gram_) throw Error("Gram matrix depends on the parameter; evaluate it first");
  return *rational_gram_;
}

const Signature& PicardLattice::signature() const {
  if (!signature_) throw Error("signature needs a numeric Gram matrix; evaluate the parameter first");
  return *signature_;
}

bool PicardLattice::is_hyperbolic() const {
  const auto& s = signature();
  return s.positive == 1 && s.zero == 0;
}

std::optional<std::size_t> PicardLattice::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

LatticePtr make_lattice(std::vector<std::string> basis_names, Matrix<Scalar> gram,
                        std::optional<std::string> parameter) {
  return std::make_shared<const PicardLattice>(std::move(basis_names), std::move(gram), std::move(parameter));
}

LatticePtr evaluate(const LatticePtr& lattice, const Rational& value) {
  if (lattice->is_rational()) return lattice;
  return make_lattice(lattice->basis_names(),
                      lattice->gram().map([&](const Scalar& s) { return s.evaluate(value); }),
                      lattice->parameter());
}

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  return a == b || (a && b && *a == *b);
}

DivisorClass::DivisorClass(LatticePtr lattice, std::vector<Scalar> coords)
    : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  require(lattice_ != nullptr, "divisor class without a lattice");
  require(coords_.size() == lattice_->rank(), "coordinate count does not match the lattice rank");
}

DivisorClass DivisorClass::zero(LatticePtr lattice) {
  const std::size_t r = lattice->rank();
  return DivisorClass(std::move(lattice), std::vector<Scalar>(r));
}

DivisorClass DivisorClass::basis(LatticePtr lattice, std::size_t index) {
  require(index < lattice->rank(), "basis index out of range");
  std::vector<Scalar> c(lattice->rank());
  c[index] = Scalar(1);
  return DivisorClass(std::move(lattice), std::move(c));
}

DivisorClass DivisorClass::basis(LatticePtr lattice, std::string_view name) {
  const auto idx = lattice->index_of(name);
  if (!idx) throw Error("no basis element named '" + std::string(name) + "'");
  return basis(std::move(lattice), *idx);
}

bool DivisorClass::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool DivisorClass::is_rational() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_constant(); });
}

bool DivisorClass::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.has_integer_coefficients(); });
}

std::vector<Integer> DivisorClass::integer_coords() const {
  require(is_rational() && is_integral(), "class " + to_string() + " does not have integer coordinates");
  std::vector<Integer> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.constant().get_num());
  return out;
}

DivisorClass DivisorClass::operator-() const {
  std::vector<Scalar> c;
  c.reserve(coords_.size());
  for (const auto& s : coords_) c.push_back(-s);
  return DivisorClass(lattice_, std::move(c));
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  require(same_lattice(a.lattice_, b.lattice_), "adding classes from different lattices");
  std::vector<Scalar> c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return DivisorClass(a.lattice_, std::move(c));
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-b); }

DivisorClass operator*(const Scalar& k, const DivisorClass& v) {
  std::vector<Scalar> c = v.coords_;
  for (auto& s : c) s *= k;
  return DivisorClass(v.lattice_, std::move(c));
}

bool operator==(const DivisorClass& a, const DivisorClass& b) {
  return same_lattice(a.lattice_, b.lattice_) && a.coords_ == b.coords_;
}

std::string DivisorClass::to_string() const {
  const auto& names = lattice_->basis_names();
  const std::string param = lattice_->parameter_name();
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const Scalar& c = coords_[i];
    if (c.is_zero()) continue;
    if (!c.is_constant()) {
      out += (out.empty() ? "(" : " + (") + c.to_string(param) + ")*" + names[i];
      continue;
    }
    const Rational v = c.constant();
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += v < 0 ? " - " : " + ";
    }
    const Rational mag = abs(v);
    if (mag != 1) out += k3lat::to_string(mag) + "*";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

Scalar pair(const DivisorClass& v, const DivisorClass& w) {
  require(same_lattice(v.lattice(), w.lattice()), "pairing classes from different lattices");
  const auto& g = v.lattice()->gram();
  Scalar total;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (v[i].is_zero()) continue;
    Scalar row;
    for (std::size_t j = 0; j < w.rank(); ++j) {
      if (!w[j].is_zero() && !g(i, j).is_zero()) row += g(i, j) * w[j];
    }
    total += v[i] * row;
  }
  return total;
}

Scalar square(const DivisorClass& v) { return pair(v, v); }

DivisorClass evaluate(const DivisorClass& v, const Rational& value) {
  std::vector<Scalar> c;
  c.reserve(v.rank());
  for (const auto& s : v.coords()) c.push_back(s.evaluate(value));
  return DivisorClass(evaluate(v.lattice(), value), std::move(c));
}

DivisorClass rebase(const DivisorClass& v, LatticePtr lattice) {
  return DivisorClass(std::move(lattice), v.coords());
}

bool lex_less(const DivisorClass& a, const DivisorClass& b) {
  for (std::size_t i = 0; i < std::min(a.rank(), b.rank()); ++i) {
    const int c = compare(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.rank() < b.rank();
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

DivisorClass parse_class(const LatticePtr& lattice, std::string_view text) {
  std::string s = strip(text);
  require(!s.empty(), "empty class expression");
  const std::string param = lattice->parameter_name();

  const bool bracketed = s.front() == '[' && s.back() == ']';
  if (bracketed) s = s.substr(1, s.size() - 2);
  const bool has_name = std::any_of(lattice->basis_names().begin(), lattice->basis_names().end(),
                                    [&](const std::string& n) { return s.find(n) != std::string::npos; });
  if (bracketed || s.find(',') != std::string::npos || (!has_name && lattice->rank() == 1)) {
    std::vector<Scalar> coords;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(parse_scalar(item, param));
    require(coords.size() == lattice->rank(),
            "class '" + std::string(text) + "' has the wrong number of coordinates");
    return DivisorClass(lattice, std::move(coords));
  }

  // Linear combination: split on top-level signs outside parentheses.
  std::vector<Scalar> coords(lattice->rank());
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size()) {
      const char c = s[end];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == '+' || c == '-') && end > pos && s[end - 1] != '*' && s[end - 1] != '/') break;
      ++end;
    }
    const std::string term = s.substr(pos, end - pos);
    require(!term.empty(), "malformed class expression '" + std::string(text) + "'");
    pos = end;

    Scalar coefficient(1);
    std::string name = term;
    const auto star = term.rfind('*');
    if (star != std::string::npos && lattice->index_of(term.substr(star + 1))) {
      std::string c = term.substr(0, star);
      if (c.size() >= 2 && c.front() == '(' && c.back() == ')') c = c.substr(1, c.size() - 2);
      coefficient = parse_scalar(c, param);
      name = term.substr(star + 1);
    }
    const auto idx = lattice->index_of(name);
    require(idx.has_value(), "unknown basis element in '" + term + "'");
    coords[*idx] += Scalar(sign) * coefficient;
  }
  return DivisorClass(lattice, std::move(coords));
}

}  // namespace k3lat
