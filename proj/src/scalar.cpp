#include "k3lat/scalar.hpp"

#include <algorithm>

#include <cctype>
#include <utility>

#include "k3lat/error.hpp"

namespace k3lat {

std::string to_string(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  const auto num = trim(text.substr(0, slash));
  if (!is_integer_literal(num)) throw Error("malformed rational '" + std::string(text) + "'");
  Integer p(std::string(num[0] == '+' ? num.substr(1) : num));
  Integer q = 1;
  if (slash != std::string_view::npos) {
    const auto den = trim(text.substr(slash + 1));
    if (!is_integer_literal(den)) throw Error("malformed rational '" + std::string(text) + "'");
    q = Integer(std::string(den[0] == '+' ? den.substr(1) : den));
    if (q == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Integer floor_of(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Scalar::Scalar(const Rational& value) {
  if (value != 0) coeffs_.push_back(value);
}

Scalar::Scalar(const Integer& value) : Scalar(Rational(value)) {}

Scalar::Scalar(long value) : Scalar(Rational(value)) {}

Scalar Scalar::from_coefficients(std::vector<Rational> coefficients) {
  Scalar s;
  s.coeffs_ = std::move(coefficients);
  for (auto& c : s.coeffs_) c.canonicalize();
  s.normalize();
  return s;
}

Scalar Scalar::parameter() { return from_coefficients({0, 1}); }

bool Scalar::is_integer() const { return is_constant() && constant().get_den() == 1; }

bool Scalar::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Rational Scalar::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

Rational Scalar::constant() const {
  if (!is_constant()) throw Error("scalar depends on the parameter; evaluate it first");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Scalar Scalar::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return Scalar(acc);
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> product(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) product[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(product);
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Rational& rhs) {
  if (rhs == 0) throw Error("division of a scalar by zero");
  for (auto& c : coeffs_) c /= rhs;
  return *this;
}

void Scalar::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::string Scalar::to_string(std::string_view parameter_name) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t power = 0; power < coeffs_.size(); ++power) {
    const Rational& c = coeffs_[power];
    if (c == 0) continue;
    const Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (power == 0) {
      out += k3lat::to_string(magnitude);
      continue;
    }
    if (magnitude != 1) out += k3lat::to_string(magnitude) + "*";
    out += parameter_name;
    if (power > 1) out += "^" + std::to_string(power);
  }
  return out;
}

Scalar parse_scalar(std::string_view text, std::string_view parameter_name) {
  const std::string source(text);
  auto fail = [&]() -> Error { return Error("malformed scalar '" + source + "'"); };

  // Split into signed terms at top-level '+'/'-' that are not part of a
  // rational literal's leading sign.
  std::vector<std::pair<int, std::string>> terms;
  int sign = 1;
  std::string current;
  bool expecting_term = true;
  for (char ch : source) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if ((ch == '+' || ch == '-') && (expecting_term || !current.empty())) {
      if (!current.empty()) {
        terms.emplace_back(sign, current);
        current.clear();
        sign = 1;
      }
      if (ch == '-') sign = -sign;
      expecting_term = true;
      continue;
    }
    current += ch;
    expecting_term = false;
  }
  if (current.empty()) throw fail();
  terms.emplace_back(sign, current);

  Scalar total;
  const std::string name(parameter_name);
  for (const auto& [term_sign, term] : terms) {
    Rational coefficient = 1;
    std::string monomial = term;
    const auto star = term.find('*');
    if (star != std::string::npos) {
      coefficient = parse_rational(term.substr(0, star));
      monomial = term.substr(star + 1);
    } else if (!name.empty() && term.compare(0, name.size(), name) == 0) {
      monomial = term;
    } else {
      total += Scalar(Rational(term_sign) * parse_rational(term));
      continue;
    }
    if (name.empty() || monomial.compare(0, name.size(), name) != 0) throw fail();
    std::size_t power = 1;
    const std::string rest = monomial.substr(name.size());
    if (!rest.empty()) {
      if (rest[0] != '^' || rest.size() < 2) throw fail();
      for (std::size_t i = 1; i < rest.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(rest[i]))) throw fail();
      }
      power = std::stoul(rest.substr(1));
    }
    std::vector<Rational> coeffs(power + 1);
    coeffs[power] = Rational(term_sign) * coefficient;
    total += Scalar::from_coefficients(std::move(coeffs));
  }
  return total;
}

int compare(const Scalar& lhs, const Scalar& rhs) {
  return cmp(lhs.constant(), rhs.constant());
}

}  // namespace k3lat
