#include "k3lat/brill_noether.hpp"

#include "k3lat/error.hpp"

namespace k3lat {

Integer rho(const Integer& g, const Integer& r, const Integer& d) { return g - (r + 1) * (g - d + r); }

Scalar rho(const Scalar& g, const Scalar& r, const Scalar& d) { return g - (r + Scalar(1)) * (g - d + r); }

RhoSingReport rho_sing(const Integer& p_a, const Integer& r, const Integer& d, const Integer& g) {
  require(g >= 0, "geometric genus must be non-negative");
  require(g <= p_a, "geometric genus exceeds the arithmetic genus");
  RhoSingReport out{p_a, r, d, g, rho(g, r, d), 0, false};
  out.rho_sing = out.rho + p_a - g;
  out.nonexistence_triggered = out.rho_sing < 0;
  return out;
}

Scalar rho_sing(const Scalar& p_a, const Scalar& r, const Scalar& d, const Scalar& g) {
  return rho(g, r, d) + p_a - g;
}

std::optional<std::pair<Integer, Integer>> hep_range(const Integer& p_a) {
  if (p_a < 4) return std::nullopt;
  Integer hi;
  mpz_fdiv_q_ui(hi.get_mpz_t(), Integer(p_a + 2).get_mpz_t(), 2);
  return std::make_pair(Integer(3), hi);
}

Rational hep_bound(const Integer& p_a) {
  require(p_a >= 4, "the hyperelliptic bound needs p_a >= 4");
  Rational out(Integer(4), Integer(p_a % 2 == 0 ? p_a + 4 : p_a + 3));
  out.canonicalize();
  return out;
}

Integer isqrt(const Integer& n) {
  require(n >= 0, "square root of a negative integer");
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

std::optional<Rational> Surd::rational_value() const {
  const Integer p = radicand.get_num();
  const Integer q = radicand.get_den();
  if (!mpz_perfect_square_p(p.get_mpz_t()) || !mpz_perfect_square_p(q.get_mpz_t())) return std::nullopt;
  Rational v(isqrt(p), isqrt(q));
  v.canonicalize();
  return v;
}

std::string Surd::decimal(unsigned digits) const {
  require(radicand >= 0, "square root of a negative number");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round(sqrt(x) 10^D) = floor((floor(sqrt(4 x 10^(2D))) + 1) / 2)
  const Integer n = 4 * scale * scale * radicand.get_num() / radicand.get_den();
  const Integer rounded = (isqrt(n) + 1) / 2;
  std::string s = rounded.get_str();
  if (digits == 0) return s;
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return s;
}

bool less_than(const Rational& x, const Surd& s) {
  if (x < 0) return s.radicand >= 0;
  return x * x < s.radicand;
}

bool less_equal(const Rational& x, const Surd& s) {
  if (x < 0) return true;
  return x * x <= s.radicand;
}

SeshadriBounds seshadri_bounds(const Integer& p_a) {
  require(p_a >= 2, "Seshadri bounds need p_a >= 2");
  SeshadriBounds out;
  out.upper.radicand = Rational(Integer(2), Integer(p_a - 1));
  out.upper.radicand.canonicalize();
  out.lower = Rational(Integer(isqrt(2 * p_a - 2) - 1), Integer(p_a - 1));
  out.lower.canonicalize();
  if (p_a == 3) {
    out.known = Rational(1);
    out.note = "quartic surfaces: eps(H) = 2, so eps(H)/(p_a - 1) = 1";
  }
  return out;
}

Rational thm_eff_bound(const Integer& p_a) {
  require(p_a >= 2, "p_a must be at least 2");
  Rational out(Integer(p_a + 4), Integer(4));
  out.canonicalize();
  return out;
}

bool SlopeBoundReport::all_hold() const {
  for (const auto& c : comparisons) {
    if (c.asserted && !c.holds) return false;
  }
  return true;
}

namespace {

Rational frac(const Integer& a, const Integer& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

SlopeBoundReport compare_bounds(const Integer& p_a, const std::optional<Integer>& n, const std::optional<Integer>& d) {
  require(p_a >= 2, "p_a must be at least 2");
  if (n) {
    require(*n >= 6, "the plane family needs n >= 6");
    require(p_a == *n * *n - 9 * *n + 20, "p_a must equal n^2 - 9n + 20 for the plane family");
  }
  if (d) {
    require(*d >= 2, "the P^1-bundle family needs d >= 2");
    require(p_a == *d * *d, "p_a must equal d^2 for the P^1-bundle family");
  }

  SlopeBoundReport rep;
  rep.p_a = p_a;
  const SeshadriBounds ses = seshadri_bounds(p_a);
  const std::string upper_text = "sqrt(" + to_string(ses.upper.radicand) + ")";
  {
    NamedBound b{"seshadri_sqrt", std::nullopt, ses.upper, false, "eps(H)/(p_a - 1) <= " + upper_text};
    if (ses.known) {
      b.value = ses.known;
      b.note += "; " + ses.note;
    }
    rep.bounds.push_back(b);
  }
  rep.bounds.push_back({"seshadri_floor_lower", ses.lower, std::nullopt, false,
                        "eps(H)/(p_a - 1) is strictly larger than this"});
  const Rational half(1, 2);
  std::optional<Rational> hep;
  if (p_a >= 4) {
    hep = hep_bound(p_a);
    rep.bounds.push_back({"hep", hep, std::nullopt, true, "conditional on the maximal hyperelliptic existence problem"});
    rep.bounds.push_back({"genus3", half, std::nullopt, false, "genus-3 hyperelliptic normalizations, p_a >= 4"});
    rep.comparisons.push_back({"hep <= genus3", *hep <= half, true});
    rep.comparisons.push_back({"genus-3 class k = 2 <= (p_a + 4)/4", Rational(2) <= thm_eff_bound(p_a), true});
    rep.comparisons.push_back({"genus3 < " + upper_text, less_than(half, ses.upper), false});
    rep.comparisons.push_back({"hep < seshadri_floor_lower", *hep < ses.lower, false});
  }
  rep.bounds.push_back({"thm_eff_k_max", thm_eff_bound(p_a), std::nullopt, false, "largest k with Y - kP effective"});
  if (p_a % 2 == 0) {
    rep.bounds.push_back({"mH_conditional", frac(4, 2 * (p_a + 4)), std::nullopt, true,
                          "4/(m(p_a + 4)) with m = 2; needs hyperelliptic curves in |2H|"});
  }
  auto family = [&](const std::string& name, const Rational& value, bool below_half) {
    rep.bounds.push_back({name, value, std::nullopt, false, "rational curves from the lattice family"});
    rep.comparisons.push_back({name + " < " + upper_text, less_than(value, ses.upper), true});
    if (p_a >= 4) {
      rep.comparisons.push_back({name + (below_half ? " < genus3" : " <= genus3"),
                                 below_half ? value < half : value <= half, true});
    }
  };
  if (n) family("family_n", frac(2, 2 * *n - 9), *n >= 7);
  if (d) family("family_d", frac(1, *d), *d >= 3);
  return rep;
}

Integer marker_count(const Integer& delta, const Integer& t) {
  require(delta >= 0 && t >= 0, "marker count needs non-negative arguments");
  Integer out;
  mpz_bin_ui(out.get_mpz_t(), Integer(delta + t).get_mpz_t(), delta.get_ui());
  return out;
}

}  // namespace k3lat
