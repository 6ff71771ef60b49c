#include "k3lat/enumeration.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "k3lat/error.hpp"

namespace k3lat {

namespace {

/// Q(z) = sum_i d_i (z_i + sum_{j>i} u_ij z_j)^2 for a positive definite form.
struct SquareCompletion {
  std::vector<Rational> d;
  Matrix<Rational> u;
};

SquareCompletion complete_squares(const Matrix<Rational>& positive) {
  const std::size_t n = positive.rows();
  Matrix<Rational> a = positive;
  SquareCompletion out{std::vector<Rational>(n), Matrix<Rational>(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    ensure(a(i, i) > 0, "square completion of a form that is not positive definite");
    out.d[i] = a(i, i);
    for (std::size_t j = i + 1; j < n; ++j) out.u(i, j) = a(i, j) / a(i, i);
    for (std::size_t r = i + 1; r < n; ++r) {
      for (std::size_t s = i + 1; s < n; ++s) a(r, s) -= a(r, i) * a(i, s) / a(i, i);
    }
  }
  return out;
}

class ShortVectorSearch {
 public:
  ShortVectorSearch(const SquareCompletion& sc, const std::vector<Rational>& shift, const Rational& lo,
                    const Rational& hi)
      : sc_(sc), shift_(shift), lo_(lo), hi_(hi), y_(shift.size()), z_(shift.size()) {}

  std::vector<std::vector<Integer>> run() {
    if (hi_ < 0 || lo_ > hi_) return {};
    if (y_.empty()) {
      if (lo_ <= 0) out_.emplace_back();
      return std::move(out_);
    }
    descend(y_.size() - 1, hi_, 0);
    return std::move(out_);
  }

 private:
  // Coordinates above `level` are fixed; `budget` is what the remaining
  // squares may still contribute, `spent` what the fixed ones already did.
  void descend(std::size_t level, const Rational& budget, const Rational& spent) {
    Rational t = shift_[level];
    for (std::size_t j = level + 1; j < y_.size(); ++j) t += sc_.u(level, j) * z_[j];
    const Rational& d = sc_.d[level];
    auto term = [&](const Integer& y) -> Rational {
      const Rational x = Rational(y) + t;
      return d * x * x;
    };
    const Integer start = floor_of(-t);
    for (Integer y = start;; --y) {
      const Rational cost = term(y);
      if (cost > budget) break;
      visit(level, y, budget, spent, cost);
    }
    for (Integer y = start + 1;; ++y) {
      const Rational cost = term(y);
      if (cost > budget) break;
      visit(level, y, budget, spent, cost);
    }
  }

  void visit(std::size_t level, const Integer& y, const Rational& budget, const Rational& spent,
             const Rational& cost) {
    y_[level] = y;
    z_[level] = Rational(y) + shift_[level];
    const Rational total = spent + cost;
    if (level == 0) {
      if (total >= lo_) out_.push_back(y_);
      return;
    }
    descend(level - 1, budget - cost, total);
  }

  const SquareCompletion& sc_;
  const std::vector<Rational>& shift_;
  Rational lo_;
  Rational hi_;
  std::vector<Integer> y_;
  std::vector<Rational> z_;
  std::vector<std::vector<Integer>> out_;
};

bool lex_less_int(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Matrix<Rational> negated(const Matrix<Rational>& m) {
  return m.map([](const Rational& x) { return Rational(-x); });
}

}  // namespace

std::vector<std::vector<Integer>> shifted_short_vectors(const Matrix<Rational>& negdef_gram,
                                                        const std::vector<Rational>& shift,
                                                        const Rational& square_lo,
                                                        const Rational& square_hi) {
  require(negdef_gram.square() && negdef_gram.rows() == shift.size(), "short vectors: dimension mismatch");
  require(negdef_gram.symmetric(), "short vectors: form is not symmetric");
  const std::size_t n = negdef_gram.rows();
  if (n > 0) {
    const Signature sig = signature(negdef_gram);
    require(sig.negative == n, "short vectors: form is not negative definite " + to_string(sig));
  }
  // v^T G v in [lo, hi]  <=>  v^T (-G) v in [-hi, -lo].
  const SquareCompletion sc = complete_squares(negated(negdef_gram));
  auto found = ShortVectorSearch(sc, shift, -square_hi, -square_lo).run();
  std::sort(found.begin(), found.end(), lex_less_int);
  return found;
}

std::vector<std::vector<Integer>> short_vectors(const Matrix<Rational>& negdef_gram, const Rational& square_lo,
                                                const Rational& square_hi) {
  return shifted_short_vectors(negdef_gram, std::vector<Rational>(negdef_gram.rows()), square_lo, square_hi);
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Greater: return ">";
  }
  return "?";
}

Relation parse_relation(std::string_view text) {
  if (text == "<" || text == "lt") return Relation::Less;
  if (text == "<=" || text == "le") return Relation::LessEqual;
  if (text == "=" || text == "==" || text == "eq") return Relation::Equal;
  if (text == ">=" || text == "ge") return Relation::GreaterEqual;
  if (text == ">" || text == "gt") return Relation::Greater;
  throw Error("unknown relation '" + std::string(text) + "'");
}

bool holds(const Rational& lhs, Relation r, const Rational& rhs) {
  switch (r) {
    case Relation::Less: return lhs < rhs;
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::Equal: return lhs == rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::Greater: return lhs > rhs;
  }
  return false;
}

namespace {

/// The slice {G integral : G.N = k} = G0(k) + span(kernel) with a fixed
/// unimodular completion of the functional x -> x.N.
struct SlicePlan {
  LatticePtr lattice;
  Matrix<Rational> gram;
  std::size_t rank = 0;
  Integer scale;                    // denominators cleared from G N
  Integer content;                  // gcd of the scaled functional
  std::vector<Integer> particular;  // U e_0, functional value = content
  Matrix<Integer> kernel;           // rank x (rank - 1), columns span N^perp over Z
  Matrix<Rational> kernel_form;     // kernel^T G kernel, negative definite
  Rational norm;                    // N^2
};

/// Extended gcd: s a + t b = g >= 0.
void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

SlicePlan plan_slices(const LatticePtr& lattice, const DivisorClass& positive) {
  SlicePlan plan;
  plan.lattice = lattice;
  plan.gram = lattice->rational_gram();
  plan.rank = lattice->rank();
  const std::size_t r = plan.rank;
  const auto n = positive.integer_coords();

  std::vector<Rational> functional(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) functional[i] += plan.gram(i, j) * n[j];
  }
  plan.norm = 0;
  for (std::size_t i = 0; i < r; ++i) plan.norm += functional[i] * n[i];

  plan.scale = 1;
  for (const auto& f : functional) plan.scale = lcm(plan.scale, Integer(f.get_den()));
  std::vector<Integer> a(r);
  for (std::size_t i = 0; i < r; ++i) a[i] = functional[i].get_num() * (plan.scale / functional[i].get_den());

  Matrix<Integer> u = Matrix<Integer>::identity(r);
  for (std::size_t j = 1; j < r; ++j) {
    if (a[j] == 0) continue;
    Integer g, s, t;
    xgcd(a[0], a[j], g, s, t);
    const Integer p = a[0] / g;
    const Integer q = a[j] / g;
    for (std::size_t row = 0; row < r; ++row) {
      const Integer c0 = u(row, 0);
      const Integer cj = u(row, j);
      u(row, 0) = s * c0 + t * cj;
      u(row, j) = -q * c0 + p * cj;
    }
    a[0] = g;
    a[j] = 0;
  }
  ensure(a[0] != 0, "positive class has zero pairing functional");
  if (a[0] < 0) {
    a[0] = -a[0];
    for (std::size_t row = 0; row < r; ++row) u(row, 0) = -u(row, 0);
  }
  plan.content = a[0];
  plan.particular.resize(r);
  for (std::size_t row = 0; row < r; ++row) plan.particular[row] = u(row, 0);

  plan.kernel = Matrix<Integer>(r, r - 1);
  for (std::size_t row = 0; row < r; ++row) {
    for (std::size_t c = 1; c < r; ++c) plan.kernel(row, c - 1) = u(row, c);
  }
  plan.kernel_form = Matrix<Rational>(r - 1, r - 1);
  for (std::size_t a1 = 0; a1 + 1 < r; ++a1) {
    for (std::size_t b1 = 0; b1 + 1 < r; ++b1) {
      Rational acc = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (plan.kernel(i, a1) == 0) continue;
        for (std::size_t j = 0; j < r; ++j) acc += plan.kernel(i, a1) * plan.gram(i, j) * plan.kernel(j, b1);
      }
      plan.kernel_form(a1, b1) = acc;
    }
  }
  return plan;
}

std::vector<DivisorClass> search_slice(const SlicePlan& plan, const ClassQuery& query, const Integer& k) {
  const std::size_t r = plan.rank;
  const Integer target_value = k * plan.scale;
  if (target_value % plan.content != 0) return {};
  const Integer multiple = target_value / plan.content;
  std::vector<Integer> base(r);
  for (std::size_t i = 0; i < r; ++i) base[i] = multiple * plan.particular[i];

  std::vector<Rational> g_base(r);
  Rational base_square = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) g_base[i] += plan.gram(i, j) * base[j];
    base_square += g_base[i] * base[i];
  }
  std::vector<Rational> rhs(r - 1);
  for (std::size_t c = 0; c + 1 < r; ++c) {
    for (std::size_t i = 0; i < r; ++i) rhs[c] += plan.kernel(i, c) * g_base[i];
  }
  std::vector<Rational> shift = r > 1 ? solve(plan.kernel_form, rhs) : std::vector<Rational>{};
  Rational shift_square = 0;
  for (std::size_t i = 0; i + 1 < r; ++i) shift_square += shift[i] * rhs[i];
  // Along-N component: (k/N^2) N has square k^2 / N^2.
  const Rational along = base_square - shift_square;
  ensure(along == Rational(k * k) / plan.norm, "slice decomposition does not match the Hodge projection");

  const Rational perp_target = query.square_target - along;
  std::vector<DivisorClass> out;
  for (const auto& y : shifted_short_vectors(plan.kernel_form, shift, perp_target, perp_target)) {
    std::vector<Scalar> coords(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer v = base[i];
      for (std::size_t c = 0; c + 1 < r; ++c) v += plan.kernel(i, c) * y[c];
      coords[i] = Scalar(v);
    }
    DivisorClass candidate(plan.lattice, std::move(coords));
    bool keep = true;
    for (const auto& dc : query.constraints) {
      if (!holds(pair(candidate, dc.against).constant(), dc.relation, dc.value)) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(std::move(candidate));
  }
  return out;
}

}  // namespace

EnumerationResult enumerate_classes(const ClassQuery& query, const EnumerationOptions& options) {
  require(query.lattice != nullptr, "query without a lattice");
  require(query.lattice->is_rational(), "enumeration needs a numeric lattice; evaluate the parameter first");
  require(query.lattice->is_hyperbolic(),
          "enumeration needs a hyperbolic lattice, got signature " + to_string(query.lattice->signature()));
  require(same_lattice(query.positive_class.lattice(), query.lattice), "positive class lives on another lattice");
  require(query.positive_class.is_integral(), "positive class must have integer coordinates");
  require(square(query.positive_class).constant() > 0, "positive class must have positive square");
  require(query.lo <= query.hi, "degree window is empty (lo > hi)");
  for (const auto& c : query.constraints) {
    require(same_lattice(c.against.lattice(), query.lattice), "degree constraint on another lattice");
    require(c.against.is_rational(), "degree constraint class must be numeric");
  }

  const SlicePlan plan = plan_slices(query.lattice, rebase(query.positive_class, query.lattice));

  std::vector<Integer> degrees;
  for (Integer k = query.lo; k <= query.hi; ++k) degrees.push_back(k);

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, degrees.size()));

  std::vector<DivisorClass> solutions;
  if (threads <= 1) {
    for (const auto& k : degrees) {
      auto part = search_slice(plan, query, k);
      solutions.insert(solutions.end(), part.begin(), part.end());
    }
  } else {
    std::vector<std::future<std::vector<DivisorClass>>> jobs;
    for (unsigned w = 0; w < threads; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        std::vector<DivisorClass> mine;
        for (std::size_t i = w; i < degrees.size(); i += threads) {
          auto part = search_slice(plan, query, degrees[i]);
          mine.insert(mine.end(), part.begin(), part.end());
        }
        return mine;
      }));
    }
    for (auto& job : jobs) {
      auto part = job.get();
      solutions.insert(solutions.end(), part.begin(), part.end());
    }
  }
  std::sort(solutions.begin(), solutions.end(), lex_less);

  EnumerationResult result;
  result.solutions = std::move(solutions);
  result.complete = true;
  result.completeness_note = "exhaustive for " + query.lo.get_str() + " <= class." +
                             query.positive_class.to_string() + " <= " + query.hi.get_str() +
                             " (negative definite orthogonal complement)";
  return result;
}

std::vector<DivisorClass> roots_in_window(const DivisorClass& positive_class, const Integer& lo,
                                          const Integer& hi) {
  ClassQuery q{positive_class.lattice(), Rational(-2), {}, positive_class, lo, hi};
  return enumerate_classes(q).solutions;
}

}  // namespace k3lat
