#include "k3lat/k3_picard.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "k3lat/error.hpp"
#include "k3lat/kernels.hpp"

namespace k3lat {

namespace {

Rational value_of(const Scalar& s) { return s.constant(); }

void require_numeric(const DivisorClass& v, const char* what) {
  require(v.is_rational(), std::string(what) + " must be numeric; evaluate the parameter first");
}

}  // namespace

bool effectivity_necessary(const DivisorClass& d, const DivisorClass& nef_witness) {
  return value_of(square(d)) >= -2 && value_of(pair(d, nef_witness)) > 0;
}

bool moving_candidate(const DivisorClass& d, const DivisorClass& nef_witness) {
  return value_of(square(d)) >= 0 && effectivity_necessary(d, nef_witness);
}

DivisorClass reflect(const DivisorClass& v, const DivisorClass& root) {
  require(square(root) == Scalar(-2), "reflection needs a root of square -2, got " + square(root).to_string());
  return v + pair(v, root) * root;
}

Integer default_root_bound(const DivisorClass& h, const DivisorClass& witness) {
  Rational hw = value_of(pair(h, witness));
  Integer b = 4 * ceil_of(abs(hw));
  return b < 1 ? Integer(1) : b;
}

namespace {

std::vector<DivisorClass> roots_against(const DivisorClass& witness, const Integer& bound) {
  if (bound < 1) return {};
  return roots_in_window(witness, 1, bound);
}

}  // namespace

ReflectionTrace reflect_to_nef(const DivisorClass& v, const DivisorClass& positivity_witness, const Integer& bound,
                               std::size_t max_iters) {
  require_numeric(v, "class");
  require(value_of(square(v)) > 0, "reflect_to_nef needs a class of positive square");
  // Each reflection lowers v.W by a positive integer, so the loop ends only
  // when v starts in the cone component of W.
  require(value_of(pair(v, positivity_witness)) > 0, "reflect_to_nef needs v.W > 0");
  const auto roots = roots_against(positivity_witness, bound);
  ReflectionTrace trace{{}, v, false, bound};
  for (;;) {
    const DivisorClass* best = nullptr;
    Rational best_pairing;
    for (const auto& g : roots) {
      const Rational p = value_of(pair(trace.final_class, g));
      if (p >= 0) continue;
      if (best == nullptr || p < best_pairing) {
        best = &g;
        best_pairing = p;
      }
    }
    if (best == nullptr) {
      trace.converged = true;
      return trace;
    }
    if (trace.steps.size() >= max_iters) return trace;
    DivisorClass image = reflect(trace.final_class, *best);
    ensure(square(image) == square(v), "reflection changed the square");
    trace.steps.push_back({*best, image});
    trace.final_class = std::move(image);
  }
}

std::string to_string(NefStatus s) {
  switch (s) {
    case NefStatus::NefCertified: return "nef_certified";
    case NefStatus::Counterexample: return "counterexample";
    case NefStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

NefnessVerdict is_nef_up_to_bound(const DivisorClass& h, const DivisorClass& positivity_witness,
                                  const Integer& bound, const std::optional<std::string>& completeness) {
  require_numeric(h, "class");
  require(value_of(square(h)) >= 0, "nefness test needs a class of non-negative square");
  NefnessVerdict verdict;
  verdict.bound_used = bound < 0 ? Integer(0) : bound;
  if (bound < 1) {
    verdict.note = "empty search window";
    return verdict;
  }
  const DivisorClass* worst = nullptr;
  Rational worst_pairing;
  const auto roots = roots_against(positivity_witness, bound);
  for (const auto& g : roots) {
    const Rational p = value_of(pair(h, g));
    if (p < 0 && (worst == nullptr || p < worst_pairing)) {
      worst = &g;
      worst_pairing = p;
    }
  }
  if (worst != nullptr) {
    verdict.status = NefStatus::Counterexample;
    verdict.witness = *worst;
    verdict.note = "root pairs to " + to_string(worst_pairing);
  } else if (completeness) {
    verdict.status = NefStatus::NefCertified;
    verdict.note = *completeness;
  } else {
    verdict.note = "no violating root with 0 < root.W <= " + bound.get_str();
  }
  return verdict;
}

SaintDonatFlags saintdonat_flags(const DivisorClass& h, const DivisorClass& positivity_witness) {
  require_numeric(h, "class");
  require(value_of(square(h)) > 0, "Saint-Donat flags need a class of positive square");
  auto run = [&](const Rational& sq, const Integer& lo, const Integer& hi) {
    ClassQuery q{h.lattice(), sq, {}, h, lo, hi};
    std::vector<DivisorClass> kept;
    for (auto& c : enumerate_classes(q).solutions) {
      if (effectivity_necessary(c, positivity_witness)) kept.push_back(std::move(c));
    }
    return kept;
  };
  SaintDonatFlags f;
  f.square0_deg1 = run(0, 1, 1);
  f.square0_deg2 = run(0, 2, 2);
  f.root_deg_le1 = run(-2, 1, 1);
  f.has_square0_deg1 = !f.square0_deg1.empty();
  f.has_square0_deg2 = !f.square0_deg2.empty();
  f.has_root_deg_le1 = !f.root_deg_le1.empty();
  return f;
}

namespace {

using IntVec = std::vector<Integer>;

struct Admission {
  bool ok = false;
  bool relaxed = false;
};

/// sq = D^2, pairings = D.N over the witnesses.
template <typename Num>
Admission admit(const Num& sq, const std::vector<Num>& pairings, bool registered_root) {
  if (sq < -2) return {};
  bool positive = false;
  bool nonnegative = true;
  for (const auto& p : pairings) {
    positive = positive || p > 0;
    nonnegative = nonnegative && p >= 0;
  }
  if (positive) return {true, false};
  if (registered_root && sq == -2 && nonnegative) return {true, true};
  return {};
}

/// Calls f(point) for every integer point of [-box, box]^rank.
template <typename F>
void for_each_box_point(std::size_t rank, int box, F&& f) {
  std::vector<long> x(rank, -box);
  for (;;) {
    f(x);
    std::size_t i = 0;
    while (i < rank && x[i] == box) x[i++] = -box;
    if (i == rank) return;
    ++x[i];
  }
}

}  // namespace

DecompositionSearch effective_decompositions(const DivisorClass& h, const std::vector<DivisorClass>& witnesses,
                                             int box, const std::vector<DivisorClass>& registered_roots) {
  require(box >= 0, "coordinate box must be non-negative");
  require(!witnesses.empty(), "at least one nef witness is needed");
  require(h.is_integral(), "decomposed class must be integral");
  const LatticePtr& lat = h.lattice();
  require(lat->is_rational(), "decompositions need a numeric lattice");
  for (const auto& w : witnesses) {
    require(same_lattice(w.lattice(), lat), "witness lives on another lattice");
    require(w.is_rational(), "witness must be numeric");
  }
  std::set<IntVec> roots;
  for (const auto& r : registered_roots) {
    require(same_lattice(r.lattice(), lat), "registered root lives on another lattice");
    roots.insert(r.integer_coords());
  }

  DecompositionSearch out;
  const std::size_t r = lat->rank();
  if (h.is_zero()) {
    out.pairs.emplace_back(h, h);
    out.kernel = "none";
    return out;
  }

  const Matrix<Rational>& g = lat->rational_gram();
  const IntVec hv = h.integer_coords();
  // Linear forms x -> x.N_w for each witness, then x -> x.H.
  std::vector<std::vector<Rational>> forms;
  for (const auto& w : witnesses) {
    std::vector<Rational> row(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) row[i] += g(i, j) * w[j].constant();
    }
    forms.push_back(std::move(row));
  }
  {
    std::vector<Rational> row(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) row[i] += g(i, j) * hv[j];
    }
    forms.push_back(std::move(row));
  }
  const std::size_t nw = witnesses.size();
  const Rational h_sq = value_of(square(h));
  std::vector<Rational> h_pair(nw);
  for (std::size_t w = 0; w < nw; ++w) h_pair[w] = value_of(pair(h, witnesses[w]));

  std::set<std::pair<IntVec, IntVec>> found;
  std::map<IntVec, bool> relaxed;
  auto record = [&](const IntVec& a, const Admission& adm_a, const Admission& adm_b) {
    IntVec b(r);
    for (std::size_t i = 0; i < r; ++i) b[i] = hv[i] - a[i];
    if (adm_a.relaxed) relaxed[a] = true;
    if (adm_b.relaxed) relaxed[b] = true;
    if (b < a) found.emplace(b, a);
    else found.emplace(a, b);
  };

  bool small = lat->is_integral() && r <= kernels::kMaxDim;
  std::int64_t max_entry = 0;
  if (small) {
    auto track = [&](const Rational& q) {
      if (q.get_den() != 1 || abs(q) > kernels::kMaxEntry) {
        small = false;
        return;
      }
      max_entry = std::max<std::int64_t>(max_entry, Integer(abs(q.get_num())).get_si());
    };
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) track(g(i, j));
    }
    for (const auto& f : forms) {
      for (const auto& c : f) track(c);
    }
    for (const auto& p : h_pair) track(p);
    track(h_sq);
  }
  small = small && kernels::within_limits(r, max_entry, box);

  if (small) {
    const kernels::Isa isa = kernels::best_isa();
    out.kernel = kernels::to_string(isa);
    std::vector<std::int32_t> gram(r * r), linear(forms.size() * r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) gram[i * r + j] = static_cast<std::int32_t>(g(i, j).get_num().get_si());
    }
    for (std::size_t l = 0; l < forms.size(); ++l) {
      for (std::size_t i = 0; i < r; ++i) linear[l * r + i] = static_cast<std::int32_t>(forms[l][i].get_num().get_si());
    }
    const std::int64_t hs = h_sq.get_num().get_si();
    std::vector<std::int64_t> hp(nw);
    for (std::size_t w = 0; w < nw; ++w) hp[w] = h_pair[w].get_num().get_si();

    constexpr std::size_t kChunk = 4096;
    std::vector<std::vector<long>> pending;
    std::vector<std::int32_t> soa(r * kChunk);
    std::vector<std::int64_t> squares(kChunk), pairings(forms.size() * kChunk);
    auto flush = [&] {
      const std::size_t count = pending.size();
      if (count == 0) return;
      for (std::size_t p = 0; p < count; ++p) {
        for (std::size_t i = 0; i < r; ++i) soa[i * count + p] = static_cast<std::int32_t>(pending[p][i]);
      }
      kernels::BatchArgs args{r, gram.data(), forms.size(), linear.data(), count, soa.data(), squares.data(),
                              pairings.data()};
      kernels::evaluate(args, isa);
      std::vector<std::int64_t> pa(nw), pb(nw);
      for (std::size_t p = 0; p < count; ++p) {
        const std::int64_t a_sq = squares[p];
        const std::int64_t a_h = pairings[nw * count + p];
        const std::int64_t b_sq = hs - 2 * a_h + a_sq;
        for (std::size_t w = 0; w < nw; ++w) {
          pa[w] = pairings[w * count + p];
          pb[w] = hp[w] - pa[w];
        }
        if (a_sq < -2 || b_sq < -2) continue;
        IntVec a(pending[p].begin(), pending[p].end());
        IntVec b(r);
        for (std::size_t i = 0; i < r; ++i) b[i] = hv[i] - a[i];
        const Admission adm_a = admit(a_sq, pa, roots.count(a) > 0);
        if (!adm_a.ok) continue;
        const Admission adm_b = admit(b_sq, pb, roots.count(b) > 0);
        if (adm_b.ok) record(a, adm_a, adm_b);
      }
      pending.clear();
    };
    for_each_box_point(r, box, [&](const std::vector<long>& x) {
      pending.push_back(x);
      if (pending.size() == kChunk) flush();
    });
    flush();
  } else {
    out.kernel = "exact";
    for_each_box_point(r, box, [&](const std::vector<long>& x) {
      IntVec a(x.begin(), x.end());
      IntVec b(r);
      std::vector<Scalar> ac(r), bc(r);
      for (std::size_t i = 0; i < r; ++i) {
        b[i] = hv[i] - a[i];
        ac[i] = Scalar(a[i]);
        bc[i] = Scalar(b[i]);
      }
      const DivisorClass da(lat, ac), db(lat, bc);
      std::vector<Rational> pa(nw), pb(nw);
      for (std::size_t w = 0; w < nw; ++w) {
        pa[w] = value_of(pair(da, witnesses[w]));
        pb[w] = value_of(pair(db, witnesses[w]));
      }
      const Admission adm_a = admit(value_of(square(da)), pa, roots.count(a) > 0);
      if (!adm_a.ok) return;
      const Admission adm_b = admit(value_of(square(db)), pb, roots.count(b) > 0);
      if (adm_b.ok) record(a, adm_a, adm_b);
    });
  }

  auto to_class = [&](const IntVec& v) {
    std::vector<Scalar> c(v.begin(), v.end());
    return DivisorClass(lat, std::move(c));
  };
  for (const auto& [a, b] : found) out.pairs.emplace_back(to_class(a), to_class(b));
  for (const auto& [v, _] : relaxed) out.relaxed.push_back(to_class(v));
  return out;
}

}  // namespace k3lat
