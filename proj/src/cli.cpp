#include "k3lat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <ostream>

#include "k3lat/brill_noether.hpp"
#include "k3lat/enumeration.hpp"
#include "k3lat/error.hpp"
#include "k3lat/hilbert_square.hpp"
#include "k3lat/k3_picard.hpp"
#include "k3lat/kernels.hpp"
#include "k3lat/lattice_io.hpp"
#include "k3lat/case_studies.hpp"

namespace k3lat::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  bool pretty = false;
  bool decimal = false;
};

std::string decimal_of(const Rational& x, unsigned digits = 12) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const Integer num = abs(x.get_num()) * scale * 2 + x.get_den();
  const Integer rounded = num / (2 * x.get_den());
  std::string s = rounded.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  if (x < 0 && rounded != 0) s.insert(0, "-");
  return s;
}

void put_rational(Json& j, const std::string& key, const Rational& x, const Globals& g) {
  j[key] = to_string(x);
  if (g.decimal) j[key + "_decimal"] = decimal_of(x);
}

Json class_json(const DivisorClass& v) {
  Json j;
  j["class"] = v.to_string();
  Json coords = Json::array();
  for (const auto& c : v.coords()) coords.push_back(c.to_string(v.lattice()->parameter_name()));
  j["coords"] = coords;
  j["square"] = square(v).to_string(v.lattice()->parameter_name());
  return j;
}

void pretty_print(std::ostream& out, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        pretty_print(out, v, indent + 2);
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        out << pad << "-\n";
        pretty_print(out, v, indent + 2);
      } else {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(std::ostream& out, const Json& j, const Globals& g) {
  if (g.pretty) {
    pretty_print(out, j);
  } else {
    out << j.dump(2) << "\n";
  }
}

void emit_report(std::ostream& out, const VerificationReport& rep, const Globals& g) {
  if (!g.pretty) {
    out << report_to_json(rep).dump(2) << "\n";
    return;
  }
  for (const auto& c : rep.cases) {
    out << c.name << "\n";
    for (const auto& cl : c.claims) {
      out << "  [" << to_string(cl.status) << "] " << cl.id << ": " << cl.description << "\n";
      if (cl.status == ClaimStatus::Fail) out << "      expected " << cl.expected << ", got " << cl.got << "\n";
    }
    for (const auto& a : c.annotations) out << "  note: " << a << "\n";
  }
  out << rep.count(ClaimStatus::Pass) << " pass, " << rep.count(ClaimStatus::Bounded) << " bounded, "
      << rep.count(ClaimStatus::Fail) << " fail\n";
}

LatticePtr load(const std::string& path, const std::string& param) {
  LatticePtr lat = read_lattice_file(path);
  if (!param.empty()) lat = evaluate(lat, parse_rational(param));
  return lat;
}

Integer parse_integer(const std::string& text, const char* what) {
  const Rational r = parse_rational(text);
  require(r.get_den() == 1, std::string(what) + " must be an integer, got '" + text + "'");
  return r.get_num();
}

Integer bound_or_default(const std::string& text, const DivisorClass& h, const DivisorClass& w) {
  if (!text.empty()) return parse_integer(text, "--bound");
  if (const char* env = std::getenv("K3LAT_DEFAULT_BOUND")) return parse_integer(env, "K3LAT_DEFAULT_BOUND");
  return default_root_bound(h, w);
}

/// "CLASS<=VALUE" and friends.
DegreeConstraint parse_constraint(const LatticePtr& lat, const std::string& text) {
  static const char* const ops[] = {"<=", ">=", "==", "<", ">", "="};
  for (const char* op : ops) {
    const auto pos = text.find(op);
    if (pos == std::string::npos) continue;
    return {parse_class(lat, text.substr(0, pos)), parse_relation(op),
            parse_rational(text.substr(pos + std::string_view(op).size()))};
  }
  throw Error("constraint '" + text + "' needs one of <, <=, =, >=, >");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice computations for K3 surfaces and their Hilbert squares", "k3lat"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--pretty", g.pretty, "Human-readable output instead of JSON");
  app.add_flag("--decimal", g.decimal, "Add decimal renderings next to exact values");

  std::string file, param, cls, witness, bound, against, square_text, lo, hi, g_text, case_name;
  std::vector<std::string> constraints, witnesses, roots;
  unsigned threads = 1;
  int box = 3;
  std::size_t max_iters = 64;
  std::string m_text, g0_text, pa_text, r_text, d_text, gg_text, n_text, perturb;

  auto* lattice = app.add_subcommand("lattice", "Lattice information and enumeration");
  lattice->require_subcommand(1);
  auto* info = lattice->add_subcommand("info", "Rank, signature and determinant");
  info->add_option("file", file, "Lattice JSON")->required();
  info->add_option("--param", param, "Value of the formal parameter");
  auto* enumerate = lattice->add_subcommand("enumerate", "Classes with given square and degree window");
  enumerate->add_option("file", file, "Lattice JSON")->required();
  enumerate->add_option("--square", square_text, "Target square")->required();
  enumerate->add_option("--against", against, "Positive class of the degree window")->required();
  enumerate->add_option("--lo", lo, "Lowest degree")->required();
  enumerate->add_option("--hi", hi, "Highest degree")->required();
  enumerate->add_option("--constraint", constraints, "Extra condition such as 'F<=0'");
  enumerate->add_option("--param", param, "Value of the formal parameter");
  enumerate->add_option("--threads", threads, "Workers for the degree slices");

  auto* k3 = app.add_subcommand("k3", "Nefness, reflections, decompositions");
  k3->require_subcommand(1);
  auto* nef = k3->add_subcommand("nef", "Search for roots pairing negatively");
  auto* refl = k3->add_subcommand("reflect-to-nef", "Reflect into the nef chamber");
  auto* decompose = k3->add_subcommand("decompose", "Effective decompositions in a coordinate box");
  auto* flags = k3->add_subcommand("bpf-flags", "Saint-Donat obstruction classes");
  for (auto* sub : {nef, refl, decompose, flags}) {
    sub->add_option("file", file, "Lattice JSON")->required();
    sub->add_option("--class", cls, "Class to test")->required();
    sub->add_option("--param", param, "Value of the formal parameter");
  }
  for (auto* sub : {nef, refl, flags}) sub->add_option("--witness", witness, "Positivity witness")->required();
  for (auto* sub : {nef, refl}) sub->add_option("--bound", bound, "Root search bound (default 4|H.W|)");
  refl->add_option("--max-iters", max_iters, "Maximum number of reflections");
  decompose->add_option("--witness", witnesses, "Nef witness (repeatable)")->required();
  decompose->add_option("--box", box, "Coordinate box for the first summand");
  decompose->add_option("--root", roots, "Registered root admitted with zero pairing (repeatable)");

  auto* hilb = app.add_subcommand("hilb", "Hilbert square classes");
  hilb->require_subcommand(1);
  auto* hclass = hilb->add_subcommand("class", "Class, dual, slope and square of a rational curve");
  hclass->add_option("--m", m_text, "Multiple of Y")->required();
  hclass->add_option("--g0", g0_text, "g0 of the curve")->required();
  hclass->add_option("--pa", pa_text, "Arithmetic genus of H")->required();
  auto* invol = hilb->add_subcommand("involution", "Image under the quartic involution");
  invol->add_option("file", file, "Lattice JSON of Pic(S)")->required();
  invol->add_option("--class", cls, "Class on Pic(S) + Z e, e.g. '2*F - 3*e'")->required();
  invol->add_option("--G", g_text, "Quartic polarization")->required();
  invol->add_option("--param", param, "Value of the formal parameter");

  auto* bn = app.add_subcommand("bn", "Brill-Noether numbers and slope bounds");
  bn->require_subcommand(1);
  auto* rs = bn->add_subcommand("rho-sing", "Singular Brill-Noether number");
  rs->add_option("--pa", pa_text, "Arithmetic genus")->required();
  rs->add_option("--r", r_text, "r")->required();
  rs->add_option("--d", d_text, "d")->required();
  rs->add_option("--g", gg_text, "Geometric genus")->required();
  auto* bounds = bn->add_subcommand("bounds", "All slope bounds for a genus");
  bounds->add_option("--pa", pa_text, "Arithmetic genus")->required();
  auto* n_opt = bounds->add_option("--n", n_text, "Plane family parameter");
  auto* d_opt = bounds->add_option("--d", d_text, "Bundle family parameter");
  n_opt->excludes(d_opt);

  auto* verify = app.add_subcommand("verify", "Run the case studies");
  verify->add_option("--case", case_name, "pencils, plane, bundle or quartic");
  verify->add_option("--param", param, "Case parameter (n, d, 'd,k' or a genus)");
  verify->add_option("--threads", threads, "Cases run concurrently");
  verify->add_option("--perturb", perturb, "Negative control: add DELTA to Gram entry I,J ('I,J,DELTA')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (info->parsed()) {
      const LatticePtr lat = load(file, param);
      Json j;
      j["rank"] = lat->rank();
      j["lattice"] = lattice_to_json(*lat);
      j["determinant"] = determinant(lat->gram()).to_string(lat->parameter_name());
      if (lat->is_rational()) {
        const Signature s = lat->signature();
        j["signature"] = {s.positive, s.negative, s.zero};
        j["hyperbolic"] = lat->is_hyperbolic();
      } else {
        j["signature"] = nullptr;
        j["note"] = "signature needs a numeric lattice; pass --param";
      }
      emit(out, j, g);
      return kOk;
    }
    if (enumerate->parsed()) {
      const LatticePtr lat = load(file, param);
      ClassQuery q{lat, parse_rational(square_text), {}, parse_class(lat, against), parse_integer(lo, "--lo"),
                   parse_integer(hi, "--hi")};
      for (const auto& c : constraints) q.constraints.push_back(parse_constraint(lat, c));
      const EnumerationResult res = enumerate_classes(q, {threads});
      Json j;
      Json sols = Json::array();
      for (const auto& s : res.solutions) sols.push_back(class_json(s));
      j["solutions"] = sols;
      j["count"] = res.solutions.size();
      j["complete"] = res.complete;
      j["completeness_note"] = res.completeness_note;
      emit(out, j, g);
      return kOk;
    }
    if (nef->parsed() || refl->parsed() || flags->parsed() || decompose->parsed()) {
      const LatticePtr lat = load(file, param);
      const DivisorClass h = parse_class(lat, cls);
      Json j;
      j["class"] = h.to_string();
      if (nef->parsed()) {
        const DivisorClass w = parse_class(lat, witness);
        const Integer b = bound_or_default(bound, h, w);
        const NefnessVerdict v = is_nef_up_to_bound(h, w, b);
        j["status"] = to_string(v.status);
        j["witness"] = v.witness ? Json(v.witness->to_string()) : Json(nullptr);
        j["bound_used"] = v.bound_used.get_str();
        j["note"] = v.note;
      } else if (refl->parsed()) {
        const DivisorClass w = parse_class(lat, witness);
        const Integer b = bound_or_default(bound, h, w);
        const ReflectionTrace t = reflect_to_nef(h, w, b, max_iters);
        Json steps = Json::array();
        for (const auto& s : t.steps) steps.push_back({{"root", s.root.to_string()}, {"image", s.image.to_string()}});
        j["steps"] = steps;
        j["final"] = t.final_class.to_string();
        j["square"] = square(t.final_class).to_string(lat->parameter_name());
        j["converged"] = t.converged;
        j["bound"] = t.bound.get_str();
        j["status"] = t.converged ? "candidate_nef_up_to_bound" : "max_iters_reached";
      } else if (flags->parsed()) {
        const SaintDonatFlags f = saintdonat_flags(h, parse_class(lat, witness));
        auto list = [](const std::vector<DivisorClass>& v) {
          Json a = Json::array();
          for (const auto& c : v) a.push_back(c.to_string());
          return a;
        };
        j["has_square0_deg1"] = f.has_square0_deg1;
        j["has_square0_deg2"] = f.has_square0_deg2;
        j["has_root_deg_le1"] = f.has_root_deg_le1;
        j["square0_deg1"] = list(f.square0_deg1);
        j["square0_deg2"] = list(f.square0_deg2);
        j["root_deg_le1"] = list(f.root_deg_le1);
      } else {
        std::vector<DivisorClass> ws, rs_list;
        for (const auto& w : witnesses) ws.push_back(parse_class(lat, w));
        for (const auto& r : roots) rs_list.push_back(parse_class(lat, r));
        const DecompositionSearch d = effective_decompositions(h, ws, box, rs_list);
        Json pairs = Json::array();
        for (const auto& [a, b] : d.pairs) pairs.push_back({a.to_string(), b.to_string()});
        Json relaxed = Json::array();
        for (const auto& r : d.relaxed) relaxed.push_back(r.to_string());
        j["pairs"] = pairs;
        j["relaxed"] = relaxed;
        j["box"] = box;
        j["kernel"] = d.kernel;
      }
      emit(out, j, g);
      return kOk;
    }
    if (hclass->parsed()) {
      const Integer m = parse_integer(m_text, "--m");
      const Integer g0 = parse_integer(g0_text, "--g0");
      const Integer pa = parse_integer(pa_text, "--pa");
      const RationalCurve rc = rational_curve_class(m, g0, pa);
      Json j;
      j["curve"] = {{"a", to_string(rc.curve.a)}, {"b", to_string(rc.curve.b)}, {"p_a", pa.get_str()}};
      j["class"] = to_string(rc.curve.a) + "*Y - " + to_string(rc.curve.b) + "*P";
      Json pairings = Json::array();
      for (const auto& p : curve_pairings(rc.curve)) pairings.push_back(to_string(p));
      j["pairings"] = pairings;
      j["w"] = rc.dual.to_string();
      const Slope s = slope(rc.curve);
      j["slope"] = s.to_string();
      if (g.decimal && !s.infinite) j["slope_decimal"] = decimal_of(s.value);
      put_rational(j, "q", q_of_curve(m, g0, pa), g);
      emit(out, j, g);
      return kOk;
    }
    if (invol->parsed()) {
      const LatticePtr lat = load(file, param);
      const HilbertSquareLattice hs(lat);
      const DivisorClass v = parse_class(hs.lattice(), cls);
      const DivisorClass gp = parse_class(hs.lattice(), g_text);
      const DivisorClass image = quartic_involution(hs, v, gp);
      Json j;
      j["class"] = v.to_string();
      j["image"] = image.to_string();
      j["q"] = square(image).to_string(lat->parameter_name());
      emit(out, j, g);
      return kOk;
    }
    if (rs->parsed()) {
      const RhoSingReport r = rho_sing(parse_integer(pa_text, "--pa"), parse_integer(r_text, "--r"),
                                       parse_integer(d_text, "--d"), parse_integer(gg_text, "--g"));
      Json j;
      j["p_a"] = r.p_a.get_str();
      j["r"] = r.r.get_str();
      j["d"] = r.d.get_str();
      j["g"] = r.g.get_str();
      j["rho"] = r.rho.get_str();
      j["rho_sing"] = r.rho_sing.get_str();
      j["nonexistence_triggered"] = r.nonexistence_triggered;
      emit(out, j, g);
      return kOk;
    }
    if (bounds->parsed()) {
      const Integer pa = parse_integer(pa_text, "--pa");
      std::optional<Integer> n, d;
      if (!n_text.empty()) n = parse_integer(n_text, "--n");
      if (!d_text.empty()) d = parse_integer(d_text, "--d");
      const SlopeBoundReport rep = compare_bounds(pa, n, d);
      Json j;
      j["p_a"] = pa.get_str();
      Json bs = Json::array();
      for (const auto& b : rep.bounds) {
        Json e;
        e["name"] = b.name;
        if (b.value) put_rational(e, "value", *b.value, g);
        if (b.surd) {
          e["sqrt_of"] = to_string(b.surd->radicand);
          if (g.decimal) e["sqrt_decimal"] = b.surd->decimal(12);
        }
        e["conditional"] = b.conditional;
        e["note"] = b.note;
        bs.push_back(e);
      }
      j["bounds"] = bs;
      Json cs = Json::array();
      for (const auto& c : rep.comparisons) {
        cs.push_back({{"statement", c.statement}, {"holds", c.holds}, {"asserted", c.asserted}});
      }
      j["comparisons"] = cs;
      j["all_hold"] = rep.all_hold();
      emit(out, j, g);
      return rep.all_hold() ? kOk : kVerificationFailed;
    }
    if (verify->parsed()) {
      VerifyConfig config;
      config.case_name = case_name;
      if (!param.empty()) config.param = param;
      config.threads = threads;
      if (!perturb.empty()) {
        const auto a = perturb.find(',');
        const auto b = a == std::string::npos ? a : perturb.find(',', a + 1);
        require(b != std::string::npos, "--perturb expects 'I,J,DELTA'");
        config.options.perturbation = GramPerturbation{
            static_cast<std::size_t>(parse_integer(perturb.substr(0, a), "I").get_ui()),
            static_cast<std::size_t>(parse_integer(perturb.substr(a + 1, b - a - 1), "J").get_ui()),
            parse_integer(perturb.substr(b + 1), "DELTA")};
      }
      const VerificationReport rep = verify_all(config);
      emit_report(out, rep, g);
      return rep.passed() ? kOk : kVerificationFailed;
    }
  } catch (const InvariantViolation& e) {
    err << "k3lat: internal invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "k3lat: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "k3lat: unexpected failure: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace k3lat::cli
