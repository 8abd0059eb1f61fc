#include "blmp/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace blmp {

namespace {

[[noreturn]] void fail(const std::string& what) { throw DescriptorError(what); }

double as_real(const Json& j, const std::string& key) {
  if (!j.is_number()) fail("'" + key + "' must be a number");
  return j.get<double>();
}

enum class T { complex, real, integer, complex_list, function, boolean, string };

struct FieldSpec {
  const char* key;
  T type;
  Json def;  // null: required
};

Json fn(const char* kind) { return Json{{"kind", kind}}; }

const std::map<std::string, std::vector<FieldSpec>>& schemas() {
  static const std::map<std::string, std::vector<FieldSpec>> s = [] {
    std::map<std::string, std::vector<FieldSpec>> m;
    auto red = [](std::vector<FieldSpec> f) {
      f.push_back({"q", T::function, fn("identity")});
      f.push_back({"m", T::function, fn("zero")});
      return f;
    };
    m["rational_similarity"] = red({{"n", T::integer, nullptr}});
    m["n_soliton"] = red({{"kappa", T::complex_list, nullptr}});
    for (const char* c : {"negaton2", "positon2", "rational_soliton", "rational_positon"})
      m[c] = red({{"gamma", T::real, 1.0}});
    for (const char* c : {"complexiton", "complexiton_displayed"}) m[c] = red({{"eta", T::complex, Json::array({1.0, 1.0})}});
    m["traveling_wave"] = {{"a", T::complex, 1.0},
                           {"alpha", T::complex, 0.0},
                           {"c1", T::complex, 1.0},
                           {"c2", T::complex, 1.0},
                           {"m", T::function, fn("zero")}};
    m["kink"] = {{"a", T::complex, 1.0}, {"m", T::function, fn("zero")}};
    m["constant"] = {{"value", T::complex, 0.0}};
    m["super_soliton"] = {{"kappa", T::complex_list, nullptr},
                          {"rho", T::complex_list, nullptr},
                          {"omega", T::complex_list, Json::array()},
                          {"enforce_dispersion", T::boolean, true}};
    m["superpartner"] = {{"d1", T::complex, 1.0},
                         {"d2", T::complex, 0.0},
                         {"a", T::complex, 1.0},
                         {"alpha", T::complex, 0.0},
                         {"beta", T::complex_list, Json::array({0.0, 0.0, 0.0})},
                         {"m", T::function, fn("zero")},
                         {"zeta", T::string, "zeta"}};
    return m;
  }();
  return s;
}

Json normalize(const FieldSpec& f, const Json& v) {
  const std::string key = f.key;
  switch (f.type) {
    case T::complex:
      return complex_to_json(complex_from_json(v));
    case T::real:
      return as_real(v, key);
    case T::integer: {
      double x = as_real(v, key);
      if (x != std::floor(x)) fail("'" + key + "' must be an integer");
      return static_cast<long long>(x);
    }
    case T::complex_list: {
      if (!v.is_array()) fail("'" + key + "' must be an array");
      Json out = Json::array();
      for (const auto& e : v) out.push_back(complex_to_json(complex_from_json(e)));
      return out;
    }
    case T::function:
      return function_to_json(function_from_json(v));
    case T::boolean:
      if (!v.is_boolean()) fail("'" + key + "' must be a boolean");
      return v;
    case T::string:
      if (!v.is_string()) fail("'" + key + "' must be a string");
      return v;
  }
  return v;
}

std::vector<Complex> complex_list(const Json& j) {
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

ReductionSpec reduction(const Json& p) { return {function_from_json(p.at("q")), function_from_json(p.at("m"))}; }

int required_evaluated(int count) { return static_cast<int>(std::ceil(0.95 * count)); }

}  // namespace

// ---------------------------------------------------------------- values

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail("expected a number or [re, im], got " + j.dump());
}

Json complex_to_json(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return Json::array({c.real(), c.imag()});
}

NamedFunction function_from_json(const Json& j) {
  if (j.is_string()) return function_from_json(Json{{"kind", j}});
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) fail("function needs a 'kind': " + j.dump());
  for (const auto& [k, v] : j.items())
    if (k != "kind" && k != "coeffs" && k != "a") fail("unknown function key '" + k + "'");
  const std::string kind = j["kind"];
  if (kind == "zero") return NamedFunction::zero();
  if (kind == "identity") return NamedFunction::identity();
  if (kind == "poly") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) fail("poly needs 'coeffs'");
    std::vector<double> c;
    for (const auto& e : j["coeffs"]) c.push_back(as_real(e, "coeffs"));
    return NamedFunction::poly(c);
  }
  if (kind == "sin" || kind == "exp") {
    double a = j.contains("a") ? as_real(j["a"], "a") : 1.0;
    return kind == "sin" ? NamedFunction::sine(a) : NamedFunction::exponential(a);
  }
  fail("unknown function kind '" + kind + "'");
}

Json function_to_json(const NamedFunction& f) {
  Json j{{"kind", NamedFunction::kind_name(f.kind)}};
  if (f.kind == NamedFunction::Kind::poly) j["coeffs"] = f.coeffs;
  if (f.kind == NamedFunction::Kind::sin || f.kind == NamedFunction::Kind::exp) j["a"] = f.a;
  return j;
}

// ---------------------------------------------------------------- descriptors

const std::vector<std::string>& descriptor_families() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : schemas()) n.push_back(k);
    return n;
  }();
  return names;
}

Descriptor parse_descriptor(const Json& j) {
  if (!j.is_object()) fail("descriptor must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "family" && k != "params") fail("unknown descriptor key '" + k + "'");
  if (!j.contains("family") || !j["family"].is_string()) fail("descriptor needs a 'family'");
  Descriptor d{j["family"], Json::object()};
  auto it = schemas().find(d.family);
  if (it == schemas().end()) fail("unknown family '" + d.family + "'");

  const Json params = j.value("params", Json::object());
  if (!params.is_object()) fail("'params' must be an object");
  std::set<std::string> known;
  for (const FieldSpec& f : it->second) {
    known.insert(f.key);
    if (params.contains(f.key)) {
      d.params[f.key] = normalize(f, params[f.key]);
    } else if (f.def.is_null()) {
      fail(d.family + " needs '" + f.key + "'");
    } else {
      d.params[f.key] = normalize(f, f.def);
    }
  }
  for (const auto& [k, v] : params.items())
    if (!known.count(k)) fail("unknown parameter '" + k + "' for " + d.family);
  if (d.family == "superpartner" && d.params["beta"].size() != 3) fail("superpartner 'beta' needs three entries");
  return d;
}

Json to_json(const Descriptor& d) { return Json{{"family", d.family}, {"params", d.params}}; }

BuiltSolution build(const Descriptor& d) {
  BuiltSolution b;
  b.descriptor = d;
  const Json& p = d.params;
  const std::string& f = d.family;

  static const std::map<std::string, ClosedForm> closed{{"negaton2", ClosedForm::negaton2},
                                                       {"positon2", ClosedForm::positon2},
                                                       {"complexiton", ClosedForm::complexiton},
                                                       {"complexiton_displayed", ClosedForm::complexiton_displayed},
                                                       {"rational_soliton", ClosedForm::rational_soliton},
                                                       {"rational_positon", ClosedForm::rational_positon}};

  if (f == "rational_similarity") {
    b.field = rational_similarity(p["n"].get<int>(), reduction(p));
  } else if (f == "n_soliton") {
    b.field = n_soliton({complex_list(p["kappa"])}, reduction(p));
  } else if (auto it = closed.find(f); it != closed.end()) {
    ClosedFormParams cp;
    if (p.contains("gamma")) cp.gamma = p["gamma"].get<double>();
    if (p.contains("eta")) cp.eta = complex_from_json(p["eta"]);
    b.field = closed_form(it->second, cp, reduction(p));
  } else if (f == "traveling_wave") {
    TravelingWaveParams tw{complex_from_json(p["a"]), complex_from_json(p["alpha"]), complex_from_json(p["c1"]),
                           complex_from_json(p["c2"]), function_from_json(p["m"])};
    b.field = traveling_wave(tw);
  } else if (f == "kink") {
    b.field = kink(complex_from_json(p["a"]), function_from_json(p["m"]));
  } else if (f == "constant") {
    const Complex c = complex_from_json(p["value"]);
    b.field = custom_field("constant", [c](const Point&, JetOrder o) { return Jet::constant(c, o); });
  } else if (f == "super_soliton") {
    SuperSoliton s = super_soliton({complex_list(p["kappa"]), complex_list(p["rho"]), complex_list(p["omega"]),
                                    p["enforce_dispersion"].get<bool>()});
    b.gens = s.gens;
    b.phi = s.phi;
    b.g = s.g;
  } else if (f == "superpartner") {
    SuperpartnerParams sp;
    sp.d1 = complex_from_json(p["d1"]);
    sp.d2 = complex_from_json(p["d2"]);
    sp.a = complex_from_json(p["a"]);
    sp.alpha = complex_from_json(p["alpha"]);
    auto beta = complex_list(p["beta"]);
    sp.beta1 = beta[0];
    sp.beta2 = beta[1];
    sp.beta3 = beta[2];
    sp.m = function_from_json(p["m"]);
    sp.zeta = p["zeta"].get<std::string>();
    Superpartner s = superpartner(sp);
    b.gens = s.gens;
    b.phi = s.phi;
    b.partner = sp;
  } else {
    fail("unknown family '" + f + "'");
  }
  return b;
}

std::vector<Check> verify(const BuiltSolution& s, const VerifyOptions& o) {
  auto pts = sample_points(o.box, o.count, o.seed);
  const int need = required_evaluated(o.count);
  auto tol = [&](double def) { return o.tol.value_or(def); };
  std::vector<Check> out;
  if (s.field) {
    out.push_back({"blmp", residual_blmp(*s.field, pts), tol(kTolClassical), need});
  } else if (s.partner) {
    std::vector<double> ws;
    for (int i = 0; i < o.count; ++i)
      ws.push_back(o.box.lo[0] + (o.box.hi[0] - o.box.lo[0]) * i / std::max(1, o.count - 1));
    out.push_back({"schroedinger", schroedinger_check(*s.partner, ws), tol(kTolGraded), need});
    out.push_back({"susy_components", residual_susy_components(s.phi, pts), tol(kTolGraded), need});
  } else {
    out.push_back({"sbili", residual_bilinear_sbili(s.g, pts), tol(kTolClassical), need});
    out.push_back({"susy_components", residual_susy_components(s.phi, pts), tol(kTolClassical), need});
  }
  return out;
}

std::vector<Descriptor> classical_suite() {
  std::vector<Json> js{
      {{"family", "rational_similarity"}, {"params", {{"n", 2}}}},
      {{"family", "rational_similarity"}, {"params", {{"n", 3}}}},
      {{"family", "rational_similarity"}, {"params", {{"n", 4}}}},
      {{"family", "n_soliton"}, {"params", {{"kappa", {0.5}}}}},
      {{"family", "n_soliton"}, {"params", {{"kappa", {0.5, 1.0}}}}},
      {{"family", "n_soliton"}, {"params", {{"kappa", {0.5, 1.0, 1.5}}}}},
      {{"family", "negaton2"}, {"params", {{"gamma", 1.0}}}},
      {{"family", "positon2"}, {"params", {{"gamma", 1.0}}}},
      {{"family", "complexiton"}, {"params", {{"eta", {1.0, 1.0}}}}},
      {{"family", "rational_soliton"}, {"params", {{"gamma", 1.0}}}},
      {{"family", "rational_positon"}, {"params", {{"gamma", 1.0}}}},
      {{"family", "traveling_wave"},
       {"params", {{"a", 0.9}, {"alpha", 0.3}, {"m", {{"kind", "poly"}, {"coeffs", {0.1, 0.4, -0.2}}}}}}},
      {{"family", "kink"}, {"params", {{"a", 0.8}, {"m", {{"kind", "sin"}, {"a", 0.8}}}}}},
  };
  std::vector<Descriptor> out;
  for (const Json& j : js) out.push_back(parse_descriptor(j));
  return out;
}

Json report_to_json(const ResidualReport& r, bool with_points) {
  Json j{{"equation", equation_name(r.equation)},
         {"max_abs", r.max_abs},
         {"max_rel", r.max_rel},
         {"evaluated", r.evaluated},
         {"skipped", r.skipped}};
  Json comps = Json::object();
  for (const auto& [name, c] : r.components) comps[name] = {{"max_abs", c.max_abs}, {"max_rel", c.max_rel}};
  j["components"] = comps;
  if (with_points) {
    Json pts = Json::array();
    for (const Point& p : r.points) pts.push_back({p.x, p.y, p.t});
    j["points"] = pts;
  }
  return j;
}

Json check_to_json(const Check& c, const Descriptor& d, bool with_points) {
  Json j = report_to_json(c.report, with_points);
  j["descriptor"] = to_json(d);
  j["check"] = c.name;
  j["tolerance"] = c.tolerance;
  j["min_evaluated"] = c.min_evaluated;
  j["passed"] = c.passed();
  return j;
}

// ---------------------------------------------------------------- Backlund

namespace {

ExpSumSpec exp_sum_from_json(const Json& j) {
  if (!j.is_object()) fail("tau/mu must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "constant" && k != "terms") fail("unknown key '" + k + "' in tau/mu");
  ExpSumSpec s;
  if (j.contains("constant")) s.constant = complex_from_json(j["constant"]);
  if (j.contains("terms")) {
    if (!j["terms"].is_array()) fail("'terms' must be an array");
    for (const auto& t : j["terms"]) {
      if (!t.is_object()) fail("term must be an object");
      for (const auto& [k, v] : t.items())
        if (k != "coeff" && k != "kappa" && k != "rho" && k != "omega" && k != "odd") fail("unknown term key '" + k + "'");
      ExpTerm e;
      if (t.contains("coeff")) e.coeff = complex_from_json(t["coeff"]);
      if (t.contains("kappa")) e.kappa = complex_from_json(t["kappa"]);
      if (t.contains("rho")) e.rho = complex_from_json(t["rho"]);
      if (t.contains("omega")) e.omega = complex_from_json(t["omega"]);
      if (t.contains("odd")) {
        if (!t["odd"].is_string() || t["odd"] == "" || t["odd"] == "theta" || t["odd"] == "gamma")
          fail("'odd' must name a generator other than theta and gamma");
        e.odd = t["odd"];
      }
      s.terms.push_back(e);
    }
  }
  return s;
}

Json exp_sum_to_json(const ExpSumSpec& s) {
  Json terms = Json::array();
  for (const ExpTerm& e : s.terms) {
    Json t{{"coeff", complex_to_json(e.coeff)}, {"kappa", complex_to_json(e.kappa)}, {"rho", complex_to_json(e.rho)}};
    if (e.omega) t["omega"] = complex_to_json(*e.omega);
    if (!e.odd.empty()) t["odd"] = e.odd;
    terms.push_back(t);
  }
  return {{"constant", complex_to_json(s.constant)}, {"terms", terms}};
}

PairSpec pair_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("tau") || !j.contains("mu")) fail("pair needs 'tau' and 'mu'");
  for (const auto& [k, v] : j.items())
    if (k != "tau" && k != "mu") fail("unknown pair key '" + k + "'");
  return {exp_sum_from_json(j["tau"]), exp_sum_from_json(j["mu"])};
}

Json pair_to_json(const PairSpec& p) { return {{"tau", exp_sum_to_json(p.tau)}, {"mu", exp_sum_to_json(p.mu)}}; }

SuperfieldFn exp_sum_field(const ExpSumSpec& s, const GeneratorSetPtr& gens) {
  return [s, gens](const Point& p, JetOrder o) {
    auto x = coordinates(p, o);
    GrassmannJet v(gens, Jet::constant(s.constant, o));
    for (const ExpTerm& e : s.terms) {
      const Complex w = e.omega.value_or(-e.kappa * e.kappa * e.kappa);
      Jet ex = e.coeff * exp(e.kappa * x.x + e.rho * x.y + w * x.t);
      v.add_term(0u, ex);
      if (!e.odd.empty()) v.add_term(kThetaBit | Mask{1} << gens->index(e.odd), ex);
    }
    return Superfield(v);
  };
}

}  // namespace

BacklundRun parse_backlund(const Json& j) {
  if (!j.is_object()) fail("backlund run must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "seed" && k != "candidate" && k != "alpha" && k != "beta" && k != "gamma" && k != "lambda")
      fail("unknown backlund key '" + k + "'");
  if (!j.contains("seed") || !j.contains("candidate")) fail("backlund run needs 'seed' and 'candidate'");
  BacklundRun r;
  r.seed = pair_from_json(j["seed"]);
  r.candidate = pair_from_json(j["candidate"]);
  if (j.contains("alpha")) r.alpha = complex_from_json(j["alpha"]);
  if (j.contains("beta")) r.beta = complex_from_json(j["beta"]);
  if (j.contains("gamma")) r.gamma = as_real(j["gamma"], "gamma");
  if (j.contains("lambda") && !j["lambda"].is_null()) r.lambda = function_from_json(j["lambda"]);
  return r;
}

Json to_json(const BacklundRun& r) {
  return {{"seed", pair_to_json(r.seed)},
          {"candidate", pair_to_json(r.candidate)},
          {"alpha", complex_to_json(r.alpha)},
          {"beta", complex_to_json(r.beta)},
          {"gamma", r.gamma},
          {"lambda", r.lambda ? function_to_json(*r.lambda) : Json(nullptr)}};
}

GeneratorSetPtr backlund_generators(const BacklundRun& r) {
  std::set<std::string> odd;
  for (const PairSpec* p : {&r.seed, &r.candidate})
    for (const ExpSumSpec* s : {&p->tau, &p->mu})
      for (const ExpTerm& e : s->terms)
        if (!e.odd.empty()) odd.insert(e.odd);
  std::vector<std::string> names{"gamma"};
  names.insert(names.end(), odd.begin(), odd.end());
  return GeneratorSet::make(names);
}

BilinearPair build_pair(const PairSpec& p, const GeneratorSetPtr& gens) {
  return {gens, exp_sum_field(p.tau, gens), exp_sum_field(p.mu, gens)};
}

PropositionReport run_backlund(const BacklundRun& r, const std::vector<Point>& pts, double tol) {
  auto gens = backlund_generators(r);
  BacklundParams bp{r.alpha, r.beta, {}};
  if (r.gamma != 0.0) bp.gamma = GrassmannScalar::generator(gens, "gamma", r.gamma);
  SuperfieldFn lambda = r.lambda ? theta_times(gens, *r.lambda) : SuperfieldFn{};
  return check_proposition(build_pair(r.seed, gens), build_pair(r.candidate, gens), bp, lambda, pts, tol);
}

Json proposition_to_json(const PropositionReport& p) {
  return {{"relations",
           {{"x", report_to_json(p.x)},
            {"y", report_to_json(p.y)},
            {"tau", report_to_json(p.tau)},
            {"mu", report_to_json(p.mu)}}},
          {"seed", report_to_json(p.seed)},
          {"candidate", report_to_json(p.candidate)},
          {"p1", report_to_json(p.p1)},
          {"p2", report_to_json(p.p2)},
          {"p1_rewrite", report_to_json(p.p1_rewrite)},
          {"grading_ok", p.grading_ok},
          {"grading_violations", p.grading_violations},
          {"relations_hold", p.relations_hold},
          {"p_identities_hold", p.p_identities_hold},
          {"implication_holds", p.implication_holds()}};
}

}  // namespace blmp
