#pragma once

// JSON descriptors for solution families, Backlund runs and residual reports.
//
// A solution descriptor is {"family": <tag>, "params": {...}}. Parsing fills
// every default, so the canonical form written by to_json parses back to an
// equal descriptor. Complex numbers are a JSON number or [re, im]; named
// functions of y are {"kind": "zero" | "identity" | "poly" | "sin" | "exp",
// "coeffs": [...], "a": number}.
//
//   rational_similarity  n, q, m
//   n_soliton            kappa[], q, m
//   negaton2, positon2, rational_soliton, rational_positon   gamma, q, m
//   complexiton, complexiton_displayed                       eta, q, m
//   traveling_wave       a, alpha, c1, c2, m
//   kink                 a, m
//   constant             value
//   super_soliton        kappa[], rho[], omega[] (empty: -kappa^3), enforce_dispersion
//   superpartner         d1, d2, a, alpha, beta[3], m, zeta

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blmp/backlund.hpp"
#include "blmp/residual.hpp"
#include "blmp/sampling.hpp"
#include "blmp/solutions.hpp"
#include "blmp/susy.hpp"

namespace blmp {

using Json = nlohmann::json;

Complex complex_from_json(const Json& j);
Json complex_to_json(Complex c);

NamedFunction function_from_json(const Json& j);
Json function_to_json(const NamedFunction& f);

struct Descriptor {
  std::string family;
  Json params;  // canonical, every field present

  bool is_super() const { return family == "super_soliton" || family == "superpartner"; }
  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

const std::vector<std::string>& descriptor_families();

/// Throws DescriptorError on an unknown family, unknown key or bad value.
Descriptor parse_descriptor(const Json& j);
Json to_json(const Descriptor& d);

/// One evaluable solution. Classical families fill `field`; super families
/// fill `gens` and `phi` (and `g` for super solitons).
struct BuiltSolution {
  Descriptor descriptor;
  std::optional<SolutionField> field;
  GeneratorSetPtr gens;
  SuperfieldFn phi;
  SuperfieldFn g;
  std::optional<SuperpartnerParams> partner;
};

/// Throws the construction errors of the underlying family.
BuiltSolution build(const Descriptor& d);

struct Check {
  std::string name;  // "blmp", "sbili", "susy_components", "schroedinger"
  ResidualReport report;
  double tolerance = kTolClassical;
  int min_evaluated = kMinEvaluated;

  bool passed() const { return report.passed(tolerance, min_evaluated); }
};

struct VerifyOptions {
  Box box;
  int count = kDefaultSamples;
  std::uint64_t seed = 0;
  std::optional<double> tol;  // overrides the per-check defaults
};

/// The residual checks that apply to the family.
std::vector<Check> verify(const BuiltSolution& s, const VerifyOptions& o = {});

/// The built-in classical suite: every classical family with fixed parameters.
std::vector<Descriptor> classical_suite();

Json report_to_json(const ResidualReport& r, bool with_points = false);
Json check_to_json(const Check& c, const Descriptor& d, bool with_points = false);

// ---------------------------------------------------------------- Backlund

/// constant + sum coeff e^{kappa x + rho y + omega t} (1 + theta odd), with the
/// theta factor present only when `odd` names a generator.
struct ExpTerm {
  Complex coeff = 1.0;
  Complex kappa = 0.0;
  Complex rho = 0.0;
  std::optional<Complex> omega;  // empty: -kappa^3
  std::string odd;
};

struct ExpSumSpec {
  Complex constant = 0.0;
  std::vector<ExpTerm> terms;
};

struct PairSpec {
  ExpSumSpec tau;
  ExpSumSpec mu;
};

struct BacklundRun {
  PairSpec seed;
  PairSpec candidate;
  Complex alpha = 1.0;
  Complex beta = 0.0;
  double gamma = 0.0;  // coefficient of the odd generator "gamma"
  std::optional<NamedFunction> lambda;  // Lambda = theta c(y)
};

BacklundRun parse_backlund(const Json& j);
Json to_json(const BacklundRun& r);

/// "theta", "gamma", then every odd name used by a term, sorted.
GeneratorSetPtr backlund_generators(const BacklundRun& r);
BilinearPair build_pair(const PairSpec& p, const GeneratorSetPtr& gens);

PropositionReport run_backlund(const BacklundRun& r, const std::vector<Point>& pts, double tol = 1e-9);
Json proposition_to_json(const PropositionReport& p);

}  // namespace blmp
