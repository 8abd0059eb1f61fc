#include "blmp/backlund.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "blmp/errors.hpp"
#include "blmp/hirota.hpp"

namespace blmp {

namespace {

constexpr JetOrder kOrder{3, 1, 1};

GrassmannScalar lambda_term(const SuperfieldFn& lambda, const GeneratorSetPtr& gens, const Point& p) {
  if (!lambda) return GrassmannScalar(gens);
  return lambda(p, {1, 1, 0}).D(Axis::x).D(Axis::y).at(0, 0, 0);
}

GrassmannScalar product_at(const Superfield& a, const Superfield& b) { return (a * b).at(0, 0, 0); }

// (S_y D_x - D_y D_x Lambda)(f.g)
GradedEval b1(const Superfield& f, const Superfield& g, const GrassmannScalar& dl) {
  GradedEval e = super_hirota_eval({1, 0, 0, 0, 1}, f, g);
  accumulate_product(e, dl, product_at(f, g), -1.0);
  return e;
}

GradedEval b2(const Superfield& f, const Superfield& g) {
  GradedEval e = hirota_eval({0, 0, 1}, f, g);
  e += hirota_eval({3, 0, 0}, f, g);
  return e;
}

// (D_t + D_x^3 - 3 beta D_x^2 + 3 beta^2 D_x)(f.g)
GradedEval shifted_kdv(const Superfield& f, const Superfield& g, Complex beta) {
  GradedEval e = b2(f, g);
  e += hirota_eval({2, 0, 0}, f, g).scaled(-3.0 * beta);
  e += hirota_eval({1, 0, 0}, f, g).scaled(3.0 * beta * beta);
  return e;
}

struct Relations {
  GradedEval x, y, tau, mu;
};

Relations relations_at(const Superfield& t, const Superfield& m, const Superfield& tp, const Superfield& mp,
                       const BacklundParams& bp) {
  const Complex a = bp.alpha, b = bp.beta;
  Relations r;
  r.x = hirota_eval({1, 0, 0}, t, mp);
  r.x += hirota_eval({1, 0, 0}, m, tp).scaled(-a);
  accumulate_product(r.x, t.at(0, 0, 0), mp.at(0, 0, 0), -b);
  accumulate_product(r.x, tp.at(0, 0, 0), m.at(0, 0, 0), a * b);

  r.y = super_hirota_eval({0, 0, 0, 0, 1}, t, mp);
  r.y += super_hirota_eval({0, 0, 0, 0, 1}, m, tp).scaled(a);
  if (!bp.gamma.empty()) {
    accumulate_product(r.y, bp.gamma, product_at(t, mp), -1.0);
    accumulate_product(r.y, bp.gamma, product_at(tp, m), -a);
  }

  r.tau = shifted_kdv(t, tp, b);
  r.mu = shifted_kdv(m, mp, b);
  return r;
}

void validate(const BacklundParams& p) {
  if (p.gamma.empty()) return;
  if (p.gamma.require_parity("gamma") != 1) throw InvariantViolation("gamma must be odd");
  if (max_abs(p.gamma * p.gamma) != 0.0) throw InvariantViolation("gamma * gamma != 0");
}

Field constant_field(Complex c) {
  return [c](const Point&, JetOrder o) { return Jet::constant(c, o); };
}

}  // namespace

BilinearPair classical_pair(const GeneratorSetPtr& gens, const Field& f, const Field& g) {
  return {gens, [gens, f](const Point& p, JetOrder o) { return Superfield::classical(gens, f(p, o)); },
          [gens, g](const Point& p, JetOrder o) { return Superfield::classical(gens, g(p, o)); }};
}

BilinearPair vacuum_pair(const GeneratorSetPtr& gens) {
  return classical_pair(gens, constant_field(1.0), constant_field(1.0));
}

SuperfieldFn theta_times(const GeneratorSetPtr& gens, const NamedFunction& c) {
  return [gens, c](const Point& p, JetOrder o) {
    auto y = coordinates(p, o).y;
    return Superfield::fermionic(GrassmannJet(gens), GrassmannJet(gens, c(y)));
  };
}

ResidualReport check_bilinear_system(const BilinearPair& p, const SuperfieldFn& lambda, const std::vector<Point>& pts) {
  return sweep(Equation::backlund_bilinear, pts, [&](const Point& pt, ResidualReport& r) {
    Superfield t = p.tau(pt, kOrder), m = p.mu(pt, kOrder);
    r.add("B1:", b1(t, m, lambda_term(lambda, p.gens, pt)), *p.gens);
    r.add("B2:", b2(t, m), *p.gens);
  });
}

ResidualReport check_bilinear_system_classical(const Field& f, const Field& g, const NamedFunction& c,
                                               const std::vector<Point>& pts) {
  auto gens = GeneratorSet::make({});
  return check_bilinear_system(classical_pair(gens, f, g), theta_times(gens, c), pts);
}

PropositionReport check_proposition(const BilinearPair& seed, const BilinearPair& cand, const BacklundParams& params,
                                    const SuperfieldFn& lambda, const std::vector<Point>& pts, double tol) {
  validate(params);
  detail::check_same(seed.gens, cand.gens);
  const GeneratorSetPtr gens = seed.gens;
  PropositionReport rep;
  auto with_eq = [&pts](Equation e) {
    ResidualReport r;
    r.equation = e;
    r.points = pts;
    return r;
  };
  rep.x = rep.y = rep.tau = rep.mu = with_eq(Equation::backlund_relations);
  rep.p1 = rep.p2 = rep.p1_rewrite = with_eq(Equation::backlund_relations);

  ScopedDivisionFloor guard(kSingularFloor);
  for (const Point& pt : pts) {
    Superfield t = seed.tau(pt, kOrder), m = seed.mu(pt, kOrder);
    Superfield tp = cand.tau(pt, kOrder), mp = cand.mu(pt, kOrder);
    Relations r = relations_at(t, m, tp, mp, params);

    for (const auto& [mask, c] : r.y.value.terms()) {
      if (grade(mask) % 2 == 0 && c != 0.0) {
        rep.grading_ok = false;
        ++rep.grading_violations;
      }
    }
    rep.x.add("", r.x, *gens);
    rep.y.add("", r.y, *gens);
    rep.tau.add("", r.tau, *gens);
    rep.mu.add("", r.mu, *gens);

    const GrassmannScalar dl = lambda_term(lambda, gens, pt);
    const GrassmannScalar pm = product_at(t, m), ppm = product_at(tp, mp);
    GradedEval p1 = b1(t, m, dl).left_multiplied(ppm).scaled(2.0);
    p1 += b1(tp, mp, dl).left_multiplied(pm).scaled(-2.0);
    GradedEval p2 = b2(t, m).left_multiplied(ppm);
    p2 += b2(tp, mp).left_multiplied(pm);
    rep.p1.add("", p1, *gens);
    rep.p2.add("", p2, *gens);

    const GrassmannScalar none(gens);
    GradedEval rw = b1(t, m, none).left_multiplied(ppm).scaled(2.0);
    rw += b1(tp, mp, none).left_multiplied(pm).scaled(-2.0);
    const GrassmannScalar gap = p1.value - rw.value;
    for (const auto& [mask, mag] : p1.magnitude) {
      const Complex d = gap.component(mask).value_or(0.0);
      rep.p1_rewrite.add(gens->label(mask), std::abs(d), mag);
    }
    for (auto* rr : {&rep.x, &rep.y, &rep.tau, &rep.mu, &rep.p1, &rep.p2, &rep.p1_rewrite}) ++rr->evaluated;
  }
  rep.seed = check_bilinear_system(seed, lambda, pts);
  rep.candidate = check_bilinear_system(cand, lambda, pts);
  auto ok = [&](const ResidualReport& r) { return r.max_rel <= tol; };
  rep.relations_hold = rep.grading_ok && ok(rep.x) && ok(rep.y) && ok(rep.tau) && ok(rep.mu) && ok(rep.seed);
  rep.p_identities_hold = ok(rep.p1) && ok(rep.p2);
  return rep;
}

// ---------------------------------------------------------------- search

namespace {

Jet linear_exponent(const Coordinates& c, double k, double r, double w) { return k * c.x + r * c.y + w * c.t; }

GrassmannScalar gamma_of(const GeneratorSetPtr& gens, double g) {
  if (g == 0.0) return GrassmannScalar(gens);
  return GrassmannScalar::generator(gens, "gamma", g);
}

void require_gamma(const GeneratorSetPtr& gens) {
  if (!gens->contains("gamma")) throw InvalidArgument("ansatz generator set needs an odd constant named gamma");
}

}  // namespace

Ansatz one_exponential_ansatz(const GeneratorSetPtr& gens, double kappa, double rho0, Complex alpha) {
  require_gamma(gens);
  Ansatz a;
  a.names = {"kappa", "rho", "omega", "beta", "g"};
  a.initial = {kappa, rho0, 0.0, 0.0, 0.0};
  a.free = {false, true, true, true, true};
  a.build = [gens, alpha](const std::vector<double>& v) {
    const double k = v[0], r = v[1], w = v[2];
    auto e = [k, r, w](const Point& p, JetOrder o) { return exp(linear_exponent(coordinates(p, o), k, r, w)); };
    Field tp = [e](const Point& p, JetOrder o) { return 1.0 + e(p, o); };
    Field mp = [e](const Point& p, JetOrder o) { return 1.0 - e(p, o); };
    return std::pair{classical_pair(gens, tp, mp), BacklundParams{alpha, v[3], gamma_of(gens, v[4])}};
  };
  return a;
}

Ansatz two_exponential_ansatz(const GeneratorSetPtr& gens, double kappa1, double rho1, double kappa2, double rho2_0,
                              Complex alpha) {
  require_gamma(gens);
  Ansatz a;
  a.names = {"kappa2", "rho2", "omega2", "beta", "g", "s1", "s2", "t1", "t2", "A", "B"};
  a.initial = {kappa2, rho2_0, 0.0, 0.0, 0.0, 1.0, 1.0, -1.0, -1.0, 0.0, 0.0};
  a.free = {false, true, true, true, true, true, true, true, true, true, true};
  const double w1 = -kappa1 * kappa1 * kappa1;
  a.build = [gens, alpha, kappa1, rho1, w1](const std::vector<double>& v) {
    const double k = v[0], r = v[1], w = v[2];
    auto field = [=](double c1, double c2, double c12) {
      return [=](const Point& p, JetOrder o) {
        auto c = coordinates(p, o);
        Jet e1 = exp(linear_exponent(c, kappa1, rho1, w1)), e2 = exp(linear_exponent(c, k, r, w));
        return 1.0 + c1 * e1 + c2 * e2 + c12 * e1 * e2;
      };
    };
    return std::pair{classical_pair(gens, field(v[5], v[6], v[9]), field(v[7], v[8], v[10])),
                     BacklundParams{alpha, v[3], gamma_of(gens, v[4])}};
  };
  return a;
}

namespace {

struct RelationFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const BilinearPair* seed;
  const Ansatz* ansatz;
  std::vector<int> free_index;
  std::vector<Point> pts;
  int masks;

  int inputs() const { return static_cast<int>(free_index.size()); }
  int values() const { return static_cast<int>(pts.size()) * 4 * masks * 2; }

  std::vector<double> full(const Eigen::VectorXd& x) const {
    std::vector<double> v = ansatz->initial;
    for (std::size_t i = 0; i < free_index.size(); ++i) v[free_index[i]] = x[static_cast<Eigen::Index>(i)];
    return v;
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    auto [cand, bp] = ansatz->build(full(x));
    f.setZero(values());
    Eigen::Index k = 0;
    for (const Point& pt : pts) {
      Superfield t = seed->tau(pt, kOrder), m = seed->mu(pt, kOrder);
      Relations r = relations_at(t, m, cand.tau(pt, kOrder), cand.mu(pt, kOrder), bp);
      for (const GradedEval* e : {&r.x, &r.y, &r.tau, &r.mu}) {
        for (int mask = 0; mask < masks; ++mask) {
          const Complex c = e->value.component(static_cast<Mask>(mask)).value_or(0.0);
          f[k++] = c.real();
          f[k++] = c.imag();
        }
      }
    }
    return 0;
  }
};

}  // namespace

SearchResult backlund_search(const BilinearPair& seed, const Ansatz& ansatz, const std::vector<Point>& pts,
                             double plateau) {
  RelationFunctor fn{&seed, &ansatz, {}, pts, 1 << seed.gens->size()};
  for (std::size_t i = 0; i < ansatz.free.size(); ++i)
    if (ansatz.free[i]) fn.free_index.push_back(static_cast<int>(i));

  SearchResult res;
  Eigen::VectorXd x(fn.inputs());
  for (int i = 0; i < fn.inputs(); ++i) x[i] = ansatz.initial[static_cast<std::size_t>(fn.free_index[static_cast<std::size_t>(i)])];
  if (fn.inputs() > 0) {
    Eigen::NumericalDiff<RelationFunctor> nd(fn);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<RelationFunctor>> lm(nd);
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    lm.parameters.maxfev = 4000;
    lm.minimize(x);
    res.iterations = static_cast<int>(lm.iter);
    res.residual_norm = lm.fvec.norm();
  }
  res.values = fn.full(x);
  auto [cand, bp] = ansatz.build(res.values);
  res.candidate = cand;
  res.params = bp;
  res.report = check_proposition(seed, cand, bp, nullptr, pts, plateau);

  double worst = 0.0;
  for (const auto* r : {&res.report.x, &res.report.y, &res.report.tau, &res.report.mu})
    worst = std::max(worst, r->max_rel);
  if (worst > plateau)
    throw NoConvergence("relation residual plateau " + std::to_string(worst) + " above " + std::to_string(plateau));
  return res;
}

}  // namespace blmp
