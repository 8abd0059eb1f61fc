#include "blmp/susy.hpp"

#include <algorithm>
#include <cmath>

#include "blmp/errors.hpp"
#include "blmp/expsum.hpp"
#include "blmp/hirota.hpp"

namespace blmp {

namespace {

constexpr double kParamFloor = 1e-12;

bool near_zero(Complex z) { return std::abs(z) <= kParamFloor; }

Jet unit(JetOrder o) { return Jet::constant(1.0, o); }

Mask bit_of(const GeneratorSet& g, const std::string& name) { return Mask{1} << g.index(name); }

}  // namespace

// ---------------------------------------------------------------- super solitons

Complex super_coupling(Complex k1, Complex k2, Complex r1, Complex r2) {
  return (k1 - k2) * (r1 - r2) / ((k1 + k2) * (r1 + r2));
}

SuperSoliton super_soliton(const SuperSolitonParams& in) {
  const std::size_t n = in.kappa.size();
  if (n < 1 || n > 2) throw InvariantViolation("super solitons are available for N = 1 and N = 2");
  if (in.rho.size() != n) throw InvariantViolation("rho must have one entry per soliton");
  if (!in.omega.empty() && in.omega.size() != n) throw InvariantViolation("omega must be empty or one entry per soliton");

  SuperSoliton s;
  s.params = in;
  if (s.params.omega.empty()) {
    for (Complex k : in.kappa) s.params.omega.push_back(-k * k * k);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Complex k = in.kappa[i];
    if (in.enforce_dispersion && std::abs(s.params.omega[i] + k * k * k) > 1e-12 * std::max(1.0, std::abs(k * k * k)))
      throw InvariantViolation("omega_i must equal -kappa_i^3");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("zeta" + std::to_string(i + 1));
  s.gens = GeneratorSet::make(names);

  if (n == 2) {
    const Complex k1 = in.kappa[0], k2 = in.kappa[1], r1 = in.rho[0], r2 = in.rho[1];
    if (near_zero(r1 - r2)) throw InvariantViolation("rho1 = rho2");
    if (near_zero(r1 + r2)) throw InvariantViolation("rho1 + rho2 = 0");
    if (near_zero(k1 + k2)) throw InvariantViolation("kappa1 + kappa2 = 0");
    s.A12 = super_coupling(k1, k2, r1, r2);
    s.alpha12 = (r1 + r2) / (r1 - r2);
    s.alpha21 = (r2 + r1) / (r2 - r1);
  }

  const SuperSolitonParams p = s.params;
  const GeneratorSetPtr gens = s.gens;
  const Complex A12 = s.A12, a12 = s.alpha12, a21 = s.alpha21;

  // e^{-L} g together with L_x, where L is the dominant exponent at the point.
  auto scaled_g = [p, gens, n, A12, a12, a21](const Point& pt, JetOrder o, Complex& Lx) {
    auto c = coordinates(pt, o);
    std::vector<Jet> E;
    std::vector<Complex> kx;
    for (std::size_t i = 0; i < n; ++i) {
      E.push_back(p.kappa[i] * c.x + p.rho[i] * c.y + p.omega[i] * c.t);
      kx.push_back(p.kappa[i]);
    }
    std::vector<Jet> expo{Jet::constant(0.0, o)};
    std::vector<Complex> ex{0.0};
    for (std::size_t i = 0; i < n; ++i) {
      expo.push_back(E[i]);
      ex.push_back(kx[i]);
    }
    if (n == 2) {
      expo.push_back(E[0] + E[1]);
      ex.push_back(kx[0] + kx[1]);
    }
    std::size_t dom = 0;
    for (std::size_t j = 1; j < expo.size(); ++j)
      if (expo[j].value().real() > expo[dom].value().real()) dom = j;
    const Jet L = expo[dom];
    Lx = ex[dom];

    const Mask th = kThetaBit;
    GrassmannJet g(gens, exp(-L));
    for (std::size_t i = 0; i < n; ++i) {
      const Jet e = exp(E[i] - L);
      const Mask z = Mask{1} << (i + 1);
      g.add_term(0, e);
      g.add_term(th | z, e);  // e^{theta zeta_i} = 1 + theta zeta_i
    }
    if (n == 2) {
      const Mask z1 = 2u, z2 = 4u;
      const Jet e = A12 * exp(E[0] + E[1] - L);
      // (1 + 2 zeta1 zeta2 / (rho2 - rho1)) (1 + theta (zeta1 alpha12 + zeta2 alpha21))
      const Complex w = 2.0 / (p.rho[1] - p.rho[0]);
      g.add_term(0, e);
      g.add_term(z1 | z2, w * e);
      g.add_term(th | z1, a12 * e);
      g.add_term(th | z2, a21 * e);
      // zeta1 zeta2 theta zeta_j = 0 for either j
    }
    return Superfield(std::move(g));
  };

  s.g = [scaled_g](const Point& pt, JetOrder o) {
    Complex Lx;
    return scaled_g(pt, o, Lx);
  };
  s.phi = [scaled_g, gens](const Point& pt, JetOrder o) {
    Complex Lx;
    Superfield gh = scaled_g(pt, raised(o, 1), Lx);
    // D_x(-2 log g) = -2 theta L_x - 2 (D_x g^) g^{-1}
    GrassmannJet v = gh.D(Axis::x).value() * inverse(gh.value());
    v *= Complex(-2.0);
    v.add_term(kThetaBit, Jet::constant(-2.0 * Lx, o));
    return Superfield(GrassmannJet(v).transform([o](const Jet& j) { return j.truncated(min(o, j.order())); }));
  };
  return s;
}

DispersionPair dispersion_conditions(Complex kappa, Complex rho, Complex omega, Complex c_prime) {
  // Order-epsilon part of the modified bilinear form for g = 1 + e^{phi},
  // Lambda = theta c(y), at the origin where e^{phi} = 1 + theta zeta.
  auto gens = GeneratorSet::make({"zeta"});
  const JetOrder o{3, 1, 1};
  auto c = coordinates({}, o);
  const Jet e = exp(kappa * c.x + rho * c.y + omega * c.t);
  GrassmannJet ev(gens, e);
  ev.add_term(kThetaBit | 2u, e);
  const Superfield f(ev);
  const Superfield one = Superfield::classical(gens, unit(o));

  auto linear = [&](const HirotaOrder& h) {
    GradedEval r = super_hirota_eval(h, f, one);
    r += super_hirota_eval(h, one, f);
    return r.value;
  };
  auto classical = [&](const HirotaOrder& h) {
    GradedEval r = hirota_eval(h, f, one);
    r += hirota_eval(h, one, f);
    return r.value;
  };
  GrassmannScalar total = linear({0, 0, 1, 0, 1}) + linear({3, 0, 0, 0, 1});
  GrassmannScalar lam(gens);
  lam.add_term(kThetaBit, c_prime);
  total += lam * classical({2, 0, 0}) * Complex(-3.0);

  // Components on zeta and theta; the normalizations recover the monic forms.
  const Complex on_zeta = total.component(2u).value_or(0.0);
  const Complex on_theta = total.component(kThetaBit).value_or(0.0);
  return {on_theta / 2.0, on_zeta / 2.0};
}

ObstructionScan c_prime_obstruction(Complex c_prime, int steps) {
  ObstructionScan best;
  best.min_joint = INFINITY;
  auto grid = [steps](int i) { return -2.0 + 4.0 * i / (steps - 1); };
  for (int i = 0; i < steps; ++i) {
    const double k = grid(i);
    if (std::abs(k) < 0.1) continue;
    for (int j = 0; j < steps; ++j) {
      const double r = grid(j);
      if (std::abs(r) < 0.1) continue;
      std::vector<double> omegas{-k * k * k};
      for (int l = 0; l < steps; ++l) omegas.push_back(4.0 * grid(l));
      for (double w : omegas) {
        DispersionPair q = dispersion_conditions(k, r, w, c_prime);
        const double joint = std::abs(q.q1) + std::abs(q.q2);
        ++best.grid_points;
        if (joint < best.min_joint) {
          best.min_joint = joint;
          best.kappa = k;
          best.rho = r;
          best.omega = w;
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------- superpartners

namespace {

ExpSum ch(double n, const Jet& w) { return exp_cosh(w * (n / 2.0)); }
ExpSum sh(double n, const Jet& w) { return exp_sinh(w * (n / 2.0)); }

void require_nonzero_d(const SuperpartnerParams& p) {
  if (near_zero(p.d1) && near_zero(p.d2)) throw InvalidArgument("(d1, d2) = (0, 0)");
}

}  // namespace

Jet superpartner_k(const SuperpartnerParams& p, const Jet& w) {
  require_nonzero_d(p);
  const Complex d1 = p.d1, d2 = p.d2;
  const Complex s1 = d1 * d1, s2 = d2 * d2;
  const ExpSum den = ch(1, w) * d1 + sh(1, w) * d2;

  ExpSum A = ch(1, w) * (4.0 * d1 * d2 * (11.0 * s1 + s2));
  A += ch(3, w) * (15.0 * d1 * d2 * (s1 - s2));
  A += ch(5, w) * (5.0 * d1 * d2 * (s2 - s1));
  A += sh(1, w) * (4.0 * s2 * (11.0 * s1 + s2));
  A += sh(3, w) * (-5.0 * (s1 - s2) * (4.0 * s1 - s2));
  A += sh(5, w) * (-(s1 - s2) * (4.0 * s1 + s2));

  ExpSum B = ch(1, w) * (4.0 * d1 * (5.0 * s1 - s2) * (s1 + s2));
  B += ch(3, w) * (5.0 * d1 * (s1 - s2) * (5.0 * s1 - 3.0 * s2));
  B += ch(5, w) * (5.0 * d1 * (s1 * s1 - s2 * s2));
  B += sh(1, w) * (4.0 * d2 * (5.0 * s1 - s2) * (s1 + s2));
  B += sh(3, w) * (5.0 * d2 * (s2 * s2 - s1 * s1));
  B += sh(5, w) * (d2 * (s1 - s2) * (9.0 * s1 + s2));

  Jet k = Jet::constant(p.beta3, w.order());
  if (p.beta1 != 0.0) k += p.beta1 * ratio(A, den);
  if (p.beta2 != 0.0) k += p.beta2 * ratio(B, den);
  return k;
}

Jet superpartner_k10(Complex b1, Complex b2, Complex b3, const Jet& w) {
  return b3 - 8.0 * b1 * (4.0 * sinh(w) + sinh(2.0 * w) - 2.0 * tanh(w / 2.0)) + 10.0 * b2 * (4.0 * cosh(w) + cosh(2.0 * w));
}

Jet superpartner_k01(Complex b1, Complex b2, Complex b3, const Jet& w) {
  return b3 + 2.0 * (b1 - b2) * (-4.0 * cosh(w) + cosh(2.0 * w));
}

Jet superpartner_u_profile(const SuperpartnerParams& p, const Jet& w) {
  require_nonzero_d(p);
  const Complex a = p.a, dm = p.d1 - p.d2, dp = p.d1 + p.d2;
  Jet u = Jet::constant(-a * (1.0 + p.alpha), w.order());
  if (dm == 0.0) return u;
  const ExpSum num = ExpSum::plain(Jet::constant(2.0 * a * dm, w.order()));
  const ExpSum den = ExpSum::plain(Jet::constant(dm, w.order())) + ExpSum::exponential(w, dp);
  return u + ratio(num, den);
}

Jet schroedinger_potential(const SuperpartnerParams& p, const Jet& w) {
  require_nonzero_d(p);
  const Complex s = p.d1 * p.d1 - p.d2 * p.d2;
  const Jet base = Jet::constant(4.0, w.order());
  if (s == 0.0) return base;
  const ExpSum den = ch(1, w) * p.d1 + sh(1, w) * p.d2;
  return base - 1.5 * s * ratio(ExpSum::plain(unit(w.order())), den * den);
}

Superpartner superpartner(const SuperpartnerParams& p) {
  return superpartner_with(p, [p](const Jet& w) { return superpartner_k(p, w); });
}

Superpartner superpartner_with(const SuperpartnerParams& p, WaveFn k) {
  require_nonzero_d(p);
  if (near_zero(p.a)) throw InvalidArgument("a = 0");
  Superpartner s;
  s.params = p;
  s.gens = GeneratorSet::make({p.zeta});
  auto wave = [p](const Point& pt, JetOrder o) {
    auto c = coordinates(pt, o);
    return p.a * c.x + p.m(c.y) / p.a - 4.0 * p.a * p.a * p.a * c.t;
  };
  auto u = [p, wave](const Point& pt, JetOrder o) {
    auto c = coordinates(pt, o);
    Jet v = superpartner_u_profile(p, wave(pt, o)) - p.m(c.y);
    if (std::abs(v.value()) > 1e300) throw SingularPoint("superpartner u");
    return v;
  };
  s.u = [u](const Point& pt, JetOrder o) {
    try {
      return u(pt, o);
    } catch (const DivisionNearSingularity& e) {
      throw SingularPoint(e.what());
    }
  };
  const GeneratorSetPtr gens = s.gens;
  const std::string zeta = p.zeta;
  Field uf = s.u;
  s.phi = [gens, zeta, wave, k, uf](const Point& pt, JetOrder o) {
    Jet kv;
    try {
      kv = k(wave(pt, o));
    } catch (const DivisionNearSingularity& e) {
      throw SingularPoint(e.what());
    }
    return Superfield::fermionic(GrassmannJet::generator(gens, zeta, kv), GrassmannJet(gens, uf(pt, o)));
  };
  return s;
}

ResidualReport schroedinger_check(const SuperpartnerParams& p, const std::vector<double>& ws) {
  return schroedinger_check(p, [p](const Jet& w) { return superpartner_k(p, w); }, ws);
}

ResidualReport schroedinger_check(const SuperpartnerParams& p, const WaveFn& k, const std::vector<double>& ws) {
  require_nonzero_d(p);
  std::vector<Point> pts;
  for (double w : ws) pts.push_back({w, 0.0, 0.0});
  return sweep(Equation::schroedinger, pts, [&](const Point& pt, ResidualReport& r) {
    const Jet w = Jet::variable(Axis::x, pt.x, {3, 0, 0});
    const Jet kv = k(w);
    const Complex psi = kv.partial(1, 0, 0), psi_ww = kv.partial(3, 0, 0);
    const Complex V = schroedinger_potential(p, w).value();
    r.add(std::abs(psi_ww - V * psi), std::abs(psi_ww) + std::abs(V * psi));
  });
}

ResidualReport linearization_check(const SuperpartnerParams& p, const WaveFn& k, const std::vector<Point>& pts) {
  Superpartner s = superpartner_with(p, k);
  const Mask z = bit_of(*s.gens, p.zeta);
  const Complex a = p.a;
  return sweep(Equation::linearization, pts, [&](const Point& pt, ResidualReport& r) {
    Superfield phi = s.phi(pt, {3, 1, 1});
    GradedEval e2 = susy_component_equations(phi).e2;
    const Complex lhs = e2.value.component(z).value_or(0.0);

    auto c = coordinates(pt, {1, 1, 1});
    const Complex w0 = (p.a * c.x + p.m(c.y) / p.a - 4.0 * a * a * a * c.t).value();
    const Jet w = Jet::variable(Axis::x, w0, {4, 0, 0});
    const Jet psi = k(w).derivative(Axis::x);
    const Jet Uw = superpartner_u_profile(p, w).derivative(Axis::x);
    const Jet S = psi.derivative(Axis::x).derivative(Axis::x) - (4.0 + 3.0 * Uw / a) * psi;
    const Complex rhs = p.m.derivative(pt.y) * a * a * S.partial(1, 0, 0);

    auto mag = e2.magnitude.find(z);
    r.add(std::abs(lhs - rhs), mag == e2.magnitude.end() ? 0.0 : mag->second);
  });
}

// ---------------------------------------------------------------- SUSY KdV reduction

namespace {

void require_positive_qprime(const NamedFunction& q, const std::vector<Point>& pts) {
  for (const Point& p : pts) {
    const Complex d = q.derivative(p.y);
    if (!(d.real() > 0.0) || std::abs(d.imag()) > 1e-14) throw NegativeQPrime("q'(y) <= 0 at y = " + std::to_string(p.y));
  }
}

}  // namespace

ResidualReport susy_kdv_reduction_check(const SusyKdvPair& f, const NamedFunction& q, const std::vector<Point>& pts) {
  require_positive_qprime(q, pts);
  return sweep(Equation::susy_kdv_reduction, pts, [&](const Point& pt, ResidualReport& r) {
    const JetOrder o{5, 0, 2};
    const Jet z = Jet::variable(Axis::x, pt.x + q(pt.y), o);
    const Jet t = Jet::variable(Axis::t, pt.t, o);
    GrassmannJet v = f.v(z, t), chi = f.chi(z, t);
    auto V = [&](int i, int k) { return partial(v, i, 0, k); };
    auto X = [&](int i, int k) { return partial(chi, i, 0, k); };

    GradedEval e11 = as_graded(V(1, 1));
    e11 += as_graded(V(4, 0));
    accumulate_product(e11, V(1, 0), V(2, 0), -6.0);
    accumulate_product(e11, X(1, 0), X(3, 0), 3.0);

    GradedEval e22 = as_graded(X(0, 1));
    e22 += as_graded(X(3, 0));
    accumulate_product(e22, X(1, 0), V(1, 0), -3.0);

    r.add("E11:", e11, *f.gens);
    r.add("E22:", e22, *f.gens);
  });
}

SuperfieldFn lift_reduction(const SusyKdvPair& f, const NamedFunction& q) {
  return [f, q](const Point& pt, JetOrder o) {
    const JetOrder hi = raised(o, 1, 1);
    auto c = coordinates(pt, hi);
    const Jet qy = q(c.y);
    const Jet qp = qy.derivative(Axis::y);
    if (!(qp.value().real() > 0.0)) throw NegativeQPrime("q'(y) <= 0 at y = " + std::to_string(pt.y));
    const Jet s = sqrt(qp);
    const Jet z = c.x + qy;
    GrassmannJet xi = f.chi(z, c.t) * s;
    GrassmannJet u = f.v(z, c.t);
    auto cut = [o](const Jet& j) { return j.truncated(min(o, j.order())); };
    return Superfield::fermionic(xi.transform(cut), u.transform(cut));
  };
}

SusyKdvPair super_soliton_reduction(Complex kappa) {
  if (near_zero(kappa)) throw InvalidKappa("kappa = 0");
  SusyKdvPair pr;
  pr.gens = GeneratorSet::make({"zeta"});
  const GeneratorSetPtr gens = pr.gens;
  // kappa E / (1 + E) with E = e^{kappa z - kappa^3 t}
  auto h = [kappa](const Jet& z, const Jet& t) {
    const Jet E = kappa * z - kappa * kappa * kappa * t;
    return log_derivative(ExpSum::plain(unit(z.order())) + ExpSum::exponential(E), Axis::x);
  };
  pr.v = [gens, h](const Jet& z, const Jet& t) { return GrassmannJet(gens, -2.0 * h(z, t)); };
  pr.chi = [gens, h, kappa](const Jet& z, const Jet& t) {
    return GrassmannJet::generator(gens, "zeta", (-2.0 / kappa) * h(z, t));
  };
  return pr;
}

}  // namespace blmp
