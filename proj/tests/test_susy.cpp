#include <catch_amalgamated.hpp>

#include <cmath>

#include "blmp/residual.hpp"
#include "blmp/sampling.hpp"
#include "blmp/susy.hpp"

using namespace blmp;

namespace {

std::vector<double> w_grid(int n = 100) {
  std::vector<double> ws;
  for (int i = 0; i < n; ++i) ws.push_back(-2.0 + 4.0 * i / (n - 1));
  return ws;
}

SuperpartnerParams partner(double d1, double d2, double b1, double b2, double b3) {
  SuperpartnerParams p;
  p.d1 = d1;
  p.d2 = d2;
  p.a = 0.8;
  p.alpha = 0.3;
  p.beta1 = b1;
  p.beta2 = b2;
  p.beta3 = b3;
  p.m = NamedFunction::poly({0.2, 0.5, -0.3});
  return p;
}

}  // namespace

TEST_CASE("super soliton parameters") {
  CHECK(super_coupling(1.0, 2.0, 1.0, 3.0).real() == Catch::Approx(1.0 / 6.0).epsilon(1e-15));
  auto s = super_soliton({{1.0, 2.0}, {1.0, 3.0}, {}});
  CHECK(std::abs(s.A12 - 1.0 / 6.0) <= 1e-15);
  CHECK(std::abs(s.alpha12 - (-2.0)) <= 1e-15);
  CHECK(std::abs(s.alpha21 - 2.0) <= 1e-15);
  CHECK(std::abs(s.params.omega[1] + 8.0) <= 1e-15);
  CHECK(s.gens->names() == std::vector<std::string>{"theta", "zeta1", "zeta2"});

  CHECK_THROWS_AS(super_soliton({{1.0, 2.0}, {1.0, 1.0}, {}}), InvariantViolation);
  CHECK_THROWS_AS(super_soliton({{1.0, 2.0}, {1.0, -1.0}, {}}), InvariantViolation);
  CHECK_THROWS_AS(super_soliton({{1.0, -1.0}, {1.0, 2.0}, {}}), InvariantViolation);
  CHECK_THROWS_AS(super_soliton({{1.0}, {1.0}, {0.5}}), InvariantViolation);
  CHECK_THROWS_AS(super_soliton({{}, {}, {}}), InvariantViolation);
  CHECK_NOTHROW(super_soliton({{1.0}, {1.0}, {0.5}, false}));
}

TEST_CASE("super solitons solve the super bilinear form") {
  auto pts = sample_points({}, 100);
  auto one = super_soliton({{0.7}, {0.9}, {}});
  auto r1 = residual_bilinear_sbili(one.g, pts);
  CHECK(r1.evaluated == 100);
  CHECK(r1.max_rel <= 1e-10);

  auto two = super_soliton({{0.7, 1.3}, {0.9, -0.4}, {}});
  auto r2 = residual_bilinear_sbili(two.g, pts);
  CHECK(r2.evaluated == 100);
  CHECK(r2.max_rel <= 1e-9);
  // zeta1, zeta2 stay free: each odd component is present and vanishes on its own.
  for (const char* c : {"zeta1", "zeta2", "theta", "theta zeta1 zeta2"}) {
    REQUIRE(r2.components.count(c) == 1);
    CHECK(r2.components.at(c).max_rel <= 1e-9);
  }

  CHECK(residual_susy_components(one.phi, pts).max_rel <= 1e-9);
  CHECK(residual_susy_components(two.phi, pts).max_rel <= 1e-9);
}

TEST_CASE("dispersion relation is necessary") {
  auto pts = sample_points({}, 100);
  SuperSolitonParams p{{0.7}, {0.9}, {-0.343 + 0.1}, false};
  CHECK(residual_bilinear_sbili(super_soliton(p).g, pts).max_rel > 1e-3);
  SuperSolitonParams q{{0.7, 1.3}, {0.9, -0.4}, {-0.343 + 0.1, -2.197}, false};
  CHECK(residual_bilinear_sbili(super_soliton(q).g, pts).max_rel > 1e-3);
}

TEST_CASE("odd-free two super soliton is a classical two soliton") {
  auto s = super_soliton({{0.7, 1.3}, {0.9, -0.4}, {}});
  for (const Point& pt : sample_points({}, 20, 4)) {
    // g is stored as e^{-L} g with L linear, so compare second log-derivatives.
    Jet body = *s.g(pt, {3, 1, 1}).value().component(0);
    auto c = coordinates(pt, {3, 1, 1});
    Jet e1 = exp(0.7 * c.x + 0.9 * c.y - 0.343 * c.t);
    Jet e2 = exp(1.3 * c.x - 0.4 * c.y - 2.197 * c.t);
    Jet tau = 1.0 + e1 + e2 + s.A12 * e1 * e2;
    Jet a = log_derivative(body, Axis::x), b = log_derivative(tau, Axis::x);
    for (auto [i, j, k] : {std::tuple{1, 0, 0}, {2, 0, 0}, {1, 1, 0}, {1, 0, 1}})
      CHECK(std::abs(a.partial(i, j, k) - b.partial(i, j, k)) <= 1e-12 * std::max(1.0, std::abs(b.partial(i, j, k))));
  }
}

TEST_CASE("c' obstruction of the modified bilinear form") {
  // Closed forms from expanding the bilinear operator on e^{phi}.1 by hand.
  for (auto [k, r, w, c] : {std::tuple{1.3, 0.7, 0.5, 0.0}, {-0.6, 1.9, -2.0, 1.0}, {0.4, -1.1, 0.3, 2.5}}) {
    DispersionPair q = dispersion_conditions(k, r, w, c);
    CHECK(std::abs(q.q1 - (r * (w + k * k * k) - 3.0 * c * k * k)) <= 1e-12);
    CHECK(std::abs(q.q2 - (w + k * k * k)) <= 1e-12);
  }
  auto none = c_prime_obstruction(1.0, 21);
  CHECK(none.grid_points > 0);
  CHECK(none.min_joint > 1e-2);
  auto flat = c_prime_obstruction(0.0, 21);
  CHECK(flat.min_joint <= 1e-12);
}

TEST_CASE("superpartner closed forms") {
  const double b1 = 0.7, b2 = -0.3, b3 = 0.2;
  for (double w0 : {-1.7, -0.2, 0.4, 2.3}) {
    Jet w = Jet::variable(Axis::x, w0, {3, 0, 0});
    Jet g10 = superpartner_k(partner(1, 0, b1, b2, b3), w), s10 = superpartner_k10(b1, b2, b3, w);
    Jet g01 = superpartner_k(partner(0, 1, b1, b2, b3), w), s01 = superpartner_k01(b1, b2, b3, w);
    for (int i = 0; i <= 3; ++i) {
      CHECK(std::abs(g10.partial(i, 0, 0) - s10.partial(i, 0, 0)) <= 1e-11 * std::max(1.0, std::abs(s10.partial(i, 0, 0))));
      CHECK(std::abs(g01.partial(i, 0, 0) - s01.partial(i, 0, 0)) <= 1e-11 * std::max(1.0, std::abs(s01.partial(i, 0, 0))));
    }
    auto p10 = partner(1, 0, 0, 0, 0), p01 = partner(0, 1, 0, 0, 0);
    const double a = 0.8, al = 0.3;
    CHECK(std::abs(superpartner_u_profile(p10, w).value() - (-a * std::tanh(w0 / 2) - a * al)) <= 1e-14);
    CHECK(std::abs(superpartner_u_profile(p01, w).value() - (-a / std::tanh(w0 / 2) - a * al)) <= 1e-13);
    CHECK(std::abs(schroedinger_potential(p10, w).value() - (4.0 - 1.5 / std::pow(std::cosh(w0 / 2), 2))) <= 1e-14);
    CHECK(schroedinger_potential(partner(1, 1, 0, 0, 0), w).value() == Complex(4.0));
  }
  CHECK_THROWS_AS(superpartner(partner(0, 0, 1, 0, 0)), InvalidArgument);
}

TEST_CASE("superpartners solve the Schroedinger problem and the SUSY BLMP equation") {
  auto pts = sample_points({}, 100);
  auto rng = std::vector<std::array<double, 3>>{{0.7, -0.3, 0.2}, {0.4, 1.1, -0.6}, {-0.5, 0.25, 0.9}};
  std::vector<std::pair<double, double>> ds{{1, 0}, {0, 1}, {2, 1}};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto p = partner(ds[i].first, ds[i].second, rng[i][0], rng[i][1], rng[i][2]);
    CHECK(schroedinger_check(p, w_grid()).passed(1e-8, 100));
    CHECK(residual_susy_components(superpartner(p).phi, pts).passed(1e-8));
  }
  auto trivial = partner(2, 1, 0, 0, 1);
  CHECK(schroedinger_check(trivial, w_grid()).max_abs == 0.0);
}

TEST_CASE("second component equation linearizes to the Schroedinger problem") {
  auto pts = sample_points({}, 100, 2);
  auto p = partner(2, 1, 0.4, 1.1, -0.6);
  WaveFn good = [p](const Jet& w) { return superpartner_k(p, w); };
  WaveFn bad = [p](const Jet& w) { return superpartner_k(p, w) + 5.0 * sinh(2.0 * w); };
  CHECK(linearization_check(p, good, pts).passed(1e-9));
  // Agreement holds off-shell too, where both sides are non-zero.
  CHECK(linearization_check(p, bad, pts).passed(1e-9));
  CHECK(residual_susy_components(superpartner_with(p, bad).phi, pts).max_rel > 1e-3);
  CHECK(schroedinger_check(p, bad, w_grid()).max_rel > 1e-3);
}

TEST_CASE("SUSY KdV reduction") {
  auto pts = sample_points({}, 100);
  auto pair = super_soliton_reduction(1.2);
  auto q = NamedFunction::exponential(0.3);
  CHECK(susy_kdv_reduction_check(pair, q, pts).passed(1e-9));
  CHECK(residual_susy_components(lift_reduction(pair, q), pts).passed(1e-9));
  CHECK_THROWS_AS(susy_kdv_reduction_check(pair, NamedFunction::poly({0.0, 0.5, 0.1}), pts), NegativeQPrime);

  // chi = 0 with v from a KdV tau: the odd equation vanishes identically.
  SusyKdvPair bos{pair.gens, [g = pair.gens](const Jet&, const Jet&) { return GrassmannJet(g); }, pair.v};
  auto r = susy_kdv_reduction_check(bos, NamedFunction::identity(), pts);
  CHECK(r.passed(1e-9));
  for (const auto& [name, c] : r.components)
    if (name.rfind("E22:", 0) == 0) CHECK(c.max_abs == 0.0);

  // q = y with rho = kappa: the lift is the one super soliton itself.
  auto lifted = lift_reduction(pair, NamedFunction::identity());
  auto direct = super_soliton({{1.2}, {1.2}, {}}).phi;
  for (const Point& pt : sample_points({}, 10, 6)) {
    // Both use one odd constant after theta, so monomials line up.
    GrassmannScalar a = lifted(pt, {2, 1, 1}).at(1, 1, 0), b = direct(pt, {2, 1, 1}).at(1, 1, 0);
    for (Mask m : {Mask{1}, Mask{2}, Mask{0}, Mask{3}}) {
      Complex va = a.component(m).value_or(0.0), vb = b.component(m).value_or(0.0);
      CHECK(std::abs(va - vb) <= 1e-12 * std::max(1.0, std::abs(vb)));
    }
  }
}
