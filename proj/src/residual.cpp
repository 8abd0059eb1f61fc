#include "blmp/residual.hpp"

#include <algorithm>
#include <cmath>

#include "blmp/errors.hpp"

namespace blmp {

const char* equation_name(Equation e) {
  switch (e) {
    case Equation::blmp: return "blmp";
    case Equation::kdv_reduction: return "kdv_reduction";
    case Equation::kdv_corollary: return "kdv_corollary";
    case Equation::kdv_eq4: return "kdv_eq4";
    case Equation::general_eq6: return "general_eq6";
    case Equation::susy_sbili: return "susy_sbili";
    case Equation::susy_sbilimod: return "susy_sbilimod";
    case Equation::susy_components: return "susy_components";
    case Equation::schroedinger: return "schroedinger";
    case Equation::susy_kdv_reduction: return "susy_kdv_reduction";
    case Equation::linearization: return "linearization";
    case Equation::backlund_bilinear: return "backlund_bilinear";
    case Equation::backlund_relations: return "backlund_relations";
  }
  return "?";
}

void ResidualReport::add(double abs_value, double magnitude) {
  max_abs = std::max(max_abs, abs_value);
  if (magnitude > kTermFloor) max_rel = std::max(max_rel, abs_value / magnitude);
}

void ResidualReport::add(const std::string& component, double abs_value, double magnitude) {
  add(abs_value, magnitude);
  ComponentStats& c = components[component];
  c.max_abs = std::max(c.max_abs, abs_value);
  if (magnitude > kTermFloor) c.max_rel = std::max(c.max_rel, abs_value / magnitude);
}

void ResidualReport::add(const std::string& prefix, const GradedEval& e, const GeneratorSet& gens) {
  for (const auto& [m, mag] : e.magnitude) {
    auto c = e.value.component(m);
    add(prefix + gens.label(m), c ? std::abs(*c) : 0.0, mag);
  }
}

namespace {

template <class... T>
void add_terms(ResidualReport& r, T... terms) {
  Complex v = (... + terms);
  double mag = (std::abs(terms) + ...);
  r.add(std::abs(v), mag);
}

Jet profile_at(const Profile& p, const Point& pt, JetOrder order) {
  JetOrder o = raised(order, p.headroom);
  Jet z = Jet::variable(Axis::x, pt.x, o);
  Jet t = Jet::variable(Axis::t, pt.t, o);
  Jet v = p(z, t);
  return v.truncated(min(order, v.order()));
}

}  // namespace

ResidualReport residual_blmp(const Field& u, const std::vector<Point>& pts) {
  return sweep(Equation::blmp, pts, [&](const Point& p, ResidualReport& r) {
    Jet j = u(p, {3, 1, 1});
    Complex ux = j.partial(1, 0, 0), uy = j.partial(0, 1, 0), uxx = j.partial(2, 0, 0);
    Complex uxy = j.partial(1, 1, 0);
    add_terms(r, j.partial(0, 1, 1), j.partial(3, 1, 0), -3.0 * uxx * uy, -3.0 * ux * uxy);
  });
}

ResidualReport residual_kdv_reduction(const Profile& prof, const std::vector<Point>& pts) {
  return sweep(Equation::kdv_reduction, pts, [&](const Point& p, ResidualReport& r) {
    Jet j = profile_at(prof, p, {4, 0, 1});
    add_terms(r, j.partial(1, 0, 1), j.partial(4, 0, 0), -6.0 * j.partial(1, 0, 0) * j.partial(2, 0, 0));
  });
}

ResidualReport residual_kdv_corollary(const Profile& prof, const std::vector<Point>& pts) {
  return sweep(Equation::kdv_corollary, pts, [&](const Point& p, ResidualReport& r) {
    Jet h = profile_at(prof, p, {4, 0, 1}).derivative(Axis::x);
    add_terms(r, h.partial(0, 0, 1), h.partial(3, 0, 0), -6.0 * h.value() * h.partial(1, 0, 0));
  });
}

ResidualReport residual_bilinear_kdv(const Profile& f, const std::vector<Point>& pts) {
  return sweep(Equation::kdv_eq4, pts, [&](const Point& p, ResidualReport& r) {
    Jet j = profile_at(f, p, {4, 0, 1});
    ScalarEval e = hirota_eval({1, 0, 1}, j, j);
    e += hirota_eval({4, 0, 0}, j, j);
    r.add(std::abs(e.value), e.magnitude);
  });
}

ResidualReport residual_bilinear_general(const Field& tau, const NamedFunction& m, const std::vector<Point>& pts) {
  return sweep(Equation::general_eq6, pts, [&](const Point& p, ResidualReport& r) {
    Jet j = tau(p, {3, 1, 1});
    ScalarEval e = hirota_eval({0, 1, 1}, j, j);
    e += hirota_eval({3, 1, 0}, j, j);
    e += hirota_eval({2, 0, 0}, j, j).scaled(3.0 * m.derivative(p.y));
    r.add(std::abs(e.value), e.magnitude);
  });
}

ResidualReport residual_bilinear_sbili(const SuperfieldFn& g, const std::vector<Point>& pts) {
  return sweep(Equation::susy_sbili, pts, [&](const Point& p, ResidualReport& r) {
    Superfield s = g(p, {3, 1, 1});
    GradedEval e = super_hirota_eval({0, 0, 1, 0, 1}, s, s);
    e += super_hirota_eval({3, 0, 0, 0, 1}, s, s);
    r.add("", e, *s.generators());
  });
}

ResidualReport residual_bilinear_sbilimod(const SuperfieldFn& g, const SuperfieldFn& lambda,
                                          const std::vector<Point>& pts) {
  return sweep(Equation::susy_sbilimod, pts, [&](const Point& p, ResidualReport& r) {
    Superfield s = g(p, {3, 1, 1});
    GrassmannScalar dl = lambda(p, {1, 1, 0}).D(Axis::x).D(Axis::y).at(0, 0, 0);
    GradedEval e = super_hirota_eval({0, 0, 1, 0, 1}, s, s);
    e += super_hirota_eval({3, 0, 0, 0, 1}, s, s);
    e += hirota_eval({2, 0, 0}, s, s).left_multiplied(dl).scaled(-3.0);
    r.add("", e, *s.generators());
  });
}

SusyComponentEvals susy_component_equations(const Superfield& s) {
  GrassmannJet xi = s.lower(), u = s.upper();
  auto U = [&](int i, int j, int k) { return partial(u, i, j, k); };
  auto X = [&](int i, int j, int k) { return partial(xi, i, j, k); };

  GradedEval e1 = as_graded(U(0, 1, 1));
  e1 += as_graded(U(3, 1, 0));
  accumulate_product(e1, U(2, 0, 0), U(0, 1, 0), -3.0);
  accumulate_product(e1, U(1, 0, 0), U(1, 1, 0), -3.0);
  accumulate_product(e1, X(1, 0, 0), X(3, 0, 0), 3.0);

  GradedEval e2 = as_graded(X(0, 1, 1));
  e2 += as_graded(X(3, 1, 0));
  accumulate_product(e2, U(1, 1, 0), X(1, 0, 0), -3.0);
  accumulate_product(e2, U(1, 0, 0), X(1, 1, 0), -3.0);
  return {e1, e2};
}

ResidualReport residual_susy_components(const SuperfieldFn& phi, const std::vector<Point>& pts) {
  return sweep(Equation::susy_components, pts, [&](const Point& p, ResidualReport& r) {
    Superfield s = phi(p, {3, 1, 1});
    SusyComponentEvals e = susy_component_equations(s);
    r.add("E1:", e.e1, *s.generators());
    r.add("E2:", e.e2, *s.generators());
  });
}

}  // namespace blmp
