#include "blmp/expsum.hpp"

#include <cmath>
#include <limits>

#include "blmp/errors.hpp"

namespace blmp {

void ExpSum::push(Jet pre, Jet expo) {
  if (pre.is_zero()) return;
  terms_.push_back({std::move(pre), std::move(expo)});
}

ExpSum ExpSum::plain(const Jet& p) {
  ExpSum s;
  s.push(p, Jet::constant(0.0, p.order()));
  return s;
}

ExpSum ExpSum::exponential(const Jet& e, Complex c) {
  ExpSum s;
  s.push(Jet::constant(c, e.order()), e);
  return s;
}

ExpSum ExpSum::derivative(Axis which) const {
  ExpSum r;
  for (const auto& t : terms_) r.push(t.pre.derivative(which) + t.pre * t.expo.derivative(which), t.expo);
  return r;
}

ExpSum::Factored ExpSum::factored() const {
  if (terms_.empty()) throw SingularPoint("empty exponential sum");
  const Term* top = &terms_.front();
  for (const auto& t : terms_)
    if (t.expo.value().real() > top->expo.value().real()) top = &t;
  const Jet L = top->expo;
  Jet g;
  bool first = true;
  for (const auto& t : terms_) {
    Jet d = t.expo - L;
    Jet term = d.is_zero() ? t.pre : t.pre * exp(d);
    g = first ? term : g + term;
    first = false;
  }
  return {L, g};
}

Jet ExpSum::value() const {
  Factored f = factored();
  return exp(f.L) * f.g;
}

ExpSum& ExpSum::operator+=(const ExpSum& r) {
  for (const auto& t : r.terms_) terms_.push_back(t);
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& r) {
  for (const auto& t : r.terms_) terms_.push_back({-t.pre, t.expo});
  return *this;
}

ExpSum& ExpSum::operator*=(Complex s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.pre *= s;
  return *this;
}

ExpSum& ExpSum::operator*=(const Jet& p) {
  std::vector<Term> old;
  old.swap(terms_);
  for (auto& t : old) push(t.pre * p, t.expo);
  return *this;
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum r;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.push(x.pre * y.pre, x.expo + y.expo);
  return r;
}

ExpSum exp_cosh(const Jet& a) { return ExpSum::exponential(a, 0.5) + ExpSum::exponential(-a, 0.5); }
ExpSum exp_sinh(const Jet& a) { return ExpSum::exponential(a, 0.5) + ExpSum::exponential(-a, -0.5); }

ExpSum exp_cos(const Jet& a) {
  const Complex i(0.0, 1.0);
  return ExpSum::exponential(i * a, 0.5) + ExpSum::exponential(-i * a, 0.5);
}

ExpSum exp_sin(const Jet& a) {
  const Complex i(0.0, 1.0);
  return ExpSum::exponential(i * a, Complex(0.0, -0.5)) + ExpSum::exponential(-i * a, Complex(0.0, 0.5));
}

Jet log_derivative(const ExpSum& f, Axis which) {
  ExpSum::Factored fa = f.factored();
  if (std::abs(fa.g.value()) <= division_floor()) throw SingularPoint("exponential sum vanishes at the point");
  return fa.L.derivative(which) + fa.g.derivative(which) / fa.g;
}

Jet ratio(const ExpSum& n, const ExpSum& d) {
  ExpSum::Factored fd = d.factored();
  if (n.empty()) return Jet::constant(0.0, fd.g.order());
  ExpSum::Factored fn = n.factored();
  Jet shift = fn.L - fd.L;
  Jet q = fn.g / fd.g;
  return shift.is_zero() ? q : exp(shift) * q;
}

}  // namespace blmp
