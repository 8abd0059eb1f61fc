#include "blmp/hirota.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace blmp {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

void require_classical(const HirotaOrder& o) {
  if (o.kx != 0 || o.ky != 0) throw InvalidArgument("super factors need super_hirota_apply");
  if (o.lx < 0 || o.ly < 0 || o.lt < 0) throw InvalidArgument("negative Hirota order");
}

}  // namespace

GradedEval& GradedEval::operator+=(const GradedEval& o) {
  value += o.value;
  for (const auto& [m, v] : o.magnitude) magnitude[m] += v;
  return *this;
}

GradedEval GradedEval::scaled(Complex s) const {
  GradedEval r = *this;
  r.value *= s;
  for (auto& [m, v] : r.magnitude) v *= std::abs(s);
  return r;
}

void accumulate_product(GradedEval& out, const GrassmannScalar& a, const GrassmannScalar& b,
                        Complex factor) {
  detail::check_same(a.generators(), b.generators());
  if (!out.value.generators()) out.value = GrassmannScalar(a.generators());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = monomial_sign(ma, mb);
      if (s == 0) continue;
      const Complex term = factor * ca * cb * double(s);
      out.value.add_term(ma | mb, term);
      out.magnitude[ma | mb] += std::abs(term);
    }
  }
}

GradedEval as_graded(const GrassmannScalar& a) {
  GradedEval r(a.generators());
  r.value = a;
  for (const auto& [m, c] : a.terms()) r.magnitude[m] += std::abs(c);
  return r;
}

GradedEval GradedEval::left_multiplied(const GrassmannScalar& a) const {
  GradedEval r(a.generators());
  r.value = a * value;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, vb] : magnitude) {
      if (monomial_sign(ma, mb) == 0) continue;
      r.magnitude[ma | mb] += std::abs(ca) * vb;
    }
  }
  return r;
}

double GradedEval::max_abs() const { return blmp::max_abs(value); }

double GradedEval::max_rel(double floor) const {
  double worst = 0.0;
  for (const auto& [m, c] : value.terms()) {
    auto it = magnitude.find(m);
    const double scale = it == magnitude.end() ? 0.0 : it->second;
    if (scale <= floor) continue;
    worst = std::max(worst, std::abs(c) / scale);
  }
  return worst;
}

ScalarEval hirota_eval(const HirotaOrder& o, const Jet& f, const Jet& g) {
  require_classical(o);
  ScalarEval r;
  for (int i = 0; i <= o.lx; ++i)
    for (int j = 0; j <= o.ly; ++j)
      for (int m = 0; m <= o.lt; ++m) {
        const int back = (o.lx - i) + (o.ly - j) + (o.lt - m);
        const double c = binomial(o.lx, i) * binomial(o.ly, j) * binomial(o.lt, m) *
                         (back % 2 == 0 ? 1.0 : -1.0);
        const Complex term = c * f.partial(i, j, m) * g.partial(o.lx - i, o.ly - j, o.lt - m);
        r.value += term;
        r.magnitude += std::abs(term);
      }
  return r;
}

Complex hirota_apply(const HirotaOrder& order, const Jet& f, const Jet& g) {
  return hirota_eval(order, f, g).value;
}

namespace {

GradedEval classical_graded(const HirotaOrder& o, const Superfield& f, const Superfield& g,
                            Complex factor) {
  GradedEval r(f.generators());
  for (int i = 0; i <= o.lx; ++i)
    for (int j = 0; j <= o.ly; ++j)
      for (int m = 0; m <= o.lt; ++m) {
        const int back = (o.lx - i) + (o.ly - j) + (o.lt - m);
        const double c = binomial(o.lx, i) * binomial(o.ly, j) * binomial(o.lt, m) *
                         (back % 2 == 0 ? 1.0 : -1.0);
        accumulate_product(r, f.at(i, j, m), g.at(o.lx - i, o.ly - j, o.lt - m), factor * c);
      }
  return r;
}

}  // namespace

GradedEval hirota_eval(const HirotaOrder& order, const Superfield& f, const Superfield& g) {
  require_classical(order);
  return classical_graded(order, f, g, 1.0);
}

GradedEval super_hirota_eval(const HirotaOrder& order, const Superfield& f, const Superfield& g) {
  if (order.kx < 0 || order.kx > 1 || order.ky < 0 || order.ky > 1) {
    throw InvalidArgument("super Hirota orders must be 0 or 1");
  }
  detail::check_same(f.generators(), g.generators());
  auto pf = f.parity();
  if (!pf) throw ParityUndefined("first argument of a super Hirota derivative has mixed parity");

  // Operator word S_x^kx S_y^ky, written left to right; the rightmost acts first.
  std::vector<Axis> word;
  if (order.kx) word.push_back(Axis::x);
  if (order.ky) word.push_back(Axis::y);
  const std::size_t k = word.size();

  HirotaOrder classical = order;
  classical.kx = classical.ky = 0;

  GradedEval total(f.generators());
  for (unsigned choice = 0; choice < (1u << k); ++choice) {
    // bit p set: factor p acts on the second argument (primed, carries -1).
    int sign = 1;
    int primed = 0;
    for (std::size_t p = 0; p < k; ++p) {
      if (!(choice & (1u << p))) continue;
      ++primed;
      sign = -sign;
      // primed operator must move right past every later unprimed one
      for (std::size_t q = p + 1; q < k; ++q)
        if (!(choice & (1u << q))) sign = -sign;
    }
    if ((primed * *pf) % 2 == 1) sign = -sign;

    Superfield uf = f;
    Superfield pg = g;
    for (std::size_t p = k; p-- > 0;) {
      if (choice & (1u << p)) {
        pg = pg.D(word[p]);
      } else {
        uf = uf.D(word[p]);
      }
    }
    total += classical_graded(classical, uf, pg, double(sign));
  }
  return total;
}

GrassmannScalar super_hirota_apply(const HirotaOrder& order, const Superfield& f,
                                   const Superfield& g) {
  return super_hirota_eval(order, f, g).value;
}

}  // namespace blmp
