#include "blmp/jet.hpp"

#include <cmath>
#include <string>

#include "blmp/errors.hpp"

namespace blmp {

namespace {

thread_local double t_div_floor = kDivFloor;

void check_denominator(Complex b0) {
  if (std::abs(b0) <= division_floor()) {
    throw DivisionNearSingularity("|denominator| = " + std::to_string(std::abs(b0)));
  }
}

void check_branch(Complex a0, const char* fn) {
  if (std::abs(a0) <= division_floor() || (a0.imag() == 0.0 && a0.real() < 0.0)) {
    throw BranchCutViolation(std::string(fn) + " evaluated on the principal branch cut");
  }
}

// sum_n c[n] (a - a0)^n by Horner's rule; the nilpotent part vanishes beyond
// the total order so the series is exact.
Jet taylor_compose(const Jet& a, const std::vector<Complex>& c) {
  Jet h = a;
  h.coeff_ref(0, 0, 0) = 0.0;
  Jet result = Jet::constant(c.back(), a.order());
  for (int n = static_cast<int>(c.size()) - 2; n >= 0; --n) {
    result = result * h;
    result += c[static_cast<std::size_t>(n)];
  }
  return result;
}

int series_length(const Jet& a) { return a.order().total() + 1; }

}  // namespace

double division_floor() { return t_div_floor; }

ScopedDivisionFloor::ScopedDivisionFloor(double floor) : previous_(t_div_floor) {
  t_div_floor = floor;
}

ScopedDivisionFloor::~ScopedDivisionFloor() { t_div_floor = previous_; }

Jet::Jet(JetOrder order) : order_(order), coeffs_(order.size(), Complex{}) {}

Jet Jet::constant(Complex value, JetOrder order) {
  Jet j(order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(Axis which, Complex value, JetOrder order) {
  Jet j = constant(value, order);
  if (order.along(which) >= 1) {
    switch (which) {
      case Axis::x: j.coeff_ref(1, 0, 0) = 1.0; break;
      case Axis::y: j.coeff_ref(0, 1, 0) = 1.0; break;
      case Axis::t: j.coeff_ref(0, 0, 1) = 1.0; break;
    }
  }
  return j;
}

Complex Jet::coeff(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i > order_.x || j > order_.y || k > order_.t) {
    throw OrderExceeded("coefficient (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ") outside jet order");
  }
  return coeffs_[index(i, j, k)];
}

Complex& Jet::coeff_ref(int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0 || i > order_.x || j > order_.y || k > order_.t) {
    throw OrderExceeded("coefficient outside jet order");
  }
  return coeffs_[index(i, j, k)];
}

Complex Jet::partial(int i, int j, int k) const {
  static constexpr std::array<double, 13> kFactorial = {
      1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600};
  if (i > 12 || j > 12 || k > 12) throw OrderExceeded("partial order too large");
  return coeff(i, j, k) * (kFactorial[static_cast<std::size_t>(i)] *
                           kFactorial[static_cast<std::size_t>(j)] *
                           kFactorial[static_cast<std::size_t>(k)]);
}

Jet Jet::derivative(Axis which) const {
  if (order_.along(which) < 1) throw OrderExceeded("derivative of an order-0 axis");
  JetOrder o = order_;
  switch (which) {
    case Axis::x: --o.x; break;
    case Axis::y: --o.y; break;
    case Axis::t: --o.t; break;
  }
  Jet d(o);
  for (int i = 0; i <= o.x; ++i)
    for (int j = 0; j <= o.y; ++j)
      for (int k = 0; k <= o.t; ++k) {
        switch (which) {
          case Axis::x: d.coeff_ref(i, j, k) = coeff(i + 1, j, k) * double(i + 1); break;
          case Axis::y: d.coeff_ref(i, j, k) = coeff(i, j + 1, k) * double(j + 1); break;
          case Axis::t: d.coeff_ref(i, j, k) = coeff(i, j, k + 1) * double(k + 1); break;
        }
      }
  return d;
}

Jet Jet::truncated(JetOrder order) const {
  if (order == order_) return *this;
  const JetOrder o = min(order, order_);
  Jet r(o);
  for (int i = 0; i <= o.x; ++i)
    for (int j = 0; j <= o.y; ++j)
      for (int k = 0; k <= o.t; ++k) r.coeffs_[r.index(i, j, k)] = coeffs_[index(i, j, k)];
  return r;
}

bool Jet::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != Complex{}) return false;
  return true;
}

Jet& Jet::operator+=(const Jet& rhs) {
  if (rhs.order_ != order_) {
    *this = truncated(rhs.order_);
    const Jet b = rhs.truncated(order_);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += b.coeffs_[n];
    return *this;
  }
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += rhs.coeffs_[n];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) { return *this += -rhs; }

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(Complex s) {
  coeffs_[0] += s;
  return *this;
}
Jet& Jet::operator-=(Complex s) {
  coeffs_[0] -= s;
  return *this;
}
Jet& Jet::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}
Jet& Jet::operator/=(Complex s) {
  check_denominator(s);
  for (auto& c : coeffs_) c /= s;
  return *this;
}

Jet operator-(Jet a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

Jet operator*(const Jet& a0, const Jet& b0) {
  const JetOrder o = min(a0.order_, b0.order_);
  const Jet a = a0.truncated(o);
  const Jet b = b0.truncated(o);
  Jet r(o);
  for (int i1 = 0; i1 <= o.x; ++i1)
    for (int j1 = 0; j1 <= o.y; ++j1)
      for (int k1 = 0; k1 <= o.t; ++k1) {
        const Complex av = a.coeffs_[a.index(i1, j1, k1)];
        if (av == Complex{}) continue;
        for (int i2 = 0; i2 <= o.x - i1; ++i2)
          for (int j2 = 0; j2 <= o.y - j1; ++j2)
            for (int k2 = 0; k2 <= o.t - k1; ++k2)
              r.coeffs_[r.index(i1 + i2, j1 + j2, k1 + k2)] +=
                  av * b.coeffs_[b.index(i2, j2, k2)];
      }
  return r;
}

// Solves b * q = a coefficient by coefficient in lexicographic order.
Jet operator/(const Jet& a0, const Jet& b0) {
  const JetOrder o = min(a0.order_, b0.order_);
  const Jet a = a0.truncated(o);
  const Jet b = b0.truncated(o);
  const Complex lead = b.coeffs_[0];
  check_denominator(lead);
  Jet q(o);
  for (int i = 0; i <= o.x; ++i)
    for (int j = 0; j <= o.y; ++j)
      for (int k = 0; k <= o.t; ++k) {
        Complex acc = a.coeffs_[a.index(i, j, k)];
        for (int bi = 0; bi <= i; ++bi)
          for (int bj = 0; bj <= j; ++bj)
            for (int bk = 0; bk <= k; ++bk) {
              if (bi == 0 && bj == 0 && bk == 0) continue;
              acc -= b.coeffs_[b.index(bi, bj, bk)] * q.coeffs_[q.index(i - bi, j - bj, k - bk)];
            }
        q.coeffs_[q.index(i, j, k)] = acc / lead;
      }
  return q;
}

Jet exp(const Jet& a) {
  const int n = series_length(a);
  std::vector<Complex> c(static_cast<std::size_t>(n));
  Complex term = std::exp(a.value());
  for (int m = 0; m < n; ++m) {
    c[static_cast<std::size_t>(m)] = term;
    term /= double(m + 1);
  }
  return taylor_compose(a, c);
}

Jet log(const Jet& a) {
  const Complex a0 = a.value();
  check_branch(a0, "log");
  const int n = series_length(a);
  std::vector<Complex> c(static_cast<std::size_t>(n));
  c[0] = std::log(a0);
  Complex inv_pow = 1.0;
  for (int m = 1; m < n; ++m) {
    inv_pow /= a0;
    c[static_cast<std::size_t>(m)] = (m % 2 == 1 ? 1.0 : -1.0) * inv_pow / double(m);
  }
  return taylor_compose(a, c);
}

namespace {

// Coefficients f^(m)(a0)/m! for f in {sin, cos, sinh, cosh}; derivatives cycle
// with period 4 (trig) or 2 (hyperbolic).
std::vector<Complex> cyclic_series(Complex s0, Complex c0, int n, bool trig, bool start_sin) {
  std::vector<Complex> c(static_cast<std::size_t>(n));
  double fact = 1.0;
  for (int m = 0; m < n; ++m) {
    if (m > 0) fact *= m;
    Complex d;
    if (trig) {
      // derivatives of sin: sin, cos, -sin, -cos ; of cos: cos, -sin, -cos, sin
      const int phase = (m + (start_sin ? 0 : 1)) % 4;
      d = phase == 0 ? s0 : phase == 1 ? c0 : phase == 2 ? -s0 : -c0;
    } else {
      const bool even = ((m + (start_sin ? 0 : 1)) % 2) == 0;
      d = even ? s0 : c0;
    }
    c[static_cast<std::size_t>(m)] = d / fact;
  }
  return c;
}

}  // namespace

Jet sin(const Jet& a) {
  const Complex a0 = a.value();
  return taylor_compose(a, cyclic_series(std::sin(a0), std::cos(a0), series_length(a), true, true));
}

Jet cos(const Jet& a) {
  const Complex a0 = a.value();
  return taylor_compose(a, cyclic_series(std::sin(a0), std::cos(a0), series_length(a), true, false));
}

Jet tan(const Jet& a) { return sin(a) / cos(a); }

Jet sinh(const Jet& a) {
  const Complex a0 = a.value();
  return taylor_compose(a,
                        cyclic_series(std::sinh(a0), std::cosh(a0), series_length(a), false, true));
}

Jet cosh(const Jet& a) {
  const Complex a0 = a.value();
  return taylor_compose(a,
                        cyclic_series(std::sinh(a0), std::cosh(a0), series_length(a), false, false));
}

Jet tanh(const Jet& a) { return sinh(a) / cosh(a); }

Jet coth(const Jet& a) { return cosh(a) / sinh(a); }

Jet pow(const Jet& a, Complex r) {
  const Complex a0 = a.value();
  check_branch(a0, "pow");
  const int n = series_length(a);
  std::vector<Complex> c(static_cast<std::size_t>(n));
  // binom(r, m) a0^(r - m)
  Complex binom = 1.0;
  Complex base = std::pow(a0, r);
  for (int m = 0; m < n; ++m) {
    c[static_cast<std::size_t>(m)] = binom * base;
    binom *= (r - double(m)) / double(m + 1);
    base /= a0;
  }
  return taylor_compose(a, c);
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet result = Jet::constant(1.0, a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Jet sqrt(const Jet& a) { return pow(a, Complex(0.5)); }

Jet log_derivative(const Jet& a, Axis which) { return a.derivative(which) / a; }

}  // namespace blmp
