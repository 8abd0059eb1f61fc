#pragma once

// Sums of jet-weighted exponentials, sum_k p_k e^{E_k}.
//
// Tau functions built from exponentials saturate away from their cores: the
// derivatives of log(tau) become exponentially small and plain jet division
// loses them to cancellation. Factoring out the exponential with the largest
// real part at the expansion point keeps every remaining term bounded and
// its derivatives relatively accurate.

#include <vector>

#include "blmp/jet.hpp"

namespace blmp {

class ExpSum {
 public:
  struct Term {
    Jet pre;
    Jet expo;
  };

  /// tau = e^L g, with L the exponent of largest real part.
  struct Factored {
    Jet L;
    Jet g;
  };

  ExpSum() = default;

  static ExpSum plain(const Jet& p);
  static ExpSum exponential(const Jet& e, Complex c = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  ExpSum derivative(Axis which) const;
  Factored factored() const;
  Jet value() const;

  ExpSum& operator+=(const ExpSum& r);
  ExpSum& operator-=(const ExpSum& r);
  ExpSum& operator*=(Complex s);
  ExpSum& operator*=(const Jet& p);

  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator-(ExpSum a) { return a *= Complex(-1.0); }
  friend ExpSum operator*(ExpSum a, Complex s) { return a *= s; }
  friend ExpSum operator*(Complex s, ExpSum a) { return a *= s; }
  friend ExpSum operator*(ExpSum a, const Jet& p) { return a *= p; }
  friend ExpSum operator*(const Jet& p, ExpSum a) { return a *= p; }
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);

 private:
  void push(Jet pre, Jet expo);
  std::vector<Term> terms_;
};

ExpSum exp_cosh(const Jet& a);
ExpSum exp_sinh(const Jet& a);
ExpSum exp_cos(const Jet& a);
ExpSum exp_sin(const Jet& a);

/// d_axis log(f) = L' + g'/g. Throws SingularPoint when g is within the division floor.
Jet log_derivative(const ExpSum& f, Axis which);

/// n / d = e^{Ln - Ld} gn / gd.
Jet ratio(const ExpSum& n, const ExpSum& d);

}  // namespace blmp
