#pragma once

// Named functions of y used for the reduction z = x + q(y) and the
// bilinearization shift m(y). A closed registry keeps descriptors
// serializable; callers needing anything else can build fields directly.

#include <string>
#include <vector>

#include "blmp/jet.hpp"

namespace blmp {

struct NamedFunction {
  enum class Kind { zero, identity, poly, sin, exp };

  Kind kind = Kind::zero;
  std::vector<double> coeffs;  // poly: c0 + c1 y + c2 y^2 + ...
  double a = 1.0;              // sin(a y), exp(a y)

  static NamedFunction zero() { return {}; }
  static NamedFunction identity() { return {Kind::identity, {}, 1.0}; }
  static NamedFunction poly(std::vector<double> c) { return {Kind::poly, std::move(c), 1.0}; }
  static NamedFunction sine(double a) { return {Kind::sin, {}, a}; }
  static NamedFunction exponential(double a) { return {Kind::exp, {}, a}; }

  Jet operator()(const Jet& y) const;
  Complex operator()(double y) const;

  /// dq/dy at a real point.
  Complex derivative(double y) const;

  bool is_constant() const;

  /// "zero", "identity", "poly[1,0,2]", "sin(2y)", "exp(0.5y)"
  std::string to_string() const;
  static const char* kind_name(Kind k);
};

}  // namespace blmp
