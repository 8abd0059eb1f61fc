#pragma once

// Superfields on (x, y, t; theta) evaluated at a point.
//
// The value is a Grassmann element with jet coefficients in which theta is
// generator 0; its theta-free part is the lower component and the theta
// coefficient is the upper component, so Phi = lower + theta * upper.

#include <functional>

#include "blmp/grassmann.hpp"
#include "blmp/jet.hpp"

namespace blmp {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

class Superfield {
 public:
  Superfield() = default;
  explicit Superfield(GrassmannJet value) : value_(std::move(value)) {}

  /// lower + theta * upper; neither component may mention theta.
  static Superfield from_components(const GrassmannJet& lower, const GrassmannJet& upper);

  /// Phi = xi + theta u with xi odd and u even (fermionic superfield).
  static Superfield fermionic(const GrassmannJet& xi, const GrassmannJet& u);

  /// g = body + theta * soul with body even and soul odd (bosonic superfield).
  static Superfield bosonic(const GrassmannJet& body, const GrassmannJet& soul);

  /// A classical field embedded with zero odd content.
  static Superfield classical(const GeneratorSetPtr& gens, const Jet& f);

  const GrassmannJet& value() const { return value_; }
  const GeneratorSetPtr& generators() const { return value_.generators(); }

  GrassmannJet lower() const;
  GrassmannJet upper() const;

  std::optional<int> parity() const { return value_.parity(); }

  /// Supercovariant derivative D = d_theta + theta d_axis for axis x or y.
  Superfield D(Axis which) const;

  /// Ordinary derivative of every coefficient.
  Superfield d(Axis which) const { return Superfield(derivative(value_, which)); }

  /// d^i_x d^j_y d^k_t at the expansion point, theta kept explicit.
  GrassmannScalar at(int i, int j, int k) const { return partial(value_, i, j, k); }

  Superfield& operator+=(const Superfield& r) {
    value_ += r.value_;
    return *this;
  }
  Superfield& operator-=(const Superfield& r) {
    value_ -= r.value_;
    return *this;
  }
  friend Superfield operator+(Superfield a, const Superfield& b) { return a += b; }
  friend Superfield operator-(Superfield a, const Superfield& b) { return a -= b; }
  friend Superfield operator*(const Superfield& a, const Superfield& b) {
    return Superfield(a.value_ * b.value_);
  }
  friend Superfield operator*(Superfield a, Complex s) {
    a.value_ *= s;
    return a;
  }
  friend Superfield operator*(Complex s, Superfield a) { return a * s; }

 private:
  GrassmannJet value_;
};

/// Free-function form of Superfield::D.
inline Superfield cov_derivative(const Superfield& phi, Axis which) { return phi.D(which); }

/// A superfield as a function of the expansion point and the requested order.
using SuperfieldFn = std::function<Superfield(const Point&, JetOrder)>;

/// Coordinate jets at a point.
struct Coordinates {
  Jet x, y, t;
};
Coordinates coordinates(const Point& p, JetOrder order);

}  // namespace blmp
