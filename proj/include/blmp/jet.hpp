#pragma once

// Truncated multivariate Taylor jets in (x, y, t).
//
// A jet stores d^i_x d^j_y d^k_t f / (i! j! k!) at an expansion point for
// i <= order.x, j <= order.y, k <= order.t. Arithmetic is truncation-closed;
// binary operations on jets of different orders produce a jet of the
// componentwise minimum order, which is the order at which the result is
// fully known.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace blmp {

using Complex = std::complex<double>;

enum class Axis { x = 0, y = 1, t = 2 };

struct JetOrder {
  int x = 4;
  int y = 2;
  int t = 2;

  constexpr int total() const { return x + y + t; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(x + 1) * static_cast<std::size_t>(y + 1) *
           static_cast<std::size_t>(t + 1);
  }
  constexpr int along(Axis a) const {
    return a == Axis::x ? x : (a == Axis::y ? y : t);
  }
  friend constexpr bool operator==(const JetOrder&, const JetOrder&) = default;
};

/// Order (4, 2, 2): enough for every BLMP residual plus the fourth z-derivative
/// of the KdV reduction.
inline constexpr JetOrder kDefaultOrder{4, 2, 2};

/// Componentwise minimum.
constexpr JetOrder min(JetOrder a, JetOrder b) {
  return {a.x < b.x ? a.x : b.x, a.y < b.y ? a.y : b.y, a.t < b.t ? a.t : b.t};
}

/// Componentwise shift; used to request headroom before differentiating.
constexpr JetOrder raised(JetOrder o, int dx, int dy = 0, int dt = 0) {
  return {o.x + dx, o.y + dy, o.t + dt};
}

/// Denominator magnitudes at or below this floor raise DivisionNearSingularity.
inline constexpr double kDivFloor = 1e-12;

/// Current division floor for this thread (kDivFloor unless a guard is active).
double division_floor();

/// Raises the division floor for the lifetime of the guard on this thread.
/// Residual sampling uses this to skip points close to a solution singularity.
class ScopedDivisionFloor {
 public:
  explicit ScopedDivisionFloor(double floor);
  ~ScopedDivisionFloor();
  ScopedDivisionFloor(const ScopedDivisionFloor&) = delete;
  ScopedDivisionFloor& operator=(const ScopedDivisionFloor&) = delete;

 private:
  double previous_;
};

class Jet {
 public:
  explicit Jet(JetOrder order = kDefaultOrder);

  static Jet constant(Complex value, JetOrder order = kDefaultOrder);
  static Jet variable(Axis which, Complex value, JetOrder order = kDefaultOrder);

  JetOrder order() const { return order_; }
  Complex value() const { return coeffs_[0]; }

  /// Raw Taylor coefficient at multi-index (i, j, k).
  Complex coeff(int i, int j, int k) const;
  Complex& coeff_ref(int i, int j, int k);

  /// d^i_x d^j_y d^k_t at the expansion point. Throws OrderExceeded.
  Complex partial(int i, int j, int k) const;

  /// Exact derivative as a jet; the order along `which` drops by one.
  Jet derivative(Axis which) const;
  Jet truncated(JetOrder order) const;

  bool is_zero() const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(Complex s);
  Jet& operator-=(Complex s);
  Jet& operator*=(Complex s);
  Jet& operator/=(Complex s);

  friend Jet operator-(Jet a);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, Complex s) { return a += s; }
  friend Jet operator+(Complex s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Complex s) { return a -= s; }
  friend Jet operator-(Complex s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Complex s) { return a /= s; }
  friend Jet operator/(Complex s, const Jet& a) { return Jet::constant(s, a.order()) / a; }

  const std::vector<Complex>& coeffs() const { return coeffs_; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(order_.y + 1) +
            static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(order_.t + 1) +
           static_cast<std::size_t>(k);
  }

  JetOrder order_;
  std::vector<Complex> coeffs_;
};

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet coth(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, Complex r);
Jet pow(const Jet& a, int n);

/// d_axis log(a) computed as a'/a, with no branch cut.
Jet log_derivative(const Jet& a, Axis which);

/// Shorthand for jet_partial on the coordinate triple.
inline Complex partial(const Jet& a, int i, int j, int k) { return a.partial(i, j, k); }

}  // namespace blmp
