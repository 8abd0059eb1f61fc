#pragma once

// Classical BLMP solution families. Every family is an evaluable field
// u(x, y, t) built from jets; most also expose their tau function, with
// u = -2 d_x log(tau) - m(y).
//
// Families obtained through the KdV reduction are written as profiles in
// (z, t) and composed with z = x + q(y). A profile receives a z-jet whose
// x-derivative is 1, so d_x of the result is d_z.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "blmp/functions.hpp"
#include "blmp/jet.hpp"
#include "blmp/superfield.hpp"

namespace blmp {

enum class Family {
  RationalSimilarity,
  NSoliton,
  Wronskian,
  WronskianNegaton,
  WronskianPositon,
  Complexiton,
  RationalSoliton,
  RationalPositon,
  TravelingWave,
  Kink,
  Custom
};

const char* family_name(Family f);

using Field = std::function<Jet(const Point&, JetOrder)>;

/// A function of (z, t) jets plus the extra x-order it consumes.
struct Profile {
  std::function<Jet(const Jet& z, const Jet& t)> f;
  int headroom = 0;

  explicit operator bool() const { return static_cast<bool>(f); }
  Jet operator()(const Jet& z, const Jet& t) const { return f(z, t); }
};

/// z = x + q(y); m(y) is the bilinearization shift (zero for pure reductions).
struct ReductionSpec {
  NamedFunction q = NamedFunction::identity();
  NamedFunction m = NamedFunction::zero();
};

struct SolutionField {
  Family family = Family::Custom;
  std::string name;
  Field u;
  std::optional<Field> tau;
  std::optional<ReductionSpec> reduction;
  NamedFunction m;  // shift in u = -2 d_x log(tau) - m(y)

  Profile profile;      // p(z, t) for reduction families
  Profile tau_profile;  // f(z, t) for reduction families with a tau function

  Jet eval_u(const Point& p, JetOrder order) const { return u(p, order); }
};

/// -2 d log(f) along x, with a singular-point check on f.
Jet log_derivative_field(const Jet& f);

// ---------------------------------------------------------------- rational

using BigInt = boost::multiprecision::cpp_int;
using IntPolynomial = std::vector<BigInt>;  // c_0 + c_1 z + ...

inline constexpr int kYablonskiiCap = 8;

/// Q_0 = 1, Q_1 = z, Q_{n+1} Q_{n-1} = z Q_n^2 - 4 (Q_n Q_n'' - Q_n'^2), in exact integers.
IntPolynomial yablonskii(int n, int cap = kYablonskiiCap);
std::string to_string(const IntPolynomial& p);

/// (3t)^{deg/3} Q(z (3t)^{-1/3}) = sum c_j z^j (3t)^{(deg-j)/3}: polynomial in (z, t).
Jet yablonskii_homogeneous(const IntPolynomial& q, const Jet& z, const Jet& t);

/// -2 d_z log Q_n(z (3t)^{-1/3}) with the principal cube root; t > 0 only.
Jet rational_similarity_scaled(int n, const Jet& z, const Jet& t);

SolutionField rational_similarity(int n, const ReductionSpec& red = {});

// ---------------------------------------------------------------- solitons

struct SolitonParams {
  std::vector<Complex> kappa;
};

/// A_ij = ((k_i - k_j)/(k_i + k_j))^2 = e^{a_ij}.
Complex soliton_coupling(Complex ki, Complex kj);

Jet n_soliton_tau(const SolitonParams& p, const Jet& z, const Jet& t);
SolutionField n_soliton(const SolitonParams& p, const ReductionSpec& red = {});

// ---------------------------------------------------------------- Wronskian

enum class BasisKind { rational, positon, negaton, complexiton };

const char* basis_kind_name(BasisKind k);
BasisKind classify_eigenvalue(Complex lambda);

/// One basis function h with -h_zz = lambda h, h_t = -4 h_zzz.
/// Non-zero lambda: h = (c1 e^xi + c2 e^-xi)/2, xi = k z - 4 k^3 t, k = sqrt(-lambda).
/// lambda = 0: h = c1 z + c2.
/// jordan = 1 takes the k-derivative instead (z^3 - 24 t for lambda = 0), the
/// generalized eigenfunction used by second-order negatons and positons.
struct WronskianEntry {
  Complex lambda = 0.0;
  BasisKind kind = BasisKind::rational;
  int jordan = 0;
  Complex c1 = 1.0;
  Complex c2 = 1.0;

  static WronskianEntry rational(int jordan = 0);
  static WronskianEntry exponential(Complex lambda, int jordan = 0, Complex c1 = 1.0, Complex c2 = 1.0);
};

struct WronskianSpec {
  std::vector<WronskianEntry> entries;

  static WronskianSpec negaton2(double gamma);
  static WronskianSpec positon2(double gamma);
  static WronskianSpec complexiton(Complex eta);
  static WronskianSpec rational_soliton(double gamma);
  static WronskianSpec rational_positon(double gamma);
};

Jet wronskian_basis(const WronskianEntry& e, const Jet& z, const Jet& t);

/// det(H, H_z, ..., H_z^{N-1}) by cofactor expansion, N <= 4. The z-jet
/// needs N - 1 extra x-orders.
Jet wronskian_tau(const WronskianSpec& spec, const Jet& z, const Jet& t);

SolutionField wronskian_solution(const WronskianSpec& spec, const ReductionSpec& red = {});

// ---------------------------------------------------------------- closed forms

enum class ClosedForm {
  negaton2,
  positon2,
  complexiton,            // sign fixed so that u = -2 d_z log W
  complexiton_displayed,  // the printed form, equal to minus the above
  rational_soliton,
  rational_positon
};

const char* closed_form_name(ClosedForm c);

struct ClosedFormParams {
  double gamma = 1.0;
  Complex eta{1.0, 1.0};
};

Jet closed_form_profile(ClosedForm c, const ClosedFormParams& p, const Jet& z, const Jet& t);
SolutionField closed_form(ClosedForm c, const ClosedFormParams& p, const ReductionSpec& red = {});

// ---------------------------------------------------------------- traveling waves

struct TravelingWaveParams {
  Complex a = 1.0;
  Complex alpha = 0.0;
  Complex c1 = 1.0;
  Complex c2 = 1.0;
  NamedFunction m;
};

/// w = a x + m(y)/a - 4 a^3 t
Jet traveling_phase(const TravelingWaveParams& p, const Jet& x, const Jet& y, const Jet& t);

/// c1 e^{(1+alpha) w/2} + c2 e^{(alpha-1) w/2}
Jet traveling_tau(const TravelingWaveParams& p, const Jet& w);

SolutionField traveling_wave(const TravelingWaveParams& p);

/// alpha = 0, c1 = c2 = 1: u = -a tanh(w/2) - m(y).
SolutionField kink(Complex a, const NamedFunction& m);

// ---------------------------------------------------------------- custom

SolutionField custom_field(std::string name, Field u);

/// Field of a profile composed with z = x + q(y), minus m(y).
Field field_from_profile(const Profile& p, const ReductionSpec& red);

}  // namespace blmp
