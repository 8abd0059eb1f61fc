#pragma once

// SUSY BLMP solutions: super solitons of S_y (D_t + D_x^3)(g.g) = 0 and
// superpartners xi = zeta k(w) of the traveling wave, with their checks.
//
// Odd constants are allocated in declaration order after theta:
// (theta, zeta1, zeta2) for solitons and (theta, zeta) for superpartners.

#include <functional>
#include <string>
#include <vector>

#include "blmp/functions.hpp"
#include "blmp/residual.hpp"
#include "blmp/superfield.hpp"

namespace blmp {

// ---------------------------------------------------------------- super solitons

struct SuperSolitonParams {
  std::vector<Complex> kappa;
  std::vector<Complex> rho;
  std::vector<Complex> omega;  // empty: omega_i = -kappa_i^3
  bool enforce_dispersion = true;
};

/// A_12 = (k1 - k2)(r1 - r2) / ((k1 + k2)(r1 + r2))
Complex super_coupling(Complex k1, Complex k2, Complex r1, Complex r2);

struct SuperSoliton {
  GeneratorSetPtr gens;
  SuperSolitonParams params;  // omega filled in
  Complex A12 = 0.0;
  Complex alpha12 = 0.0;
  Complex alpha21 = 0.0;
  SuperfieldFn g;
  SuperfieldFn phi;  // D_x F with F = -2 log g and Lambda = 0
};

/// N = 1: g = 1 + e^{phi1}. N = 2: g = 1 + e^{phi1} + e^{phi2}
///   + A12 (1 + 2 zeta1 zeta2 / (rho2 - rho1)) e^{varphi1 + varphi2 + theta (zeta1 alpha12 + zeta2 alpha21)},
/// with phi_i = kappa_i x + rho_i y + omega_i t + theta zeta_i and epsilon = 1.
SuperSoliton super_soliton(const SuperSolitonParams& p);

/// The two dispersion conditions of the modified bilinear form with
/// D_y D_x Lambda = theta c', read off from Hirota derivatives of e^{phi}.1:
///   Q1 = rho (omega + kappa^3) - 3 c' kappa^2,  Q2 = omega + kappa^3.
struct DispersionPair {
  Complex q1;
  Complex q2;
};
DispersionPair dispersion_conditions(Complex kappa, Complex rho, Complex omega, Complex c_prime);

struct ObstructionScan {
  double min_joint = 0.0;  // min over the grid of |Q1| + |Q2|
  Complex kappa, rho, omega;
  int grid_points = 0;
};

/// Scans kappa, rho in [-2, 2] with |kappa|, |rho| >= 0.1 and omega over a grid
/// that contains -kappa^3 exactly.
ObstructionScan c_prime_obstruction(Complex c_prime, int steps = 41);

// ---------------------------------------------------------------- superpartners

struct SuperpartnerParams {
  Complex d1 = 1.0;  // c1 + c2
  Complex d2 = 0.0;  // c1 - c2
  Complex a = 1.0;
  Complex alpha = 0.0;
  Complex beta1 = 0.0;
  Complex beta2 = 0.0;
  Complex beta3 = 0.0;
  NamedFunction m;
  std::string zeta = "zeta";
};

using WaveFn = std::function<Jet(const Jet& w)>;

/// k_{(d1,d2)}(w), the general closed form.
Jet superpartner_k(const SuperpartnerParams& p, const Jet& w);

/// The printed special cases (d1, d2) = (1, 0) and (0, 1).
Jet superpartner_k10(Complex b1, Complex b2, Complex b3, const Jet& w);
Jet superpartner_k01(Complex b1, Complex b2, Complex b3, const Jet& w);

/// U(w) = u_{(d1,d2)} + m(y) = -a(1 + alpha) + 2a(d1 - d2)/(d1 - d2 + (d1 + d2) e^w)
Jet superpartner_u_profile(const SuperpartnerParams& p, const Jet& w);

/// 4 - 3(d1^2 - d2^2) / (2 (d1 cosh(w/2) + d2 sinh(w/2))^2)
Jet schroedinger_potential(const SuperpartnerParams& p, const Jet& w);

struct Superpartner {
  GeneratorSetPtr gens;
  SuperpartnerParams params;
  Field u;
  SuperfieldFn phi;  // zeta k(w) + theta u
};

Superpartner superpartner(const SuperpartnerParams& p);
Superpartner superpartner_with(const SuperpartnerParams& p, WaveFn k);

/// psi_ww - V(w) psi with psi = k_w, at the given w values.
ResidualReport schroedinger_check(const SuperpartnerParams& p, const std::vector<double>& ws);
ResidualReport schroedinger_check(const SuperpartnerParams& p, const WaveFn& k, const std::vector<double>& ws);

/// Compares the zeta component of the second SUSY component equation with
/// m'(y) a^2 d_w [psi_ww - (4 + 3 U'/a) psi]; max_rel is the gap relative to
/// the equation's term magnitudes.
ResidualReport linearization_check(const SuperpartnerParams& p, const WaveFn& k, const std::vector<Point>& pts);

// ---------------------------------------------------------------- SUSY KdV reduction

using GradedProfile = std::function<GrassmannJet(const Jet& z, const Jet& t)>;

/// chi (odd) and v (even) as functions of (z, t) jets with z_x = 1.
struct SusyKdvPair {
  GeneratorSetPtr gens;
  GradedProfile chi;
  GradedProfile v;
};

/// E11 = v_zt + v_zzzz - 6 v_z v_zz + 3 chi_z chi_zzz and E22 = chi_t + chi_zzz - 3 chi_z v_z
/// at z = x + q(y). Throws NegativeQPrime unless q' > 0 at every point.
ResidualReport susy_kdv_reduction_check(const SusyKdvPair& f, const NamedFunction& q, const std::vector<Point>& pts);

/// Phi = sqrt(q'(y)) chi(z, t) + theta v(z, t), z = x + q(y).
SuperfieldFn lift_reduction(const SusyKdvPair& f, const NamedFunction& q);

/// chi = -2 zeta E/(1 + E), v = -2 kappa E/(1 + E), E = e^{kappa z - kappa^3 t}.
/// Lifted with q = (rho/kappa) y it is the N = 1 super soliton with zeta scaled by sqrt(rho/kappa).
SusyKdvPair super_soliton_reduction(Complex kappa);

}  // namespace blmp
