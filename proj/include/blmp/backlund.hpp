#pragma once

// Bilinear transformation system for (tau, mu) and the Backlund relations
// that take one solution pair to another.
//
//   B1 = (S_y D_x - D_y D_x Lambda)(tau.mu),  B2 = (D_t + D_x^3)(tau.mu)
//
// Relations for a candidate (tau', mu') with even alpha, beta and odd gamma:
//   x:   D_x(tau.mu') - alpha D_x(mu.tau') - beta tau mu' + alpha beta tau' mu
//   y:   S_y(tau.mu') + alpha S_y(mu.tau') - gamma tau mu' - alpha gamma tau' mu
//   tau: (D_t + D_x^3 - 3 beta D_x^2 + 3 beta^2 D_x)(tau.tau')
//   mu:  the same on (mu.mu')

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blmp/residual.hpp"
#include "blmp/superfield.hpp"

namespace blmp {

struct BilinearPair {
  GeneratorSetPtr gens;
  SuperfieldFn tau;
  SuperfieldFn mu;
};

/// Classical pair embedded with zero odd parts.
BilinearPair classical_pair(const GeneratorSetPtr& gens, const Field& f, const Field& g);

/// Vacuum tau = mu = 1.
BilinearPair vacuum_pair(const GeneratorSetPtr& gens);

struct BacklundParams {
  Complex alpha = 1.0;
  Complex beta = 0.0;
  GrassmannScalar gamma;  // odd; empty means 0
};

/// Lambda as a superfield; an empty function means Lambda = 0.
ResidualReport check_bilinear_system(const BilinearPair& p, const SuperfieldFn& lambda, const std::vector<Point>& pts);

/// Lambda = theta c(y) with classical f, g: the theta components of B1 and B2
/// are (D_y D_x - c'(y))(f.g) and 0, and the body of B2 is (D_t + D_x^3)(f.g).
ResidualReport check_bilinear_system_classical(const Field& f, const Field& g, const NamedFunction& c,
                                               const std::vector<Point>& pts);

SuperfieldFn theta_times(const GeneratorSetPtr& gens, const NamedFunction& c);

struct PropositionReport {
  ResidualReport x, y, tau, mu;  // the four relations
  ResidualReport seed;           // bilinear system on (tau, mu)
  ResidualReport candidate;      // bilinear system on (tau', mu')
  ResidualReport p1, p2;
  ResidualReport p1_rewrite;     // |P1 - 2(tau' mu' S_y D_x(tau.mu) - tau mu S_y D_x(tau'.mu'))|
  bool grading_ok = true;        // every even component of the y relation is exactly zero
  int grading_violations = 0;
  bool relations_hold = false;
  bool p_identities_hold = false;

  /// The four relations imply P1 = P2 = 0 wherever they hold.
  bool implication_holds() const { return !relations_hold || p_identities_hold; }
};

PropositionReport check_proposition(const BilinearPair& seed, const BilinearPair& cand, const BacklundParams& params,
                                    const SuperfieldFn& lambda, const std::vector<Point>& pts, double tol = 1e-9);

// ---------------------------------------------------------------- search

/// A candidate family with real unknowns. `build` returns the candidate pair and
/// the Backlund parameters for a full unknown vector; `free` selects which
/// unknowns the fit may move.
struct Ansatz {
  std::vector<std::string> names;
  std::vector<double> initial;
  std::vector<bool> free;
  std::function<std::pair<BilinearPair, BacklundParams>(const std::vector<double>&)> build;
};

/// tau' = 1 + e^{phi}, mu' = 1 - e^{phi}, phi = kappa x + rho y + omega t,
/// gamma = g * gamma_gen; unknowns (kappa, rho, omega, beta, g), kappa fixed.
Ansatz one_exponential_ansatz(const GeneratorSetPtr& gens, double kappa, double rho0, Complex alpha = 1.0);

/// tau' = 1 + s1 e1 + s2 e2 + A e1 e2, mu' = 1 + t1 e1 + t2 e2 + B e1 e2 with
/// e1 = e^{kappa1 x + rho1 y - kappa1^3 t} and e2 = e^{kappa2 x + rho2 y + omega2 t};
/// unknowns (kappa2, rho2, omega2, beta, g, s1, s2, t1, t2, A, B), kappa2 fixed,
/// starting from s = 1, t = -1, A = B = 0.
Ansatz two_exponential_ansatz(const GeneratorSetPtr& gens, double kappa1, double rho1, double kappa2, double rho2_0,
                              Complex alpha = 1.0);

struct SearchResult {
  std::vector<double> values;
  BilinearPair candidate;
  BacklundParams params;
  PropositionReport report;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// Levenberg-Marquardt fit of the free unknowns to the four relations at the
/// points. Throws NoConvergence when the largest relative relation residual
/// stays above plateau.
SearchResult backlund_search(const BilinearPair& seed, const Ansatz& ansatz, const std::vector<Point>& pts,
                             double plateau = 1e-6);

}  // namespace blmp
