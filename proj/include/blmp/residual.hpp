#pragma once

// Substitution residuals of the governing equations at sample points.
//
// At each point the residual is reported both absolutely and relative to the
// sum of the magnitudes of the equation's terms. Points where a solution or
// tau function is within the singular floor are skipped and counted.
// Grassmann-valued equations are reported per basis monomial.

#include <map>
#include <string>
#include <vector>

#include "blmp/errors.hpp"
#include "blmp/functions.hpp"
#include "blmp/hirota.hpp"
#include "blmp/solutions.hpp"
#include "blmp/superfield.hpp"

namespace blmp {

enum class Equation {
  blmp,
  kdv_reduction,
  kdv_corollary,
  kdv_eq4,
  general_eq6,
  susy_sbili,
  susy_sbilimod,
  susy_components,
  schroedinger,
  susy_kdv_reduction,
  linearization,
  backlund_bilinear,
  backlund_relations
};

const char* equation_name(Equation e);

inline constexpr double kSingularFloor = 1e-8;
inline constexpr double kTermFloor = 1e-14;
inline constexpr double kTolClassical = 1e-9;
inline constexpr double kTolGraded = 1e-8;
inline constexpr int kMinEvaluated = 95;

struct ComponentStats {
  double max_abs = 0.0;
  double max_rel = 0.0;
};

struct ResidualReport {
  Equation equation = Equation::blmp;
  std::vector<Point> points;
  double max_abs = 0.0;
  double max_rel = 0.0;
  int evaluated = 0;
  int skipped = 0;
  /// Keyed by "<equation>:<monomial>" for Grassmann-valued forms.
  std::map<std::string, ComponentStats> components;

  void add(double abs_value, double magnitude);
  void add(const std::string& component, double abs_value, double magnitude);
  void add(const std::string& prefix, const GradedEval& e, const GeneratorSet& gens);

  bool passed(double tol, int min_evaluated = kMinEvaluated) const {
    return evaluated >= min_evaluated && max_rel <= tol;
  }
};

/// Runs body(point, report) at each point under the singular floor; points
/// that hit a singularity are counted as skipped.
template <class Body>
ResidualReport sweep(Equation eq, const std::vector<Point>& pts, Body&& body) {
  ResidualReport r;
  r.equation = eq;
  r.points = pts;
  ScopedDivisionFloor guard(kSingularFloor);
  for (const Point& p : pts) {
    try {
      body(p, r);
      ++r.evaluated;
    } catch (const SingularPoint&) {
      ++r.skipped;
    } catch (const DivisionNearSingularity&) {
      ++r.skipped;
    } catch (const DegenerateWronskian&) {
      ++r.skipped;
    }
  }
  return r;
}

ResidualReport residual_blmp(const Field& u, const std::vector<Point>& pts);
inline ResidualReport residual_blmp(const SolutionField& s, const std::vector<Point>& pts) {
  return residual_blmp(s.u, pts);
}

/// p_zt + p_zzzz - 6 p_z p_zz with z = point.x, t = point.t.
ResidualReport residual_kdv_reduction(const Profile& p, const std::vector<Point>& pts);

/// h_t + h_zzz - 6 h h_z for h = p_z.
ResidualReport residual_kdv_corollary(const Profile& p, const std::vector<Point>& pts);

/// D_z (D_t + D_z^3)(f.f) with z = point.x.
ResidualReport residual_bilinear_kdv(const Profile& f, const std::vector<Point>& pts);

/// (D_y (D_t + D_x^3) + 3 m'(y) D_x^2)(f.f).
ResidualReport residual_bilinear_general(const Field& tau, const NamedFunction& m, const std::vector<Point>& pts);

/// S_y (D_t + D_x^3)(g.g), per Grassmann component.
ResidualReport residual_bilinear_sbili(const SuperfieldFn& g, const std::vector<Point>& pts);

/// (S_y D_t + S_y D_x^3 - 3 (D_y D_x Lambda) D_x^2)(g.g), per Grassmann component.
ResidualReport residual_bilinear_sbilimod(const SuperfieldFn& g, const SuperfieldFn& lambda,
                                          const std::vector<Point>& pts);

/// Both component equations of the SUSY BLMP equation for Phi = xi + theta u:
///   E1 = u_yt + u_xxxy - 3 u_xx u_y - 3 u_x u_xy + 3 xi_x xi_xxx
///   E2 = xi_yt + xi_xxxy - 3 u_xy xi_x - 3 u_x xi_xy
struct SusyComponentEvals {
  GradedEval e1;
  GradedEval e2;
};
SusyComponentEvals susy_component_equations(const Superfield& phi);

ResidualReport residual_susy_components(const SuperfieldFn& phi, const std::vector<Point>& pts);

}  // namespace blmp
