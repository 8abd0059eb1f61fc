#pragma once

// Classical Hirota derivatives D_x^lx D_y^ly D_t^lt (f.g) and super Hirota
// derivatives S_x^kx S_y^ky D^l (f.g), evaluated at the expansion point by
// Leibniz expansion of the two-point definition.

#include <map>

#include "blmp/grassmann.hpp"
#include "blmp/jet.hpp"
#include "blmp/superfield.hpp"

namespace blmp {

struct HirotaOrder {
  int lx = 0;
  int ly = 0;
  int lt = 0;
  int kx = 0;  // number of S_x factors (0 or 1)
  int ky = 0;  // number of S_y factors (0 or 1)

  int total() const { return lx + ly + lt + kx + ky; }
};

/// Value of a bilinear expression together with the sum of the magnitudes of
/// its Leibniz terms; the latter is the normalizer for relative residuals.
struct ScalarEval {
  Complex value{};
  double magnitude = 0.0;

  ScalarEval& operator+=(const ScalarEval& o) {
    value += o.value;
    magnitude += o.magnitude;
    return *this;
  }
  ScalarEval scaled(Complex s) const { return {value * s, magnitude * std::abs(s)}; }
};

/// Grassmann-valued counterpart of ScalarEval with one magnitude per monomial.
struct GradedEval {
  GrassmannScalar value;
  std::map<Mask, double> magnitude;

  explicit GradedEval(GeneratorSetPtr gens = nullptr) : value(std::move(gens)) {}

  GradedEval& operator+=(const GradedEval& o);
  GradedEval scaled(Complex s) const;

  /// Product with an evaluated element (e.g. tau' mu' * S D(tau.mu)); the
  /// element is multiplied on the left.
  GradedEval left_multiplied(const GrassmannScalar& a) const;

  /// Largest |component| and largest component-wise relative size.
  double max_abs() const;
  double max_rel(double floor = 1e-14) const;
};

/// Accumulates factor * a * b into out, tracking term magnitudes.
void accumulate_product(GradedEval& out, const GrassmannScalar& a, const GrassmannScalar& b,
                        Complex factor);

/// Graded value of a single element (magnitude = |coefficient|).
GradedEval as_graded(const GrassmannScalar& a);

ScalarEval hirota_eval(const HirotaOrder& order, const Jet& f, const Jet& g);

/// D_x^lx D_y^ly D_t^lt (f.g) at the expansion point; kx = ky = 0 required.
Complex hirota_apply(const HirotaOrder& order, const Jet& f, const Jet& g);

/// Classical Hirota derivative of Grassmann-valued fields (products graded).
GradedEval hirota_eval(const HirotaOrder& order, const Superfield& f, const Superfield& g);

/// S_x^kx S_y^ky D_x^lx D_y^ly D_t^lt (f.g). f must have definite parity.
GradedEval super_hirota_eval(const HirotaOrder& order, const Superfield& f, const Superfield& g);

GrassmannScalar super_hirota_apply(const HirotaOrder& order, const Superfield& f,
                                   const Superfield& g);

}  // namespace blmp
