#ifndef PHSOLVE_HOMOTOPY_HPP
#define PHSOLVE_HOMOTOPY_HPP

#include <vector>

#include "phsolve/newton.hpp"
#include "phsolve/ratfun.hpp"

namespace phsolve {

/// Geometric solution of the second deformation curve F_i = f_i + (1-T) g_i:
/// monic m in Q(T)[Y] plus v-form parametrizations (dm/dY X_i = v_i).
struct SecondCurve {
  std::vector<Rational> u;
  int degree = 0;
  int bound_eprime = 0;
  int measured_deg_t = 0;
  std::vector<RationalFunction> mcoeffs;            // below the leading 1
  std::vector<std::vector<RationalFunction>> vcoeffs;  // [i][j]
};

/// Lift the fiber solution at T = 0 (the solution of h = f + g) along the
/// second deformation to precision 2 E' and recover Q(T) coefficients by
/// Pade approximation with numerator/denominator degrees <= E'.
SecondCurve formal_newton_lift(const GeometricSolution0D& sol1, const XTSystem& F,
                               int bound_eprime, int extra_slack = 0);

/// Substitute T = 1, strip multiplicities with a = gcd(m(1), dm/dY(1)), and
/// return the squarefree geometric solution of the input system. Throws
/// DivisionNotExact if a fails to divide some v_i(1) and PoleAtOne when a
/// coefficient denominator vanishes at 1.
GeometricSolution0D specialize_and_cleanup(const SecondCurve& curve);

}  // namespace phsolve

#endif
