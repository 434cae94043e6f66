#ifndef PHSOLVE_POLYHEDRAL_HPP
#define PHSOLVE_POLYHEDRAL_HPP

#include <vector>

#include "phsolve/newton.hpp"
#include "phsolve/ratfun.hpp"

namespace phsolve {

/// Result of switching a cell's lifted solution from the constant form u to
/// the weighted form u_gamma = sum u_i T^{gamma_i} X_i: a v-form geometric
/// solution plus the same polynomial with its first-order u-dependence, which
/// is what the assembly multiplies.
struct ChangedForm {
  std::vector<Integer> gamma;
  Integer gmin;                 // min over the first n coordinates of gamma
  SeriesGeometricSolution sol;  // v-form, coefficients in cell T-units
  Poly<JetS> mjet;
};

/// Change of linear form by the division-free characteristic polynomial of
/// multiplication by sum_i Lambda_i T^{gamma_i - gmin} w_i in the quotient.
ChangedForm change_linear_form(const SeriesGeometricSolution& solU,
                               const std::vector<Integer>& gamma);

/// Homogenized substitution check for v-form solutions:
/// sum_q c_q T^{e_q} v^q (dm/dY)^{d-|q|} = 0 mod (m, T^prec).
bool check_v_form(const SeriesGeometricSolution& sol, const XTSystem& sys);

/// A geometric solution of the deformation curve: u, the monic minimal
/// polynomial mhat in Q(T)[Y] (coefficient j below the leading 1 is
/// coeffs[j]), and the parametrization numerators v_i = -d mhat/d Lambda_i
/// carried as the gradient parts of the same recovered coefficients.
struct CurveSolution {
  std::vector<Rational> u;
  int degree = 0;
  int bound_e = 0;
  int measured_deg_t = 0;
  std::vector<JetRationalFunction> coeffs;

  RationalFunction mhat_coeff(int j) const;
  /// v_i(t, Y) for a rational t where no denominator vanishes.
  PolyQ vhat_at(size_t i, const Rational& t) const;
};

/// Multiply the per-cell factors on the common fractional grid, check that
/// only integral exponents survive, and recover every coefficient of mhat in
/// Q(T) by Pade approximation with numerator/denominator degrees <= E.
CurveSolution assemble_and_pade(const std::vector<ChangedForm>& factors, int bound_e,
                                const std::vector<Rational>& u, int extra_slack = 0);

/// Substitute T = 1 and convert the parametrizations to direct w-form.
GeometricSolution0D specialize_T1(const CurveSolution& curve);

}  // namespace phsolve

#endif
