#ifndef PHSOLVE_NEWTON_HPP
#define PHSOLVE_NEWTON_HPP

#include <vector>

#include "phsolve/deform.hpp"
#include "phsolve/jetlift.hpp"

namespace phsolve {

/// A geometric solution of a one-parameter family carried as truncated power
/// series: monic m in Y and parametrizations, all coefficients known modulo
/// T^prec. In w-form the parametrizations are direct (X_i = w_i(Y)); in
/// v-form they satisfy (dm/dY) X_i = v_i on the family.
struct SeriesGeometricSolution {
  std::vector<Rational> u;
  Poly<Series> m;
  std::vector<Poly<Series>> par;
  bool v_form = false;
  int prec = 1;
};

/// Package an exact fiber solution as the T^1 start state of a lift.
SeriesGeometricSolution lift_init(const GeometricSolution0D& sol0);

/// Substitution check: every equation of `sys`, evaluated at the w-form
/// parametrizations, vanishes modulo (m, T^prec).
bool check_substitution(const SeriesGeometricSolution& sol, const XTSystem& sys);

/// The precision-doubling global Newton iterator: classical Newton step on
/// the parametrization vector in Q[T,Y]/(m, T^s), followed by the congruence
/// updates
///   m   <- m - (Delta * dm/dY mod m),  Delta = u(w~) - Y,
///   w_i <- w~_i - (Delta * dw~_i/dY mod m)
/// reduced modulo the incoming m. Lifts `sol` in place until coefficients
/// are known mod T^target_prec. Throws SingularJacobian when the Jacobian is
/// not invertible in the quotient and PrecisionStall if a step fails to
/// advance.
void newton_lift_to(SeriesGeometricSolution& sol, const XTSystem& sys, int target_prec);

/// First lifting stage: from the exact start solution to precision past
/// M_gamma (the largest normalized weight of gamma).
SeriesGeometricSolution newton_lift_stage1(const GeometricSolution0D& sol0,
                                           const XTSystem& sys, std::int64_t m_gamma);

/// Second stage: continue the same iterator to the full target precision
/// (2 gamma_{n+1} E plus the assembly slack).
void newton_lift_stage2(SeriesGeometricSolution& sol, const XTSystem& sys,
                        int target_prec);

}  // namespace phsolve

#endif
