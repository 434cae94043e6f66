#ifndef PHSOLVE_DEFORM_HPP
#define PHSOLVE_DEFORM_HPP

#include <vector>

#include "phsolve/binomial.hpp"
#include "phsolve/system.hpp"

namespace phsolve {

/// One monomial c(T) * X^q of a polynomial in Q[X, T].
struct XTTerm {
  Point q;
  PolyQ ct;  // polynomial in T
};

/// A square system in Q[X, T] with precomputed partial derivatives and a
/// straight-line evaluation length measure.
struct XTSystem {
  int n = 0;
  std::vector<std::vector<XTTerm>> eqs;
  std::vector<std::vector<std::vector<XTTerm>>> jac;  // jac[i][j] = d eq_i / d X_j
  size_t eval_length = 0;

  void finalize();
};

/// The polyhedral deformation hhat_i = sum c_{i,q} X^q T^{w_i(q)}.
XTSystem build_hhat(const SupportFamily& fam, const LiftingFunction& lift,
                    const std::vector<std::vector<Rational>>& aligned);

/// The cell-local system h_{i,gamma}(X,T) = T^{-m_i} hhat_i(T^g X, T^{g_{n+1}}):
/// every monomial picks up T to the power <gamma,(q,w(q))> - m_i >= 0, with
/// exponent zero exactly on the cell's own points.
XTSystem build_hgamma(const SupportFamily& fam, const LiftingFunction& lift,
                      const std::vector<std::vector<Rational>>& aligned,
                      const MixedCell& cell);

/// The second deformation F_i = f_i + (1 - T) g_i.
XTSystem build_second_deformation(const SparseSystem& f, const SparseSystem& g);

}  // namespace phsolve

#endif
