#ifndef PHSOLVE_JETLIFT_HPP
#define PHSOLVE_JETLIFT_HPP

#include <vector>

#include "phsolve/poly.hpp"

namespace phsolve {

/// A zero-dimensional geometric solution: separating linear form u, its monic
/// squarefree minimal polynomial m_u, and direct parametrizations
/// X_i = w_i(Y) of the points by the roots of m_u.
struct GeometricSolution0D {
  std::vector<Rational> u;
  PolyQ m;
  std::vector<PolyQ> w;
};

/// Result of upgrading a minimal-polynomial computation via first-order jets:
/// m_u plus both parametrization forms (v_k = -dm_U/dLambda_k and
/// w_k = (m_u')^{-1} v_k mod m_u).
struct JetMinpolyResult {
  PolyQ m;
  std::vector<PolyQ> v;
  std::vector<PolyQ> w;
};

/// Run a minimal-polynomial procedure with its linear-form coefficients
/// seeded as jets Lambda_k = u_k + eps_k and read the parametrizations off
/// the first-order part. `algo` is called with the seeded coefficient vector
/// and must return the (monic) minimal polynomial over Jet<Rational>.
/// Throws NotSeparating when the resulting m_u is not squarefree.
template <class Algo>
JetMinpolyResult jet_lift_minpoly(Algo&& algo, const std::vector<Rational>& u,
                                  Redraw redraw_on_failure = Redraw::LinearFormU) {
  size_t n = u.size();
  std::vector<JetQ> lambda;
  lambda.reserve(n);
  for (size_t k = 0; k < n; ++k) lambda.push_back(JetQ::seed(u[k], k, n));
  Poly<JetQ> mjet = algo(lambda);
  JetMinpolyResult out;
  out.m = mjet.map([](const JetQ& c) { return c.val; });
  if (!is_monic(out.m)) throw ConsistencyError("jet minimal polynomial is not monic");
  PolyQ dm = out.m.derivative();
  if (poly_gcd(out.m, dm).degree() != 0)
    throw NotSeparating("minimal polynomial is not squarefree", redraw_on_failure);
  PolyQ inv_dm = modular_inverse(dm, out.m);
  out.v.resize(n);
  out.w.resize(n);
  for (size_t k = 0; k < n; ++k) {
    PolyQ grad = mjet.map([&](const JetQ& c) {
      return k < c.grad.size() ? c.grad[k] : Rational(0);
    });
    out.v[k] = -grad;
    out.w[k] = mulmod(inv_dm, out.v[k], out.m);
  }
  return out;
}

// --------------------------------------------------------------------------
// Quotient-ring helpers over truncated power series: R[Y]/(m) with
// R = Q[[T]]/(T^(prec)). Inverses are obtained from the T=0 fiber by T-adic
// Newton iteration, so failures at T=0 surface as exact EEA failures there.
// --------------------------------------------------------------------------

inline Poly<Rational> poly_at_t0(const Poly<Series>& p) {
  return p.map([](const Series& s) { return s.at_t0(); });
}

inline Poly<Series> poly_from_q(const PolyQ& p) {
  return p.map([](const Rational& c) { return Series(c); });
}

inline Poly<Series> poly_truncate(const Poly<Series>& p, int prec) {
  return p.map([&](const Series& s) { return s.truncated(prec); });
}

inline Poly<Series> poly_assume_precision(const Poly<Series>& p, int prec) {
  return p.map([&](const Series& s) { return s.assume_precision(prec); });
}

/// Inverse of a modulo the monic m over truncated series, to precision
/// `prec` (coefficients known mod T^prec). Requires gcd(a(0,Y), m(0,Y)) = 1;
/// throws NotCoprime (from the T=0 EEA) otherwise.
inline Poly<Series> invert_mod_tadic(const Poly<Series>& a, const Poly<Series>& m,
                                     int prec) {
  PolyQ a0 = poly_at_t0(a);
  PolyQ m0 = poly_at_t0(m);
  PolyQ b0 = modular_inverse(a0, m0);
  Poly<Series> b = poly_from_q(b0);
  Poly<Series> two = Poly<Series>::constant(Series(Rational(2)));
  int p = 1;
  while (p < prec) {
    p = std::min(2 * p, prec);
    Poly<Series> ap = poly_truncate(a, p);
    Poly<Series> bp = poly_assume_precision(b, p);
    Poly<Series> mp = poly_truncate(m, p);
    b = poly_mod(bp * (two - ap * bp), mp);
  }
  return b;
}

}  // namespace phsolve

#endif
