#include "phsolve/homotopy.hpp"

#include "phsolve/errors.hpp"

namespace phsolve {

SecondCurve formal_newton_lift(const GeometricSolution0D& sol1, const XTSystem& F,
                               int bound_eprime, int extra_slack) {
  SecondCurve curve;
  curve.u = sol1.u;
  curve.degree = sol1.m.degree();
  curve.bound_eprime = bound_eprime;
  int eeff = bound_eprime + extra_slack;
  int prec = 2 * eeff + 1;
  SeriesGeometricSolution sol = lift_init(sol1);
  newton_lift_to(sol, F, prec);
  // v_i = (dm/dY) w_i mod m over the series ring
  Poly<Series> dm = sol.m.derivative();
  size_t n = sol.par.size();
  int d = sol.m.degree();
  auto recover = [&](const Series& s) {
    if (!s.zero_known() && s.order() < 0)
      throw ConsistencyError("second deformation produced a Laurent coefficient");
    RationalFunction f = pade_approximant(s, eeff, eeff);
    if (f.num.degree() > bound_eprime || f.den.degree() > bound_eprime)
      throw PadeDegenerate("second-deformation coefficient exceeds E'");
    curve.measured_deg_t = std::max(curve.measured_deg_t, f.deg_t());
    return f;
  };
  curve.mcoeffs.resize(d);
  for (int j = 0; j < d; ++j) curve.mcoeffs[j] = recover(sol.m[j].truncated(prec));
  curve.vcoeffs.assign(n, std::vector<RationalFunction>(d));
  for (size_t i = 0; i < n; ++i) {
    Poly<Series> vi = poly_mod(dm * sol.par[i], sol.m);
    for (int j = 0; j < d; ++j) curve.vcoeffs[i][j] = recover(vi[j].truncated(prec));
  }
  return curve;
}

GeometricSolution0D specialize_and_cleanup(const SecondCurve& curve) {
  int d = curve.degree;
  std::vector<Rational> mc(d + 1);
  mc[d] = Rational(1);
  for (int j = 0; j < d; ++j) {
    auto v = curve.mcoeffs[j].eval(Rational(1));
    if (!v) throw PoleAtOne("pole at T=1 in the second deformation", Redraw::Perturbation);
    mc[j] = *v;
  }
  PolyQ m1(std::move(mc));
  PolyQ dm1 = m1.derivative();
  PolyQ a = poly_gcd(m1, dm1);
  auto exact_div = [](const PolyQ& p, const PolyQ& q) {
    auto [quot, rem] = divrem(p, q);
    if (!rem.zero()) throw DivisionNotExact();
    return quot;
  };
  PolyQ m_red = a.degree() == 0 ? m1 : exact_div(m1, a);
  PolyQ dm_red = a.degree() == 0 ? dm1 : exact_div(dm1, a);
  if (m_red.degree() < 1)
    throw ConsistencyError("cleanup left no roots");
  size_t n = curve.u.size();
  GeometricSolution0D sol;
  sol.u = curve.u;
  sol.m = m_red;
  PolyQ inv;
  try {
    inv = modular_inverse(poly_mod(dm_red, m_red), m_red);
  } catch (const NotCoprime&) {
    throw NotSeparating("reduced derivative not invertible after cleanup",
                        Redraw::LinearFormU);
  }
  sol.w.resize(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rational> vc(d);
    for (int j = 0; j < d; ++j) {
      auto v = curve.vcoeffs[i][j].eval(Rational(1));
      if (!v) throw PoleAtOne("pole at T=1 in a parametrization", Redraw::Perturbation);
      vc[j] = *v;
    }
    PolyQ vi1(std::move(vc));
    PolyQ vi_red = a.degree() == 0 ? vi1 : exact_div(vi1, a);
    sol.w[i] = mulmod(inv, vi_red, m_red);
  }
  return sol;
}

}  // namespace phsolve
