#include "phsolve/polyhedral.hpp"

#include <algorithm>
#include <numeric>

#include "phsolve/errors.hpp"

namespace phsolve {

// --------------------------------------------------------------------------
// Newton kernel.
// --------------------------------------------------------------------------

namespace {

/// Per-variable power tables of the parametrizations modulo m, covering the
/// largest exponent used by the system or its Jacobian.
struct PowerTable {
  std::vector<std::vector<Poly<Series>>> pow;

  PowerTable(const XTSystem& sys, const std::vector<Poly<Series>>& w,
             const Poly<Series>& m) {
    int n = sys.n;
    std::vector<std::int64_t> maxdeg(n, 0);
    for (const auto& eq : sys.eqs)
      for (const auto& t : eq)
        for (int j = 0; j < n; ++j) maxdeg[j] = std::max(maxdeg[j], t.q[j]);
    pow.resize(n);
    for (int j = 0; j < n; ++j) {
      pow[j].resize(maxdeg[j] + 1);
      pow[j][0] = Poly<Series>::constant(Series(Rational(1)));
      for (std::int64_t k = 1; k <= maxdeg[j]; ++k)
        pow[j][k] = poly_mod(pow[j][k - 1] * w[j], m);
    }
  }

  Poly<Series> monomial(const Point& q, const Poly<Series>& m) const {
    Poly<Series> acc = Poly<Series>::constant(Series(Rational(1)));
    for (size_t j = 0; j < q.size(); ++j) {
      if (q[j] == 0) continue;
      acc = poly_mod(acc * pow[j][q[j]], m);
    }
    return acc;
  }
};

Poly<Series> eval_terms(const std::vector<XTTerm>& terms, const PowerTable& tab,
                        const Poly<Series>& m, int prec) {
  Poly<Series> acc;
  for (const auto& t : terms) {
    Series ct;
    for (int e = 0; e <= t.ct.degree(); ++e)
      if (!is_zero(t.ct[e])) ct += Series(t.ct[e], e);
    ct = ct.truncated(prec);
    acc += tab.monomial(t.q, m) * Poly<Series>::constant(ct);
  }
  return poly_mod(acc, m);
}

/// Determinant over the quotient ring by cofactor expansion (n is small).
Poly<Series> det_quotient(const std::vector<std::vector<Poly<Series>>>& a,
                          const Poly<Series>& m, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  size_t k = rows.size();
  if (k == 1) return a[rows[0]][cols[0]];
  Poly<Series> acc;
  std::vector<int> subrows(rows.begin() + 1, rows.end());
  for (size_t c = 0; c < k; ++c) {
    std::vector<int> subcols;
    for (size_t cc = 0; cc < k; ++cc)
      if (cc != c) subcols.push_back(cols[cc]);
    Poly<Series> minor = det_quotient(a, m, subrows, subcols);
    Poly<Series> term = poly_mod(a[rows[0]][cols[c]] * minor, m);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly<Series> det_quotient(const std::vector<std::vector<Poly<Series>>>& a,
                          const Poly<Series>& m) {
  std::vector<int> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  return det_quotient(a, m, idx, idx);
}

void assume_sol_precision(SeriesGeometricSolution& sol, int prec) {
  auto bump = [&](Poly<Series>& p, bool monic) {
    std::vector<Series> c(p.coeffs());
    for (size_t i = 0; i < c.size(); ++i) {
      if (monic && (int)i == p.degree()) continue;  // keep the exact leading 1
      c[i] = c[i].assume_precision(prec);
    }
    p = Poly<Series>(std::move(c));
  };
  bump(sol.m, true);
  for (auto& w : sol.par) bump(w, false);
}

}  // namespace

SeriesGeometricSolution lift_init(const GeometricSolution0D& sol0) {
  SeriesGeometricSolution sol;
  sol.u = sol0.u;
  sol.prec = 1;
  std::vector<Series> mc;
  for (int i = 0; i <= sol0.m.degree(); ++i)
    mc.push_back(i == sol0.m.degree() ? Series(sol0.m[i]) : Series(sol0.m[i]).truncated(1));
  sol.m = Poly<Series>(std::move(mc));
  for (const auto& w : sol0.w) {
    std::vector<Series> wc;
    for (int i = 0; i <= w.degree(); ++i) wc.push_back(Series(w[i]).truncated(1));
    sol.par.emplace_back(std::move(wc));
  }
  return sol;
}

bool check_substitution(const SeriesGeometricSolution& sol, const XTSystem& sys) {
  PowerTable tab(sys, sol.par, sol.m);
  for (const auto& eq : sys.eqs) {
    Poly<Series> v = eval_terms(eq, tab, sol.m, sol.prec);
    for (int i = 0; i <= v.degree(); ++i)
      if (!v[i].truncated(sol.prec).zero_known()) return false;
  }
  return true;
}

void newton_lift_to(SeriesGeometricSolution& sol, const XTSystem& sys, int target_prec) {
  if (sol.v_form) throw ConsistencyError("newton lift needs w-form parametrizations");
  int n = sys.n;
  while (sol.prec < target_prec) {
    int next = std::min(2 * sol.prec, target_prec);
    if (next <= sol.prec) throw PrecisionStall();
    assume_sol_precision(sol, next);
    const Poly<Series>& m = sol.m;
    PowerTable tab(sys, sol.par, m);
    // residuals and Jacobian in the quotient
    std::vector<Poly<Series>> e(n);
    std::vector<std::vector<Poly<Series>>> J(n, std::vector<Poly<Series>>(n));
    for (int i = 0; i < n; ++i) {
      e[i] = eval_terms(sys.eqs[i], tab, m, next);
      for (int j = 0; j < n; ++j) J[i][j] = eval_terms(sys.jac[i][j], tab, m, next);
    }
    // delta = J^{-1} e by Cramer's rule; the one inversion is T-adic
    Poly<Series> det = det_quotient(J, m);
    Poly<Series> inv_det;
    try {
      inv_det = invert_mod_tadic(det, m, next);
    } catch (const NotCoprime&) {
      throw SingularJacobian();
    }
    std::vector<Poly<Series>> wt(n);
    for (int i = 0; i < n; ++i) {
      auto Ji = J;
      for (int r = 0; r < n; ++r) Ji[r][i] = e[r];
      Poly<Series> di = poly_mod(det_quotient(Ji, m) * inv_det, m);
      wt[i] = sol.par[i] - di;
    }
    // Delta = u(w~) - Y mod m
    Poly<Series> delta;
    for (int i = 0; i < n; ++i) delta += wt[i] * Series(sol.u[i]);
    delta = poly_mod(delta - Poly<Series>::monomial(Series(Rational(1)), 1), m);
    Poly<Series> dm = m.derivative();
    Poly<Series> m_new = m - poly_mod(delta * dm, m);
    std::vector<Poly<Series>> w_new(n);
    for (int i = 0; i < n; ++i) w_new[i] = wt[i] - poly_mod(delta * wt[i].derivative(), m);
    sol.m = std::move(m_new);
    sol.par = std::move(w_new);
    sol.prec = next;
    if (!is_monic(sol.m)) throw ConsistencyError("lift lost monicity");
    if (!check_substitution(sol, sys))
      throw ConsistencyError("substitution invariant failed after a lifting step");
    // u(w) = Y mod (m, T^prec)
    Poly<Series> uy;
    for (int i = 0; i < n; ++i) uy += sol.par[i] * Series(sol.u[i]);
    uy = poly_mod(uy - Poly<Series>::monomial(Series(Rational(1)), 1), sol.m);
    for (int i = 0; i <= uy.degree(); ++i)
      if (!uy[i].truncated(sol.prec).zero_known())
        throw ConsistencyError("linear-form normalization failed after a lifting step");
  }
}

SeriesGeometricSolution newton_lift_stage1(const GeometricSolution0D& sol0,
                                           const XTSystem& sys, std::int64_t m_gamma) {
  SeriesGeometricSolution sol = lift_init(sol0);
  newton_lift_to(sol, sys, (int)m_gamma + 1);
  return sol;
}

void newton_lift_stage2(SeriesGeometricSolution& sol, const XTSystem& sys,
                        int target_prec) {
  newton_lift_to(sol, sys, target_prec);
}

// --------------------------------------------------------------------------
// Change of linear form, assembly, specialization.
// --------------------------------------------------------------------------

ChangedForm change_linear_form(const SeriesGeometricSolution& solU,
                               const std::vector<Integer>& gamma) {
  size_t n = solU.par.size();
  Integer gmin = gamma[0];
  for (size_t i = 1; i < n; ++i) gmin = std::min(gmin, gamma[i]);
  // phi = sum_i Lambda_i T^{gamma_i - gmin} w_i(Yt)
  Poly<JetS> phi;
  for (size_t i = 0; i < n; ++i) {
    long sh = Integer(gamma[i] - gmin).get_si();
    Poly<JetS> wi = solU.par[i].map([&](const Series& c) {
      Series val = c.shifted(sh);
      std::vector<Series> grad(n);
      grad[i] = val;
      Series v2 = val * solU.u[i];
      return JetS(std::move(v2), std::move(grad));
    });
    phi += wi;
  }
  Poly<JetS> mj = solU.m.map([](const Series& c) { return JetS(c); });
  Poly<JetS> cp = charpoly_of_multiplication(phi, mj);
  ChangedForm out;
  out.gamma = gamma;
  out.gmin = gmin;
  out.mjet = cp;
  out.sol.u = solU.u;
  out.sol.v_form = true;
  out.sol.prec = solU.prec;
  out.sol.m = cp.map([](const JetS& c) { return c.val; });
  out.sol.par.resize(n);
  for (size_t k = 0; k < n; ++k)
    out.sol.par[k] = -cp.map([&](const JetS& c) {
      return k < c.grad.size() ? c.grad[k] : Series();
    });
  if (!is_monic(out.sol.m)) throw ConsistencyError("changed form lost monicity");
  return out;
}

bool check_v_form(const SeriesGeometricSolution& sol, const XTSystem& sys) {
  // homogenized substitution: for every equation of total degree d,
  //   sum_q c_q T^{e_q} v^q (dm/dY)^{d - |q|} = 0 mod (m, T^prec)
  const Poly<Series>& m = sol.m;
  Poly<Series> dm = m.derivative();
  int n = sys.n;
  std::vector<std::int64_t> maxdeg(n, 0);
  std::int64_t dtot = 0;
  for (const auto& eq : sys.eqs)
    for (const auto& t : eq) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) {
        maxdeg[j] = std::max(maxdeg[j], t.q[j]);
        s += t.q[j];
      }
      dtot = std::max(dtot, s);
    }
  std::vector<std::vector<Poly<Series>>> pow(n);
  for (int j = 0; j < n; ++j) {
    pow[j].resize(maxdeg[j] + 1);
    pow[j][0] = Poly<Series>::constant(Series(Rational(1)));
    for (std::int64_t k = 1; k <= maxdeg[j]; ++k)
      pow[j][k] = poly_mod(pow[j][k - 1] * sol.par[j], m);
  }
  std::vector<Poly<Series>> dmpow(dtot + 1);
  dmpow[0] = Poly<Series>::constant(Series(Rational(1)));
  for (std::int64_t k = 1; k <= dtot; ++k) dmpow[k] = poly_mod(dmpow[k - 1] * dm, m);
  for (const auto& eq : sys.eqs) {
    Poly<Series> acc;
    for (const auto& t : eq) {
      Series ct;
      for (int e = 0; e <= t.ct.degree(); ++e)
        if (!is_zero(t.ct[e])) ct += Series(t.ct[e], e);
      std::int64_t s = 0;
      Poly<Series> term = Poly<Series>::constant(ct.truncated(sol.prec));
      for (int j = 0; j < n; ++j) {
        if (t.q[j] == 0) continue;
        s += t.q[j];
        term = poly_mod(term * pow[j][t.q[j]], m);
      }
      term = poly_mod(term * dmpow[dtot - s], m);
      acc += term;
    }
    acc = poly_mod(acc, m);
    for (int i = 0; i <= acc.degree(); ++i)
      if (!acc[i].truncated(sol.prec).zero_known()) return false;
  }
  return true;
}

CurveSolution assemble_and_pade(const std::vector<ChangedForm>& factors, int bound_e,
                                const std::vector<Rational>& u, int extra_slack) {
  if (factors.empty()) throw ConsistencyError("no cell factors to assemble");
  size_t n = u.size();
  // lambda = lcm of the last gamma coordinates
  Integer lam(1);
  for (const auto& f : factors) {
    Integer gn = f.gamma[n];
    Integer g;
    mpz_gcd(g.get_mpz_t(), lam.get_mpz_t(), gn.get_mpz_t());
    lam = lam / g * gn;
  }
  if (!lam.fits_sint_p() || lam.get_si() > 4096)
    throw ConsistencyError("denominator lcm of the subdivision is unreasonably large");
  int lambda = (int)lam.get_si();

  // shift to true exponents (Puiseux conjugation) and re-grid to the
  // lambda-grid, jets included
  Poly<JetS> prod = Poly<JetS>::constant(JetS(Series(Rational(1))));
  for (const auto& f : factors) {
    int gplus = (int)f.gamma[n].get_si();
    int regrid = lambda / gplus;
    long gmin = (long)f.gmin.get_si();
    int dg = f.mjet.degree();
    std::vector<JetS> c(dg + 1);
    for (int j = 0; j <= dg; ++j) {
      long sh = gmin * (dg - j);
      auto fix = [&](const Series& s) { return s.shifted(sh).regrid(regrid); };
      JetS cj = f.mjet[j];
      JetS out(fix(cj.val));
      out.grad.resize(n);
      for (size_t k = 0; k < n; ++k)
        out.grad[k] = k < cj.grad.size() ? fix(cj.grad[k]) : Series();
      c[j] = std::move(out);
    }
    prod = prod * Poly<JetS>(std::move(c));
  }
  int D = prod.degree();
  CurveSolution curve;
  curve.u = u;
  curve.degree = D;
  curve.bound_e = bound_e;
  curve.measured_deg_t = 0;
  curve.coeffs.resize(D);
  int need = lambda * (2 * bound_e) + 1;
  for (int j = 0; j < D; ++j) {
    JetS cj = prod[j];
    cj.grad.resize(n, Series());
    // fractional exponents must have cancelled...
    auto unregrid = [&](const Series& s) -> Series {
      if (s.precision() != Series::kExactPrec && s.precision() < need)
        throw ConsistencyError("assembled series lost too much precision");
      Series t = s.truncated(need);
      if (t.zero_known()) return Series::zero_mod(2 * bound_e + 1);
      std::vector<Rational> c;
      int lo = t.order(), hi = t.precision();
      if (lo % lambda != 0) throw FractionalResidue();
      for (int e = lo; e < hi; ++e) {
        Rational v = t.coeff(e);
        if (e % lambda != 0) {
          if (!is_zero(v)) throw FractionalResidue();
          continue;
        }
        c.push_back(v);
      }
      return Series(std::move(c), lo / lambda, lo / lambda + (int)c.size());
    };
    JetS true_c(unregrid(cj.val));
    true_c.grad.resize(n);
    for (size_t k = 0; k < n; ++k) true_c.grad[k] = unregrid(cj.grad[k]);
    // ...and the pole order must stay within E
    int pole = 0;
    if (!true_c.val.zero_known()) pole = std::max(pole, -true_c.val.order());
    for (const auto& g : true_c.grad)
      if (!g.zero_known()) pole = std::max(pole, -g.order());
    if (pole > bound_e) throw PadeDegenerate("pole order exceeds the height bound");
    JetS shifted(true_c.val.shifted(pole));
    shifted.grad.resize(n);
    for (size_t k = 0; k < n; ++k) shifted.grad[k] = true_c.grad[k].shifted(pole);
    int den_deg = bound_e - pole + extra_slack;
    int num_deg = bound_e + extra_slack;
    JetRationalFunction jrf = pade_approximant_jet(shifted, num_deg, den_deg);
    if (pole > 0) {
      PolyQ tpow = PolyQ::monomial(Rational(1), (size_t)pole);
      jrf.den = jrf.den * tpow;
      for (auto& dg : jrf.den_grad) dg = dg * tpow;
    }
    RationalFunction reduced = jrf.value_rf();
    if (reduced.num.degree() > bound_e || reduced.den.degree() > bound_e)
      throw PadeDegenerate("recovered coefficient exceeds the height bound");
    curve.measured_deg_t = std::max(curve.measured_deg_t, reduced.deg_t());
    curve.coeffs[j] = std::move(jrf);
  }
  return curve;
}

RationalFunction CurveSolution::mhat_coeff(int j) const {
  if (j == degree) return RationalFunction::from_poly(PolyQ::constant(Rational(1)));
  return coeffs[j].value_rf();
}

PolyQ CurveSolution::vhat_at(size_t i, const Rational& t) const {
  std::vector<Rational> c(degree);
  for (int j = 0; j < degree; ++j) {
    auto g = coeffs[j].grad_eval(i, t);
    if (!g) throw PoleAtOne("parametrization coefficient has a pole", Redraw::Lifting);
    c[j] = -*g;
  }
  return PolyQ(std::move(c));
}

GeometricSolution0D specialize_T1(const CurveSolution& curve) {
  std::vector<Rational> mc(curve.degree + 1);
  mc[curve.degree] = Rational(1);
  for (int j = 0; j < curve.degree; ++j) {
    auto v = curve.coeffs[j].value_eval(Rational(1));
    if (!v) throw PoleAtOne("curve coefficient has a pole at T=1", Redraw::Lifting);
    mc[j] = *v;
  }
  GeometricSolution0D sol;
  sol.u = curve.u;
  sol.m = PolyQ(std::move(mc));
  PolyQ dm = sol.m.derivative();
  if (poly_gcd(sol.m, dm).degree() != 0)
    throw NotSeparating("specialized minimal polynomial is not squarefree",
                        Redraw::LinearFormU);
  PolyQ inv;
  try {
    inv = modular_inverse(dm, sol.m);
  } catch (const NotCoprime&) {
    throw NotSeparating("derivative not invertible at T=1", Redraw::LinearFormU);
  }
  size_t n = curve.u.size();
  sol.w.resize(n);
  for (size_t i = 0; i < n; ++i) {
    PolyQ vi = curve.vhat_at(i, Rational(1));
    sol.w[i] = mulmod(inv, vi, sol.m);
  }
  return sol;
}

}  // namespace phsolve
