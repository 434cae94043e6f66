#include "phsolve/deform.hpp"

#include <algorithm>

#include "phsolve/errors.hpp"

namespace phsolve {

void XTSystem::finalize() {
  jac.assign(eqs.size(), std::vector<std::vector<XTTerm>>(n));
  eval_length = 0;
  for (size_t i = 0; i < eqs.size(); ++i) {
    for (const auto& t : eqs[i]) {
      std::int64_t total = 0;
      for (int j = 0; j < n; ++j) {
        total += t.q[j];
        if (t.q[j] == 0) continue;
        XTTerm d;
        d.q = t.q;
        d.q[j] -= 1;
        d.ct = t.ct * Rational(t.q[j]);
        jac[i][j].push_back(std::move(d));
      }
      eval_length += 2 + (size_t)std::max<std::int64_t>(0, total - 1) + t.ct.degree();
    }
  }
}

XTSystem build_hhat(const SupportFamily& fam, const LiftingFunction& lift,
                    const std::vector<std::vector<Rational>>& aligned) {
  XTSystem sys;
  sys.n = fam.n;
  sys.eqs.resize(fam.n);
  for (int i = 0; i < fam.n; ++i) {
    int l = fam.class_of[i];
    for (size_t j = 0; j < fam.classes[l].size(); ++j) {
      if (is_zero(aligned[i][j])) continue;
      XTTerm t;
      t.q = fam.classes[l][j];
      t.ct = PolyQ::monomial(aligned[i][j], (size_t)lift.values[l][j]);
      sys.eqs[i].push_back(std::move(t));
    }
  }
  sys.finalize();
  return sys;
}

XTSystem build_hgamma(const SupportFamily& fam, const LiftingFunction& lift,
                      const std::vector<std::vector<Rational>>& aligned,
                      const MixedCell& cell) {
  XTSystem sys;
  sys.n = fam.n;
  sys.eqs.resize(fam.n);
  for (int i = 0; i < fam.n; ++i) {
    int l = fam.class_of[i];
    // m_i = min over the present monomials of <gamma, (q, w(q))>
    bool any = false;
    Integer mi(0);
    std::vector<Integer> vals(fam.classes[l].size());
    for (size_t j = 0; j < fam.classes[l].size(); ++j) {
      Integer v(0);
      for (int c = 0; c < fam.n; ++c) v += cell.gamma[c] * fam.classes[l][j][c];
      v += cell.gamma[fam.n] * lift.values[l][j];
      vals[j] = v;
      if (is_zero(aligned[i][j])) continue;
      if (!any || v < mi) mi = v;
      any = true;
    }
    if (!any) throw H2Violated("an equation vanishes identically");
    for (size_t j = 0; j < fam.classes[l].size(); ++j) {
      if (is_zero(aligned[i][j])) continue;
      Integer e = vals[j] - mi;
      if (e < 0 || !e.fits_slong_p())
        throw ConsistencyError("negative or oversized T-exponent in h_gamma");
      XTTerm t;
      t.q = fam.classes[l][j];
      t.ct = PolyQ::monomial(aligned[i][j], (size_t)e.get_si());
      sys.eqs[i].push_back(std::move(t));
    }
  }
  sys.finalize();
  return sys;
}

XTSystem build_second_deformation(const SparseSystem& f, const SparseSystem& g) {
  XTSystem sys;
  sys.n = f.n;
  sys.eqs.resize(f.n);
  for (int i = 0; i < f.n; ++i) {
    // combine the declared supports of f_i and g_i
    std::vector<Point> pts = f.supports[i];
    pts.insert(pts.end(), g.supports[i].begin(), g.supports[i].end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const auto& q : pts) {
      Rational fc(0), gc(0);
      for (size_t t = 0; t < f.supports[i].size(); ++t)
        if (f.supports[i][t] == q) fc += f.coeffs[i][t];
      for (size_t t = 0; t < g.supports[i].size(); ++t)
        if (g.supports[i][t] == q) gc += g.coeffs[i][t];
      // f_c + (1 - T) g_c
      PolyQ ct({fc + gc, -gc});
      if (ct.zero()) continue;
      XTTerm term;
      term.q = q;
      term.ct = ct;
      sys.eqs[i].push_back(std::move(term));
    }
  }
  sys.finalize();
  return sys;
}

}  // namespace phsolve
