#ifndef PHSOLVE_RATFUN_HPP
#define PHSOLVE_RATFUN_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phsolve/poly.hpp"

namespace phsolve {

/// Reduced rational function over Q in the variable T: gcd(num, den) = 1 and
/// the denominator is monic.
struct RationalFunction {
  PolyQ num;
  PolyQ den = PolyQ::constant(Rational(1));

  RationalFunction() = default;
  RationalFunction(PolyQ n, PolyQ d) { assign(std::move(n), std::move(d)); }
  static RationalFunction from_poly(PolyQ p) { return RationalFunction(std::move(p), PolyQ::constant(Rational(1))); }

  void assign(PolyQ n, PolyQ d) {
    if (d.zero()) throw ConsistencyError("rational function with zero denominator");
    PolyQ g = poly_gcd(n, d);
    if (g.degree() > 0) {
      n = divrem(n, g).first;
      d = divrem(d, g).first;
    }
    Rational inv = Rational(1) / d.lc();
    num = n * inv;
    den = d * inv;
  }

  bool zero() const { return num.zero(); }
  bool is_polynomial() const { return den.degree() == 0; }

  std::optional<Rational> eval(const Rational& t) const {
    Rational d = den.eval(t);
    if (is_zero(d)) return std::nullopt;
    return num.eval(t) / d;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num * b.num, a.den * b.den);
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num == b.num && a.den == b.den;
  }

  int deg_t() const { return std::max(num.degree(), den.degree()); }

  std::string to_string() const { return "(" + num.to_string("T") + ")/(" + den.to_string("T") + ")"; }

  /// Taylor coefficients at T=0, den(0) != 0 required.
  std::vector<Rational> expand(int terms) const {
    if (is_zero(den[0])) throw ConsistencyError("expanding a rational function with a pole at 0");
    std::vector<Rational> out(terms, Rational(0));
    Rational inv0 = Rational(1) / den[0];
    for (int k = 0; k < terms; ++k) {
      Rational acc = num[k];
      for (int j = 1; j <= k && j <= den.degree(); ++j) acc -= den[j] * out[k - j];
      out[k] = acc * inv0;
    }
    return out;
  }
};

/// Pade approximant of a power series: returns p/q with deg p <= num_deg,
/// deg q <= den_deg, q(0) != 0 and p - q*s = 0 mod T^(num_deg+den_deg+1).
/// `s` must carry at least num_deg+den_deg+1 known coefficients from T^0.
/// Throws PadeDegenerate when no such pair exists.
inline RationalFunction pade_approximant(const std::vector<Rational>& s, int num_deg,
                                         int den_deg) {
  int N = num_deg + den_deg + 1;
  if ((int)s.size() < N) throw PadeDegenerate("series shorter than num_deg+den_deg+1");
  PolyQ sp(std::vector<Rational>(s.begin(), s.begin() + N));
  PolyQ r0 = PolyQ::monomial(Rational(1), N), r1 = sp;
  PolyQ t0, t1 = PolyQ::constant(Rational(1));
  while (r1.degree() > num_deg) {
    auto [q, r2] = divrem(r0, r1);
    PolyQ t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (t1.zero() || t1.degree() > den_deg || is_zero(t1[0]))
    throw PadeDegenerate();
  RationalFunction f(r1, t1);
  if (f.den.degree() > den_deg || f.num.degree() > num_deg || is_zero(f.den[0]))
    throw PadeDegenerate();
  // re-expansion check: the EEA guarantees p - q s = 0 mod T^N only up to
  // normalization questions, so verify outright.
  PolyQ resid = f.num - f.den * sp;
  for (int k = 0; k < N; ++k)
    if (!is_zero(resid[k])) throw PadeDegenerate("pade residual check failed");
  return f;
}

/// Pade approximant of a truncated series object (power series part only).
inline RationalFunction pade_approximant(const Series& s, int num_deg, int den_deg) {
  int N = num_deg + den_deg + 1;
  if (s.precision() < N) throw PadeDegenerate("series precision too low for pade");
  if (!s.zero_known() && s.order() < 0)
    throw PadeDegenerate("pade of a Laurent series needs the shifted form");
  std::vector<Rational> c(N);
  for (int k = 0; k < N; ++k) c[k] = s.coeff(k);
  return pade_approximant(c, num_deg, den_deg);
}

/// A rational function together with its first-order dependence on the
/// parameters Lambda: (num + eps_k*num_grad[k]) / (den + eps_k*den_grad[k]).
/// num/den are kept in the den(0)=1 frame the gradients were solved in; they
/// are not necessarily gcd-reduced.
struct JetRationalFunction {
  PolyQ num;
  PolyQ den = PolyQ::constant(Rational(1));
  std::vector<PolyQ> num_grad, den_grad;

  RationalFunction value_rf() const { return RationalFunction(num, den); }

  /// d/dLambda_k as an honest reduced rational function.
  RationalFunction grad_rf(size_t k) const {
    return RationalFunction(num_grad[k] * den - num * den_grad[k], den * den);
  }

  std::optional<Rational> value_eval(const Rational& t) const {
    Rational d = den.eval(t);
    if (is_zero(d)) return std::nullopt;
    return num.eval(t) / d;
  }

  std::optional<Rational> grad_eval(size_t k, const Rational& t) const {
    Rational d = den.eval(t);
    if (is_zero(d)) return std::nullopt;
    return (num_grad[k].eval(t) * d - num.eval(t) * den_grad[k].eval(t)) / (d * d);
  }
};

/// Pade recovery of a jet of series. The value part uses the EEA; the
/// gradient parts solve the linearized congruence
///     num_grad - den_grad*s - den*s_grad = 0 mod T^N
/// which is a square rational linear system in the den_grad coefficients
/// (den_grad(0) = 0 by the monic-at-0 normalization of the value part).
inline JetRationalFunction pade_approximant_jet(const Jet<Series>& s, int num_deg,
                                                int den_deg) {
  JetRationalFunction out;
  // normalize value denominator to den(0) = 1 for the linearization
  RationalFunction v = pade_approximant(s.val, num_deg, den_deg);
  Rational d0 = v.den[0];
  PolyQ q = v.den * (Rational(1) / d0);
  PolyQ p = v.num * (Rational(1) / d0);
  int N = num_deg + den_deg + 1;
  size_t n = s.grad.size();
  out.num_grad.resize(n);
  out.den_grad.resize(n);
  int dd = den_deg;
  std::vector<Rational> sv(N);
  for (int e = 0; e < N; ++e) sv[e] = s.val.coeff(e);
  PolyQ svp(sv);
  for (size_t k = 0; k < n; ++k) {
    if (s.grad[k].precision() < N) throw PadeDegenerate("gradient series precision too low");
    if (!s.grad[k].zero_known() && s.grad[k].order() < 0)
      throw PadeDegenerate("gradient series has a deeper pole than the value");
    std::vector<Rational> sg(N, Rational(0));
    for (int e = 0; e < N; ++e) sg[e] = s.grad[k].coeff(e);
    PolyQ sgp(sg);
    PolyQ qsg = q * sgp;  // den * s_grad
    // unknowns qh_1..qh_dd; equations: coefficient m of (qh*s + q*s_grad) = 0
    // for m = num_deg+1 .. N-1.
    int rows = N - 1 - num_deg;
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(dd + 1, Rational(0)));
    for (int r = 0; r < rows; ++r) {
      int m = num_deg + 1 + r;
      for (int j = 1; j <= dd; ++j)
        if (m - j >= 0 && m - j < N) A[r][j - 1] = svp[m - j];
      A[r][dd] = -qsg[m];  // rhs
    }
    // Gaussian elimination with free unknowns pinned to zero.
    std::vector<int> pivot_col(rows, -1);
    int rr = 0;
    for (int col = 0; col < dd && rr < rows; ++col) {
      int piv = -1;
      for (int r = rr; r < rows; ++r)
        if (!is_zero(A[r][col])) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(A[piv], A[rr]);
      Rational inv = Rational(1) / A[rr][col];
      for (auto& x : A[rr]) x *= inv;
      for (int r = 0; r < rows; ++r) {
        if (r == rr || is_zero(A[r][col])) continue;
        Rational f = A[r][col];
        for (int cc = col; cc <= dd; ++cc) A[r][cc] -= f * A[rr][cc];
      }
      pivot_col[rr] = col;
      ++rr;
    }
    for (int r = rr; r < rows; ++r)
      if (!is_zero(A[r][dd])) throw PadeDegenerate("gradient linear system inconsistent");
    std::vector<Rational> qh(dd + 1, Rational(0));  // qh[0] = 0 fixed
    for (int r = 0; r < rr; ++r) qh[pivot_col[r] + 1] = A[r][dd];
    PolyQ qhp(std::vector<Rational>(qh.begin(), qh.end()));
    PolyQ ph_full = qhp * svp + qsg;
    std::vector<Rational> ph(num_deg + 1, Rational(0));
    for (int e = 0; e <= num_deg; ++e) ph[e] = ph_full[e];
    PolyQ php(ph);
    // verify the jet congruence: (p + eps ph) - (q + eps qh)(s + eps sg) = 0 mod T^N
    PolyQ resid = php - qhp * svp - qsg;
    for (int e = 0; e < N; ++e)
      if (!is_zero(resid[e])) throw PadeDegenerate("jet pade residual check failed");
    out.num_grad[k] = php;
    out.den_grad[k] = qhp;
  }
  out.num = p;
  out.den = q;
  return out;
}

}  // namespace phsolve

#endif
