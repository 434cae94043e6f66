#ifndef PHSOLVE_POLY_HPP
#define PHSOLVE_POLY_HPP

#include <cassert>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "phsolve/errors.hpp"
#include "phsolve/jet.hpp"
#include "phsolve/rational.hpp"
#include "phsolve/series.hpp"

namespace phsolve {

/// Dense univariate polynomial over a commutative ring R, ascending
/// coefficients. Trailing coefficients that are exactly zero are trimmed, so
/// degree() is reliable whenever coefficients admit exact zero tests (over
/// truncated series we rely on monic moduli for degree bookkeeping instead).
template <class R>
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(R v) { return Poly(std::vector<R>{std::move(v)}); }
  static Poly monomial(R v, size_t e) {
    std::vector<R> c(e + 1, R());
    c[e] = std::move(v);
    return Poly(std::move(c));
  }

  int degree() const { return (int)c_.size() - 1; }
  bool zero() const { return c_.empty(); }
  const std::vector<R>& coeffs() const { return c_; }
  const R& operator[](size_t i) const {
    static const R kZero{};
    return i < c_.size() ? c_[i] : kZero;
  }
  void set_coeff(size_t i, R v) {
    if (i >= c_.size()) c_.resize(i + 1, R());
    c_[i] = std::move(v);
    trim();
  }
  const R& lc() const {
    assert(!c_.empty());
    return c_.back();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<R> c(std::max(a.c_.size(), b.c_.size()), R());
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return Poly();
    std::vector<R> c(a.c_.size() + b.c_.size() - 1, R());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (exact_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const R& s) {
    Poly r;
    r.c_.reserve(a.c_.size());
    for (const auto& x : a.c_) r.c_.push_back(x * s);
    r.trim();
    return r;
  }

  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) { return (a - b).zero(); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<R> c(c_.size() - 1, R());
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational((long)i);
    return Poly(std::move(c));
  }

  template <class S>
  S eval(const S& x) const {
    S acc{};
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + S(c_[i]);
    return acc;
  }

  /// Map coefficients through f (ring morphism or truncation).
  template <class F>
  auto map(F&& f) const -> Poly<decltype(f(std::declval<R>()))> {
    std::vector<decltype(f(std::declval<R>()))> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(f(x));
    return {std::move(c)};
  }

  std::string to_string(const char* var = "Y") const {
    if (zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (exact_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += coeff_str(c_[i]) + "*" + var + "^" + std::to_string(i);
    }
    return s;
  }

 private:
  static std::string coeff_str(const Rational& v) { return rat_to_string(v); }
  static std::string coeff_str(const Series& v) { return "(" + v.to_string() + ")"; }
  template <class S>
  static std::string coeff_str(const Jet<S>& v) {
    return v.to_string();
  }

  void trim() {
    while (!c_.empty() && exact_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

using PolyQ = Poly<Rational>;

template <class R>
bool is_monic(const Poly<R>& p) {
  return !p.zero() && exact_zero(p.lc() - R(1));
}

/// Division with remainder; the divisor's leading coefficient must be
/// invertible (throws the ring's own error otherwise).
template <class R>
std::pair<Poly<R>, Poly<R>> divrem(const Poly<R>& a, const Poly<R>& b) {
  if (b.zero()) throw ConsistencyError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<R>(), a};
  R inv_lb = ring_invert(b.lc());
  std::vector<R> rem(a.coeffs());
  int db = b.degree();
  std::vector<R> quot(a.degree() - db + 1, R());
  for (int i = a.degree(); i >= db; --i) {
    if (exact_zero(rem[i])) continue;
    R q = rem[i] * inv_lb;
    quot[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b[j];
    rem[i] = R();  // force exact cancellation of the leading term
  }
  rem.resize(db > 0 ? db : 0);
  return {Poly<R>(std::move(quot)), Poly<R>(std::move(rem))};
}

template <class R>
Poly<R> poly_mod(const Poly<R>& a, const Poly<R>& m) {
  return divrem(a, m).second;
}

template <class R>
Poly<R> mulmod(const Poly<R>& a, const Poly<R>& b, const Poly<R>& m) {
  return poly_mod(a * b, m);
}

template <class R>
Poly<R> make_monic(const Poly<R>& p) {
  if (p.zero()) return p;
  return p * ring_invert(p.lc());
}

/// Extended Euclidean algorithm over a field-like coefficient ring.
/// Returns (g, s, t) with g = gcd(a, b) monic and s*a + t*b = g.
/// gcd(x, 0) is the monic normalization of x.
template <class R>
std::tuple<Poly<R>, Poly<R>, Poly<R>> poly_eea_gcd(const Poly<R>& a, const Poly<R>& b) {
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0 = Poly<R>::constant(R(1)), s1;
  Poly<R> t0, t1 = Poly<R>::constant(R(1));
  while (!r1.zero()) {
    auto [q, r2] = divrem(r0, r1);
    Poly<R> s2 = s0 - q * s1;
    Poly<R> t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.zero()) return {r0, Poly<R>(), Poly<R>()};
  R inv = ring_invert(r0.lc());
  return {r0 * inv, s0 * inv, t0 * inv};
}

template <class R>
Poly<R> poly_gcd(const Poly<R>& a, const Poly<R>& b) {
  return std::get<0>(poly_eea_gcd(a, b));
}

/// Inverse of a modulo m (field-like R). Throws NotCoprime if gcd != 1.
template <class R>
Poly<R> modular_inverse(const Poly<R>& a, const Poly<R>& m) {
  auto [g, s, t] = poly_eea_gcd(a, m);
  (void)t;
  if (g.degree() != 0) throw NotCoprime();
  return poly_mod(s, m);
}

template <class R>
Poly<R> powmod(const Poly<R>& a, long e, const Poly<R>& m) {
  Poly<R> base = poly_mod(a, m);
  if (e < 0) {
    base = modular_inverse(base, m);
    e = -e;
  }
  Poly<R> r = Poly<R>::constant(R(1));
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Interpolation at distinct rational nodes (Newton form). Works over any
/// ring R with scalar multiplication by Q, since the divided differences only
/// divide by differences of the rational nodes.
template <class R>
Poly<R> interpolate(const std::vector<Rational>& nodes, const std::vector<R>& values) {
  assert(nodes.size() == values.size());
  size_t n = nodes.size();
  std::vector<R> dd = values;  // dd[i] becomes f[x_0..x_i]
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i) {
      Rational inv_den = Rational(1) / Rational(nodes[i] - nodes[i - k]);
      dd[i] = (dd[i] - dd[i - 1]) * inv_den;
      if (i == k) break;
    }
  Poly<R> p;
  for (size_t i = n; i-- > 0;) {
    // p = p*(Y - x_i) + dd[i]
    Poly<R> shift({R(-nodes[i]), R(1)});
    p = p * shift + Poly<R>::constant(dd[i]);
  }
  return p;
}

// --------------------------------------------------------------------------
// Resultants.
// --------------------------------------------------------------------------

/// Sylvester-determinant resultant over Q (exact Gaussian elimination).
inline Rational resultant_sylvester(const PolyQ& a, const PolyQ& b) {
  int da = a.degree(), db = b.degree();
  assert(da >= 0 && db >= 0);
  int n = da + db;
  if (n == 0) return Rational(1);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) m[i][i + j] = a[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) m[db + i][i + j] = b[db - j];
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!is_zero(m[r][col])) { piv = r; break; }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = Rational(1) / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      Rational f = m[r][col] * inv;
      for (int cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  return det;
}

/// EEA-based resultant over a field-like ring.
template <class R>
R resultant_eea(Poly<R> a, Poly<R> b) {
  if (a.zero() || b.zero()) return R();
  R res(1);
  bool negate = false;
  while (b.degree() > 0) {
    Poly<R> r = divrem(a, b).second;
    int da = a.degree(), db = b.degree(), dr = r.degree();
    if ((da & 1) && (db & 1)) negate = !negate;
    R lb_pow(1);
    for (int i = 0; i < da - (dr < 0 ? 0 : dr); ++i) lb_pow = lb_pow * b.lc();
    res = res * lb_pow;
    if (r.zero()) return R();  // common factor of positive degree
    a = std::move(b);
    b = std::move(r);
  }
  // b is a nonzero constant now
  R bc = b[0];
  R bpow(1);
  for (int i = 0; i < a.degree(); ++i) bpow = bpow * bc;
  res = res * bpow;
  return negate ? -res : res;
}

/// Traces-of-powers characteristic polynomial of multiplication by `a` in
/// R[Y]/(m), m monic of degree M. Division-free apart from divisions by the
/// integers 1..M (Newton's identities), so it is safe over jets and
/// truncated series. charpoly(Z) = prod over roots beta of m of (Z - a(beta)).
template <class R>
Poly<R> charpoly_of_multiplication(const Poly<R>& a, const Poly<R>& m) {
  assert(is_monic(m));
  int M = m.degree();
  if (M == 0) return Poly<R>::constant(R(1));
  Poly<R> ared = poly_mod(a, m);
  auto trace_of = [&](const Poly<R>& b) {
    R tr{};
    Poly<R> r = b;
    for (int i = 0; i < M; ++i) {
      tr = tr + r[i];
      if (i + 1 < M) {
        // r <- Y*r mod m
        std::vector<R> c(M + 1, R());
        for (int j = 0; j <= r.degree(); ++j) c[j + 1] = r[j];
        Poly<R> shifted(std::move(c));
        if (shifted.degree() == M) {
          R lead = shifted[M];
          shifted = shifted - m * lead;
        }
        r = std::move(shifted);
      }
    }
    return tr;
  };
  std::vector<R> p(M + 1, R());  // power sums p[1..M]
  Poly<R> ak = Poly<R>::constant(R(1));
  for (int k = 1; k <= M; ++k) {
    ak = mulmod(ak, ared, m);
    p[k] = trace_of(ak);
  }
  std::vector<R> e(M + 1, R());  // elementary symmetric functions
  e[0] = R(1);
  for (int k = 1; k <= M; ++k) {
    R acc{};
    Rational sign(1);
    for (int i = 1; i <= k; ++i) {
      acc = acc + e[k - i] * p[i] * sign;
      sign = -sign;
    }
    e[k] = ring_div_int(acc, k);
  }
  std::vector<R> cp(M + 1, R());
  Rational sign(1);
  for (int k = 0; k <= M; ++k) {
    cp[M - k] = e[k] * sign;
    sign = -sign;
  }
  return Poly<R>(std::move(cp));
}

/// Norm of a in R[Y]/(m) for monic m: the product of a over the roots of m.
template <class R>
R quotient_norm(const Poly<R>& a, const Poly<R>& m) {
  Poly<R> cp = charpoly_of_multiplication(a, m);
  R v = cp.eval(R());
  int M = m.degree();
  return (M & 1) ? -v : v;
}

namespace detail {
template <class R>
struct is_rational_ring : std::false_type {};
template <>
struct is_rational_ring<Rational> : std::true_type {};
}  // namespace detail

/// Resultant of two nonzero univariate polynomials, Sylvester-determinant
/// convention. Over Q a Sylvester determinant is used through degree 8 and
/// the EEA beyond; over other rings the division-free norm form is used when
/// the second argument's leading coefficient is invertible, with the EEA as
/// fallback.
template <class R>
R resultant_univariate(const Poly<R>& a, const Poly<R>& b) {
  if (a.zero() || b.zero()) {
    if ((a.zero() && b.degree() == 0) || (b.zero() && a.degree() == 0)) return R(1);
    return R();
  }
  if (a.degree() == 0 && b.degree() == 0) return R(1);
  if constexpr (detail::is_rational_ring<R>::value) {
    if (a.degree() <= 8 && b.degree() <= 8) return resultant_sylvester(a, b);
    return resultant_eea(a, b);
  } else {
    if (b.degree() == 0) {
      R r(1);
      for (int i = 0; i < a.degree(); ++i) r = r * b[0];
      return r;
    }
    // Res(a,b) = (-1)^(da*db) * lc(b)^da * Norm_{R[Y]/(b~)}(a), b~ = b/lc(b)
    R invl = ring_invert(b.lc());
    Poly<R> bm = b * invl;
    R norm = quotient_norm(a, bm);
    R scale(1);
    for (int i = 0; i < a.degree(); ++i) scale = scale * b.lc();
    R res = norm * scale;
    return ((a.degree() & 1) && (b.degree() & 1)) ? -res : res;
  }
}

/// Polynomial in two variables Y (outer) and Yt (inner): coefficient of Y^k
/// is a Poly in Yt.
template <class R>
using BiPoly = std::vector<Poly<R>>;

template <class R>
Poly<R> bipoly_eval_outer(const BiPoly<R>& a, const Rational& y) {
  Poly<R> acc;
  for (size_t i = a.size(); i-- > 0;) acc = acc * R(y) + a[i];
  return acc;
}

/// Res_Yt(a(Y, Yt), b(Yt)) as a polynomial in Y, computed by evaluating Y at
/// the rational nodes 0..deg_bound and interpolating. The Yt-degree of a is
/// taken formally over Q[Y]; specializations that drop it are rescaled by
/// (-1)^(db*drop) lc(b)^drop so every node carries the value of the
/// determinant polynomial. Exact whenever the true resultant has Y-degree
/// <= deg_bound.
template <class R>
Poly<R> bivariate_resultant_by_interpolation(const BiPoly<R>& a, const Poly<R>& b,
                                             int deg_bound) {
  int dt = -1;
  for (const auto& c : a) dt = std::max(dt, c.degree());
  int db = b.degree();
  std::vector<Rational> nodes;
  std::vector<R> values;
  nodes.reserve(deg_bound + 1);
  values.reserve(deg_bound + 1);
  for (int k = 0; k <= deg_bound; ++k) {
    Rational y((long)k);
    nodes.push_back(y);
    Poly<R> ay = bipoly_eval_outer(a, y);
    if (ay.zero()) {
      values.push_back(R());
      continue;
    }
    R v = resultant_univariate(ay, b);
    int drop = dt - ay.degree();
    for (int i = 0; i < drop; ++i) v = v * b.lc();
    if ((db & 1) && (drop & 1)) v = -v;
    values.push_back(v);
  }
  return interpolate(nodes, values);
}

}  // namespace phsolve

#endif
