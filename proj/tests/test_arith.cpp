#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phsolve/jetlift.hpp"
#include "phsolve/poly.hpp"
#include "phsolve/ratfun.hpp"
#include "phsolve/rng.hpp"
#include "phsolve/series.hpp"

using namespace phsolve;

namespace {

PolyQ qpoly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return PolyQ(std::move(v));
}

PolyQ random_poly(Rng& rng, int maxdeg, long coeff_range) {
  int d = (int)rng.below(maxdeg + 1);
  std::vector<Rational> c(d + 1);
  for (auto& x : c) x = Rational((long)rng.below(2 * coeff_range + 1) - coeff_range);
  return PolyQ(std::move(c));
}

}  // namespace

TEST_CASE("rational basics") {
  Rational a = rat_from_string("6/4");
  CHECK(rat_to_string(a) == "3/2");
  CHECK(rat_pow(a, -2) == Rational(4, 9));
  CHECK(rat_from_string("-7") == Rational(-7));
}

TEST_CASE("poly_eea_gcd examples") {
  auto [g1, s1, t1] = poly_eea_gcd(qpoly({-1, 0, 1}), qpoly({-1, 1}));
  CHECK(g1 == qpoly({-1, 1}));  // gcd(Y^2-1, Y-1) = Y-1
  auto [g2, s2, t2] = poly_eea_gcd(qpoly({0, 0, 1}), PolyQ());
  CHECK(g2 == qpoly({0, 0, 1}));  // gcd(Y^2, 0) = Y^2 monic
  auto [g3, s3, t3] = poly_eea_gcd(qpoly({2, -3, 1}), qpoly({-1, 0, 1}));
  CHECK(g3 == qpoly({-1, 1}));  // (Y-1)(Y-2) vs (Y-1)(Y+1)
}

TEST_CASE("eea bezout identity on random pairs") {
  Rng rng(42);
  for (int it = 0; it < 100; ++it) {
    PolyQ a = random_poly(rng, 8, 5), b = random_poly(rng, 8, 5);
    if (a.zero() && b.zero()) continue;
    auto [g, s, t] = poly_eea_gcd(a, b);
    CHECK(s * a + t * b == g);
    if (!g.zero()) {
      CHECK(exact_zero(g.lc() - Rational(1)));
      if (!a.zero()) CHECK(divrem(a, g).second.zero());
      if (!b.zero()) CHECK(divrem(b, g).second.zero());
    }
  }
}

TEST_CASE("resultant examples") {
  CHECK(resultant_univariate(qpoly({-2, 1}), qpoly({-1, 0, 1})) == Rational(3));
  CHECK(resultant_univariate(qpoly({-1, 0, 1}), qpoly({-1, 0, 1})) == Rational(0));
  CHECK(resultant_univariate(qpoly({-2, 0, 1}), qpoly({-3, 0, 1})) == Rational(1));
}

TEST_CASE("resultant vanishes iff gcd nontrivial, eea matches sylvester") {
  Rng rng(7);
  int checked = 0;
  for (int it = 0; it < 150; ++it) {
    PolyQ a = random_poly(rng, 6, 4), b = random_poly(rng, 6, 4);
    if (a.zero() || b.zero()) continue;
    ++checked;
    Rational r = resultant_univariate(a, b);
    bool gcd_nontrivial = poly_gcd(a, b).degree() >= 1;
    CHECK(is_zero(r) == gcd_nontrivial);
    if (a.degree() >= 1 && b.degree() >= 1)
      CHECK(resultant_sylvester(a, b) == resultant_eea(a, b));
  }
  CHECK(checked >= 100);
}

TEST_CASE("bivariate resultant by interpolation") {
  // Res_Yt(Y - Yt, Yt^2 - 1) = Y^2 - 1
  BiPoly<Rational> a1 = {qpoly({0, -1}), qpoly({1})};
  CHECK(bivariate_resultant_by_interpolation(a1, qpoly({-1, 0, 1}), 2) == qpoly({-1, 0, 1}));
  // Res_Yt(Y - 2Yt, Yt - 3): the single root substitution gives +-(Y - 6);
  // the Sylvester determinant convention lands on 6 - Y since lc = -2 and
  // both degrees are odd.
  BiPoly<Rational> a2 = {qpoly({0, -2}), qpoly({1})};
  CHECK(bivariate_resultant_by_interpolation(a2, qpoly({-3, 1}), 1) == qpoly({6, -1}));
  // Res_Yt(Y - (Yt + Yt^2), Yt^2 - 2) = Y^2 - 4Y + 2
  BiPoly<Rational> a3 = {qpoly({0, -1, -1}), qpoly({1})};
  CHECK(bivariate_resultant_by_interpolation(a3, qpoly({-2, 0, 1}), 2) == qpoly({2, -4, 1}));
}

namespace {

// Sylvester-matrix resultant in Yt with entries in Q[Y], fraction-free
// Bareiss elimination with exact polynomial divisions.
PolyQ sylvester_resultant_bivariate(const BiPoly<Rational>& a, const PolyQ& b) {
  int dt = -1;
  for (const auto& c : a) dt = std::max(dt, c.degree());
  int db = b.degree();
  int N = dt + db;
  // coefficient of Yt^j in a, as a polynomial in Y
  auto acoef = [&](int j) {
    PolyQ out;
    for (size_t i = 0; i < a.size(); ++i) out += PolyQ::monomial(Rational(1), i) * PolyQ::constant(a[i][j]);
    return out;
  };
  std::vector<std::vector<PolyQ>> m(N, std::vector<PolyQ>(N));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= dt; ++j) m[i][i + j] = acoef(dt - j);
  for (int i = 0; i < dt; ++i)
    for (int j = 0; j <= db; ++j) m[db + i][i + j] = PolyQ::constant(b[db - j]);
  PolyQ prev = PolyQ::constant(Rational(1));
  int sign = 1;
  for (int k = 0; k + 1 < N; ++k) {
    if (m[k][k].zero()) {
      int piv = -1;
      for (int r = k + 1; r < N; ++r)
        if (!m[r][k].zero()) { piv = r; break; }
      if (piv < 0) return PolyQ();
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j) {
        auto [q, r] = divrem(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        REQUIRE(r.zero());
        m[i][j] = q;
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[N - 1][N - 1] : -m[N - 1][N - 1];
}

}  // namespace

TEST_CASE("bivariate resultant agrees with direct sylvester expansion on randoms") {
  Rng rng(99);
  for (int it = 0; it < 40; ++it) {
    int dy = 1 + (int)rng.below(3), dt = 1 + (int)rng.below(3);
    BiPoly<Rational> a(dy + 1);
    for (int i = 0; i <= dy; ++i) a[i] = random_poly(rng, dt, 3);
    PolyQ b = random_poly(rng, 4, 3);
    while (b.degree() < 1) b = random_poly(rng, 4, 3);
    int true_dt = -1;
    for (const auto& c : a) true_dt = std::max(true_dt, c.degree());
    if (true_dt < 1) continue;
    PolyQ oracle = sylvester_resultant_bivariate(a, b);
    int bound = std::max(0, (int)a.size() - 1) * b.degree() + 2;
    PolyQ via_interp = bivariate_resultant_by_interpolation(a, b, bound);
    CHECK(via_interp == oracle);
  }
}

TEST_CASE("modular inverse") {
  CHECK(modular_inverse(qpoly({0, 1}), qpoly({-1, 1})) == qpoly({1}));
  PolyQ inv = modular_inverse(qpoly({1, 1}), qpoly({-2, 0, 1}));
  CHECK(mulmod(inv, qpoly({1, 1}), qpoly({-2, 0, 1})) == qpoly({1}));
  CHECK(inv == qpoly({-1, 1}));
  CHECK_THROWS_AS(modular_inverse(qpoly({-1, 1}), qpoly({-1, 0, 1})), NotCoprime);
  Rng rng(5);
  for (int it = 0; it < 50; ++it) {
    PolyQ m = random_poly(rng, 6, 4);
    while (m.degree() < 1) m = random_poly(rng, 6, 4);
    PolyQ a = random_poly(rng, 5, 4);
    if (a.zero()) continue;
    try {
      PolyQ v = modular_inverse(a, m);
      CHECK(mulmod(v, a, m) == qpoly({1}));
    } catch (const NotCoprime&) {
      CHECK(poly_gcd(a, m).degree() >= 1);
    }
  }
}

TEST_CASE("series arithmetic and precision tracking") {
  Series one_minus_t(std::vector<Rational>{Rational(1), Rational(-1)}, 0, Series::kExactPrec);
  Series inv = one_minus_t.inverse(5);  // 1 + T + T^2 + T^3 + T^4 + O(T^5)
  for (int k = 0; k < 5; ++k) CHECK(inv.coeff(k) == Rational(1));
  CHECK(inv.precision() == 5);
  Series prod = one_minus_t * inv;
  CHECK(prod.coeff(0) == Rational(1));
  for (int k = 1; k < 5; ++k) CHECK(prod.coeff(k) == Rational(0));
  // laurent shift and regrid
  Series s = Series(Rational(3), -2) + Series(Rational(5), 1);
  Series r = s.regrid(3);
  CHECK(r.coeff(-6) == Rational(3));
  CHECK(r.coeff(3) == Rational(5));
  // precision of a product honours orders
  Series a({Rational(1)}, 0, 4);   // 1 + O(T^4)
  Series b = Series(Rational(1), 3);  // T^3 exact
  CHECK((a * b).precision() == 7);
}

TEST_CASE("jets differentiate expressions") {
  // E(L1, L2) = (L1*L2 + 3)^2 / L2 at (2, 5); compare against hand gradient.
  std::vector<Rational> u = {Rational(2), Rational(5)};
  JetQ l1 = JetQ::seed(u[0], 0, 2), l2 = JetQ::seed(u[1], 1, 2);
  JetQ e = (l1 * l2 + JetQ(3)) * (l1 * l2 + JetQ(3)) * ring_invert(l2);
  Rational f = Rational(13 * 13) / 5;
  CHECK(e.val == f);
  // dE/dL1 = 2(L1L2+3)L2/L2 = 2*13, dE/dL2 = 2(L1L2+3)L1/L2 - (L1L2+3)^2/L2^2
  CHECK(e.grad[0] == Rational(26));
  CHECK(e.grad[1] == Rational(2 * 13 * 2, 5) - Rational(169, 25));
  CHECK_THROWS_AS(ring_invert(JetQ(Rational(0))), JetSingular);
}

TEST_CASE("jets match symbolic derivative on random expression trees") {
  Rng rng(2024);
  int n = 3;
  // nodes: random binary ops over {L0, L1, L2, constants}
  for (int it = 0; it < 40; ++it) {
    // represent expression as a vector of instructions
    struct Ins { int op; int a; int b; Rational c; };
    std::vector<Ins> prog;
    int len = 4 + (int)rng.below(16);
    for (int i = 0; i < len; ++i) {
      Ins ins;
      ins.op = (int)rng.below(4);  // 0 leaf-var, 1 leaf-const, 2 add, 3 mul
      if (i < 2) ins.op = (int)rng.below(2);
      ins.a = i > 0 ? (int)rng.below(i) : 0;
      ins.b = i > 0 ? (int)rng.below(i) : 0;
      ins.c = ins.op == 0 ? Rational((long)rng.below(n)) : Rational((long)rng.below(7) - 3);
      prog.push_back(ins);
    }
    std::vector<Rational> u = {Rational(2), Rational(-3), Rational(5)};
    // jet evaluation
    std::vector<JetQ> jv;
    for (const auto& ins : prog) {
      switch (ins.op) {
        case 0: jv.push_back(JetQ::seed(u[ins.c.get_num().get_si()], ins.c.get_num().get_si(), n)); break;
        case 1: jv.push_back(JetQ(ins.c)); break;
        case 2: jv.push_back(jv[ins.a] + jv[ins.b]); break;
        default: jv.push_back(jv[ins.a] * jv[ins.b]); break;
      }
    }
    // forward-mode reference with finite symbolic derivative: evaluate value and
    // each partial by the chain rule independently
    for (int k = 0; k < n; ++k) {
      std::vector<Rational> val(prog.size()), der(prog.size());
      for (size_t i = 0; i < prog.size(); ++i) {
        const auto& ins = prog[i];
        switch (ins.op) {
          case 0: {
            long vi = ins.c.get_num().get_si();
            val[i] = u[vi];
            der[i] = vi == k ? 1 : 0;
            break;
          }
          case 1: val[i] = ins.c; der[i] = 0; break;
          case 2: val[i] = val[ins.a] + val[ins.b]; der[i] = der[ins.a] + der[ins.b]; break;
          default:
            val[i] = val[ins.a] * val[ins.b];
            der[i] = der[ins.a] * val[ins.b] + val[ins.a] * der[ins.b];
        }
      }
      CHECK(jv.back().val == val.back());
      Rational jg = k < (int)jv.back().grad.size() ? jv.back().grad[k] : Rational(0);
      CHECK(jg == der.back());
    }
  }
}

TEST_CASE("pade examples") {
  // 1/(1-T); canonical form has a monic denominator, so (1, 1-T) ~ (-1, T-1)
  std::vector<Rational> geo = {1, 1, 1, 1, 1};
  RationalFunction f = pade_approximant(geo, 0, 1);
  CHECK(f == RationalFunction(qpoly({1}), qpoly({1, -1})));
  CHECK(f.eval(Rational(1, 2)).value() == Rational(2));
  std::vector<Rational> c3 = {3, 0, 0, 0, 0};
  RationalFunction g = pade_approximant(c3, 0, 0);
  CHECK(g.num == qpoly({3}));
  CHECK(g.den == qpoly({1}));
  // (1+T)/(1-2T) re-expanded
  RationalFunction target(qpoly({1, 1}), qpoly({1, -2}));
  auto coeffs = target.expand(5);
  RationalFunction h = pade_approximant(coeffs, 1, 1);
  CHECK(h == target);
}

TEST_CASE("pade roundtrip on random rational functions") {
  Rng rng(31337);
  int done = 0;
  for (int it = 0; it < 200 && done < 100; ++it) {
    PolyQ p = random_poly(rng, 6, 8);
    PolyQ q = random_poly(rng, 6, 8);
    if (q.zero() || is_zero(q[0])) continue;
    RationalFunction f(p, q);
    if (is_zero(f.den[0])) continue;
    auto c = f.expand(13);
    RationalFunction g = pade_approximant(c, 6, 6);
    CHECK(g == f);
    // re-expansion reproduces the input series exactly through order 12
    auto c2 = g.expand(13);
    CHECK(c == c2);
    ++done;
  }
  CHECK(done == 100);
}

TEST_CASE("jet pade recovers parameter derivatives") {
  // family a(L, T) = (1 + L*T) / (1 - T), value at L=2, gradient wrt L.
  // series: (1 + L T) * sum T^k
  int N = 8;
  std::vector<Rational> val(N), grad(N);
  for (int k = 0; k < N; ++k) {
    val[k] = k == 0 ? Rational(1) : Rational(1) + Rational(2);  // 1, 3, 3, ...
    grad[k] = k == 0 ? Rational(0) : Rational(1);
  }
  Jet<Series> s(Series(val, 0, N), {Series(grad, 0, N)});
  JetRationalFunction jf = pade_approximant_jet(s, 1, 1);
  CHECK(jf.value_rf() == RationalFunction(qpoly({1, 2}), qpoly({1, -1})));
  RationalFunction dfdL = jf.grad_rf(0);
  // d/dL[(1+LT)/(1-T)] = T/(1-T)
  CHECK(dfdL == RationalFunction(qpoly({0, 1}), qpoly({1, -1})));
}

TEST_CASE("charpoly of multiplication") {
  // Q[Y]/(Y^2-3Y+2), multiplication by Y has charpoly m itself
  PolyQ m = qpoly({2, -3, 1});
  CHECK(charpoly_of_multiplication(qpoly({0, 1}), m) == m);
  // multiplication by Y^2: eigenvalues 1,4 -> Z^2-5Z+4
  CHECK(charpoly_of_multiplication(qpoly({0, 0, 1}), m) == qpoly({4, -5, 1}));
  // norm
  CHECK(quotient_norm(qpoly({0, 1}), m) == Rational(2));
}

TEST_CASE("jet_lift_minpoly on toy varieties") {
  // variety {1, 2} in dim 1, u = X1: m = (Y-L)(Y-2L) at L=1
  auto algo1 = [](const std::vector<JetQ>& L) {
    Poly<JetQ> f({-L[0], JetQ(1)});
    Poly<JetQ> g({-(L[0] + L[0]), JetQ(1)});
    return f * g;
  };
  auto r1 = jet_lift_minpoly(algo1, {Rational(1)});
  CHECK(r1.m == qpoly({2, -3, 1}));
  CHECK(r1.w[0] == qpoly({0, 1}));  // identity parametrization
  // variety {(1,1),(2,3)} in dim 2, u = X1: w2 = 2Y-1
  auto algo2 = [](const std::vector<JetQ>& L) {
    Poly<JetQ> f({-(L[0] + L[1]), JetQ(1)});
    Poly<JetQ> g({-(L[0] * JetQ(2) + L[1] * JetQ(3)), JetQ(1)});
    return f * g;
  };
  auto r2 = jet_lift_minpoly(algo2, {Rational(1), Rational(0)});
  CHECK(r2.m == qpoly({2, -3, 1}));
  CHECK(r2.w[0] == qpoly({0, 1}));
  CHECK(r2.w[1] == qpoly({-1, 2}));
  // single point {(5, 7)}: constants
  auto algo3 = [](const std::vector<JetQ>& L) {
    return Poly<JetQ>({-(L[0] * JetQ(5) + L[1] * JetQ(7)), JetQ(1)});
  };
  auto r3 = jet_lift_minpoly(algo3, {Rational(2), Rational(3)});
  CHECK(r3.m == qpoly({-31, 1}));
  CHECK(r3.w[0] == qpoly({5}));
  CHECK(r3.w[1] == qpoly({7}));
}

TEST_CASE("tadic inverse modulo a series polynomial") {
  // m = Y^2 - (1+T), invert (2Y) mod m to precision 6
  std::vector<Series> mc = {Series(Rational(-1)) + Series(Rational(-1), 1), Series(Rational(0)),
                            Series(Rational(1))};
  Poly<Series> m(mc);
  Poly<Series> a({Series(Rational(0)), Series(Rational(2))});
  Poly<Series> b = invert_mod_tadic(a, m, 6);
  Poly<Series> prod = poly_mod(a * b, m);
  CHECK(prod[0].coeff(0) == Rational(1));
  for (int k = 1; k < 6; ++k) CHECK(prod[0].coeff(k) == Rational(0));
  CHECK(prod[1].zero_known());
}
