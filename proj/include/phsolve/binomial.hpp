#ifndef PHSOLVE_BINOMIAL_HPP
#define PHSOLVE_BINOMIAL_HPP

#include <vector>

#include "phsolve/jetlift.hpp"
#include "phsolve/system.hpp"

namespace phsolve {

/// X^{alpha_1} = p_1, ..., X^{alpha_n} = p_n with integer exponent columns
/// alpha_j (possibly negative after the cell translation) and nonzero rhs.
struct BinomialSystem {
  std::vector<std::vector<Integer>> exponents;  // exponents[i][j]: row i of column alpha_j
  std::vector<Rational> rhs;
};

/// K * E * L = diag(r) with K, L unimodular and positive r_1 | r_2 | ... | r_n.
struct SmithDecomposition {
  std::vector<std::vector<Integer>> K, L;
  std::vector<Integer> r;
};

/// Reduce the start system h^(0)_gamma of a mixed cell to binomial form.
/// `aligned` are the coefficients of h per equation in the family's class
/// point order. Throws H2Violated when a class matrix is singular or some
/// rhs entry vanishes.
BinomialSystem cell_to_binomial(const SupportFamily& fam, const MixedCell& cell,
                                const std::vector<std::vector<Rational>>& aligned);

/// Classical row/column reduction with minimal-pivot selection; asserts the
/// unimodularity, the divisibility chain and the norm sanity bound.
SmithDecomposition smith_normal_form(const std::vector<std::vector<Integer>>& e);

/// Minimal polynomial of u over the diagonal system Z_j^{r_j} = q_j via the
/// recursive resultants, monic. Generic in the coefficient ring so the same
/// code runs over Q and over jets.
template <class C>
Poly<C> diagonal_minimal_poly_t(const std::vector<Integer>& r,
                                const std::vector<Rational>& q, const std::vector<C>& u) {
  size_t n = r.size();
  auto upow = [](const C& x, long e) {
    C b = e < 0 ? ring_invert(x) : x;
    long k = e < 0 ? -e : e;
    C out(1);
    for (long i = 0; i < k; ++i) out = out * b;
    return out;
  };
  long r0 = r[0].get_si();
  Poly<C> m = Poly<C>::monomial(upow(u[0], -r0), (size_t)r0) - Poly<C>::constant(C(q[0]));
  m = make_monic(m);
  long degree = r0;
  for (size_t i = 1; i < n; ++i) {
    long ri = r[i].get_si();
    C ci = upow(u[i], -ri);
    // f(Y, Yt) = c_i (Y - Yt)^{r_i} - q_i as a BiPoly in (Y, Yt)
    BiPoly<C> f((size_t)ri + 1);
    Rational binom(1);
    for (long k = 0; k <= ri; ++k) {
      // coefficient of Y^k: c_i * C(r_i, k) * (-Yt)^{r_i - k}
      Rational scale = (ri - k) % 2 == 0 ? binom : Rational(-binom);
      f[k] = Poly<C>::monomial(ci * scale, (size_t)(ri - k));
      binom = binom * Rational(ri - k) / Rational(k + 1);
    }
    f[0] = f[0] - Poly<C>::constant(C(q[i]));
    degree *= ri;
    m = bivariate_resultant_by_interpolation(f, m, (int)degree);
    m = make_monic(m);
  }
  return m;
}

inline PolyQ diagonal_minimal_poly(const std::vector<Integer>& r,
                                   const std::vector<Rational>& q,
                                   const std::vector<Rational>& u) {
  return diagonal_minimal_poly_t<Rational>(r, q, u);
}

/// Geometric solution of the diagonal system Z_j^{r_j} = q_j in the Z
/// coordinates (jets through the resultant recursion). Verifies
/// w_j^{r_j} = q_j mod m on every output.
GeometricSolution0D solve_V0_in_Z(const std::vector<Integer>& r,
                                  const std::vector<Rational>& q,
                                  const std::vector<Rational>& utilde);

/// Transport a diagonal-coordinates solution back through X_i = Z^{K e_i}.
GeometricSolution0D transport_to_X(const GeometricSolution0D& solZ,
                                   const std::vector<std::vector<Integer>>& K,
                                   const std::vector<Rational>& u);

/// Full start-system solve for one mixed cell: binomial reduction, Smith
/// normal form, diagonal solve with u~, transport to X with u, and the
/// unconditional substitution check h^(0)(w) = 0 mod m.
GeometricSolution0D solve_cell_start(const SupportFamily& fam, const MixedCell& cell,
                                     const std::vector<std::vector<Rational>>& aligned,
                                     const std::vector<Rational>& u,
                                     const std::vector<Rational>& utilde);

}  // namespace phsolve

#endif
