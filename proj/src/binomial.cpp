#include "phsolve/binomial.hpp"

#include <algorithm>
#include <cmath>

#include "phsolve/errors.hpp"

namespace phsolve {

std::vector<std::vector<Rational>> align_coefficients(const SupportFamily& fam,
                                                      const SparseSystem& sys) {
  std::vector<std::vector<Rational>> aligned(sys.supports.size());
  for (size_t i = 0; i < sys.supports.size(); ++i) {
    const auto& cls = fam.classes[fam.class_of[i]];
    aligned[i].assign(cls.size(), Rational(0));
    for (size_t t = 0; t < sys.supports[i].size(); ++t) {
      auto it = std::lower_bound(cls.begin(), cls.end(), sys.supports[i][t]);
      if (it == cls.end() || *it != sys.supports[i][t])
        throw ConsistencyError("support point missing from its class");
      aligned[i][it - cls.begin()] += sys.coeffs[i][t];
    }
  }
  return aligned;
}

PolyQ eval_equation_mod(const SparseSystem& sys, int i, const std::vector<PolyQ>& w,
                        const PolyQ& m) {
  int n = sys.n;
  std::vector<std::vector<PolyQ>> pows(n);
  for (int j = 0; j < n; ++j) {
    std::int64_t maxdeg = 0;
    for (const auto& q : sys.supports[i]) maxdeg = std::max(maxdeg, q[j]);
    pows[j].resize(maxdeg + 1);
    pows[j][0] = PolyQ::constant(Rational(1));
    for (std::int64_t k = 1; k <= maxdeg; ++k) pows[j][k] = mulmod(pows[j][k - 1], w[j], m);
  }
  PolyQ acc;
  for (size_t t = 0; t < sys.supports[i].size(); ++t) {
    if (is_zero(sys.coeffs[i][t])) continue;
    PolyQ term = PolyQ::constant(sys.coeffs[i][t]);
    for (int j = 0; j < n; ++j) term = mulmod(term, pows[j][sys.supports[i][t][j]], m);
    acc += term;
  }
  return poly_mod(acc, m);
}

bool verify_geometric_solution(const GeometricSolution0D& sol, const SparseSystem& sys) {
  if (sol.m.degree() < 1) return false;
  if (!is_monic(sol.m)) return false;
  if (poly_gcd(sol.m, sol.m.derivative()).degree() != 0) return false;
  for (int i = 0; i < sys.n; ++i)
    if (!eval_equation_mod(sys, i, sol.w, sol.m).zero()) return false;
  return true;
}

BinomialSystem cell_to_binomial(const SupportFamily& fam, const MixedCell& cell,
                                const std::vector<std::vector<Rational>>& aligned) {
  int n = fam.n;
  BinomialSystem bin;
  bin.exponents.assign(n, std::vector<Integer>(n, Integer(0)));
  bin.rhs.assign(n, Rational(0));
  int col = 0;
  for (int l = 0; l < fam.s(); ++l) {
    const auto& cls = fam.classes[l];
    std::vector<Point> pts;
    for (int idx : cell.pts[l]) pts.push_back(cls[idx]);
    // translate so that the base point becomes the origin; prefer a true
    // origin when the cell contains one, else the lex-min point
    Point base = *std::min_element(pts.begin(), pts.end());
    for (const auto& p : pts) {
      bool zero = std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; });
      if (zero) { base = p; break; }
    }
    // nonzero translated points in lex order; base ("0") last
    std::vector<Point> nonzero;
    for (const auto& p : pts)
      if (p != base) nonzero.push_back(p);
    std::sort(nonzero.begin(), nonzero.end());
    int kl = fam.mult[l];
    if ((int)nonzero.size() != kl)
      throw ConsistencyError("cell has the wrong number of points in a class");
    // rows: equations of this class; columns: nonzero points then the base
    std::vector<int> eqs;
    for (int i = 0; i < n; ++i)
      if (fam.class_of[i] == l) eqs.push_back(i);
    std::vector<std::vector<Rational>> M(kl, std::vector<Rational>(kl));
    std::vector<Rational> B(kl);
    auto coeff_at = [&](int eq, const Point& p) {
      auto it = std::lower_bound(cls.begin(), cls.end(), p);
      return aligned[eq][it - cls.begin()];
    };
    for (int r = 0; r < kl; ++r) {
      for (int c = 0; c < kl; ++c) M[r][c] = coeff_at(eqs[r], nonzero[c]);
      B[r] = coeff_at(eqs[r], base);
    }
    // solve M x = -B exactly
    std::vector<Rational> x(kl);
    {
      std::vector<std::vector<Rational>> A(M);
      for (int r = 0; r < kl; ++r) A[r].push_back(-B[r]);
      for (int c = 0; c < kl; ++c) {
        int piv = -1;
        for (int r = c; r < kl; ++r)
          if (!is_zero(A[r][c])) { piv = r; break; }
        if (piv < 0) throw H2Violated("singular cell matrix");
        std::swap(A[piv], A[c]);
        Rational inv = Rational(1) / A[c][c];
        for (int cc = c; cc <= kl; ++cc) A[c][cc] *= inv;
        for (int r = 0; r < kl; ++r) {
          if (r == c || is_zero(A[r][c])) continue;
          Rational f = A[r][c];
          for (int cc = c; cc <= kl; ++cc) A[r][cc] -= f * A[c][cc];
        }
      }
      for (int r = 0; r < kl; ++r) x[r] = A[r][kl];
    }
    for (int c = 0; c < kl; ++c) {
      if (is_zero(x[c])) throw H2Violated("zero entry in the cell rhs");
      for (int row = 0; row < n; ++row)
        bin.exponents[row][col] = Integer(nonzero[c][row] - base[row]);
      bin.rhs[col] = x[c];
      ++col;
    }
  }
  return bin;
}

namespace {

Integer matrix_norm(const std::vector<std::vector<Integer>>& m) {
  Integer mx(0);
  for (const auto& row : m)
    for (const auto& v : row) mx = std::max(mx, Integer(abs(v)));
  return mx;
}

void add_row(std::vector<std::vector<Integer>>& m, int dst, int src, const Integer& f) {
  for (size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += f * m[src][j];
}

void add_col(std::vector<std::vector<Integer>>& m, int dst, int src, const Integer& f) {
  for (size_t i = 0; i < m.size(); ++i) m[i][dst] += f * m[i][src];
}

}  // namespace

SmithDecomposition smith_normal_form(const std::vector<std::vector<Integer>>& e) {
  int n = (int)e.size();
  std::vector<std::vector<Integer>> A(e), K(n, std::vector<Integer>(n, Integer(0))),
      L(n, std::vector<Integer>(n, Integer(0)));
  for (int i = 0; i < n; ++i) K[i][i] = L[i][i] = 1;
  if (int_det(A) == 0) throw ConsistencyError("smith normal form of a singular matrix");

  for (int k = 0; k < n; ++k) {
    for (;;) {
      // minimal nonzero |entry| in the trailing submatrix to (k, k)
      int pi = -1, pj = -1;
      Integer best(0);
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j) {
          if (A[i][j] == 0) continue;
          Integer a = abs(A[i][j]);
          if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
        }
      if (pi < 0) throw ConsistencyError("smith reduction ran out of pivots");
      if (pi != k) { std::swap(A[pi], A[k]); std::swap(K[pi], K[k]); }
      if (pj != k) {
        for (int i = 0; i < n; ++i) std::swap(A[i][pj], A[i][k]);
        for (int i = 0; i < n; ++i) std::swap(L[i][pj], L[i][k]);
      }
      bool clean = true;
      for (int i = k + 1; i < n; ++i) {
        if (A[i][k] == 0) continue;
        Integer f = -(A[i][k] / A[k][k]);
        if (f != 0) { add_row(A, i, k, f); add_row(K, i, k, f); }
        if (A[i][k] != 0) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        if (A[k][j] == 0) continue;
        Integer f = -(A[k][j] / A[k][k]);
        if (f != 0) { add_col(A, j, k, f); add_col(L, j, k, f); }
        if (A[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold a non-divisible entry into row k and re-reduce
      bool divides = true;
      for (int i = k + 1; i < n && divides; ++i)
        for (int j = k + 1; j < n && divides; ++j)
          if (A[i][j] % A[k][k] != 0) {
            add_row(A, k, i, Integer(1));
            add_row(K, k, i, Integer(1));
            divides = false;
          }
      if (divides) break;
    }
  }
  SmithDecomposition out;
  out.K = K;
  out.L = L;
  out.r.resize(n);
  for (int k = 0; k < n; ++k) {
    if (A[k][k] < 0) {
      for (int i = 0; i < n; ++i) L[i][k] = -L[i][k];
      A[k][k] = -A[k][k];
    }
    out.r[k] = A[k][k];
  }
  out.L = L;

  // invariants
  Integer detK = int_det(K), detL = int_det(L);
  if (abs(detK) != 1 || abs(detL) != 1)
    throw ConsistencyError("smith transforms are not unimodular");
  for (int k = 0; k + 1 < n; ++k)
    if (out.r[k + 1] % out.r[k] != 0) throw ConsistencyError("smith divisibility chain broken");
  // K E L = diag(r)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Integer acc(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) acc += K[i][a] * e[a][b] * L[b][j];
      if (acc != (i == j ? out.r[i] : Integer(0)))
        throw ConsistencyError("smith decomposition identity failed");
    }
  // log ||K|| <= (4n+5)(log n + log ||E||)
  double lhs = std::log2(std::max(1.0, matrix_norm(K).get_d()));
  double rhs = (4.0 * n + 5.0) *
               (std::log2((double)std::max(1, n)) +
                std::log2(std::max(1.0, matrix_norm(e).get_d())));
  if (lhs > rhs + 1e-9) throw ConsistencyError("smith norm bound violated");
  return out;
}

GeometricSolution0D solve_V0_in_Z(const std::vector<Integer>& r,
                                  const std::vector<Rational>& q,
                                  const std::vector<Rational>& utilde) {
  auto algo = [&](const std::vector<JetQ>& lambda) {
    return diagonal_minimal_poly_t<JetQ>(r, q, lambda);
  };
  JetMinpolyResult res = jet_lift_minpoly(algo, utilde, Redraw::LinearFormUt);
  GeometricSolution0D sol;
  sol.u = utilde;
  sol.m = res.m;
  sol.w = res.w;
  Integer dg(1);
  for (const auto& ri : r) dg *= ri;
  if (Integer((long)sol.m.degree()) != dg)
    throw NotSeparating("diagonal minimal polynomial degree dropped", Redraw::LinearFormUt);
  for (size_t j = 0; j < r.size(); ++j) {
    PolyQ pw = powmod(sol.w[j], r[j].get_si(), sol.m);
    if (!(pw == PolyQ::constant(q[j])))
      throw ConsistencyError("diagonal parametrization failed its defining check");
  }
  return sol;
}

GeometricSolution0D transport_to_X(const GeometricSolution0D& solZ,
                                   const std::vector<std::vector<Integer>>& K,
                                   const std::vector<Rational>& u) {
  size_t n = solZ.w.size();
  // P_i = prod_j w_j^{K[j][i]} mod m, independent of u
  std::vector<PolyQ> P(n);
  for (size_t i = 0; i < n; ++i) {
    PolyQ acc = PolyQ::constant(Rational(1));
    for (size_t j = 0; j < n; ++j) {
      long e = K[j][i].get_si();
      if (e == 0) continue;
      PolyQ pw;
      try {
        pw = powmod(solZ.w[j], e, solZ.m);
      } catch (const NotCoprime&) {
        throw ConsistencyError("coordinate not invertible in the torus: H2 violated upstream");
      }
      acc = mulmod(acc, pw, solZ.m);
    }
    P[i] = acc;
  }
  auto algo = [&](const std::vector<JetQ>& lambda) {
    Poly<JetQ> phi;
    for (size_t i = 0; i < n; ++i) {
      Poly<JetQ> pi = P[i].map([](const Rational& c) { return JetQ(c); });
      phi += pi * Poly<JetQ>::constant(lambda[i]);
    }
    Poly<JetQ> mz = solZ.m.map([](const Rational& c) { return JetQ(c); });
    return charpoly_of_multiplication(phi, mz);
  };
  JetMinpolyResult res = jet_lift_minpoly(algo, u, Redraw::LinearFormU);
  GeometricSolution0D sol;
  sol.u = u;
  sol.m = res.m;
  sol.w = res.w;
  return sol;
}

GeometricSolution0D solve_cell_start(const SupportFamily& fam, const MixedCell& cell,
                                     const std::vector<std::vector<Rational>>& aligned,
                                     const std::vector<Rational>& u,
                                     const std::vector<Rational>& utilde) {
  int n = fam.n;
  BinomialSystem bin = cell_to_binomial(fam, cell, aligned);
  Integer det = int_det(bin.exponents);
  if (det == 0) throw ConsistencyError("cell exponent matrix is singular");
  if (abs(det) != cell.d_gamma)
    throw ConsistencyError("cell volume disagrees with the exponent determinant");
  SmithDecomposition snf = smith_normal_form(bin.exponents);
  // q_j = prod_i p_i^{L[i][j]}
  std::vector<Rational> q(n);
  for (int j = 0; j < n; ++j) {
    Rational acc(1);
    for (int i = 0; i < n; ++i) acc *= rat_pow(bin.rhs[i], snf.L[i][j].get_si());
    q[j] = acc;
  }
  GeometricSolution0D solZ = solve_V0_in_Z(snf.r, q, utilde);
  GeometricSolution0D sol = transport_to_X(solZ, snf.K, u);
  if (Integer((long)sol.m.degree()) != cell.d_gamma)
    throw NotSeparating("start solution degree dropped", Redraw::LinearFormU);
  // unconditional end-to-end check: h^(0)(w) = 0 mod m
  SparseSystem h0;
  h0.n = n;
  h0.supports.resize(n);
  h0.coeffs.resize(n);
  for (int i = 0; i < n; ++i) {
    int l = fam.class_of[i];
    for (int idx : cell.pts[l]) {
      h0.supports[i].push_back(fam.classes[l][idx]);
      h0.coeffs[i].push_back(aligned[i][idx]);
    }
  }
  for (int i = 0; i < n; ++i)
    if (!eval_equation_mod(h0, i, sol.w, sol.m).zero())
      throw ConsistencyError("start-system substitution check failed");
  return sol;
}

}  // namespace phsolve
