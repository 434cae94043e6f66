#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "phsolve/binomial.hpp"
#include "phsolve/errors.hpp"
#include "phsolve/rng.hpp"

using namespace phsolve;

namespace {

PolyQ qpoly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return PolyQ(std::move(v));
}

std::vector<std::vector<Integer>> imat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Integer>> m;
  for (auto& r : rows) {
    std::vector<Integer> row;
    for (long x : r) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  return m;
}

MixedCell whole_support_cell(const SupportFamily& fam) {
  // cell consisting of all points of every class (valid when each class is
  // a simplex); gamma plays no role in cell_to_binomial
  MixedCell c;
  c.pts.resize(fam.s());
  for (int l = 0; l < fam.s(); ++l)
    for (size_t j = 0; j < fam.classes[l].size(); ++j) c.pts[l].push_back((int)j);
  c.gamma.assign(fam.n + 1, Integer(0));
  c.gamma[fam.n] = 1;
  Integer d(1);
  c.d_gamma = d;
  return c;
}

}  // namespace

TEST_CASE("cell_to_binomial one equation") {
  // h^(0) = 3 - 12 x^2 on the cell {0, 2}: rearranges to x^2 = 1/4
  SparseSystem h;
  h.n = 1;
  h.supports = {{{0}, {2}}};
  h.coeffs = {{Rational(3), Rational(-12)}};
  auto fam = group_supports(h.supports);
  auto aligned = align_coefficients(fam, h);
  MixedCell cell = whole_support_cell(fam);
  cell.d_gamma = 2;
  BinomialSystem bin = cell_to_binomial(fam, cell, aligned);
  CHECK(bin.exponents[0][0] == 2);
  CHECK(bin.rhs[0] == Rational(1, 4));
}

TEST_CASE("cell_to_binomial type (1,1)") {
  // h1 = 1 - x, h2 = 2 - y: E = I, p = (1, 2)
  SparseSystem h;
  h.n = 2;
  h.supports = {{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}};
  h.coeffs = {{Rational(1), Rational(-1)}, {Rational(2), Rational(-1)}};
  auto fam = group_supports(h.supports);
  auto aligned = align_coefficients(fam, h);
  MixedCell cell = whole_support_cell(fam);
  cell.d_gamma = 1;
  BinomialSystem bin = cell_to_binomial(fam, cell, aligned);
  CHECK(bin.exponents == imat({{1, 0}, {0, 1}}));
  CHECK(bin.rhs[0] == Rational(1));
  CHECK(bin.rhs[1] == Rational(2));
}

TEST_CASE("cell_to_binomial shared support via 2x3 elimination") {
  // h1, h2 share support {0, e1, e2}: x and y come out by Cramer's rule
  SparseSystem h;
  h.n = 2;
  h.supports = {{{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {1, 0}, {0, 1}}};
  h.coeffs = {{Rational(5), Rational(2), Rational(1)}, {Rational(7), Rational(1), Rational(3)}};
  auto fam = group_supports(h.supports);
  CHECK(fam.s() == 1);
  auto aligned = align_coefficients(fam, h);
  MixedCell cell = whole_support_cell(fam);
  cell.d_gamma = 1;
  BinomialSystem bin = cell_to_binomial(fam, cell, aligned);
  // M = [[2, 1], [1, 3]], B = (5, 7): x = -M^{-1}B
  // det = 5; x = -(15-7)/5 = -8/5, y = -(14-5)/5 = -9/5
  // columns are the lex-sorted nonzero points: (0,1) then (1,0)
  CHECK(bin.exponents == imat({{0, 1}, {1, 0}}));
  CHECK(bin.rhs[0] == Rational(-9, 5));
  CHECK(bin.rhs[1] == Rational(-8, 5));
}

TEST_CASE("H2 violations detected") {
  SparseSystem h;
  h.n = 2;
  h.supports = {{{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {1, 0}, {0, 1}}};
  // singular M
  h.coeffs = {{Rational(5), Rational(2), Rational(1)}, {Rational(7), Rational(4), Rational(2)}};
  auto fam = group_supports(h.supports);
  MixedCell cell = whole_support_cell(fam);
  CHECK_THROWS_AS(cell_to_binomial(fam, cell, align_coefficients(fam, h)), H2Violated);
  // zero rhs entry: B in the span pattern that zeroes one solution coordinate
  SparseSystem h2 = h;
  h2.coeffs = {{Rational(0), Rational(2), Rational(1)}, {Rational(0), Rational(1), Rational(3)}};
  CHECK_THROWS_AS(cell_to_binomial(fam, cell, align_coefficients(fam, h2)), H2Violated);
}

TEST_CASE("smith normal form examples") {
  auto s1 = smith_normal_form(imat({{1, 0}, {0, 1}}));
  CHECK(s1.r == std::vector<Integer>{1, 1});
  auto s2 = smith_normal_form(imat({{2, 0}, {0, 3}}));
  CHECK(s2.r == std::vector<Integer>{1, 6});
  auto s3 = smith_normal_form(imat({{2, 0}, {0, 2}}));
  CHECK(s3.r == std::vector<Integer>{2, 2});
  CHECK_THROWS_AS(smith_normal_form(imat({{1, 1}, {1, 1}})), ConsistencyError);
}

TEST_CASE("smith normal form randomized invariants") {
  Rng rng(8888);
  int done = 0;
  for (int it = 0; done < 120; ++it) {
    REQUIRE(it < 600);
    int n = 1 + (int)rng.below(4);
    std::vector<std::vector<Integer>> e(n, std::vector<Integer>(n));
    for (auto& row : e)
      for (auto& v : row) v = Integer((long)rng.below(17) - 8);
    if (int_det(e) == 0) continue;
    // smith_normal_form asserts K E L = diag(r), unimodularity, the
    // divisibility chain and the norm bound internally
    auto s = smith_normal_form(e);
    for (const auto& ri : s.r) CHECK(ri > 0);
    Integer prod(1);
    for (const auto& ri : s.r) prod *= ri;
    CHECK(prod == abs(int_det(e)));
    ++done;
  }
}

TEST_CASE("diagonal minimal polynomial") {
  CHECK(diagonal_minimal_poly({Integer(2)}, {Rational(4)}, {Rational(1)}) == qpoly({-4, 0, 1}));
  // r=(2,2), q=(1,1), u=(1,2): roots +-1 +- 2 -> Y^4 - 10Y^2 + 9
  CHECK(diagonal_minimal_poly({Integer(2), Integer(2)}, {Rational(1), Rational(1)},
                              {Rational(1), Rational(2)}) == qpoly({9, 0, -10, 0, 1}));
  // r=(1,1), q=(5,7), u=(1,1): single point, Y - 12
  CHECK(diagonal_minimal_poly({Integer(1), Integer(1)}, {Rational(5), Rational(7)},
                              {Rational(1), Rational(1)}) == qpoly({-12, 1}));
}

TEST_CASE("diagonal minimal polynomial matches root enumeration for square q") {
  // all r_j = 2 and q_j perfect squares: roots are sum of u_j * (+-sqrt(q_j))
  Rng rng(404);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + (int)rng.below(2);
    std::vector<Integer> r(n, Integer(2));
    std::vector<Rational> q(n), u(n);
    for (int j = 0; j < n; ++j) {
      long root = 1 + (long)rng.below(4);
      q[j] = Rational(root * root);
      u[j] = Rational(1 + (long)rng.below(6));
    }
    PolyQ m = diagonal_minimal_poly(r, q, u);
    PolyQ oracle = PolyQ::constant(Rational(1));
    for (int mask = 0; mask < (1 << n); ++mask) {
      Rational val(0);
      for (int j = 0; j < n; ++j) {
        Rational root;
        mpz_sqrt(root.get_num_mpz_t(), q[j].get_num().get_mpz_t());
        root.canonicalize();
        val += u[j] * (mask & (1 << j) ? root : -root);
      }
      oracle *= qpoly({0, 1}) - PolyQ::constant(val);
    }
    // collisions would make the oracle non-squarefree; skip those draws
    if (poly_gcd(oracle, oracle.derivative()).degree() != 0) continue;
    CHECK(m == oracle);
  }
}

TEST_CASE("solve_V0_in_Z examples and defining identity") {
  auto sol = solve_V0_in_Z({Integer(2)}, {Rational(4)}, {Rational(1)});
  CHECK(sol.m == qpoly({-4, 0, 1}));
  CHECK(sol.w[0] == qpoly({0, 1}));
  // r=(1,2), q=(3,4), u=(1,1): points (3, +-2): m = (Y-5)(Y-1)
  auto sol2 = solve_V0_in_Z({Integer(1), Integer(2)}, {Rational(3), Rational(4)},
                            {Rational(1), Rational(1)});
  CHECK(sol2.m == qpoly({5, -6, 1}));
  CHECK(sol2.w[0] == qpoly({3}));
  CHECK(sol2.w[1] == qpoly({-3, 1}));
  // the w_j^{r_j} = q_j identity is asserted inside; also spot-check here
  CHECK(powmod(sol2.w[1], 2, sol2.m) == qpoly({4}));
  // a non-separating draw is detected
  CHECK_THROWS_AS(solve_V0_in_Z({Integer(2), Integer(2)}, {Rational(1), Rational(1)},
                                {Rational(1), Rational(1)}),
                  NotSeparating);
}

TEST_CASE("transport_to_X") {
  // identity change: output equals input with u in place of u~
  auto solZ = solve_V0_in_Z({Integer(2)}, {Rational(4)}, {Rational(1)});
  auto sol = transport_to_X(solZ, imat({{1}}), {Rational(1)});
  CHECK(sol.m == qpoly({-4, 0, 1}));
  CHECK(sol.w[0] == qpoly({0, 1}));
  // inversion: X = Z^{-1}, roots +-1/2: m = Y^2 - 1/4
  auto inv = transport_to_X(solZ, imat({{-1}}), {Rational(1)});
  CHECK(inv.m == PolyQ({std::vector<Rational>{Rational(-1, 4), Rational(0), Rational(1)}}));
  CHECK(inv.w[0] == qpoly({0, 1}));  // X = Y under u = X
  // scaling by u: m picks up u-dependence
  auto scaled = transport_to_X(solZ, imat({{1}}), {Rational(3)});
  CHECK(scaled.m == PolyQ({std::vector<Rational>{Rational(-36), Rational(0), Rational(1)}}));
}

TEST_CASE("solve_cell_start end to end") {
  // h = 3 - 12 x^2, single cell {0,2}: m = Y^2 - 1/4 for u = (1)
  SparseSystem h;
  h.n = 1;
  h.supports = {{{0}, {2}}};
  h.coeffs = {{Rational(3), Rational(-12)}};
  auto fam = group_supports(h.supports);
  auto aligned = align_coefficients(fam, h);
  MixedCell cell = whole_support_cell(fam);
  cell.d_gamma = 2;
  auto sol = solve_cell_start(fam, cell, aligned, {Rational(1)}, {Rational(1)});
  CHECK(sol.m == PolyQ({std::vector<Rational>{Rational(-1, 4), Rational(0), Rational(1)}}));
  CHECK(verify_geometric_solution(sol, h));

  // a 2x2 system with distinct simplex supports
  SparseSystem h2;
  h2.n = 2;
  h2.supports = {{{0, 0}, {1, 0}}, {{0, 0}, {0, 2}}};
  h2.coeffs = {{Rational(-3), Rational(1)}, {Rational(-16), Rational(1)}};
  auto fam2 = group_supports(h2.supports);
  auto aligned2 = align_coefficients(fam2, h2);
  MixedCell cell2 = whole_support_cell(fam2);
  cell2.d_gamma = 2;
  auto sol2 = solve_cell_start(fam2, cell2, aligned2, {Rational(1), Rational(2)},
                               {Rational(3), Rational(5)});
  CHECK(sol2.m.degree() == 2);
  CHECK(verify_geometric_solution(sol2, h2));
  // points (3, +-4) under u = x + 2y: values 11, -5
  CHECK(sol2.m.eval(Rational(11)) == Rational(0));
  CHECK(sol2.m.eval(Rational(-5)) == Rational(0));
}
