#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "phsolve/errors.hpp"
#include "phsolve/geometry.hpp"
#include "phsolve/rng.hpp"

using namespace phsolve;

namespace {

std::vector<Point> unit_square() { return {{0, 0}, {1, 0}, {0, 1}, {1, 1}}; }
std::vector<Point> unit_simplex(int n) {
  std::vector<Point> pts = {Point(n, 0)};
  for (int c = 0; c < n; ++c) {
    Point e(n, 0);
    e[c] = 1;
    pts.push_back(e);
  }
  return pts;
}

std::vector<Point> random_support(Rng& rng, int n, int npts, int maxc) {
  std::set<Point> pts;
  pts.insert(Point(n, 0));
  while ((int)pts.size() < npts) {
    Point p(n);
    for (auto& x : p) x = (std::int64_t)rng.below(maxc + 1);
    pts.insert(p);
  }
  return {pts.begin(), pts.end()};
}

}  // namespace

TEST_CASE("group_supports") {
  auto fam1 = group_supports({{{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {1, 0}, {0, 1}}});
  CHECK(fam1.s() == 1);
  CHECK(fam1.mult[0] == 2);
  auto fam2 = group_supports({{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}});
  CHECK(fam2.s() == 2);
  CHECK(fam2.mult == std::vector<int>{1, 1});
  auto fam3 = group_supports({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}},
                              {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}},
                              {{0, 0, 0}, {0, 0, 2}}});
  CHECK(fam3.s() == 2);
  CHECK(fam3.mult == std::vector<int>{2, 1});
  CHECK_THROWS_AS(group_supports({{{1, 0}, {0, 1}}, {{0, 0}}}), MissingOrigin);
}

TEST_CASE("random_lifting range and pinned origin") {
  auto fam = group_supports({{{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {1, 1}, {2, 0}}});
  // N1 + N2 = 6, rho = 2: values <= 2 * 2^6 = 128
  Rng rng(123);
  for (int rep = 0; rep < 20; ++rep) {
    Rng r = rng.fork("lift", rep);
    auto lift = random_lifting(fam, Integer(2), r);
    for (size_t l = 0; l < fam.classes.size(); ++l)
      for (size_t j = 0; j < fam.classes[l].size(); ++j) {
        bool origin = true;
        for (auto x : fam.classes[l][j]) origin &= (x == 0);
        if (origin) {
          CHECK(lift.values[l][j] == 0);
        } else {
          CHECK(lift.values[l][j] >= 1);
          CHECK(lift.values[l][j] <= 128);
        }
      }
  }
  // reproducibility
  Rng r1 = rng.fork("same", 0), r2 = rng.fork("same", 0);
  auto a = random_lifting(fam, Integer(2), r1);
  auto b = random_lifting(fam, Integer(2), r2);
  CHECK(a.values == b.values);
}

TEST_CASE("check_lifting_generic") {
  // n+1 affinely independent points in one class plus a second class, zero
  // lift: the lifted tuple rank stays n
  auto fam = group_supports({{{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {1, 0}}});
  LiftingFunction zero;
  zero.values = {{0, 0, 0}, {0, 0}};
  CHECK(!check_lifting_generic(fam, zero));
  // generic random lift on the square class
  auto famsq = group_supports({unit_square(), unit_square()});
  LiftingFunction l;
  l.values = {{0, 3, 7, 12}};
  CHECK(check_lifting_generic(famsq, l));
  // simplex classes pass with any injective-on-nonzero lift
  auto fams = group_supports({{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}});
  LiftingFunction l2;
  l2.values = {{0, 1}, {0, 2}};
  CHECK(check_lifting_generic(fams, l2));
}

TEST_CASE("enumerate_mixed_cells on a segment support") {
  // n=1, A = {0,1,2}, w = (0,1,3): cells {0,1} gamma=(-1,1), {1,2} gamma=(-2,1)
  auto fam = group_supports({{{0}, {1}, {2}}});
  LiftingFunction l;
  l.values = {{0, 1, 3}};
  auto cells = enumerate_mixed_cells(fam, l);
  REQUIRE(cells.size() == 2);
  std::set<std::pair<long, long>> gammas;
  for (const auto& c : cells) {
    CHECK(c.d_gamma == 1);
    gammas.insert({c.gamma[0].get_si(), c.gamma[1].get_si()});
  }
  CHECK(gammas.count({-1, 1}) == 1);
  CHECK(gammas.count({-2, 1}) == 1);
  CHECK(mixed_volume(fam, cells) == 2);
}

TEST_CASE("single edge cell, primitive gamma") {
  auto fam = group_supports({{{0}, {2}}});
  LiftingFunction l;
  l.values = {{0, 1}};
  auto cells = enumerate_mixed_cells(fam, l);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].gamma[0] == -1);
  CHECK(cells[0].gamma[1] == 2);
  CHECK(cells[0].d_gamma == 2);
}

TEST_CASE("two unit squares: 2 mixed cells, MV 2") {
  auto fam = group_supports({unit_square(), unit_square()});
  LiftingFunction l;
  l.values = {{0, 3, 7, 12}};
  auto cells = enumerate_mixed_cells(fam, l);
  CHECK(cells.size() == 2);
  Integer mv = mixed_volume(fam, cells);
  CHECK(mv == 2);
  Rational volsum(0);
  for (const auto& c : cells) {
    CHECK(c.gamma[2] > 0);
    volsum += c.volume;
  }
  CHECK(volsum == Rational(1));  // type-(2) cells carry vol 1*2! = 2 = MV
}

TEST_CASE("degenerate lifting detected") {
  auto fam = group_supports({{{0}, {1}, {2}}});
  LiftingFunction flat;
  flat.values = {{0, 1, 2}};  // collinear lift: tie on the whole segment
  CHECK_THROWS_AS(enumerate_mixed_cells(fam, flat), DegenerateLifting);
}

TEST_CASE("mixed volume oracle basics") {
  CHECK(mixed_volume_oracle({unit_square(), unit_square()}) == Rational(2));
  // d identical polytopes: d! vol(Q)
  CHECK(mixed_volume_oracle({unit_simplex(3), unit_simplex(3), unit_simplex(3)}) ==
        Rational(1));
  CHECK(polytope_volume(unit_square(), 2) == Rational(1));
  // parallel segments give MV 0
  std::vector<Point> seg1 = {{0, 0}, {1, 0}}, seg2 = {{0, 0}, {2, 0}};
  CHECK(mixed_volume_oracle({seg1, seg2}) == Rational(0));
}

TEST_CASE("mixed volume via cells equals oracle on random families") {
  Rng rng(5150);
  int families = 0;
  for (int it = 0; families < 20; ++it) {
    REQUIRE(it < 200);
    int n = 1 + (int)rng.below(3);
    Rng r = rng.fork("fam", it);
    std::vector<std::vector<Point>> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(random_support(r, n, n <= 2 ? 4 : 3, n <= 2 ? 4 : 2));
    std::vector<std::vector<Point>> polys = deltas;
    Integer mv = mixed_volume_of_polytopes(polys, n, 1234 + it);
    Rational oracle = mixed_volume_oracle(polys, 4321 + it);
    CHECK(Rational(mv) == oracle);
    ++families;
  }
}

TEST_CASE("mixed volume examples") {
  // linear system: all supports the unit simplex -> MV 1
  std::vector<std::vector<Point>> lin(2, unit_simplex(2));
  CHECK(mixed_volume_of_polytopes(lin, 2) == 1);
  // bilinearity: MV(2*simplex, simplex) = 2
  std::vector<Point> twosimplex = {{0, 0}, {2, 0}, {0, 2}};
  CHECK(mixed_volume_of_polytopes({twosimplex, unit_simplex(2)}, 2) == 2);
}

TEST_CASE("cells tile the Minkowski sum (volume check)") {
  Rng rng(777);
  for (int it = 0; it < 8; ++it) {
    Rng r = rng.fork("tile", it);
    int n = 1 + (int)rng.below(2);
    std::vector<std::vector<Point>> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(random_support(r, n, 4, 3));
    auto fam = group_supports(deltas);
    LiftingFunction lift;
    for (int attempt = 0;; ++attempt) {
      REQUIRE(attempt < 50);
      Rng rl = r.fork("lift", attempt);
      lift = random_lifting_capped(fam, 1 << 20, rl);
      try {
        enumerate_mixed_cells(fam, lift);
        break;
      } catch (const DegenerateLifting&) {}
    }
    auto all = enumerate_all_cells(fam, lift);
    Rational total(0);
    for (const auto& c : all) total += c.volume;
    // union of all supports' Minkowski sum
    std::vector<Point> sum = fam.classes[0];
    for (size_t l = 1; l < fam.classes.size(); ++l) sum = minkowski_sum(sum, fam.classes[l]);
    // each class enters the sum once per multiplicity
    for (size_t l = 0; l < fam.classes.size(); ++l)
      for (int m = 1; m < fam.mult[l]; ++m) sum = minkowski_sum(sum, fam.classes[l]);
    CHECK(total == polytope_volume(sum, n, 999 + it));
  }
}

TEST_CASE("gamma properties on random families") {
  Rng rng(31415);
  for (int it = 0; it < 10; ++it) {
    Rng r = rng.fork("gam", it);
    int n = 1 + (int)rng.below(3);
    std::vector<std::vector<Point>> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(random_support(r, n, 3, 2));
    auto fam = group_supports(deltas);
    std::vector<MixedCell> cells;
    for (int attempt = 0;; ++attempt) {
      REQUIRE(attempt < 50);
      Rng rl = r.fork("lift", attempt);
      auto lift = random_lifting_capped(fam, 1 << 16, rl);
      try {
        cells = enumerate_mixed_cells(fam, lift);
        break;
      } catch (const DegenerateLifting&) {}
    }
    Integer d = mixed_volume(fam, cells);
    // #Gamma <= D and sum D_gamma = D
    CHECK(Integer((long)cells.size()) <= d);
    Integer sum(0);
    for (const auto& c : cells) {
      sum += c.d_gamma;
      Integer g = c.gamma[0];
      for (int k = 1; k <= n; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.gamma[k].get_mpz_t());
      CHECK(abs(g) == 1);
      CHECK(c.gamma[n] > 0);
    }
    CHECK(sum == d);
  }
}

TEST_CASE("height bound E") {
  // n=1, A={0,1,2}, w=(0,1,3): E = MV_2(Delta, conv{(0,0),(1,1),(2,3)}) = 3
  auto fam = group_supports({{{0}, {1}, {2}}});
  LiftingFunction l;
  l.values = {{0, 1, 3}};
  CHECK(height_bound_E(fam, l) == 3);
  // oracle agreement
  std::vector<Point> delta = {{0, 0}, {1, 0}};
  std::vector<Point> qhat = {{0, 0}, {1, 1}, {2, 3}};
  CHECK(mixed_volume_oracle({delta, qhat}) == Rational(3));
  // zero lift would give E = 0
  LiftingFunction z;
  z.values = {{0, 0, 0}};
  CHECK(height_bound_E(fam, z) == 0);
  // monotonicity: raising a lift value cannot decrease E
  LiftingFunction l2;
  l2.values = {{0, 1, 5}};
  CHECK(height_bound_E(fam, l2) >= 3);
}

TEST_CASE("height bound Eprime") {
  auto fam1 = group_supports({{{0}, {1}}});
  CHECK(height_bound_Eprime(fam1) == 1);
  auto fam2 = group_supports({unit_square(), unit_square()});
  CHECK(height_bound_Eprime(fam2) == 4);
  auto fam3 = group_supports({unit_simplex(3), unit_simplex(3), unit_simplex(3)});
  CHECK(height_bound_Eprime(fam3) == 3);
}
