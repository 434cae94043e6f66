#include "phsolve/geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "phsolve/errors.hpp"

namespace phsolve {

namespace {

bool is_origin(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; });
}

/// Iterate over all size-k index subsets of {0..n-1}; returns false when done.
bool next_combination(std::vector<int>& idx, int n) {
  int k = (int)idx.size();
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Integer factorial(int k) {
  Integer r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

Integer int_det(std::vector<std::vector<Integer>> m) {
  size_t n = m.size();
  if (n == 0) return Integer(1);
  // Bareiss fraction-free elimination.
  Integer prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return Integer(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

int int_rank(std::vector<std::vector<Integer>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Integer a = m[r][c], b = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * a - m[r][j] * b;
    }
    ++r;
  }
  return (int)r;
}

SupportFamily group_supports(const std::vector<std::vector<Point>>& deltas) {
  SupportFamily fam;
  if (deltas.empty()) throw PreconditionFailed("empty system");
  fam.n = (int)deltas.size();
  for (const auto& d : deltas) {
    bool has0 = std::any_of(d.begin(), d.end(), is_origin);
    if (!has0) throw MissingOrigin();
    for (const auto& q : d) {
      if ((int)q.size() != fam.n) throw PreconditionFailed("support point of wrong dimension");
      for (auto x : q)
        if (x < 0) throw PreconditionFailed("support points must be nonnegative");
    }
  }
  fam.class_of.resize(deltas.size());
  for (size_t i = 0; i < deltas.size(); ++i) {
    std::vector<Point> sorted = deltas[i];
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    int found = -1;
    for (size_t l = 0; l < fam.classes.size(); ++l)
      if (fam.classes[l] == sorted) { found = (int)l; break; }
    if (found < 0) {
      fam.classes.push_back(sorted);
      fam.mult.push_back(0);
      found = (int)fam.classes.size() - 1;
    }
    fam.mult[found] += 1;
    fam.class_of[i] = found;
  }
  return fam;
}

SupportFamily make_point_family(const std::vector<std::vector<Point>>& sets, int dim) {
  SupportFamily fam;
  fam.n = dim;
  fam.class_of.resize(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    std::vector<Point> sorted = sets[i];
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    int found = -1;
    for (size_t l = 0; l < fam.classes.size(); ++l)
      if (fam.classes[l] == sorted) { found = (int)l; break; }
    if (found < 0) {
      fam.classes.push_back(sorted);
      fam.mult.push_back(0);
      found = (int)fam.classes.size() - 1;
    }
    fam.mult[found] += 1;
    fam.class_of[i] = found;
  }
  return fam;
}

LiftingFunction random_lifting(const SupportFamily& fam, const Integer& rho, Rng& rng) {
  Integer range = rho * (Integer(1) << (unsigned long)fam.total_points());
  LiftingFunction lift;
  lift.values.resize(fam.classes.size());
  for (size_t l = 0; l < fam.classes.size(); ++l) {
    lift.values[l].resize(fam.classes[l].size());
    for (size_t j = 0; j < fam.classes[l].size(); ++j) {
      if (is_origin(fam.classes[l][j])) {
        lift.values[l][j] = 0;
      } else {
        Integer v = rng.one_to(range);
        if (!v.fits_slong_p()) throw PreconditionFailed("lifting range too large for this build");
        lift.values[l][j] = (std::int64_t)v.get_si();
      }
    }
  }
  return lift;
}

LiftingFunction random_lifting_capped(const SupportFamily& fam, std::int64_t cap, Rng& rng) {
  LiftingFunction lift;
  lift.values.resize(fam.classes.size());
  for (size_t l = 0; l < fam.classes.size(); ++l) {
    lift.values[l].resize(fam.classes[l].size());
    for (size_t j = 0; j < fam.classes[l].size(); ++j)
      lift.values[l][j] = is_origin(fam.classes[l][j]) ? 0 : rng.one_to_i64(cap);
  }
  return lift;
}

bool check_lifting_generic(const SupportFamily& fam, const LiftingFunction& lift) {
  int n = fam.n;
  int s = fam.s();
  // All tuples (r_1, ..., r_s) with sum = n+1, subsets of size r_l+1.
  std::vector<int> r(s, 0);
  std::function<bool(int, int)> rec = [&](int l, int remaining) -> bool {
    if (l == s) {
      if (remaining != 0) return true;
      // enumerate subsets per class of size r[l]+1 and test ranks
      std::vector<std::vector<int>> idx(s);
      for (int t = 0; t < s; ++t) {
        if (r[t] + 1 > (int)fam.classes[t].size()) return true;  // no such subset
        idx[t].resize(r[t] + 1);
        std::iota(idx[t].begin(), idx[t].end(), 0);
      }
      while (true) {
        std::vector<std::vector<Integer>> proj, hat;
        for (int t = 0; t < s; ++t) {
          const Point& p0 = fam.classes[t][idx[t][0]];
          std::int64_t w0 = lift.values[t][idx[t][0]];
          for (size_t j = 1; j < idx[t].size(); ++j) {
            const Point& pj = fam.classes[t][idx[t][j]];
            std::vector<Integer> rowp, rowh;
            for (int c = 0; c < n; ++c) {
              rowp.emplace_back(pj[c] - p0[c]);
              rowh.emplace_back(pj[c] - p0[c]);
            }
            rowh.emplace_back(lift.values[t][idx[t][j]] - w0);
            proj.push_back(std::move(rowp));
            hat.push_back(std::move(rowh));
          }
        }
        if (int_rank(proj) == n && int_rank(hat) != n + 1) return false;
        // advance the multi-combination
        int t = s - 1;
        while (t >= 0 && !next_combination(idx[t], (int)fam.classes[t].size())) {
          idx[t].resize(r[t] + 1);
          std::iota(idx[t].begin(), idx[t].end(), 0);
          --t;
        }
        if (t < 0) break;
      }
      return true;
    }
    for (int v = 0; v <= remaining; ++v) {
      r[l] = v;
      if (!rec(l + 1, remaining - v)) return false;
    }
    return true;
  };
  return rec(0, n + 1);
}

namespace {

/// Core cell enumerator: subsets of size want[l] per class; a cell is kept
/// when the lifted point tuple spans a lower facet with a unique inner
/// normal. Ties raise DegenerateLifting.
std::vector<MixedCell> enumerate_cells_of_sizes(const SupportFamily& fam,
                                                const LiftingFunction& lift,
                                                const std::vector<int>& want) {
  int n = fam.n;
  int s = fam.s();
  std::vector<MixedCell> out;
  for (int l = 0; l < s; ++l)
    if (want[l] > (int)fam.classes[l].size()) return out;

  std::vector<std::vector<int>> idx(s);
  for (int l = 0; l < s; ++l) {
    idx[l].resize(want[l]);
    std::iota(idx[l].begin(), idx[l].end(), 0);
  }
  while (true) {
    // rows of the lifted difference matrix; n rows, n+1 columns
    std::vector<std::vector<Integer>> hat;
    for (int l = 0; l < s; ++l) {
      const Point& p0 = fam.classes[l][idx[l][0]];
      std::int64_t w0 = lift.values[l][idx[l][0]];
      for (size_t j = 1; j < idx[l].size(); ++j) {
        const Point& pj = fam.classes[l][idx[l][j]];
        std::vector<Integer> row;
        row.reserve(n + 1);
        for (int c = 0; c < n; ++c) row.emplace_back(pj[c] - p0[c]);
        row.emplace_back(lift.values[l][idx[l][j]] - w0);
        hat.push_back(std::move(row));
      }
    }
    // gamma = generalized cross product: gamma_k = (-1)^k det(minor_k)
    std::vector<Integer> gamma(n + 1);
    bool nonzero = false;
    for (int k = 0; k <= n; ++k) {
      std::vector<std::vector<Integer>> minor(n, std::vector<Integer>(n));
      for (int i = 0; i < n; ++i) {
        int cc = 0;
        for (int c = 0; c <= n; ++c) {
          if (c == k) continue;
          minor[i][cc++] = hat[i][c];
        }
      }
      Integer d = int_det(minor);
      gamma[k] = (k % 2 == 0) ? d : -d;
      if (gamma[k] != 0) nonzero = true;
    }
    bool keep = nonzero && gamma[n] != 0;
    if (keep) {
      Integer d_gamma = abs(gamma[n]);  // |det of projected edge vectors|
      // primitive normal with positive last coordinate
      Integer g = gamma[0];
      for (int k = 1; k <= n; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gamma[k].get_mpz_t());
      g = abs(g);
      for (auto& x : gamma) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      if (gamma[n] < 0)
        for (auto& x : gamma) x = -x;
      // minimization test: strict inequality off the cell
      std::vector<Integer> cval(s);
      bool face = true;
      for (int l = 0; l < s && face; ++l) {
        const Point& p0 = fam.classes[l][idx[l][0]];
        Integer c0(0);
        for (int c = 0; c < n; ++c) c0 += gamma[c] * p0[c];
        c0 += gamma[n] * lift.values[l][idx[l][0]];
        cval[l] = c0;
        for (size_t j = 0; j < fam.classes[l].size() && face; ++j) {
          if (std::find(idx[l].begin(), idx[l].end(), (int)j) != idx[l].end()) {
            // points of the cell must attain the minimum exactly
            Integer v(0);
            for (int c = 0; c < n; ++c) v += gamma[c] * fam.classes[l][j][c];
            v += gamma[n] * lift.values[l][j];
            if (v != c0) face = false;
            continue;
          }
          Integer v(0);
          for (int c = 0; c < n; ++c) v += gamma[c] * fam.classes[l][j][c];
          v += gamma[n] * lift.values[l][j];
          if (v < c0) { face = false; }
          else if (v == c0) throw DegenerateLifting();
        }
      }
      if (face) {
        MixedCell cell;
        cell.pts.resize(s);
        for (int l = 0; l < s; ++l) cell.pts[l] = idx[l];
        cell.gamma = gamma;
        cell.d_gamma = d_gamma;
        Integer kf(1);
        for (int l = 0; l < s; ++l) kf *= factorial(want[l] - 1);
        cell.volume = Rational(d_gamma) / Rational(kf);
        cell.cell_value = cval;
        out.push_back(std::move(cell));
      }
    }
    // advance multi-combination
    int l = s - 1;
    while (l >= 0 && !next_combination(idx[l], (int)fam.classes[l].size())) {
      idx[l].resize(want[l]);
      std::iota(idx[l].begin(), idx[l].end(), 0);
      --l;
    }
    if (l < 0) break;
  }
  return out;
}

}  // namespace

std::vector<MixedCell> enumerate_mixed_cells(const SupportFamily& fam,
                                             const LiftingFunction& lift) {
  std::vector<int> want(fam.mult.size());
  for (size_t l = 0; l < fam.mult.size(); ++l) want[l] = fam.mult[l] + 1;
  auto cells = enumerate_cells_of_sizes(fam, lift, want);
  // distinct cells of a fine subdivision carry distinct normals
  std::map<std::vector<std::string>, int> seen;
  for (const auto& c : cells) {
    std::vector<std::string> key;
    for (const auto& g : c.gamma) key.push_back(g.get_str());
    if (seen.count(key)) throw DegenerateLifting("two cells share an inner normal");
    seen[key] = 1;
  }
  return cells;
}

std::vector<MixedCell> enumerate_all_cells(const SupportFamily& fam,
                                           const LiftingFunction& lift) {
  int n = fam.n;
  int s = fam.s();
  std::vector<MixedCell> out;
  std::vector<int> want(s, 1);
  std::function<void(int, int)> rec = [&](int l, int remaining) {
    if (l == s) {
      if (remaining != 0) return;
      auto cells = enumerate_cells_of_sizes(fam, lift, want);
      out.insert(out.end(), cells.begin(), cells.end());
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      want[l] = v + 1;
      rec(l + 1, remaining - v);
    }
  };
  rec(0, n);
  return out;
}

Integer mixed_volume(const SupportFamily& fam, const std::vector<MixedCell>& cells) {
  Integer d(0);
  for (const auto& c : cells) d += c.d_gamma;
  return d;
}

Integer mixed_volume_of_polytopes(const std::vector<std::vector<Point>>& sets, int dim,
                                  std::uint64_t seed) {
  SupportFamily fam = make_point_family(sets, dim);
  if ((int)sets.size() != dim)
    throw PreconditionFailed("mixed volume needs dim polytopes in dim-space");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng r = rng.fork("mv-lift", attempt);
    LiftingFunction lift = random_lifting_capped(fam, (std::int64_t)1 << 40, r);
    try {
      auto cells = enumerate_mixed_cells(fam, lift);
      return mixed_volume(fam, cells);
    } catch (const DegenerateLifting&) {
      continue;
    }
  }
  throw ConsistencyError("could not find a generic lifting for a mixed volume");
}

std::vector<Point> minkowski_sum(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  out.reserve(a.size() * b.size());
  for (const auto& p : a)
    for (const auto& q : b) {
      Point r(p.size());
      for (size_t c = 0; c < p.size(); ++c) r[c] = p[c] + q[c];
      out.push_back(std::move(r));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational polytope_volume(const std::vector<Point>& points, int dim, std::uint64_t seed) {
  std::vector<std::vector<Point>> copies(dim, points);
  Integer mv = mixed_volume_of_polytopes(copies, dim, seed);
  return Rational(mv) / Rational(factorial(dim));
}

Rational mixed_volume_oracle(const std::vector<std::vector<Point>>& polytopes,
                             std::uint64_t seed) {
  int d = (int)polytopes.size();
  Rational total(0);
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    std::vector<Point> sum;
    bool first = true;
    int card = 0;
    for (int i = 0; i < d; ++i) {
      if (!(mask & (1u << i))) continue;
      ++card;
      sum = first ? polytopes[i] : minkowski_sum(sum, polytopes[i]);
      first = false;
    }
    Rational v = polytope_volume(sum, d, seed + mask);
    total += ((d - card) % 2 == 0) ? v : -v;
  }
  return total;
}

Integer height_bound_E(const SupportFamily& fam, const LiftingFunction& lift) {
  int n = fam.n;
  std::vector<std::vector<Point>> sets;
  std::vector<Point> simplex;
  simplex.push_back(Point(n + 1, 0));
  for (int c = 0; c < n; ++c) {
    Point e(n + 1, 0);
    e[c] = 1;
    simplex.push_back(e);
  }
  sets.push_back(simplex);
  for (int i = 0; i < n; ++i) {
    int l = fam.class_of[i];
    std::vector<Point> qhat;
    for (size_t j = 0; j < fam.classes[l].size(); ++j) {
      Point p = fam.classes[l][j];
      p.push_back(lift.values[l][j]);
      qhat.push_back(std::move(p));
    }
    sets.push_back(std::move(qhat));
  }
  return mixed_volume_of_polytopes(sets, n + 1, 11);
}

Integer height_bound_Eprime(const SupportFamily& fam) {
  int n = fam.n;
  std::vector<Point> simplex;
  simplex.push_back(Point(n, 0));
  for (int c = 0; c < n; ++c) {
    Point e(n, 0);
    e[c] = 1;
    simplex.push_back(e);
  }
  Integer total(0);
  for (int skip = 0; skip < n; ++skip) {
    std::vector<std::vector<Point>> sets;
    sets.push_back(simplex);
    for (int i = 0; i < n; ++i) {
      if (i == skip) continue;
      sets.push_back(fam.classes[fam.class_of[i]]);
    }
    total += mixed_volume_of_polytopes(sets, n, 13);
  }
  return total;
}

}  // namespace phsolve
