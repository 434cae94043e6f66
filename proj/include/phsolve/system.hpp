#ifndef PHSOLVE_SYSTEM_HPP
#define PHSOLVE_SYSTEM_HPP

#include <vector>

#include "phsolve/geometry.hpp"
#include "phsolve/jetlift.hpp"
#include "phsolve/poly.hpp"

namespace phsolve {

/// A sparse polynomial system over Q: n equations in n variables with
/// declared supports (which may carry explicit zero coefficients).
struct SparseSystem {
  int n = 0;
  std::vector<std::vector<Point>> supports;
  std::vector<std::vector<Rational>> coeffs;  // aligned with supports

  size_t term_count() const {
    size_t t = 0;
    for (const auto& s : supports) t += s.size();
    return t;
  }
  std::int64_t max_total_degree() const {
    std::int64_t d = 0;
    for (const auto& s : supports)
      for (const auto& q : s) {
        std::int64_t t = 0;
        for (auto x : q) t += x;
        d = std::max(d, t);
      }
    return d;
  }
};

/// Coefficients of each equation re-aligned with the family's canonical
/// (sorted) class point order; absent points get explicit zeros.
std::vector<std::vector<Rational>> align_coefficients(const SupportFamily& fam,
                                                      const SparseSystem& sys);

/// Evaluate equation i of the system at X_j = w_j(Y) modulo m(Y), exactly
/// over Q. Per-variable power tables are built as needed.
PolyQ eval_equation_mod(const SparseSystem& sys, int i, const std::vector<PolyQ>& w,
                        const PolyQ& m);

/// The definitional check of a geometric solution: m squarefree and
/// f_i(w_1(Y), ..., w_n(Y)) = 0 mod m(Y) for every i.
bool verify_geometric_solution(const GeometricSolution0D& sol, const SparseSystem& sys);

}  // namespace phsolve

#endif
