#ifndef PHSOLVE_GEOMETRY_HPP
#define PHSOLVE_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "phsolve/rational.hpp"
#include "phsolve/rng.hpp"

namespace phsolve {

/// The grouped supports of a sparse system: distinct supports A^(1..s) with
/// multiplicities k_l summing to the ambient dimension of the family.
struct SupportFamily {
  int n = 0;                              // ambient dimension
  std::vector<std::vector<Point>> classes;
  std::vector<int> mult;                  // k_l
  std::vector<int> class_of;              // equation index -> class index

  int s() const { return (int)classes.size(); }
  size_t total_points() const {
    size_t t = 0;
    for (const auto& c : classes) t += c.size();
    return t;
  }
};

/// Integer heights on the support points; values[l][j] lifts classes[l][j].
struct LiftingFunction {
  std::vector<std::vector<std::int64_t>> values;
};

/// A type-(k_1,...,k_s) cell of the induced fine-mixed subdivision together
/// with its primitive inner normal.
struct MixedCell {
  std::vector<std::vector<int>> pts;  // per class: indices into classes[l], size k_l+1
  std::vector<Integer> gamma;         // primitive, last entry > 0
  Integer d_gamma;                    // k_1!...k_s! * vol = |det of edge vectors|
  Rational volume;
  std::vector<Integer> cell_value;    // min of <gamma, (q, w(q))> per class
};

/// Group equal supports; throws MissingOrigin if some support lacks 0.
SupportFamily group_supports(const std::vector<std::vector<Point>>& deltas);

/// Group arbitrary point sets (no origin requirement); ambient dim given.
SupportFamily make_point_family(const std::vector<std::vector<Point>>& sets, int dim);

/// Random lifting with values in {1, ..., rho * 2^(N_1+...+N_s)} and
/// w_l(0) = 0, per class.
LiftingFunction random_lifting(const SupportFamily& fam, const Integer& rho, Rng& rng);

/// Lifting with values drawn from {1, ..., cap}; w_l(0) = 0. The generic-ness
/// is meant to be checked, not assumed.
LiftingFunction random_lifting_capped(const SupportFamily& fam, std::int64_t cap, Rng& rng);

/// Rank test of the lifting-genericity condition: for every cell with one
/// point beyond affine independence, full projected rank must imply full
/// lifted rank. Exhaustive; meant for families with few points.
bool check_lifting_generic(const SupportFamily& fam, const LiftingFunction& lift);

/// All type-(k_1,...,k_s) cells of the subdivision induced by `lift`.
/// Throws DegenerateLifting when a non-strict minimization is found.
std::vector<MixedCell> enumerate_mixed_cells(const SupportFamily& fam,
                                             const LiftingFunction& lift);

/// Cells of arbitrary type (sizes r_l+1 with sum r_l = n) — used by the
/// tiling check and by volume computation via regular triangulations.
std::vector<MixedCell> enumerate_all_cells(const SupportFamily& fam,
                                           const LiftingFunction& lift);

/// Sum of k_1!...k_s! vol over the type-(k) cells; integer by construction.
Integer mixed_volume(const SupportFamily& fam, const std::vector<MixedCell>& cells);

/// Mixed volume of arbitrary integer polytopes (given as point sets) via a
/// random-lifting subdivision with exact tie detection and redraw.
Integer mixed_volume_of_polytopes(const std::vector<std::vector<Point>>& sets, int dim,
                                  std::uint64_t seed = 7);

/// Exact Euclidean volume of conv(points) via a regular triangulation.
Rational polytope_volume(const std::vector<Point>& points, int dim,
                         std::uint64_t seed = 7);

/// Inclusion-exclusion oracle MV = sum over nonempty I of
/// (-1)^(d-|I|) vol(sum_{i in I} Q_i). Independent of the cell machinery.
Rational mixed_volume_oracle(const std::vector<std::vector<Point>>& polytopes,
                             std::uint64_t seed = 7);

/// E := MV_{n+1}(Delta, Qhat_1, ..., Qhat_n) with Delta the unit simplex in
/// the T = 0 hyperplane and Qhat_i the lifted Newton polytopes.
Integer height_bound_E(const SupportFamily& fam, const LiftingFunction& lift);

/// E' := sum_i MV_n(Delta, Q_1, ..., Q_{i-1}, Q_{i+1}, ..., Q_n).
Integer height_bound_Eprime(const SupportFamily& fam);

/// Minkowski sum of point sets (deduplicated).
std::vector<Point> minkowski_sum(const std::vector<Point>& a, const std::vector<Point>& b);

/// Exact integer determinant (fraction-free Gaussian elimination).
Integer int_det(std::vector<std::vector<Integer>> m);

/// Rank of an integer matrix.
int int_rank(std::vector<std::vector<Integer>> m);

}  // namespace phsolve

#endif
