#ifndef PHSOLVE_PIPELINE_HPP
#define PHSOLVE_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phsolve/homotopy.hpp"
#include "phsolve/polyhedral.hpp"
#include "phsolve/system.hpp"

namespace phsolve {

struct SolverConfig {
  Integer rho = 100;        // error-probability knob, >= 4
  std::uint64_t seed = 1;
  int max_retries = 12;     // per randomness slot
  int precision_slack = 2;  // extra Pade slack on the retry path
  bool try_direct = true;   // first attempt the input system with g = 0
  int threads = 0;          // 0: SOLVER_THREADS env or hardware count
  bool dump_branches = false;
  std::string dump_path;
};

struct SolveReport {
  GeometricSolution0D solution;
  Integer D{0}, E{0}, Eprime{0};
  std::map<std::string, int> retries;
  bool verified = false;
  std::uint64_t seed = 0;
  bool used_perturbation = false;
  bool possible_escape = false;  // output degree < D: multiple roots or roots lost at T=1
  int measured_deg_t_first = 0;
  int measured_deg_t_second = 0;
  double seconds = 0.0;

  int total_retries() const {
    int t = 0;
    for (const auto& [k, v] : retries) t += v;
    return t;
  }
};

/// Draw the perturbation polynomials g_i with support exactly Delta_i and
/// coefficients in {1, ..., 4 rho (nd)^(2n+1) + 2 rho n^2 2^(N_1+...+N_s)}.
SparseSystem draw_perturbation(const SparseSystem& f, const SolverConfig& cfg, Rng& rng);

/// The definitional check of a geometric solution against a system.
inline bool verify(const GeometricSolution0D& sol, const SparseSystem& f) {
  return verify_geometric_solution(sol, f);
}

/// End-to-end solve: polyhedral deformation of the (possibly perturbed)
/// system, lifting, Pade recovery, specialization, second homotopy and
/// multiplicity cleanup, with every detected failure retried on fresh
/// randomness. The returned report always has verified = true; failures
/// raise PreconditionFailed, RetriesExhausted or Unverifiable.
SolveReport solve(const SparseSystem& f, const SolverConfig& cfg);

/// The subdivision the solver would use for this input and seed (the same
/// candidate-selection procedure as solve()).
struct SubdivisionChoice {
  SupportFamily fam;
  LiftingFunction lift;
  std::vector<MixedCell> cells;
  Integer D, E;
};
SubdivisionChoice choose_subdivision(const SparseSystem& f, const SolverConfig& cfg,
                                     std::uint64_t attempt = 0);

}  // namespace phsolve

#endif
