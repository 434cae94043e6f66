#ifndef PHSOLVE_IO_HPP
#define PHSOLVE_IO_HPP

#include <string>

#include "phsolve/pipeline.hpp"

namespace phsolve {

/// Input schema: {"n": int, "polynomials": [{"support": [[int,...],...],
/// "coefficients": ["p/q",...]}, ...]} with coefficient i matching support
/// point i.
SparseSystem read_system_json(const std::string& path);
SparseSystem parse_system_json(const std::string& text);

/// Output schema: {"u", "minimal_polynomial", "parametrizations", "D", "E",
/// "E_prime", "verified", "retries", "seed"}; rationals as "p/q" strings.
std::string report_to_json(const SolveReport& rep);

/// Parse a solution written by report_to_json (for re-verification).
GeometricSolution0D read_solution_json(const std::string& path);

/// Cells of the solver's subdivision as JSON.
std::string subdivision_to_json(const SubdivisionChoice& sub);

}  // namespace phsolve

#endif
