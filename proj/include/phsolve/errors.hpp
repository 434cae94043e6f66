#ifndef PHSOLVE_ERRORS_HPP
#define PHSOLVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phsolve {

/// Which random draw has to be refreshed after a detected failure.
enum class Redraw {
  None,         // not retryable
  Lifting,      // the lifting function omega
  Perturbation, // the perturbation polynomials g
  LinearFormU,  // the linear form u
  LinearFormUt, // the auxiliary linear form u~ (diagonal stage)
  Precision,    // retry with extra series precision
  Everything,   // inconsistency that implicates all draws
};

struct SolverError : std::runtime_error {
  Redraw redraw;
  explicit SolverError(const std::string& what, Redraw r = Redraw::None)
      : std::runtime_error(what), redraw(r) {}
};

// Detected failures of probabilistic choices. All of these are recoverable
// by refreshing the indicated randomness.
struct JetSingular : SolverError {
  explicit JetSingular(const std::string& w = "division by a jet with zero value")
      : SolverError(w, Redraw::LinearFormU) {}
};
struct SeriesNotInvertible : SolverError {
  explicit SeriesNotInvertible(const std::string& w = "series unit part vanishes")
      : SolverError(w, Redraw::Perturbation) {}
};
struct NotCoprime : SolverError {
  explicit NotCoprime(const std::string& w = "polynomials are not coprime")
      : SolverError(w, Redraw::LinearFormU) {}
};
struct NotSeparating : SolverError {
  explicit NotSeparating(const std::string& w, Redraw r) : SolverError(w, r) {}
};
struct PadeDegenerate : SolverError {
  explicit PadeDegenerate(const std::string& w = "no Pade approximant at the requested degrees")
      : SolverError(w, Redraw::Precision) {}
};
struct H2Violated : SolverError {
  explicit H2Violated(const std::string& w) : SolverError(w, Redraw::Perturbation) {}
};
struct DegenerateLifting : SolverError {
  explicit DegenerateLifting(const std::string& w = "lifting function is not generic")
      : SolverError(w, Redraw::Lifting) {}
};
struct SingularJacobian : SolverError {
  explicit SingularJacobian(const std::string& w = "Jacobian not invertible in the quotient")
      : SolverError(w, Redraw::Perturbation) {}
};
struct PoleAtOne : SolverError {
  explicit PoleAtOne(const std::string& w, Redraw r) : SolverError(w, r) {}
};
struct FractionalResidue : SolverError {
  explicit FractionalResidue(const std::string& w = "nonzero coefficient at a fractional exponent")
      : SolverError(w, Redraw::Everything) {}
};

// Fatal conditions: indicate a bug or an unusable input, never retried.
struct PreconditionFailed : SolverError {
  explicit PreconditionFailed(const std::string& w) : SolverError(w) {}
};
struct MissingOrigin : PreconditionFailed {
  explicit MissingOrigin(const std::string& w = "a support does not contain the origin")
      : PreconditionFailed(w) {}
};
struct ZeroMixedVolume : PreconditionFailed {
  explicit ZeroMixedVolume(const std::string& w = "mixed volume of the input is zero")
      : PreconditionFailed(w) {}
};
struct ConsistencyError : SolverError {
  explicit ConsistencyError(const std::string& w) : SolverError(w) {}
};
struct DivisionNotExact : ConsistencyError {
  explicit DivisionNotExact(const std::string& w = "expected exact polynomial division failed")
      : ConsistencyError(w) {}
};
struct PrecisionStall : ConsistencyError {
  explicit PrecisionStall(const std::string& w = "lifting precision failed to increase")
      : ConsistencyError(w) {}
};
struct Unverifiable : SolverError {
  explicit Unverifiable(const std::string& w = "substitution check failed on final output")
      : SolverError(w) {}
};
struct RetriesExhausted : SolverError {
  explicit RetriesExhausted(const std::string& w) : SolverError(w) {}
};

}  // namespace phsolve

#endif
