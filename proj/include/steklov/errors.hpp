#ifndef STEKLOV_ERRORS_HPP
#define STEKLOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace steklov {

/// Base class for all engine errors.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid (n, p, m) ranges or other argument-domain violations.
struct DomainError : SolverError {
  explicit DomainError(const std::string& what) : SolverError(what) {}
};

/// A warp profile violates its topology's invariants (endpoint values,
/// positivity, slope bound, sample ordering).
struct ProfileInvalid : SolverError {
  explicit ProfileInvalid(const std::string& what) : SolverError(what) {}
};

/// The solution lost positivity or monotonicity near the closed end:
/// the Frobenius launch cannot represent the recessive solution.
struct SingularityTooStrong : SolverError {
  explicit SingularityTooStrong(const std::string& what) : SolverError(what) {}
};

/// Adaptive step-size control collapsed (step underflow or step budget
/// exhausted) before reaching the far end of the interval.
struct IntegratorFailure : SolverError {
  explicit IntegratorFailure(const std::string& what) : SolverError(what) {}
};

/// A two-point basis solution vanished where it must not: lambda is an
/// interior Dirichlet eigenvalue and the boundary value problem is singular.
struct NonUniqueSolution : SolverError {
  explicit NonUniqueSolution(const std::string& what) : SolverError(what) {}
};

/// The weighted two-boundary flux matrix failed its symmetry consistency
/// check beyond tolerance.
struct AsymmetryError : SolverError {
  explicit AsymmetryError(const std::string& what) : SolverError(what) {}
};

/// A finite-element mass or stiffness integral near the closed end is too
/// ill-conditioned to trust (non-integrable weight for the given p).
struct QuadratureBlowup : SolverError {
  explicit QuadratureBlowup(const std::string& what) : SolverError(what) {}
};

/// The warp exceeds the stated uniform bound C required by a gap estimate.
struct CBoundViolated : SolverError {
  explicit CBoundViolated(const std::string& what) : SolverError(what) {}
};

}  // namespace steklov

#endif
