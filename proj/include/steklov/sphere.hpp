#ifndef STEKLOV_SPHERE_HPP
#define STEKLOV_SPHERE_HPP

// Hodge-Laplace eigenvalues on coclosed p-forms of the unit round sphere
// S^{n-1}, indexed by mode number m >= 1:
//
//   lambda^(p)_(m) = (m + p) * (n + m - p - 2)
//
// valid for 0 <= p <= n-2. Eigenvalues are strictly increasing in m for
// fixed (n, p) and symmetric under p -> n-2-p.

#include <cstdint>
#include <functional>

namespace steklov {

/// One separated angular mode of the spectral problem.
struct ModeIndex {
  int n = 0;           ///< ambient manifold dimension (n >= 2)
  int p = 0;           ///< form degree, 0 <= p <= n-2
  int m = 0;           ///< mode number, m >= 1
  double lambda = 0;   ///< coclosed Hodge eigenvalue of the mode on S^{n-1}
};

/// Exact integer value of lambda^(p)_(m). Throws DomainError on bad ranges.
std::int64_t sphere_eigenvalue_exact(int n, int p, int m);

/// lambda^(p)_(m) as a double.
double sphere_eigenvalue(int n, int p, int m);

/// Builds a validated ModeIndex with lambda filled in.
ModeIndex make_mode(int n, int p, int m);

/// Consecutive-eigenvalue ratio lambda^(p)_(k+1) / lambda^(p)_(k), the
/// strict upper bound for consecutive Steklov ratios on concave warps:
///   (k+p+1)(n+k-p-1) / ((k+p)(n+k-p-2)).
double ratio_bound(int n, int p, int k);

/// Optional hook that reports the multiplicity of mode m. The engine never
/// consults it (spectra are listed without multiplicity); it exists so a
/// caller can attach one without an interface change. Ships empty.
std::function<std::int64_t(int n, int p, int m)>& multiplicity_provider();

}  // namespace steklov

#endif
