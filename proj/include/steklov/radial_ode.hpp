#ifndef STEKLOV_RADIAL_ODE_HPP
#define STEKLOV_RADIAL_ODE_HPP

// Radial factor of a separated coclosed p-form mode:
//
//   psi'' + (n-2p-1) (h'/h) psi' - lambda psi / h^2 = 0        on (0, R)
//
// Connected topology: r = 0 is a regular singular point (h ~ r). The
// recessive solution behaves like r^alpha with indicial exponent
//
//   alpha = [ -(n-2p-2) + sqrt((n-2p-2)^2 + 4 lambda) ] / 2  (= m+p exactly),
//
// and the mode's boundary eigenvalue is sigma = psi'(R) / psi(R).
//
// TwoBoundary topology: the coefficients are regular; the 2x2 block is
// spanned by the basis solutions u (u(0)=1, u(L)=0) and v (v(0)=0, v(L)=1).

#include <utility>

#include "steklov/sphere.hpp"
#include "steklov/warp.hpp"

namespace steklov {

/// Adaptive integrator and launch controls shared by all solves.
struct SolveOptions {
  double rtol = 1e-10;      ///< per-step relative error target
  double atol = 1e-14;      ///< absolute error floor
  double r0_factor = 1e-4;  ///< Connected launch offset r0 = r0_factor * R
  int output_points = 2049; ///< uniform sample count of the stored solution
  double renorm_threshold = 1e10;  ///< rescale state when |psi| exceeds this
};

/// One solved radial factor, sampled on a uniform grid. The overall scale
/// is arbitrary (the integrator renormalizes growing solutions); all
/// derived quantities are scale-invariant ratios.
struct RadialSolution {
  ModeIndex mode;
  std::vector<double> grid;   ///< ascending, uniform; Connected starts at r0
  std::vector<double> psi;    ///< solution samples on grid
  std::vector<double> dpsi;   ///< derivative samples on grid
  double end_value = 0;       ///< psi at the last grid point
  double end_slope = 0;       ///< psi' at the last grid point
  double frobenius_alpha = 0; ///< indicial exponent (Connected), else 0
  double start_offset = 0;    ///< launch offset r0 (Connected), else 0
};

/// Indicial exponent of the recessive solution at the closed end.
double frobenius_exponent(const ModeIndex& mode);

/// Integrates the recessive solution from a two-term Frobenius launch at
/// r0 = r0_factor * R out to the boundary. Throws SingularityTooStrong if
/// positivity or monotonicity of psi is lost, IntegratorFailure on step
/// collapse. sigma for the mode is end_slope / end_value.
RadialSolution shoot_connected(const WarpSpec& spec, const ModeIndex& mode,
                               const SolveOptions& opts = {});

/// Basis pair {u, v} for a two-boundary block: u(0)=1, u(L)=0 and v(0)=0,
/// v(L)=1. Each is integrated from the end where it vanishes (u backward
/// from L, v forward from 0) and scaled by its value at the far end, so no
/// cancellation occurs for large sqrt(lambda) L. Throws NonUniqueSolution
/// if lambda is an interior Dirichlet eigenvalue of the mode.
std::pair<RadialSolution, RadialSolution> solve_two_boundary(
    const WarpSpec& spec, const ModeIndex& mode, const SolveOptions& opts = {});

/// Closed-form mode eigenvalue pair of the product cylinder h == 1:
///   { sqrt(lambda) tanh(sqrt(lambda) L / 2),
///     sqrt(lambda) coth(sqrt(lambda) L / 2) },
/// ascending. lambda = lambda^(p)_(m) of the mode.
std::pair<double, double> cylinder_spectrum(int n, int p, double L, int m);

}  // namespace steklov

#endif
