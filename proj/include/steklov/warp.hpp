#ifndef STEKLOV_WARP_HPP
#define STEKLOV_WARP_HPP

// Warped product metrics g = dr^2 + h(r)^2 g_S on [0, length] x S^{n-1}.
//
// Engine orientation, fixed across all modules:
//   Connected topology:  h(0) = 0, h'(0) = 1 (the r = 0 end closes to a
//       point), boundary sphere at r = length with radius h(length) > 0.
//   TwoBoundary topology: h > 0 everywhere, boundary spheres at r = 0 and
//       r = length.
//
// Profiles supplied in the outward convention (boundary at r = 0, radius
// h(0) = 1, |h'| <= 1, closing toward increasing r) are mirrored into the
// engine orientation by the revolution-profile constructor.

#include <functional>
#include <string>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

enum class Topology { Connected, TwoBoundary };

/// Smoothness predicate tolerance used by constructors and checks.
inline constexpr double kWarpTol = 1e-8;

/// One warped product manifold. h, dh, d2h are the warping function and its
/// first two derivatives on [0, length]; constructors guarantee the
/// topology's endpoint invariants and derivative consistency.
struct WarpSpec {
  int n = 0;                           ///< manifold dimension, n >= 2
  Topology topology = Topology::Connected;
  double length = 0;                   ///< meridian length (R or L)
  std::function<double(double)> h;     ///< warping function, > 0 on (0, length)
  std::function<double(double)> dh;    ///< h'
  std::function<double(double)> d2h;   ///< h''
  std::string family_tag;              ///< provenance label for artifacts
};

/// Principal curvature data of the boundary sphere(s), outward convention.
struct BoundaryGeometry {
  /// One entry (Connected, at r = length) or two (TwoBoundary, at r = 0
  /// then r = length). All principal curvatures of a boundary sphere in a
  /// warped product coincide, so one number per component suffices.
  std::vector<double> principal_curvatures;
  double kappa = 0;  ///< minimum over all boundary principal curvatures
};

/// Result of the closed-end smoothness screen: h must extend to a smooth
/// odd function through r = 0, verified through the fourth derivative
/// (h(0) = 0, h'(0) = 1, h''(0) = 0, h''''(0) = 0). Higher even derivatives
/// drown in finite-difference noise and are not checked.
struct SmoothClosureReport {
  bool pass = false;
  double h0 = 0;    ///< h(0), want 0
  double dh0 = 0;   ///< h'(0), want 1
  double d2h0 = 0;  ///< h''(0), want 0
  double d4h0 = 0;  ///< h''''(0) estimate, want 0 (estimator-limited)
  double tol2 = 0;  ///< tolerance applied to h0, dh0-1, d2h0
  double tol4 = 0;  ///< tolerance applied to d4h0
};

/// Result of the curvature screen for the Escobar-type lower bound:
/// nonnegative Ricci (h'' <= 0, |h'| <= 1) and strictly convex boundary
/// (kappa = h'(R)/h(R) > 0), sampled on a uniform grid.
struct ConvexityReport {
  bool pass = false;
  double max_d2h = 0;  ///< max h'' over the grid, want <= tol
  double min_dh = 0;   ///< min h' over the grid, want > 0
  double max_dh = 0;   ///< max h' over the grid, want <= 1 + tol
  double kappa = 0;    ///< boundary curvature h'(R)/h(R), want > 0
};

/// Flat disk profile h(r) = r on [0, R]: the Euclidean ball of radius R.
WarpSpec make_ball(int n, double R);

/// Product cylinder profile h == 1 on [0, L], two boundary spheres.
WarpSpec make_cylinder(int n, double L);

enum class ConcaveKind { Sin, Custom };

/// User-supplied warping triple for ConcaveKind::Custom.
struct CustomWarp {
  std::function<double(double)> h, dh, d2h;
  std::string tag = "custom";
};

/// Concave connected warp. Sin: h = sin(r) on [0, R], R < pi/2.
/// Custom: caller's triple, rejected unless it passes the smooth-closure
/// screen and is concave with 0 < h' <= 1 on the grid.
WarpSpec make_concave(ConcaveKind kind, int n, double R,
                      const CustomWarp& custom = {});

/// Ratio-saturating family: h = r near the closed end, a large plateau
/// eps^{-1/(2(n-2p-3))} (eps^{-1/2} when p = (n-3)/2) over the middle, and
/// h == 1 on the boundary band [R-eps, R], joined C^2 by quintic smoothstep
/// blends on bands of width eps. Defined for p <= (n-3)/2 only; the plateau
/// exponent flips sign beyond that and the family loses its purpose.
WarpSpec make_sharpness_family(int n, int p, double R, double eps);

/// Revolution profile from a closed-form triple in the outward convention
/// (boundary at r = 0 with h(0) = 1, |h'| <= 1; Connected profiles close at
/// r = L with h(L) = 0). Mirrored into engine orientation for Connected.
WarpSpec make_revolution_profile(int n, Topology topology, double L,
                                 std::function<double(double)> h,
                                 std::function<double(double)> dh,
                                 std::function<double(double)> d2h,
                                 std::string tag = "profile");

/// Revolution profile from samples (r_i, h_i), outward convention, r_0 = 0,
/// strictly increasing r, last r = L. Interpolated by a monotone cubic
/// (Fritsch-Carlson slopes) whose exact first and second derivatives serve
/// as dh and d2h.
WarpSpec make_revolution_profile(int n, Topology topology,
                                 const std::vector<double>& r,
                                 const std::vector<double>& h,
                                 std::string tag = "profile");

/// Principal curvatures of the boundary sphere(s).
BoundaryGeometry boundary_geometry(const WarpSpec& spec);

/// Closed-end smoothness screen (Connected only). tol widens both derivative
/// tolerances; the fourth-derivative tolerance has an estimator-accuracy
/// floor of 1e-6.
SmoothClosureReport check_assumption_A(const WarpSpec& spec,
                                       double tol = kWarpTol);

/// Curvature screen on a uniform grid of `samples` points (Connected only).
ConvexityReport check_ricci_convex(const WarpSpec& spec,
                                   double tol = kWarpTol, int samples = 1001);

/// Max absolute mismatch of (dh, d2h) against centered finite differences
/// of h at `samples` interior points. first = dh residual, second = d2h
/// residual, both already scaled by the FD step laws (O(step^2) accuracy).
std::pair<double, double> derivative_consistency(const WarpSpec& spec,
                                                 int samples = 101);

}  // namespace steklov

#endif
