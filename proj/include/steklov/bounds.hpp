#ifndef STEKLOV_BOUNDS_HPP
#define STEKLOV_BOUNDS_HPP

// Automated verdicts for the eigenvalue bounds the engine is built to
// check. Each checker validates its preconditions (NotApplicable when they
// fail, never a spurious Holds), computes both sides, and reports a signed
// margin, positive when the claimed inequality holds strictly.
//
// Verdict policy: Violated only when the margin is negative beyond the
// combined solver error tolerance; HoldsWithEquality when |margin| <=
// 10 * tolerance; Holds otherwise.

#include <string>
#include <vector>

#include "steklov/spectrum.hpp"

namespace steklov {

enum class TheoremId {
  T1_2,     ///< sigma_(m) >= (m+p) kappa, Ricci >= 0, convex boundary
  T1_4i,    ///< sigma_(k+1)/sigma_(k) < lambda_(k+1)/lambda_(k), strict
  T1_4ii,   ///< p = (n-2)/2: sigma_(k) = (k+p)/h0 exactly
  T1_5i,    ///< gap <= R C^{n-2p-3} / h0^{n-2p-1} * (lambda gap), p <= (n-4)/2
  T1_5ii,   ///< gap <= R / h0^2 * (lambda gap), p = (n-3)/2
  T1_6i,    ///< revolution profile: sigma_m >= sigma_m(unit ball) = m+p
  T1_6ii,   ///< p = (n-2)/2: isospectral to the unit ball
  T1_7i,    ///< L >= 2, p <= (n-3)/2: sigma_k >= sigma_k(two unit balls)
  T1_7iia,  ///< L <= 2, p <= (n-3)/2: sigma_k >= (1-L/2)^{n-2p-1} cyl_k
  T1_7iib,  ///< L <= 2, p >= (n-1)/2: sigma_k <= (1-L/2)^{n-2p-1} cyl_k
  T1_8i,    ///< p <= (n-3)/2: sigma_k <= (1+L/2)^{n-2p-1} cyl_k
  T1_8ii,   ///< p >= (n-1)/2: sigma_k >= (1+L/2)^{n-2p-1} cyl_k
  COR_1_9,  ///< 0 < L < 2, p = (n-1)/2: sigma_k = cyl_k exactly
};

enum class Verdict { Holds, HoldsWithEquality, Violated, NotApplicable };

const char* to_string(TheoremId id);
const char* to_string(Verdict v);

/// One checked instance of a bound.
struct BoundReport {
  TheoremId theorem = TheoremId::T1_2;
  int n = 0, p = 0;
  int k = 0;            ///< mode / rank index the row refers to (0 for NA rows)
  std::string spec_tag; ///< family_tag of the checked warp
  double lhs = 0;       ///< the bound's left side as written above
  double rhs = 0;       ///< the bound's right side
  double margin = 0;    ///< slack, >= 0 iff the claim holds (equality: -|lhs-rhs|)
  double tolerance = 0; ///< combined solver error estimate scale
  Verdict verdict = Verdict::NotApplicable;
  std::string note;     ///< precondition failure or context detail
};

/// sigma_(m) >= (m+p) kappa for m = 1..m_max on a Connected warp with
/// Ricci >= 0 and strictly convex boundary (screened by check_ricci_convex)
/// and p <= (n-1)/2. Equality characterizes the flat ball.
std::vector<BoundReport> check_escobar_type(const WarpSpec& spec, int p,
                                            int m_max,
                                            const SolveOptions& opts = {});

/// Mirrored variant under the reversed curvature screen (h'' >= 0, boundary
/// still strictly convex): sigma_(m) <= (m+p) kappa. Reported under T1_2
/// with note "mirror".
std::vector<BoundReport> check_escobar_mirror(const WarpSpec& spec, int p,
                                              int m_max,
                                              const SolveOptions& opts = {});

/// Strict consecutive-ratio bound (any Connected warp, n >= 3) for
/// k = 1..k_max, and the p = (n-2)/2 exact-value identity when it applies.
std::vector<BoundReport> check_ratio(const WarpSpec& spec, int p, int k_max,
                                     const SolveOptions& opts = {});

/// p = (n-2)/2 only: sigma_(k) = (k+p)/h0 for k = 1..k_max, h0 = boundary
/// radius. The spectrum is conformally rigid: it sees only h0.
std::vector<BoundReport> check_isospectral_conformal(
    const WarpSpec& spec, int p, int k_max, const SolveOptions& opts = {});

/// Consecutive-gap bounds for k = 1..k_max. p <= (n-4)/2 requires the
/// uniform bound h <= C (throws CBoundViolated otherwise); p = (n-3)/2
/// needs no C. Other p: NotApplicable.
std::vector<BoundReport> check_gaps(const WarpSpec& spec, int p, int k_max,
                                    double C, const SolveOptions& opts = {});

/// Revolution-profile comparison against the unit ball, per mode m:
/// p <= (n-3)/2 lower bound sigma_m >= m+p (equality iff flat ball);
/// p = (n-2)/2 equality. Requires boundary radius 1 and |h'| <= 1.
std::vector<BoundReport> check_ball_comparison(const WarpSpec& spec, int p,
                                               int m_max,
                                               const SolveOptions& opts = {});

/// TwoBoundary revolution profiles with unit boundary spheres: per-mode
/// comparisons of both branch eigenvalues against two unit balls (L >= 2)
/// and against the scaled cylinder values (1 -/+ L/2)^{n-2p-1} cyl, with
/// the direction set by p, plus the p = (n-1)/2 small-L equality. Emits
/// rows for every theorem in {T1_7i, T1_7iia, T1_7iib, T1_8i, T1_8ii,
/// COR_1_9}, NotApplicable where preconditions fail.
std::vector<BoundReport> check_two_boundary_bounds(
    const WarpSpec& spec, int p, int m_max, const SolveOptions& opts = {});

}  // namespace steklov

#endif
