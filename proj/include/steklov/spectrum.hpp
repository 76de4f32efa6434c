#ifndef STEKLOV_SPECTRUM_HPP
#define STEKLOV_SPECTRUM_HPP

// Per-mode Dirichlet-to-Neumann blocks and their merge into a sorted
// spectrum table.
//
// Connected topology: one eigenvalue per mode, sigma = psi'(R)/psi(R).
//
// TwoBoundary topology: the raw 2x2 map D sends boundary values (a0, aL)
// to outward normal derivatives; with boundary weights w = h^{n-2p-1} the
// flux matrix F = W D is symmetric (Green's identity), so the block is
// solved as the symmetric generalized problem F x = sigma W x, whose
// eigenvalues equal those of D.

#include <cstddef>
#include <vector>

#include "steklov/radial_ode.hpp"

namespace steklov {

/// Eigenvalues contributed by one angular mode.
struct DtnBlock {
  ModeIndex mode;
  Topology topology = Topology::Connected;
  std::vector<double> sigma;    ///< ascending; 1 entry (Connected) or 2
  std::vector<double> weights;  ///< boundary weights h^q at each component
};

/// One row of a merged spectrum.
struct SpectrumEntry {
  int k = 0;          ///< 1-based rank in the merged ascending list
  int m = 0;          ///< source mode number
  int branch = 0;     ///< 0 (Connected / lower) or 1 (upper)
  double sigma = 0;
  double lambda = 0;  ///< angular eigenvalue of the source mode
  bool certified = false;  ///< true if no uncomputed mode can undercut it
};

/// Merged spectrum of all modes m = 1..m_max.
struct SpectrumTable {
  int n = 0, p = 0;
  Topology topology = Topology::Connected;
  int m_max = 0;
  std::size_t certified_prefix = 0;  ///< leading entries with true rank
  std::vector<SpectrumEntry> entries;
};

/// Solves one mode. Throws AsymmetryError if the weighted two-boundary
/// flux matrix is asymmetric beyond 1e-6 relative.
DtnBlock dtn_block(const WarpSpec& spec, const ModeIndex& mode,
                   const SolveOptions& opts = {});

/// Solves modes 1..m_max (in parallel when worthwhile; results are
/// deterministic) and merges ascending. Connected tables are fully
/// certified (mode order equals eigenvalue order); TwoBoundary tables are
/// certified up to the smallest possible eigenvalue of any mode > m_max.
SpectrumTable assemble_spectrum(const WarpSpec& spec, int p, int m_max,
                                const SolveOptions& opts = {});

/// Radial samples of a trial function for the variational quotient. dpsi
/// may be left empty; a 4th-order finite difference of psi fills in.
struct RadialSamples {
  std::vector<double> grid, psi, dpsi;
};

/// Variational quotient of a trial function against angular eigenvalue
/// lambda:
///   [ int (psi')^2 h^{n-2p-1} + lambda int psi^2 h^{n-2p-3} ]
///     / ( psi(R)^2 h(R)^{n-2p-1} )
/// by composite Simpson quadrature on the samples, plus the analytic
/// power-law tail over [0, grid.front()]. Connected topology only; throws
/// DomainError if psi does not vanish at the closed end within tolerance.
double rayleigh_quotient(const WarpSpec& spec, int p, double lambda,
                         const RadialSamples& samples);

/// Quotient of a solved radial factor (uses its grid, psi, dpsi).
double rayleigh_quotient(const WarpSpec& spec, const RadialSolution& sol);

/// Independent P1 finite-element discretization of the same mode, reduced
/// to the boundary by a Schur complement on a tridiagonal factorization.
/// Connected: geometrically graded mesh with first node at R * N^{-2} and a
/// power-law flux closure at the first node. TwoBoundary: uniform mesh,
/// closed-form 2x2 generalized eigensolve. Error decreases as O(N^{-2}).
/// Throws QuadratureBlowup if the closed-end mass integrals are too
/// singular to trust for the given p.
DtnBlock fem_oracle(const WarpSpec& spec, const ModeIndex& mode, int N);

}  // namespace steklov

#endif
