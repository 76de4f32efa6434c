#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>
#include <tuple>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

double boundary_weight(const WarpSpec& spec, double r, int p) {
  return std::pow(spec.h(r), spec.n - 2 * p - 1);
}

/// Eigenvalues of the symmetric pencil (F, W), W = diag(w0, w1) positive,
/// via the congruent ordinary problem G = W^{-1/2} F W^{-1/2}.
std::pair<double, double> sym_2x2_generalized(double f00, double f01, double f11,
                                              double w0, double w1) {
  const double g00 = f00 / w0;
  const double g11 = f11 / w1;
  const double g01 = f01 / std::sqrt(w0 * w1);
  const double mean = 0.5 * (g00 + g11);
  const double disc = std::hypot(0.5 * (g00 - g11), g01);
  return {mean - disc, mean + disc};
}

}  // namespace

DtnBlock dtn_block(const WarpSpec& spec, const ModeIndex& mode,
                   const SolveOptions& opts) {
  DtnBlock block;
  block.mode = mode;
  block.topology = spec.topology;

  if (spec.topology == Topology::Connected) {
    const RadialSolution sol = shoot_connected(spec, mode, opts);
    block.sigma = {sol.end_slope / sol.end_value};
    block.weights = {boundary_weight(spec, spec.length, mode.p)};
    return block;
  }

  const auto [u, v] = solve_two_boundary(spec, mode, opts);
  const double w0 = boundary_weight(spec, 0.0, mode.p);
  const double wL = boundary_weight(spec, spec.length, mode.p);

  // Outward-flux matrix F = W D for boundary data (psi(0), psi(L)):
  // F01 and F10 are equal for the exact solutions (Green's identity);
  // their computed mismatch is pure solver error.
  const double f00 = -w0 * u.dpsi.front();
  const double f01 = -w0 * v.dpsi.front();
  const double f10 = wL * u.dpsi.back();
  const double f11 = wL * v.dpsi.back();
  const double scale = std::max({std::abs(f01), std::abs(f10), 1e-300});
  if (std::abs(f01 - f10) > 1e-6 * scale)
    throw AsymmetryError("two-boundary flux matrix asymmetry " +
                         std::to_string(std::abs(f01 - f10) / scale) +
                         " exceeds 1e-6 (mode m=" + std::to_string(mode.m) + ")");

  const auto [lo, hi] = sym_2x2_generalized(f00, 0.5 * (f01 + f10), f11, w0, wL);
  block.sigma = {lo, hi};
  block.weights = {w0, wL};
  return block;
}

SpectrumTable assemble_spectrum(const WarpSpec& spec, int p, int m_max,
                                const SolveOptions& opts) {
  if (m_max < 1) throw DomainError("assemble_spectrum: m_max must be >= 1");

  std::vector<DtnBlock> blocks(m_max);
  const unsigned hw = std::thread::hardware_concurrency();
  if (m_max >= 4 && hw > 1) {
    std::vector<std::future<DtnBlock>> jobs;
    jobs.reserve(m_max);
    for (int m = 1; m <= m_max; ++m)
      jobs.push_back(std::async(std::launch::async, [&, m] {
        return dtn_block(spec, make_mode(spec.n, p, m), opts);
      }));
    for (int m = 1; m <= m_max; ++m) blocks[m - 1] = jobs[m - 1].get();
  } else {
    for (int m = 1; m <= m_max; ++m)
      blocks[m - 1] = dtn_block(spec, make_mode(spec.n, p, m), opts);
  }

  SpectrumTable table;
  table.n = spec.n;
  table.p = p;
  table.topology = spec.topology;
  table.m_max = m_max;
  for (const auto& block : blocks)
    for (std::size_t b = 0; b < block.sigma.size(); ++b)
      table.entries.push_back({0, block.mode.m, static_cast<int>(b),
                               block.sigma[b], block.mode.lambda, false});

  std::sort(table.entries.begin(), table.entries.end(),
            [](const SpectrumEntry& x, const SpectrumEntry& y) {
              return std::tie(x.sigma, x.m, x.branch) < std::tie(y.sigma, y.m, y.branch);
            });
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    table.entries[i].k = static_cast<int>(i) + 1;

  if (spec.topology == Topology::Connected) {
    // Mode order equals eigenvalue order for connected warps, so every
    // computed entry has its true rank.
    for (auto& e : table.entries) e.certified = true;
    table.certified_prefix = table.entries.size();
    return table;
  }

  // Any uncomputed mode m' > m_max has both branch values at least
  //   factor * sqrt(lambda) tanh(sqrt(lambda) L / 2)  at lambda_{m_max+1},
  // where factor bounds the warp weights against the unit cylinder's:
  // numerator weights from below, boundary weights from above.
  const int q = spec.n - 2 * p - 1;
  double min_hq = 1e300, min_hq2 = 1e300;
  const int N = 1001;
  for (int i = 0; i < N; ++i) {
    const double h = spec.h(spec.length * i / (N - 1));
    min_hq = std::min(min_hq, std::pow(h, q));
    min_hq2 = std::min(min_hq2, std::pow(h, q - 2));
  }
  const double wmax = std::max(boundary_weight(spec, 0.0, p),
                               boundary_weight(spec, spec.length, p));
  const double factor = std::min(min_hq, min_hq2) / wmax;
  const double lam_next = sphere_eigenvalue(spec.n, p, m_max + 1);
  const double sq = std::sqrt(lam_next);
  const double cutoff = factor * sq * std::tanh(sq * spec.length / 2);

  table.certified_prefix = 0;
  for (auto& e : table.entries) {
    if (!(e.sigma < cutoff)) break;
    e.certified = true;
    table.certified_prefix = static_cast<std::size_t>(e.k);
  }
  return table;
}

double rayleigh_quotient(const WarpSpec& spec, int p, double lambda,
                         const RadialSamples& samples) {
  if (spec.topology != Topology::Connected)
    throw DomainError("rayleigh_quotient: connected topology only");
  if (!(lambda > 0)) throw DomainError("rayleigh_quotient: lambda must be positive");
  const auto& grid = samples.grid;
  const auto& psi = samples.psi;
  if (grid.size() < 5 || grid.size() != psi.size())
    throw DomainError("rayleigh_quotient: need >= 5 aligned samples");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw DomainError("rayleigh_quotient: grid must increase strictly");

  const double R = spec.length;
  if (grid.front() < 0 || grid.front() > 0.05 * R)
    throw DomainError("rayleigh_quotient: samples must start near the closed end");
  if (std::abs(grid.back() - R) > 1e-6 * R)
    throw DomainError("rayleigh_quotient: samples must reach the boundary");

  double max_abs = 0;
  for (double t : psi) max_abs = std::max(max_abs, std::abs(t));
  if (!(max_abs > 0) || std::abs(psi.front()) > 1e-3 * max_abs)
    throw DomainError("rayleigh_quotient: trial function must vanish at the closed end");
  if (psi.back() == 0)
    throw DomainError("rayleigh_quotient: trial function must not vanish on the boundary");

  // Fill dpsi by 4th-order finite differences when absent.
  std::vector<double> dpsi = samples.dpsi;
  if (dpsi.empty()) {
    const std::size_t K = grid.size();
    dpsi.resize(K);
    const double dstep = (grid.back() - grid.front()) / (K - 1);
    for (std::size_t i = 0; i + 1 < K; ++i)
      if (std::abs(grid[i + 1] - grid[i] - dstep) > 1e-9 * dstep)
        throw DomainError("rayleigh_quotient: derivative fill-in needs a uniform grid");
    auto at = [&](std::size_t i) { return psi[i]; };
    for (std::size_t i = 0; i < K; ++i) {
      if (i >= 2 && i + 2 < K) {
        dpsi[i] = (at(i - 2) - 8 * at(i - 1) + 8 * at(i + 1) - at(i + 2)) / (12 * dstep);
      } else if (i < 2) {
        dpsi[i] = (-25 * at(i) + 48 * at(i + 1) - 36 * at(i + 2) + 16 * at(i + 3) -
                   3 * at(i + 4)) / (12 * dstep);
      } else {
        dpsi[i] = (25 * at(i) - 48 * at(i - 1) + 36 * at(i - 2) - 16 * at(i - 3) +
                   3 * at(i - 4)) / (12 * dstep);
      }
    }
  } else if (dpsi.size() != grid.size()) {
    throw DomainError("rayleigh_quotient: dpsi size mismatch");
  }

  const int q = spec.n - 2 * p - 1;
  auto integrand = [&](std::size_t i) {
    const double h = spec.h(grid[i]);
    return dpsi[i] * dpsi[i] * std::pow(h, q) +
           lambda * psi[i] * psi[i] * std::pow(h, q - 2);
  };

  // Composite Simpson over interval pairs (nonuniform-safe), trapezoid on a
  // trailing odd interval.
  double total = 0;
  std::size_t i = 0;
  const std::size_t K = grid.size();
  while (i + 2 < K) {
    const double h0 = grid[i + 1] - grid[i];
    const double h1 = grid[i + 2] - grid[i + 1];
    const double f0 = integrand(i), f1 = integrand(i + 1), f2 = integrand(i + 2);
    total += (h0 + h1) / 6.0 *
             ((2 - h1 / h0) * f0 + (h0 + h1) * (h0 + h1) / (h0 * h1) * f1 +
              (2 - h0 / h1) * f2);
    i += 2;
  }
  if (i + 2 == K)
    total += 0.5 * (grid[i + 1] - grid[i]) * (integrand(i) + integrand(i + 1));

  // Analytic power-law tail over [0, grid.front()].
  if (grid.front() > 0) {
    const double alpha = frobenius_exponent(ModeIndex{spec.n, p, 1, lambda});
    const double g0 = grid.front();
    total += psi.front() * psi.front() * alpha * std::pow(spec.h(g0), q) / g0;
  }

  const double wR = std::pow(spec.h(R), q);
  return total / (psi.back() * psi.back() * wR);
}

double rayleigh_quotient(const WarpSpec& spec, const RadialSolution& sol) {
  return rayleigh_quotient(spec, sol.mode.p, sol.mode.lambda,
                           RadialSamples{sol.grid, sol.psi, sol.dpsi});
}

}  // namespace steklov
