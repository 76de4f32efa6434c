#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/spectrum.hpp"

// P1 finite-element discretization of the radial mode problem in weak form:
//
//   B(psi, phi) = int [ psi' phi' h^q + lambda psi phi h^{q-2} ] dr,
//   q = n - 2p - 1,
//
// reduced to the boundary node(s) by a Schur complement on the tridiagonal
// stiffness-plus-mass matrix. The boundary reduction S equals the weighted
// flux matrix, so sigma = S / h^q (Connected) or the eigenvalues of the
// 2x2 pencil (S, diag(h^q)) (TwoBoundary).
//
// Connected meshes are geometrically graded toward the closed end, r_i =
// R (r0/R)^{(N-i)/N} with r0 = R N^{-2}; the exact power-law tail energy
// alpha h(r0)^q / r0 closes the system at the first node (the identity
// alpha^2 + (q-1) alpha = lambda makes this the energy of r^alpha on
// [0, r0], so no accuracy is lost there).

namespace steklov {

namespace {

struct Tridiag {
  std::vector<double> lower, diag, upper;  // lower[i], diag[i], upper[i]

  explicit Tridiag(std::size_t n) : lower(n, 0), diag(n, 0), upper(n, 0) {}

  /// In-place Thomas solve, one right-hand side. The assembled operator is
  /// symmetric positive definite, so no pivoting is needed.
  void solve(std::vector<double>& rhs) const {
    const std::size_t n = diag.size();
    std::vector<double> c(n), dd(n);
    c[0] = upper[0] / diag[0];
    dd[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double denom = diag[i] - lower[i] * c[i - 1];
      c[i] = upper[i] / denom;
      dd[i] = (rhs[i] - lower[i] * dd[i - 1]) / denom;
    }
    rhs[n - 1] = dd[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = dd[i] - c[i] * rhs[i + 1];
  }
};

struct ElementIntegrals {
  double stiff;          // int h^q dr (times (b-a)^{-2} gives K entries)
  double m00, m01, m11;  // int phi_i phi_j h^{q-2} dr
};

/// 3-point Gauss-Legendre integrals over one element, with a refinement
/// probe: the same integrals recomputed on two half-elements must agree,
/// otherwise the weight varies too violently for the quadrature to see.
ElementIntegrals element_integrals(const WarpSpec& spec, int q, double a, double b) {
  static constexpr std::array<double, 3> t = {-0.7745966692414834, 0.0,
                                              0.7745966692414834};
  static constexpr std::array<double, 3> w = {5.0 / 9, 8.0 / 9, 5.0 / 9};

  auto rule = [&](double lo, double hi) {
    ElementIntegrals e{0, 0, 0, 0};
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int j = 0; j < 3; ++j) {
      const double x = mid + t[j] * half;
      const double h = spec.h(x);
      if (!(h > 0))
        throw QuadratureBlowup("warp is nonpositive at quadrature point r=" +
                               std::to_string(x));
      const double wq = w[j] * half;
      const double hq = std::pow(h, q), hq2 = std::pow(h, q - 2);
      // phi_0, phi_1 are the hats of the full element [a, b].
      const double p1 = (x - a) / (b - a), p0 = 1 - p1;
      e.stiff += wq * hq;
      e.m00 += wq * p0 * p0 * hq2;
      e.m01 += wq * p0 * p1 * hq2;
      e.m11 += wq * p1 * p1 * hq2;
    }
    return e;
  };

  const ElementIntegrals coarse = rule(a, b);
  const double mid = 0.5 * (a + b);
  const ElementIntegrals l = rule(a, mid), r = rule(mid, b);
  auto off = [](double c, double f) {
    return std::abs(c - f) / std::max({std::abs(c), std::abs(f), 1e-300});
  };
  const ElementIntegrals fine{l.stiff + r.stiff, l.m00 + r.m00, l.m01 + r.m01,
                              l.m11 + r.m11};
  if (off(coarse.stiff, fine.stiff) > 0.5 || off(coarse.m00, fine.m00) > 0.5 ||
      off(coarse.m11, fine.m11) > 0.5)
    throw QuadratureBlowup("element [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] failed the refinement probe");
  return fine;
}

Tridiag assemble(const WarpSpec& spec, const ModeIndex& mode,
                 const std::vector<double>& nodes) {
  const int q = mode.n - 2 * mode.p - 1;
  Tridiag A(nodes.size());
  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    const double a = nodes[e], b = nodes[e + 1], len = b - a;
    const ElementIntegrals I = element_integrals(spec, q, a, b);
    const double k = I.stiff / (len * len);
    A.diag[e] += k + mode.lambda * I.m00;
    A.diag[e + 1] += k + mode.lambda * I.m11;
    A.upper[e] += -k + mode.lambda * I.m01;
    A.lower[e + 1] += -k + mode.lambda * I.m01;
  }
  return A;
}

}  // namespace

DtnBlock fem_oracle(const WarpSpec& spec, const ModeIndex& mode, int N) {
  if (mode.n != spec.n) throw DomainError("fem_oracle: mode/spec dimension mismatch");
  if (N < 8) throw DomainError("fem_oracle: need N >= 8 elements");
  const int q = mode.n - 2 * mode.p - 1;

  DtnBlock block;
  block.mode = mode;
  block.topology = spec.topology;

  if (spec.topology == Topology::Connected) {
    const double R = spec.length;
    const double r0 = R / (static_cast<double>(N) * N);
    std::vector<double> nodes(N + 1);
    for (int i = 0; i <= N; ++i)
      nodes[i] = R * std::pow(r0 / R, static_cast<double>(N - i) / N);
    nodes.back() = R;

    Tridiag A = assemble(spec, mode, nodes);
    const double alpha = frobenius_exponent(mode);
    A.diag[0] += alpha * std::pow(spec.h(r0), q) / r0;

    // Schur complement onto the boundary node: solve the interior system
    // for the discrete extension of boundary value 1.
    Tridiag Aii(N);
    Aii.lower.assign(A.lower.begin(), A.lower.begin() + N);
    Aii.diag.assign(A.diag.begin(), A.diag.begin() + N);
    Aii.upper.assign(A.upper.begin(), A.upper.begin() + N);
    std::vector<double> x(N, 0.0);
    x[N - 1] = -A.upper[N - 1];
    Aii.solve(x);
    const double S = A.diag[N] + A.lower[N] * x[N - 1];

    block.sigma = {S / std::pow(spec.h(R), q)};
    block.weights = {std::pow(spec.h(R), q)};
    return block;
  }

  const double L = spec.length;
  std::vector<double> nodes(N + 1);
  for (int i = 0; i <= N; ++i) nodes[i] = L * i / N;
  Tridiag A = assemble(spec, mode, nodes);

  // Schur onto both boundary nodes with the interior block 1..N-1.
  Tridiag Aii(N - 1);
  Aii.lower.assign(A.lower.begin() + 1, A.lower.begin() + N);
  Aii.diag.assign(A.diag.begin() + 1, A.diag.begin() + N);
  Aii.upper.assign(A.upper.begin() + 1, A.upper.begin() + N);
  std::vector<double> x0(N - 1, 0.0), xN(N - 1, 0.0);
  x0[0] = -A.lower[1];
  xN[N - 2] = -A.upper[N - 1];
  Aii.solve(x0);
  Aii.solve(xN);

  const double s00 = A.diag[0] + A.upper[0] * x0[0];
  const double s0n = A.upper[0] * xN[0];
  const double sn0 = A.lower[N] * x0[N - 2];
  const double snn = A.diag[N] + A.lower[N] * xN[N - 2];

  const double w0 = std::pow(spec.h(0), q), wL = std::pow(spec.h(L), q);
  const double g00 = s00 / w0;
  const double g11 = snn / wL;
  const double g01 = 0.5 * (s0n + sn0) / std::sqrt(w0 * wL);
  const double mean = 0.5 * (g00 + g11);
  const double disc = std::hypot(0.5 * (g00 - g11), g01);
  block.sigma = {mean - disc, mean + disc};
  block.weights = {w0, wL};
  return block;
}

}  // namespace steklov
