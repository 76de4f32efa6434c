#include "steklov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

/// Per-side solver error estimate: the shooting and 2x2 paths carry a
/// global relative error well under 1e2 * rtol; the floor covers
/// closed-form sides and rounding.
double side_err(double value, const SolveOptions& opts) {
  return std::max(1e-8, 100 * opts.rtol) * std::max(1.0, std::abs(value));
}

double tol_for(double lhs, double rhs, const SolveOptions& opts) {
  return 10 * (side_err(lhs, opts) + side_err(rhs, opts));
}

/// Equality detection wins inside its window; beyond it the sign decides.
Verdict classify(double margin, double tol) {
  if (std::abs(margin) <= 10 * tol) return Verdict::HoldsWithEquality;
  return margin > 0 ? Verdict::Holds : Verdict::Violated;
}

BoundReport na_report(TheoremId id, const WarpSpec& spec, int p, std::string note) {
  BoundReport rep;
  rep.theorem = id;
  rep.n = spec.n;
  rep.p = p;
  rep.spec_tag = spec.family_tag;
  rep.verdict = Verdict::NotApplicable;
  rep.note = std::move(note);
  return rep;
}

BoundReport row(TheoremId id, const WarpSpec& spec, int p, int k, double lhs,
                double rhs, double margin, const SolveOptions& opts,
                std::string note = {}) {
  BoundReport rep;
  rep.theorem = id;
  rep.n = spec.n;
  rep.p = p;
  rep.k = k;
  rep.spec_tag = spec.family_tag;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = margin;
  rep.tolerance = tol_for(lhs, rhs, opts);
  rep.verdict = classify(margin, rep.tolerance);
  rep.note = std::move(note);
  return rep;
}

/// Revolution-profile admissibility: unit boundary sphere(s) and
/// embeddable slope |h'| <= 1 on the grid. Empty result means admissible.
std::string revolution_objection(const WarpSpec& spec) {
  const int N = 1001;
  for (int i = 0; i < N; ++i) {
    const double r = spec.length * i / (N - 1);
    if (std::abs(spec.dh(r)) > 1 + 1e-8)
      return "profile slope exceeds 1 at r=" + std::to_string(r);
  }
  if (std::abs(spec.h(spec.length) - 1) > 1e-8)
    return "boundary radius at r=L is not 1";
  if (spec.topology == Topology::TwoBoundary &&
      std::abs(spec.h(0) - 1) > 1e-8)
    return "boundary radius at r=0 is not 1";
  return {};
}

std::vector<double> connected_sigmas(const WarpSpec& spec, int p, int m_max,
                                     const SolveOptions& opts) {
  const SpectrumTable table = assemble_spectrum(spec, p, m_max, opts);
  std::vector<double> s(m_max);
  for (const auto& e : table.entries) s[e.m - 1] = e.sigma;
  return s;
}

std::vector<BoundReport> escobar_impl(const WarpSpec& spec, int p, int m_max,
                                      const SolveOptions& opts, bool mirror) {
  const char* note = mirror ? "mirror" : "";
  if (spec.topology != Topology::Connected)
    return {na_report(TheoremId::T1_2, spec, p, "connected boundary required")};
  if (2 * p > spec.n - 1)
    return {na_report(TheoremId::T1_2, spec, p, "requires p <= (n-1)/2")};

  if (!mirror) {
    const auto conv = check_ricci_convex(spec);
    if (!conv.pass)
      return {na_report(TheoremId::T1_2, spec, p,
                        "curvature screen failed (max h''=" + std::to_string(conv.max_d2h) +
                        ", h' in [" + std::to_string(conv.min_dh) + ", " +
                        std::to_string(conv.max_dh) + "], kappa=" +
                        std::to_string(conv.kappa) + ")")};
  } else {
    // Reversed screen: Ricci <= 0 needs h'' >= 0 and h' >= 1; the boundary
    // must remain strictly convex.
    const int N = 1001;
    double min_d2h = 1e300, min_dh = 1e300;
    for (int i = 0; i < N; ++i) {
      const double r = spec.length * i / (N - 1);
      min_d2h = std::min(min_d2h, spec.d2h(r));
      min_dh = std::min(min_dh, spec.dh(r));
    }
    const double kappa = spec.dh(spec.length) / spec.h(spec.length);
    if (min_d2h < -kWarpTol || min_dh < 1 - kWarpTol || kappa <= kWarpTol)
      return {na_report(TheoremId::T1_2, spec, p,
                        "reversed curvature screen failed (min h''=" +
                        std::to_string(min_d2h) + ", min h'=" +
                        std::to_string(min_dh) + ")")};
  }

  const double kappa = boundary_geometry(spec).kappa;
  const auto sigma = connected_sigmas(spec, p, m_max, opts);
  std::vector<BoundReport> out;
  out.reserve(m_max);
  for (int m = 1; m <= m_max; ++m) {
    const double lhs = sigma[m - 1];
    const double rhs = (m + p) * kappa;
    const double margin = mirror ? rhs - lhs : lhs - rhs;
    out.push_back(row(TheoremId::T1_2, spec, p, m, lhs, rhs, margin, opts, note));
  }
  return out;
}

}  // namespace

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1_2: return "t1.2";
    case TheoremId::T1_4i: return "t1.4i";
    case TheoremId::T1_4ii: return "t1.4ii";
    case TheoremId::T1_5i: return "t1.5i";
    case TheoremId::T1_5ii: return "t1.5ii";
    case TheoremId::T1_6i: return "t1.6i";
    case TheoremId::T1_6ii: return "t1.6ii";
    case TheoremId::T1_7i: return "t1.7i";
    case TheoremId::T1_7iia: return "t1.7iia";
    case TheoremId::T1_7iib: return "t1.7iib";
    case TheoremId::T1_8i: return "t1.8i";
    case TheoremId::T1_8ii: return "t1.8ii";
    case TheoremId::COR_1_9: return "cor1.9";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::HoldsWithEquality: return "HoldsWithEquality";
    case Verdict::Violated: return "Violated";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

std::vector<BoundReport> check_escobar_type(const WarpSpec& spec, int p,
                                            int m_max, const SolveOptions& opts) {
  return escobar_impl(spec, p, m_max, opts, false);
}

std::vector<BoundReport> check_escobar_mirror(const WarpSpec& spec, int p,
                                              int m_max, const SolveOptions& opts) {
  return escobar_impl(spec, p, m_max, opts, true);
}

std::vector<BoundReport> check_ratio(const WarpSpec& spec, int p, int k_max,
                                     const SolveOptions& opts) {
  if (spec.topology != Topology::Connected)
    return {na_report(TheoremId::T1_4i, spec, p, "connected boundary required")};
  if (spec.n < 3)
    return {na_report(TheoremId::T1_4i, spec, p, "requires n >= 3")};

  const auto sigma = connected_sigmas(spec, p, k_max + 1, opts);
  std::vector<BoundReport> out;
  out.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    const double lhs = sigma[k] / sigma[k - 1];
    const double rhs = ratio_bound(spec.n, p, k);
    out.push_back(row(TheoremId::T1_4i, spec, p, k, lhs, rhs, rhs - lhs, opts,
                      "strict"));
  }
  return out;
}

std::vector<BoundReport> check_isospectral_conformal(const WarpSpec& spec, int p,
                                                     int k_max,
                                                     const SolveOptions& opts) {
  if (spec.topology != Topology::Connected)
    return {na_report(TheoremId::T1_4ii, spec, p, "connected boundary required")};
  if (spec.n % 2 != 0 || 2 * p != spec.n - 2)
    return {na_report(TheoremId::T1_4ii, spec, p, "requires even n and p = (n-2)/2")};

  const double h0 = spec.h(spec.length);
  const auto sigma = connected_sigmas(spec, p, k_max, opts);
  std::vector<BoundReport> out;
  out.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    const double lhs = sigma[k - 1];
    const double rhs = (k + p) / h0;
    out.push_back(row(TheoremId::T1_4ii, spec, p, k, lhs, rhs,
                      -std::abs(lhs - rhs), opts, "equality"));
  }
  return out;
}

std::vector<BoundReport> check_gaps(const WarpSpec& spec, int p, int k_max,
                                    double C, const SolveOptions& opts) {
  if (spec.topology != Topology::Connected)
    return {na_report(TheoremId::T1_5i, spec, p, "connected boundary required")};

  const bool small_p = (spec.n >= 4) && (2 * p <= spec.n - 4);
  const bool edge_p = (2 * p == spec.n - 3);
  std::vector<BoundReport> out;
  if (!small_p)
    out.push_back(na_report(TheoremId::T1_5i, spec, p, "requires p <= (n-4)/2"));
  if (!edge_p)
    out.push_back(na_report(TheoremId::T1_5ii, spec, p, "requires p = (n-3)/2"));
  if (!small_p && !edge_p) return out;

  const double R = spec.length;
  const double h0 = spec.h(R);
  double cap = C;
  if (small_p) {
    double max_h = 0;
    const int N = 1001;
    for (int i = 0; i < N; ++i)
      max_h = std::max(max_h, spec.h(R * i / (N - 1)));
    if (cap <= 0) cap = max_h;
    else if (max_h > cap * (1 + 1e-12))
      throw CBoundViolated("warp exceeds the stated cap C: max h = " +
                           std::to_string(max_h) + " > " + std::to_string(cap));
  }

  const auto sigma = connected_sigmas(spec, p, k_max + 1, opts);
  const TheoremId id = small_p ? TheoremId::T1_5i : TheoremId::T1_5ii;
  const double front = small_p
      ? R * std::pow(cap, spec.n - 2 * p - 3) / std::pow(h0, spec.n - 2 * p - 1)
      : R / (h0 * h0);
  for (int k = 1; k <= k_max; ++k) {
    const double lhs = sigma[k] - sigma[k - 1];
    const double gap = sphere_eigenvalue(spec.n, p, k + 1) -
                       sphere_eigenvalue(spec.n, p, k);
    const double rhs = front * gap;
    out.push_back(row(id, spec, p, k, lhs, rhs, rhs - lhs, opts));
  }
  return out;
}

std::vector<BoundReport> check_ball_comparison(const WarpSpec& spec, int p,
                                               int m_max, const SolveOptions& opts) {
  if (spec.topology != Topology::Connected)
    return {na_report(TheoremId::T1_6i, spec, p, "connected boundary required")};
  if (const auto objection = revolution_objection(spec); !objection.empty())
    return {na_report(TheoremId::T1_6i, spec, p, objection)};

  const bool low_p = (spec.n >= 3) && (2 * p <= spec.n - 3);
  const bool mid_p = (spec.n % 2 == 0) && (2 * p == spec.n - 2);
  std::vector<BoundReport> out;
  if (!low_p)
    out.push_back(na_report(TheoremId::T1_6i, spec, p, "requires p <= (n-3)/2"));
  if (!mid_p)
    out.push_back(na_report(TheoremId::T1_6ii, spec, p, "requires even n and p = (n-2)/2"));
  if (!low_p && !mid_p) return out;

  const auto sigma = connected_sigmas(spec, p, m_max, opts);
  for (int m = 1; m <= m_max; ++m) {
    const double lhs = sigma[m - 1];
    const double rhs = static_cast<double>(m + p);
    if (low_p)
      out.push_back(row(TheoremId::T1_6i, spec, p, m, lhs, rhs, lhs - rhs, opts));
    if (mid_p)
      out.push_back(row(TheoremId::T1_6ii, spec, p, m, lhs, rhs,
                        -std::abs(lhs - rhs), opts, "equality"));
  }
  return out;
}

std::vector<BoundReport> check_two_boundary_bounds(const WarpSpec& spec, int p,
                                                   int m_max,
                                                   const SolveOptions& opts) {
  static constexpr TheoremId kIds[] = {TheoremId::T1_7i, TheoremId::T1_7iia,
                                       TheoremId::T1_7iib, TheoremId::T1_8i,
                                       TheoremId::T1_8ii, TheoremId::COR_1_9};
  if (spec.topology != Topology::TwoBoundary) {
    std::vector<BoundReport> out;
    for (TheoremId id : kIds)
      out.push_back(na_report(id, spec, p, "two boundary components required"));
    return out;
  }
  if (const auto objection = revolution_objection(spec); !objection.empty()) {
    std::vector<BoundReport> out;
    for (TheoremId id : kIds)
      out.push_back(na_report(id, spec, p, objection));
    return out;
  }

  const int n = spec.n;
  const double L = spec.length;
  const bool low_p = 2 * p <= n - 3;
  const bool high_p = 2 * p >= n - 1;
  const double shrink = std::pow(1 - L / 2, n - 2 * p - 1);
  const double grow = std::pow(1 + L / 2, n - 2 * p - 1);

  std::vector<BoundReport> out;
  if (!(L >= 2) || !low_p)
    out.push_back(na_report(TheoremId::T1_7i, spec, p,
                            !low_p ? "requires p <= (n-3)/2" : "requires L >= 2"));
  if (!(L <= 2) || !low_p)
    out.push_back(na_report(TheoremId::T1_7iia, spec, p,
                            !low_p ? "requires p <= (n-3)/2" : "requires L <= 2"));
  if (!(L <= 2) || !high_p)
    out.push_back(na_report(TheoremId::T1_7iib, spec, p,
                            !high_p ? "requires p >= (n-1)/2" : "requires L <= 2"));
  if (!low_p)
    out.push_back(na_report(TheoremId::T1_8i, spec, p, "requires p <= (n-3)/2"));
  if (!high_p)
    out.push_back(na_report(TheoremId::T1_8ii, spec, p, "requires p >= (n-1)/2"));
  if (!(L > 0 && L < 2) || 2 * p != n - 1)
    out.push_back(na_report(TheoremId::COR_1_9, spec, p,
                            2 * p != n - 1 ? "requires p = (n-1)/2" : "requires 0 < L < 2"));

  for (int m = 1; m <= m_max; ++m) {
    const DtnBlock block = dtn_block(spec, make_mode(n, p, m), opts);
    const auto [c_lo, c_hi] = cylinder_spectrum(n, p, L, m);
    const double sig[2] = {block.sigma[0], block.sigma[1]};
    const double cyl[2] = {c_lo, c_hi};
    for (int b = 0; b < 2; ++b) {
      const std::string note = "branch " + std::to_string(b);
      if (L >= 2 && low_p)
        out.push_back(row(TheoremId::T1_7i, spec, p, m, sig[b], m + p,
                          sig[b] - (m + p), opts, note));
      if (L <= 2 && low_p)
        out.push_back(row(TheoremId::T1_7iia, spec, p, m, sig[b], shrink * cyl[b],
                          sig[b] - shrink * cyl[b], opts, note));
      if (L <= 2 && high_p)
        out.push_back(row(TheoremId::T1_7iib, spec, p, m, sig[b], shrink * cyl[b],
                          shrink * cyl[b] - sig[b], opts, note));
      if (low_p)
        out.push_back(row(TheoremId::T1_8i, spec, p, m, sig[b], grow * cyl[b],
                          grow * cyl[b] - sig[b], opts, note));
      if (high_p)
        out.push_back(row(TheoremId::T1_8ii, spec, p, m, sig[b], grow * cyl[b],
                          sig[b] - grow * cyl[b], opts, note));
      if (L > 0 && L < 2 && 2 * p == n - 1)
        out.push_back(row(TheoremId::COR_1_9, spec, p, m, sig[b], cyl[b],
                          -std::abs(sig[b] - cyl[b]), opts, note + " equality"));
    }
  }
  return out;
}

}  // namespace steklov
