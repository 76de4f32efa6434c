// Acceptance gate: one spectral-engine criterion per function, one
// [PASS]/[FAIL] line per criterion, exit code = number of failures.
// Every tolerance below is part of the advertised contract; none may be
// loosened to make a run pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "steklov/bounds.hpp"
#include "steklov/io.hpp"
#include "steklov/spectrum.hpp"

using namespace steklov;

namespace {

const double kPi = std::acos(-1.0);

/// Failure accumulator: keeps the first offending message for the report.
struct Gate {
  bool ok = true;
  int failures = 0;
  std::string first;

  void expect(bool cond, const std::string& msg) {
    if (cond) return;
    ok = false;
    if (failures++ == 0) first = msg;
  }
};

std::string fmt_mode(int n, int p, int m) {
  return "n=" + std::to_string(n) + " p=" + std::to_string(p) +
         " m=" + std::to_string(m);
}

CustomWarp tanh_warp() {
  return {[](double r) { return std::tanh(r); },
          [](double r) {
            const double c = std::cosh(r);
            return 1 / (c * c);
          },
          [](double r) {
            const double c = std::cosh(r);
            return -2 * std::tanh(r) / (c * c);
          },
          "tanh"};
}

CustomWarp cubic_warp() {
  return {[](double r) { return r - r * r * r / 10; },
          [](double r) { return 1 - 0.3 * r * r; },
          [](double r) { return -0.6 * r; },
          "cubic"};
}

/// Outward near-cylinder bump 1 + s r(L-r)/4 with unit boundary spheres.
WarpSpec bump(int n, double L, double s) {
  return make_revolution_profile(
      n, Topology::TwoBoundary, L,
      [=](double r) { return 1 + s * r * (L - r) / 4; },
      [=](double r) { return s * (L - 2 * r) / 4; },
      [=](double) { return -s / 2; }, "bump");
}

WarpSpec flat_profile(int n) {
  return make_revolution_profile(
      n, Topology::Connected, 1.0, [](double r) { return 1.0 - r; },
      [](double) { return -1.0; }, [](double) { return 0.0; }, "flat");
}

WarpSpec hemisphere(int n) {
  return make_revolution_profile(
      n, Topology::Connected, kPi / 2, [](double r) { return std::cos(r); },
      [](double r) { return -std::sin(r); },
      [](double r) { return -std::cos(r); }, "hemisphere");
}

WarpSpec tanh_profile(int n) {
  const double c = 0.76;
  const double L = std::atanh(c) / c;
  return make_revolution_profile(
      n, Topology::Connected, L,
      [=](double r) { return std::tanh(c * (L - r)) / c; },
      [=](double r) {
        const double u = std::cosh(c * (L - r));
        return -1.0 / (u * u);
      },
      [=](double r) {
        const double u = std::cosh(c * (L - r));
        return -2 * c * std::tanh(c * (L - r)) / (u * u);
      },
      "tanhc");
}

std::vector<BoundReport> rows_of(const std::vector<BoundReport>& reports,
                                 TheoremId id) {
  std::vector<BoundReport> out;
  for (const auto& r : reports)
    if (r.theorem == id) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------

/// 1. Ball exactness: sigma_(m) = (m+p)/R to relative 1e-6 across
///    n in {3..6}, all p, m <= 8, R in {0.5, 1, 2}.
Gate criterion1() {
  Gate g;
  for (int n : {3, 4, 5, 6})
    for (int p = 0; p <= n - 2; ++p)
      for (double R : {0.5, 1.0, 2.0}) {
        const SpectrumTable table = assemble_spectrum(make_ball(n, R), p, 8);
        g.expect(table.entries.size() == 8, "ball table incomplete");
        for (const auto& e : table.entries) {
          const double want = (e.m + p) / R;
          g.expect(std::abs(e.sigma - want) <= 1e-6 * want,
                   fmt_mode(n, p, e.m) + " R=" + fmt9(R) + ": sigma=" +
                       fmt9(e.sigma) + " want " + fmt9(want));
        }
      }
  return g;
}

/// 2. Cylinder exactness: both branch values match
///    sqrt(l) tanh(sqrt(l) L/2) and sqrt(l) coth(sqrt(l) L/2) to 1e-8.
Gate criterion2() {
  Gate g;
  for (int n : {3, 4, 5})
    for (int p = 0; p <= n - 2; ++p)
      for (double L : {0.5, 1.0, 2.0, 4.0}) {
        const WarpSpec cyl = make_cylinder(n, L);
        for (int m = 1; m <= 6; ++m) {
          const DtnBlock blk = dtn_block(cyl, make_mode(n, p, m));
          const auto [lo, hi] = cylinder_spectrum(n, p, L, m);
          g.expect(blk.sigma.size() == 2, "cylinder block not 2x2");
          g.expect(std::abs(blk.sigma[0] - lo) <= 1e-8 * lo,
                   fmt_mode(n, p, m) + " L=" + fmt9(L) + " lower branch " +
                       fmt9(blk.sigma[0]) + " want " + fmt9(lo));
          g.expect(std::abs(blk.sigma[1] - hi) <= 1e-8 * hi,
                   fmt_mode(n, p, m) + " L=" + fmt9(L) + " upper branch " +
                       fmt9(blk.sigma[1]) + " want " + fmt9(hi));
        }
      }
  return g;
}

/// 3. Oracle equivalence: the finite-element discretization agrees with
///    shooting within combined error estimates and converges at O(N^-2)
///    over N in {128, 256, 512} on ball, cylinder, and sin inputs.
Gate criterion3() {
  Gate g;
  struct Family {
    WarpSpec spec;
    int p;
  };
  const Family families[] = {{make_ball(4, 1.5), 0},
                             {make_cylinder(4, 1.0), 1},
                             {make_concave(ConcaveKind::Sin, 5, 1.0), 2}};
  for (const auto& fam : families) {
    for (int m = 1; m <= 6; ++m) {
      const ModeIndex mode = make_mode(fam.spec.n, fam.p, m);
      const std::string tag = fam.spec.family_tag + " " +
                              fmt_mode(fam.spec.n, fam.p, m);

      // Reference values: one per boundary branch.
      std::vector<double> ref;
      if (fam.spec.topology == Topology::Connected) {
        ref = dtn_block(fam.spec, mode).sigma;
      } else {
        const auto [lo, hi] =
            cylinder_spectrum(fam.spec.n, fam.p, fam.spec.length, m);
        ref = {lo, hi};
      }

      double err[3] = {};
      std::vector<double> fem_last, fem_prev;
      const int Ns[3] = {128, 256, 512};
      for (int i = 0; i < 3; ++i) {
        const DtnBlock blk = fem_oracle(fam.spec, mode, Ns[i]);
        g.expect(blk.sigma.size() == ref.size(), tag + ": branch count");
        for (std::size_t b = 0; b < ref.size() && b < blk.sigma.size(); ++b)
          err[i] = std::max(err[i], std::abs(blk.sigma[b] - ref[b]));
        if (i == 1) fem_prev = blk.sigma;
        if (i == 2) fem_last = blk.sigma;
      }

      // Agreement gate: distance to the reference must fit within the
      // Richardson error estimate of the N=512 solve plus solver noise.
      for (std::size_t b = 0; b < ref.size(); ++b) {
        const double budget =
            5 * (std::abs(fem_last[b] - fem_prev[b]) / 3 + 1e-8 * std::abs(ref[b]));
        g.expect(std::abs(fem_last[b] - ref[b]) <= budget,
                 tag + ": disagreement " + fmt9(std::abs(fem_last[b] - ref[b])) +
                     " > budget " + fmt9(budget));
      }

      // Quadratic convergence: halving h cuts the error by ~4. Modes whose
      // radial factor the elements represent exactly (the ball's psi = r)
      // sit at roundoff from the coarsest mesh on; no rate is observable.
      if (err[0] > 1e-9) {
        const double r1 = err[0] / err[1], r2 = err[1] / err[2];
        g.expect(r1 > 2.7 && r1 < 6.5 && r2 > 2.7 && r2 < 6.5,
                 tag + ": convergence ratios " + fmt9(r1) + ", " + fmt9(r2));
      }
    }
  }
  return g;
}

/// 4. Curvature lower bound: every sin-family report Holds with positive
///    margin (n in {3,4,5}, R in {0.5,1}, 2p <= n-1, m <= 6); the ball
///    reports HoldsWithEquality throughout.
Gate criterion4() {
  Gate g;
  for (int n : {3, 4, 5})
    for (int p = 0; 2 * p <= n - 1 && p <= n - 2; ++p) {
      for (double R : {0.5, 1.0}) {
        const auto reports =
            check_escobar_type(make_concave(ConcaveKind::Sin, n, R), p, 6);
        g.expect(reports.size() == 6, "sin report count");
        for (const auto& r : reports)
          g.expect(r.verdict == Verdict::Holds && r.margin > 0,
                   "sin " + fmt_mode(n, p, r.k) + " R=" + fmt9(R) + ": " +
                       to_string(r.verdict) + " margin=" + fmt9(r.margin));
      }
      for (const auto& r : check_escobar_type(make_ball(n, 1.0), p, 6))
        g.expect(r.verdict == Verdict::HoldsWithEquality,
                 "ball " + fmt_mode(n, p, r.k) + ": " + to_string(r.verdict));
    }
  return g;
}

/// 5. Ratio strictness on the presets and saturation along the sharpness
///    family: the k=1 ratio climbs monotonically toward the angular
///    eigenvalue ratio 8/3 (n=4, p=0) and lands within 5% at eps=0.01.
Gate criterion5() {
  Gate g;
  const WarpSpec presets[] = {make_ball(4, 1.0),
                              make_ball(5, 2.0),
                              make_concave(ConcaveKind::Sin, 3, 1.0),
                              make_concave(ConcaveKind::Sin, 4, 1.2),
                              make_concave(ConcaveKind::Sin, 5, 0.8),
                              make_sharpness_family(4, 0, 1.0, 0.1)};
  for (const auto& spec : presets) {
    const int p = spec.n >= 5 ? 1 : 0;
    for (const auto& r : check_ratio(spec, p, 3))
      g.expect(r.verdict == Verdict::Holds && r.margin > 0,
               spec.family_tag + " " + fmt_mode(spec.n, p, r.k) + ": " +
                   to_string(r.verdict));
  }

  const double target = ratio_bound(4, 0, 1);  // 8/3
  double prev = 0;
  for (const double eps : {0.1, 0.05, 0.02, 0.01}) {
    const auto reports = check_ratio(make_sharpness_family(4, 0, 1.0, eps), 0, 1);
    g.expect(reports.size() == 1, "sharpness report count");
    const double lhs = reports[0].lhs;
    g.expect(lhs > prev, "eps=" + fmt9(eps) + ": ratio " + fmt9(lhs) +
                             " did not increase past " + fmt9(prev));
    g.expect(lhs < target, "eps=" + fmt9(eps) + ": ratio crossed the bound");
    prev = lhs;
  }
  g.expect(prev >= 0.95 * target,
           "eps=0.01 ratio " + fmt9(prev) + " not within 5% of " + fmt9(target));
  return g;
}

/// 6. Conformal isospectrality: for n in {4,6}, p = (n-2)/2, the sin family
///    and two custom concave profiles satisfy |sigma_(k) - (k+p)/h0| <= 1e-5
///    for k <= 6.
Gate criterion6() {
  Gate g;
  for (int n : {4, 6}) {
    const int p = (n - 2) / 2;
    const WarpSpec specs[] = {
        make_concave(ConcaveKind::Sin, n, 1.0),
        make_concave(ConcaveKind::Custom, n, 0.9, tanh_warp()),
        make_concave(ConcaveKind::Custom, n, 1.0, cubic_warp())};
    for (const auto& spec : specs) {
      const double h0 = spec.h(spec.length);
      const SpectrumTable table = assemble_spectrum(spec, p, 6);
      for (const auto& e : table.entries)
        g.expect(std::abs(e.sigma - (e.k + p) / h0) <= 1e-5,
                 spec.family_tag + " " + fmt_mode(n, p, e.k) + ": |" +
                     fmt9(e.sigma) + " - " + fmt9((e.k + p) / h0) + "| > 1e-5");
    }
  }
  return g;
}

/// 7. Two-boundary sandwich on near-cylinder profiles (n=5, L in {0.5,1}):
///    p in {0,1} satisfy the lower/upper pair, p=3 the flipped pair, and
///    p=2 the small-L equality with |sigma_k(M) - sigma_k(C_L)| <= 1e-5.
///    The p=2 comparisons saturate (the scaling factor degenerates to 1),
///    so their profile amplitude sits near the cylinder.
Gate criterion7() {
  Gate g;
  const auto all_hold = [&](const std::vector<BoundReport>& rows,
                            TheoremId id, const std::string& tag) {
    const auto picked = rows_of(rows, id);
    g.expect(!picked.empty(), tag + ": no rows");
    for (const auto& r : picked)
      g.expect(r.verdict == Verdict::Holds && r.margin > 0,
               tag + " " + to_string(id) + " k=" + std::to_string(r.k) + ": " +
                   to_string(r.verdict) + " margin=" + fmt9(r.margin));
  };

  for (double L : {0.5, 1.0}) {
    const WarpSpec strong = bump(5, L, 0.1);
    for (int p : {0, 1}) {
      const auto rows = check_two_boundary_bounds(strong, p, 3);
      const std::string tag = "bump L=" + fmt9(L) + " p=" + std::to_string(p);
      all_hold(rows, TheoremId::T1_7iia, tag);
      all_hold(rows, TheoremId::T1_8i, tag);
    }
    {
      const auto rows = check_two_boundary_bounds(strong, 3, 3);
      all_hold(rows, TheoremId::T1_7iib, "bump L=" + fmt9(L) + " p=3");
      all_hold(rows, TheoremId::T1_8ii, "bump L=" + fmt9(L) + " p=3");
    }

    const WarpSpec faint = bump(5, L, 1e-6);
    const auto rows = check_two_boundary_bounds(faint, 2, 3);
    for (const TheoremId id : {TheoremId::T1_7iib, TheoremId::T1_8ii})
      for (const auto& r : rows_of(rows, id))
        g.expect(r.verdict != Verdict::Violated &&
                     r.verdict != Verdict::NotApplicable,
                 "faint bump L=" + fmt9(L) + " " + to_string(id) +
                     " k=" + std::to_string(r.k) + ": " + to_string(r.verdict));
    const auto eq = rows_of(rows, TheoremId::COR_1_9);
    g.expect(!eq.empty(), "no equality rows at p=2");
    for (const auto& r : eq)
      g.expect(std::abs(r.lhs - r.rhs) <= 1e-5,
               "equality gap k=" + std::to_string(r.k) + ": " +
                   fmt9(std::abs(r.lhs - r.rhs)));
  }
  return g;
}

/// 8. Ball comparison: per-mode sigma_m >= m+p on three concave revolution
///    profiles (n=5, p in {0,1}), equality only for h = 1-r; the same
///    profiles are isospectral to the unit ball at (n=4, p=1).
Gate criterion8() {
  Gate g;
  const WarpSpec profiles5[] = {flat_profile(5), hemisphere(5), tanh_profile(5)};
  for (const auto& spec : profiles5)
    for (int p : {0, 1}) {
      const auto rows = rows_of(check_ball_comparison(spec, p, 4),
                                TheoremId::T1_6i);
      g.expect(rows.size() == 4, spec.family_tag + ": row count");
      for (const auto& r : rows) {
        const std::string tag =
            spec.family_tag + " " + fmt_mode(5, p, r.k) + ": " +
            to_string(r.verdict) + " margin=" + fmt9(r.margin);
        if (spec.family_tag == "flat")
          g.expect(r.verdict == Verdict::HoldsWithEquality, tag);
        else
          g.expect(r.verdict == Verdict::Holds && r.margin > 0, tag);
      }
    }

  const WarpSpec profiles4[] = {flat_profile(4), hemisphere(4), tanh_profile(4)};
  for (const auto& spec : profiles4)
    for (const auto& r :
         rows_of(check_ball_comparison(spec, 1, 4), TheoremId::T1_6ii))
      g.expect(r.verdict == Verdict::HoldsWithEquality,
               spec.family_tag + " isospectral k=" + std::to_string(r.k) +
                   ": " + to_string(r.verdict));
  return g;
}

/// 9. Property suites: radial positivity/monotonicity at every interior
///    sample, the metric scaling law sigma(c.g) = sigma(g)/c for
///    c in {0.5, 2}, and launch-offset robustness (halving r0 moves sigma
///    by <= 1e-7 relative).
Gate criterion9() {
  Gate g;

  struct Probe {
    WarpSpec spec;
    int p, m;
  };
  const Probe probes[] = {{make_ball(4, 1.0), 1, 1},
                          {make_ball(4, 1.0), 1, 4},
                          {make_concave(ConcaveKind::Sin, 5, 1.0), 0, 1},
                          {make_concave(ConcaveKind::Sin, 5, 1.0), 2, 3},
                          {make_concave(ConcaveKind::Custom, 6, 0.9, tanh_warp()), 2, 2},
                          {make_sharpness_family(4, 0, 1.0, 0.05), 0, 1},
                          {flat_profile(5), 0, 2},
                          {hemisphere(5), 1, 2},
                          {tanh_profile(5), 1, 2}};
  for (const auto& pr : probes) {
    const RadialSolution sol =
        shoot_connected(pr.spec, make_mode(pr.spec.n, pr.p, pr.m));
    bool positive = true, monotone = true;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
      positive = positive && sol.psi[i] > 0;
      monotone = monotone && sol.dpsi[i] > 0;
    }
    g.expect(positive, pr.spec.family_tag + " " +
                           fmt_mode(pr.spec.n, pr.p, pr.m) + ": psi <= 0");
    g.expect(monotone, pr.spec.family_tag + " " +
                           fmt_mode(pr.spec.n, pr.p, pr.m) + ": psi' <= 0");
  }

  // Scaling the metric by c scales every eigenvalue by 1/c. The scaled
  // warp of sin(r) on [0, R] is c sin(r/c) on [0, cR].
  const WarpSpec base = make_concave(ConcaveKind::Sin, 5, 1.0);
  const auto sigma_base = assemble_spectrum(base, 1, 3);
  for (const double c : {0.5, 2.0}) {
    const CustomWarp scaled{[=](double r) { return c * std::sin(r / c); },
                            [=](double r) { return std::cos(r / c); },
                            [=](double r) { return -std::sin(r / c) / c; },
                            "scaled-sin"};
    const WarpSpec spec = make_concave(ConcaveKind::Custom, 5, c * 1.0, scaled);
    const auto sigma_scaled = assemble_spectrum(spec, 1, 3);
    for (std::size_t i = 0; i < sigma_scaled.entries.size(); ++i) {
      const double want = sigma_base.entries[i].sigma / c;
      const double got = sigma_scaled.entries[i].sigma;
      g.expect(std::abs(got - want) <= 1e-7 * want,
               "c=" + fmt9(c) + " k=" + std::to_string(i + 1) + ": " +
                   fmt9(got) + " vs " + fmt9(want));
    }
  }

  // Launch-offset robustness.
  for (const auto& pr : {Probe{make_ball(3, 1.0), 0, 2},
                         Probe{make_concave(ConcaveKind::Sin, 5, 1.0), 1, 1},
                         Probe{make_concave(ConcaveKind::Sin, 5, 1.0), 1, 3}}) {
    const ModeIndex mode = make_mode(pr.spec.n, pr.p, pr.m);
    SolveOptions opts;
    const RadialSolution a = shoot_connected(pr.spec, mode, opts);
    opts.r0_factor /= 2;
    const RadialSolution b = shoot_connected(pr.spec, mode, opts);
    const double sa = a.end_slope / a.end_value, sb = b.end_slope / b.end_value;
    g.expect(std::abs(sa - sb) <= 1e-7 * std::abs(sa),
             pr.spec.family_tag + " " + fmt_mode(pr.spec.n, pr.p, pr.m) +
                 ": r0 halving moved sigma by " +
                 fmt9(std::abs(sa - sb) / std::abs(sa)));
  }
  return g;
}

}  // namespace

int main() {
  struct Entry {
    const char* description;
    Gate (*run)();
  };
  const Entry entries[] = {
      {"ball exactness: sigma = (m+p)/R to 1e-6 across n, p, R", criterion1},
      {"cylinder exactness: both branches match closed forms to 1e-8",
       criterion2},
      {"oracle equivalence: FEM agrees with shooting, O(N^-2) convergence",
       criterion3},
      {"curvature bound: sin family Holds, ball saturates", criterion4},
      {"ratio strictness on presets; sharpness family saturates to 8/3",
       criterion5},
      {"conformal isospectrality: sigma = (k+p)/h0 to 1e-5 (n=4,6)",
       criterion6},
      {"two-boundary sandwich and small-L equality (n=5)", criterion7},
      {"ball comparison on revolution profiles; equality only when flat",
       criterion8},
      {"property suites: positivity, metric scaling, launch robustness",
       criterion9},
  };

  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    Gate g;
    std::string detail;
    try {
      g = entries[i].run();
    } catch (const std::exception& e) {
      g.ok = false;
      g.failures = 1;
      g.first = std::string("exception: ") + e.what();
    }
    if (!g.ok) ++failed;
    std::printf("[%s] criterion %zu — %s", g.ok ? "PASS" : "FAIL", i + 1,
                entries[i].description);
    if (!g.ok)
      std::printf("  (%d checks failed; first: %s)", g.failures,
                  g.first.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%d/9 criteria passed in %.1f s\n", 9 - failed, secs);
  return failed;
}
