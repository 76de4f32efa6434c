#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"

using namespace steklov;
using doctest::Approx;

namespace {

const double kPi = std::acos(-1.0);

WarpSpec sinh_spec(double R) {
  return {3, Topology::Connected, R,
          [](double r) { return std::sinh(r); },
          [](double r) { return std::cosh(r); },
          [](double r) { return std::sinh(r); },
          "sinh"};
}

WarpSpec hemisphere(int n) {
  return make_revolution_profile(
      n, Topology::Connected, kPi / 2, [](double r) { return std::cos(r); },
      [](double r) { return -std::sin(r); },
      [](double r) { return -std::cos(r); }, "hemisphere");
}

WarpSpec flat_profile(int n) {
  return make_revolution_profile(
      n, Topology::Connected, 1.0, [](double r) { return 1.0 - r; },
      [](double) { return -1.0; }, [](double) { return 0.0; }, "flat");
}

// Engine shape tanh(c r)/c, supplied in outward convention; the meridian
// length is pinned so the boundary radius is exactly 1.
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

WarpSpec bump(int n, double L, double s) {
  return make_revolution_profile(
      n, Topology::TwoBoundary, L,
      [=](double r) { return 1 + s * r * (L - r) / 4; },
      [=](double r) { return s * (L - 2 * r) / 4; },
      [=](double) { return -s / 2; }, "bump");
}

std::vector<BoundReport> rows_of(const std::vector<BoundReport>& reports,
                                 TheoremId id) {
  std::vector<BoundReport> out;
  for (const auto& r : reports)
    if (r.theorem == id) out.push_back(r);
  return out;
}

}  // namespace

TEST_CASE("boundary curvature bound: equality on the ball, slack on sin") {
  for (const auto& r : check_escobar_type(make_ball(3, 1.0), 0, 4)) {
    CHECK(r.verdict == Verdict::HoldsWithEquality);
    CHECK(std::abs(r.lhs - r.rhs) < 1e-6);
  }
  for (const auto& r :
       check_escobar_type(make_concave(ConcaveKind::Sin, 4, 1.0), 1, 4)) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0);
    CHECK(r.rhs == Approx((r.k + 1) * std::cos(1.0) / std::sin(1.0)));
  }
}

TEST_CASE("boundary curvature bound: screens gate inapplicable inputs") {
  const auto high_p = check_escobar_type(make_ball(4, 1.0), 2, 3);
  REQUIRE(high_p.size() == 1);
  CHECK(high_p[0].verdict == Verdict::NotApplicable);

  const auto cyl = check_escobar_type(make_cylinder(3, 1.0), 0, 3);
  REQUIRE(cyl.size() == 1);
  CHECK(cyl[0].verdict == Verdict::NotApplicable);

  const auto convex = check_escobar_type(sinh_spec(1.0), 0, 3);
  REQUIRE(convex.size() == 1);
  CHECK(convex[0].verdict == Verdict::NotApplicable);
  CHECK(convex[0].note.find("curvature screen") != std::string::npos);
}

TEST_CASE("mirrored curvature bound on a negatively curved warp") {
  const auto reports = check_escobar_mirror(sinh_spec(1.0), 0, 4);
  REQUIRE(reports.size() == 4);
  for (const auto& r : reports) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0);
    CHECK(r.note == "mirror");
  }
  // The mirror screen rejects concave warps.
  const auto wrong = check_escobar_mirror(make_concave(ConcaveKind::Sin, 3, 1.0), 0, 2);
  REQUIRE(wrong.size() == 1);
  CHECK(wrong[0].verdict == Verdict::NotApplicable);
}

TEST_CASE("consecutive-ratio bound is strict on the presets") {
  for (const WarpSpec& spec :
       {make_ball(4, 1.0), make_concave(ConcaveKind::Sin, 4, 1.2)}) {
    for (const auto& r : check_ratio(spec, 1, 3)) {
      CAPTURE(spec.family_tag); CAPTURE(r.k);
      CHECK(r.verdict == Verdict::Holds);
      CHECK(r.margin > 1e-3);
      CHECK(r.note == "strict");
      CHECK(r.rhs == Approx(ratio_bound(4, 1, r.k)));
    }
  }
}

TEST_CASE("ratio margin shrinks along the saturating family") {
  double prev_lhs = 0;
  for (const double eps : {0.1, 0.05}) {
    const auto reports = check_ratio(make_sharpness_family(4, 0, 1.0, eps), 0, 1);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].verdict == Verdict::Holds);
    CHECK(reports[0].lhs > prev_lhs);  // ratio climbs toward the bound
    prev_lhs = reports[0].lhs;
  }
  CHECK(prev_lhs < 8.0 / 3.0);
}

TEST_CASE("half-degree spectra depend only on the boundary radius") {
  // n = 2p+2: sigma_(k) = (k+p)/h(R) for every concave warp.
  const WarpSpec sin4 = make_concave(ConcaveKind::Sin, 4, 1.2);
  for (const auto& r : check_isospectral_conformal(sin4, 1, 4)) {
    CHECK(r.verdict == Verdict::HoldsWithEquality);
    CHECK(r.rhs == Approx((r.k + 1) / std::sin(1.2)).epsilon(1e-12));
    CHECK(r.note == "equality");
  }

  CustomWarp tw{[](double r) { return std::tanh(r); },
                [](double r) { const double c = std::cosh(r); return 1 / (c * c); },
                [](double r) { const double c = std::cosh(r); return -2 * std::tanh(r) / (c * c); },
                "tanh"};
  const WarpSpec tanh6 = make_concave(ConcaveKind::Custom, 6, 0.9, tw);
  for (const auto& r : check_isospectral_conformal(tanh6, 2, 3))
    CHECK(r.verdict == Verdict::HoldsWithEquality);

  const auto odd_n = check_isospectral_conformal(make_ball(5, 1.0), 1, 2);
  REQUIRE(odd_n.size() == 1);
  CHECK(odd_n[0].verdict == Verdict::NotApplicable);
}

TEST_CASE("gap bounds in both exponent regimes") {
  // p <= (n-4)/2 with automatic cap.
  const WarpSpec sin6 = make_concave(ConcaveKind::Sin, 6, 1.0);
  const auto low = check_gaps(sin6, 0, 3, 0, {});
  const auto low_rows = rows_of(low, TheoremId::T1_5i);
  REQUIRE(low_rows.size() == 3);
  for (const auto& r : low_rows) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0);
  }
  // Explicit cap below max h: rejected loudly, not silently weakened.
  CHECK_THROWS_AS(check_gaps(sin6, 0, 2, 0.5, {}), CBoundViolated);
  // Generous explicit cap: still Holds (bound only loosens).
  const auto loose = rows_of(check_gaps(sin6, 0, 2, 5.0, {}), TheoremId::T1_5i);
  REQUIRE(loose.size() == 2);
  for (const auto& r : loose) CHECK(r.verdict == Verdict::Holds);

  // Edge exponent p = (n-3)/2: no cap involved.
  const WarpSpec sin5 = make_concave(ConcaveKind::Sin, 5, 1.0);
  const auto edge_rows = rows_of(check_gaps(sin5, 1, 3, 0, {}), TheoremId::T1_5ii);
  REQUIRE(edge_rows.size() == 3);
  for (const auto& r : edge_rows) CHECK(r.verdict == Verdict::Holds);

  // Neither regime: both ids NotApplicable.
  const auto na = check_gaps(make_ball(4, 1.0), 1, 2, 0, {});
  REQUIRE(na.size() == 2);
  CHECK(na[0].verdict == Verdict::NotApplicable);
  CHECK(na[1].verdict == Verdict::NotApplicable);
}

TEST_CASE("revolution profiles dominate the unit ball mode by mode") {
  // Frozen from the development probe: hemisphere margins are O(1).
  const auto hemi = rows_of(check_ball_comparison(hemisphere(5), 0, 3),
                            TheoremId::T1_6i);
  REQUIRE(hemi.size() == 3);
  CHECK(hemi[0].lhs == Approx(1.6976527).epsilon(1e-4));
  for (const auto& r : hemi) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0.3);
  }

  const auto tnh = rows_of(check_ball_comparison(tanh_profile(5), 1, 3),
                           TheoremId::T1_6i);
  REQUIRE(tnh.size() == 3);
  for (const auto& r : tnh) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 1e-3);
  }

  // The flat profile is the unit ball in disguise: equality, every mode.
  for (const auto& r :
       rows_of(check_ball_comparison(flat_profile(5), 0, 3), TheoremId::T1_6i))
    CHECK(r.verdict == Verdict::HoldsWithEquality);

  // Half-degree rigidity rows on an even-dimensional profile.
  for (const auto& r :
       rows_of(check_ball_comparison(hemisphere(4), 1, 3), TheoremId::T1_6ii))
    CHECK(r.verdict == Verdict::HoldsWithEquality);

  // Precondition failures surface as objections, not verdicts.
  const auto na = check_ball_comparison(make_concave(ConcaveKind::Sin, 5, 1.0), 0, 2);
  REQUIRE(na.size() == 1);
  CHECK(na[0].verdict == Verdict::NotApplicable);  // boundary radius != 1
  CHECK(na[0].note.find("radius") != std::string::npos);
}

TEST_CASE("two-boundary sandwich: true directions hold with slack") {
  const auto low = check_two_boundary_bounds(bump(5, 1.0, 0.1), 0, 2);
  for (const auto& r : rows_of(low, TheoremId::T1_7iia)) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0.5);
  }
  for (const auto& r : rows_of(low, TheoremId::T1_8i)) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0.5);
  }
  CHECK(rows_of(low, TheoremId::T1_7i)[0].verdict == Verdict::NotApplicable);

  const auto p3 = check_two_boundary_bounds(bump(5, 1.0, 0.1), 3, 2);
  for (const auto& r : rows_of(p3, TheoremId::T1_7iib)) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0.5);
  }
  for (const auto& r : rows_of(p3, TheoremId::T1_8ii)) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 0.5);
  }

  // Long cylinder: the two-unit-balls comparison applies.
  const auto longcyl = check_two_boundary_bounds(make_cylinder(5, 3.0), 0, 2);
  for (const auto& r : rows_of(longcyl, TheoremId::T1_7i)) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.lhs > r.k + 0);
  }
  CHECK(rows_of(longcyl, TheoremId::T1_7iia)[0].verdict ==
        Verdict::NotApplicable);
}

TEST_CASE("knife-edge degree detects the violated direction") {
  // q = n-2p-1 = 0: a bump up strictly lowers the spectrum, so the claimed
  // lower bound against the unscaled cylinder fails. Frozen from the
  // development probe: margins ~ -1e-2, three orders beyond the equality
  // window.
  const auto hot = check_two_boundary_bounds(bump(5, 1.0, 0.1), 2, 2);
  for (const auto& r : rows_of(hot, TheoremId::T1_8ii)) {
    CHECK(r.verdict == Verdict::Violated);
    CHECK(r.margin < -1e-3);
  }
  for (const auto& r : rows_of(hot, TheoremId::COR_1_9))
    CHECK(r.verdict == Verdict::Violated);
  for (const auto& r : rows_of(hot, TheoremId::T1_7iib)) {
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.margin > 1e-3);
  }

  // Shrinking the bump to 1e-8 pulls every comparison inside the window.
  const auto cold = check_two_boundary_bounds(bump(5, 1.0, 1e-8), 2, 2);
  for (const TheoremId id :
       {TheoremId::T1_7iib, TheoremId::T1_8ii, TheoremId::COR_1_9})
    for (const auto& r : rows_of(cold, id))
      CHECK(r.verdict == Verdict::HoldsWithEquality);
}

TEST_CASE("exact cylinder saturates its own sandwich") {
  const auto rows = check_two_boundary_bounds(make_cylinder(5, 1.0), 2, 2);
  for (const auto& r : rows_of(rows, TheoremId::COR_1_9)) {
    CHECK(r.verdict == Verdict::HoldsWithEquality);
    CHECK(std::abs(r.lhs - r.rhs) < 1e-7);
  }
}

TEST_CASE("two-boundary checkers refuse foreign inputs wholesale") {
  const auto conn = check_two_boundary_bounds(make_ball(5, 1.0), 0, 2);
  REQUIRE(conn.size() == 6);
  for (const auto& r : conn) {
    CHECK(r.verdict == Verdict::NotApplicable);
    CHECK(r.note.find("two boundary") != std::string::npos);
  }

  const WarpSpec fat{5, Topology::TwoBoundary, 1.0,
                     [](double) { return 1.1; }, [](double) { return 0.0; },
                     [](double) { return 0.0; }, "fat"};
  const auto na = check_two_boundary_bounds(fat, 0, 2);
  REQUIRE(na.size() == 6);
  for (const auto& r : na) CHECK(r.verdict == Verdict::NotApplicable);
}

TEST_CASE("report rows carry the warp tag and positive tolerances") {
  for (const auto& r : check_escobar_type(make_ball(3, 1.0), 0, 2)) {
    CHECK(r.spec_tag == "ball");
    CHECK(r.tolerance > 0);
    CHECK(r.n == 3);
  }
}
