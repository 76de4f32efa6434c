#include "steklov/warp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <utility>

namespace steklov {

namespace {

// Quintic smoothstep s(t) = 6t^5 - 15t^4 + 10t^3: s(0)=0, s(1)=1 and both
// s' and s'' vanish at the ends, so blends built on it join C^2 against
// the neighboring pieces.
double smoothstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep_d1(double t) { double u = t * (1.0 - t); return 30.0 * u * u; }
double smoothstep_d2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw ProfileInvalid(msg);
}

void validate_basic(int n, double length, const char* who) {
  if (n < 2) throw DomainError(std::string(who) + ": n must be >= 2");
  if (!(length > 0) || !std::isfinite(length))
    throw DomainError(std::string(who) + ": length must be positive and finite");
}

/// Worst-case grid statistics of (h, dh, d2h) over [a, length].
struct GridScan {
  double min_h, max_h, min_dh, max_dh, max_d2h;
};

GridScan scan_grid(const WarpSpec& spec, int N, double a) {
  GridScan s{1e300, -1e300, 1e300, -1e300, -1e300};
  for (int i = 0; i < N; ++i) {
    const double r = a + (spec.length - a) * i / (N - 1);
    const double h = spec.h(r), dh = spec.dh(r), d2h = spec.d2h(r);
    require(std::isfinite(h) && std::isfinite(dh) && std::isfinite(d2h),
            spec.family_tag + ": non-finite warp value at r=" + std::to_string(r));
    s.min_h = std::min(s.min_h, h);
    s.max_h = std::max(s.max_h, h);
    s.min_dh = std::min(s.min_dh, dh);
    s.max_dh = std::max(s.max_dh, dh);
    s.max_d2h = std::max(s.max_d2h, d2h);
  }
  return s;
}

SmoothClosureReport closure_screen(const WarpSpec& spec, double tol2, double tol4);

/// Monotone cubic Hermite interpolant with Fritsch-Carlson slopes. Knots,
/// values and slopes are shared by the three evaluation lambdas of a spec.
struct Pchip {
  std::vector<double> x, y, d;

  static Pchip build(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t K = x.size();
    Pchip p{x, y, std::vector<double>(K, 0.0)};
    std::vector<double> dx(K - 1), s(K - 1);
    for (std::size_t i = 0; i + 1 < K; ++i) {
      dx[i] = x[i + 1] - x[i];
      s[i] = (y[i + 1] - y[i]) / dx[i];
    }
    for (std::size_t i = 1; i + 1 < K; ++i) {
      if (s[i - 1] * s[i] <= 0) {
        p.d[i] = 0;
      } else {
        const double w1 = 2 * dx[i] + dx[i - 1];
        const double w2 = dx[i] + 2 * dx[i - 1];
        p.d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
      }
    }
    auto endpoint = [](double dx0, double dx1, double s0, double s1) {
      double d0 = ((2 * dx0 + dx1) * s0 - dx0 * s1) / (dx0 + dx1);
      if (d0 * s0 <= 0) d0 = 0;
      else if (s0 * s1 < 0 && std::abs(d0) > 3 * std::abs(s0)) d0 = 3 * s0;
      return d0;
    };
    p.d[0] = endpoint(dx[0], dx[1], s[0], s[1]);
    p.d[K - 1] = endpoint(dx[K - 2], dx[K - 3], s[K - 2], s[K - 3]);
    return p;
  }

  std::size_t segment(double r) const {
    auto it = std::upper_bound(x.begin(), x.end(), r);
    std::size_t i = (it == x.begin()) ? 0 : (it - x.begin() - 1);
    return std::min(i, x.size() - 2);
  }

  double eval(double r) const {
    const std::size_t i = segment(r);
    const double dx = x[i + 1] - x[i], t = (r - x[i]) / dx;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * y[i] + dx * h10 * d[i] + h01 * y[i + 1] + dx * h11 * d[i + 1];
  }

  double eval_d1(double r) const {
    const std::size_t i = segment(r);
    const double dx = x[i + 1] - x[i], t = (r - x[i]) / dx;
    const double g00 = 6 * t * (t - 1);
    const double g10 = (1 - t) * (1 - 3 * t);
    const double g01 = -g00;
    const double g11 = t * (3 * t - 2);
    return (g00 * y[i] + g01 * y[i + 1]) / dx + g10 * d[i] + g11 * d[i + 1];
  }

  double eval_d2(double r) const {
    const std::size_t i = segment(r);
    const double dx = x[i + 1] - x[i], t = (r - x[i]) / dx;
    const double f00 = (12 * t - 6) / (dx * dx);
    const double f10 = (6 * t - 4) / dx;
    const double f11 = (6 * t - 2) / dx;
    return f00 * (y[i] - y[i + 1]) + f10 * d[i] + f11 * d[i + 1];
  }
};

}  // namespace

WarpSpec make_ball(int n, double R) {
  validate_basic(n, R, "make_ball");
  WarpSpec spec;
  spec.n = n;
  spec.topology = Topology::Connected;
  spec.length = R;
  spec.h = [](double r) { return r; };
  spec.dh = [](double) { return 1.0; };
  spec.d2h = [](double) { return 0.0; };
  spec.family_tag = "ball";
  return spec;
}

WarpSpec make_cylinder(int n, double L) {
  validate_basic(n, L, "make_cylinder");
  WarpSpec spec;
  spec.n = n;
  spec.topology = Topology::TwoBoundary;
  spec.length = L;
  spec.h = [](double) { return 1.0; };
  spec.dh = [](double) { return 0.0; };
  spec.d2h = [](double) { return 0.0; };
  spec.family_tag = "cylinder";
  return spec;
}

WarpSpec make_concave(ConcaveKind kind, int n, double R, const CustomWarp& custom) {
  validate_basic(n, R, "make_concave");
  WarpSpec spec;
  spec.n = n;
  spec.topology = Topology::Connected;
  spec.length = R;
  if (kind == ConcaveKind::Sin) {
    if (!(R < std::numbers::pi / 2))
      throw DomainError("make_concave: sin profile needs R < pi/2 so h' > 0");
    spec.h = [](double r) { return std::sin(r); };
    spec.dh = [](double r) { return std::cos(r); };
    spec.d2h = [](double r) { return -std::sin(r); };
    spec.family_tag = "sin";
    return spec;
  }
  if (!custom.h || !custom.dh || !custom.d2h)
    throw DomainError("make_concave: custom kind needs h, dh and d2h");
  spec.h = custom.h;
  spec.dh = custom.dh;
  spec.d2h = custom.d2h;
  spec.family_tag = custom.tag;

  const auto closure = closure_screen(spec, kWarpTol, 1e-6);
  require(closure.pass, spec.family_tag +
          ": closed end is not a smooth point (h(0)=" + std::to_string(closure.h0) +
          ", h'(0)=" + std::to_string(closure.dh0) + ")");
  const auto s = scan_grid(spec, 1001, R / 1000.0);
  require(s.min_h > 0, spec.family_tag + ": h must be positive on (0, R]");
  require(s.max_d2h <= kWarpTol, spec.family_tag + ": h'' must be <= 0 (max " +
          std::to_string(s.max_d2h) + ")");
  require(s.min_dh > kWarpTol, spec.family_tag + ": h' must stay positive");
  require(s.max_dh <= 1 + kWarpTol, spec.family_tag + ": h' must be <= 1 (max " +
          std::to_string(s.max_dh) + ")");
  return spec;
}

WarpSpec make_sharpness_family(int n, int p, double R, double eps) {
  validate_basic(n, R, "make_sharpness_family");
  if (p < 0 || 2 * p > n - 3)
    throw DomainError("make_sharpness_family: needs 0 <= p <= (n-3)/2");
  if (!(eps > 0) || eps >= R / 8 || eps >= 1)
    throw DomainError("make_sharpness_family: eps must satisfy 0 < eps < min(1, R/8)");

  const int expo = n - 2 * p - 3;
  const double B = (expo == 0) ? 1.0 / std::sqrt(eps)
                               : std::pow(eps, -1.0 / (2.0 * expo));

  // Piecewise profile, closed end at 0:  r | blend | plateau B | blend | 1.
  const double a1 = eps, a2 = 2 * eps, b2 = R - 2 * eps, b1 = R - eps;
  WarpSpec spec;
  spec.n = n;
  spec.topology = Topology::Connected;
  spec.length = R;
  spec.h = [=](double r) {
    if (r <= a1) return r;
    if (r < a2) { const double u = (r - a1) / eps; return r + smoothstep(u) * (B - r); }
    if (r <= b2) return B;
    if (r < b1) { const double u = (r - b2) / eps; return B + smoothstep(u) * (1.0 - B); }
    return 1.0;
  };
  spec.dh = [=](double r) {
    if (r <= a1) return 1.0;
    if (r < a2) {
      const double u = (r - a1) / eps;
      return 1.0 + smoothstep_d1(u) * (B - r) / eps - smoothstep(u);
    }
    if (r <= b2) return 0.0;
    if (r < b1) { const double u = (r - b2) / eps; return smoothstep_d1(u) * (1.0 - B) / eps; }
    return 0.0;
  };
  spec.d2h = [=](double r) {
    if (r <= a1) return 0.0;
    if (r < a2) {
      const double u = (r - a1) / eps;
      return smoothstep_d2(u) * (B - r) / (eps * eps) - 2.0 * smoothstep_d1(u) / eps;
    }
    if (r <= b2) return 0.0;
    if (r < b1) { const double u = (r - b2) / eps; return smoothstep_d2(u) * (1.0 - B) / (eps * eps); }
    return 0.0;
  };
  spec.family_tag = "sharpness";
  return spec;
}

WarpSpec make_revolution_profile(int n, Topology topology, double L,
                                 std::function<double(double)> h,
                                 std::function<double(double)> dh,
                                 std::function<double(double)> d2h,
                                 std::string tag) {
  validate_basic(n, L, "make_revolution_profile");
  if (!h || !dh || !d2h)
    throw DomainError("make_revolution_profile: needs h, dh and d2h");

  // Outward-convention validation: boundary radius 1, embeddable slope.
  require(std::abs(h(0) - 1.0) <= 1e-8, tag + ": profile must have h(0) = 1");
  {
    const int N = 2001;
    for (int i = 0; i < N; ++i) {
      const double r = L * i / (N - 1);
      require(std::abs(dh(r)) <= 1 + 1e-8,
              tag + ": profile slope must satisfy |h'| <= 1 (r=" + std::to_string(r) + ")");
      if (i + 1 < N || topology == Topology::TwoBoundary)
        require(h(r) > 0, tag + ": profile must stay positive before the far end");
    }
  }

  WarpSpec spec;
  spec.n = n;
  spec.topology = topology;
  spec.length = L;
  spec.family_tag = std::move(tag);
  if (topology == Topology::TwoBoundary) {
    spec.h = std::move(h);
    spec.dh = std::move(dh);
    spec.d2h = std::move(d2h);
    return spec;
  }

  require(std::abs(h(L)) <= 1e-8, spec.family_tag + ": connected profile must close (h(L) = 0)");
  spec.h = [L, f = std::move(h)](double r) { return f(L - r); };
  spec.dh = [L, f = std::move(dh)](double r) { return -f(L - r); };
  spec.d2h = [L, f = std::move(d2h)](double r) { return f(L - r); };
  const auto closure = closure_screen(spec, 1e-6, 1e-4);
  require(closure.pass, spec.family_tag +
          ": far end does not close smoothly (h'=" + std::to_string(closure.dh0) +
          ", h''=" + std::to_string(closure.d2h0) + ")");
  return spec;
}

WarpSpec make_revolution_profile(int n, Topology topology,
                                 const std::vector<double>& r,
                                 const std::vector<double>& h,
                                 std::string tag) {
  validate_basic(n, r.empty() ? 0.0 : r.back(), "make_revolution_profile");
  require(r.size() == h.size(), tag + ": sample arrays differ in length");
  require(r.size() >= 4, tag + ": need at least 4 profile samples");
  require(std::abs(r.front()) <= 1e-12 * r.back(), tag + ": samples must start at r = 0");
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    require(r[i] < r[i + 1], tag + ": sample abscissae must increase strictly");
  const double L = r.back();
  require(std::abs(h.front() - 1.0) <= 1e-6, tag + ": profile must have h(0) = 1");

  // Mirror Connected samples so the closing end sits at r = 0.
  std::vector<double> x = r, y = h;
  if (topology == Topology::Connected) {
    require(std::abs(h.back()) <= 1e-6, tag + ": connected profile must close (h(L) = 0)");
    const std::size_t K = r.size();
    for (std::size_t i = 0; i < K; ++i) {
      x[i] = L - r[K - 1 - i];
      y[i] = h[K - 1 - i];
    }
    y.front() = 0.0;  // pin the closing sample exactly
  } else {
    for (double v : h) require(v > 0, tag + ": two-boundary profile must stay positive");
  }

  auto pchip = std::make_shared<Pchip>(Pchip::build(x, y));
  WarpSpec spec;
  spec.n = n;
  spec.topology = topology;
  spec.length = L;
  spec.family_tag = std::move(tag);
  spec.h = [pchip](double rr) { return pchip->eval(rr); };
  spec.dh = [pchip](double rr) { return pchip->eval_d1(rr); };
  spec.d2h = [pchip](double rr) { return pchip->eval_d2(rr); };

  double max_step = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) max_step = std::max(max_step, x[i + 1] - x[i]);
  {
    const int N = 2001;
    for (int i = 0; i < N; ++i) {
      const double rr = L * i / (N - 1);
      require(std::abs(spec.dh(rr)) <= 1 + 0.5 * max_step,
              spec.family_tag + ": interpolated slope exceeds 1 at r=" + std::to_string(rr));
    }
  }
  if (topology == Topology::Connected) {
    // The interpolant's second derivative at a node is only O(step)
    // accurate, so the closure screen loosens with the sample step.
    const double tol2 = std::max(1e-6, 10.0 * max_step);
    const auto closure = closure_screen(spec, tol2, 1e6);
    require(closure.pass, spec.family_tag +
            ": far end does not close smoothly (h'=" + std::to_string(closure.dh0) + ")");
  }
  return spec;
}

BoundaryGeometry boundary_geometry(const WarpSpec& spec) {
  BoundaryGeometry geo;
  const double hL = spec.h(spec.length);
  if (!(hL > 0)) throw ProfileInvalid(spec.family_tag + ": boundary radius must be positive");
  if (spec.topology == Topology::Connected) {
    geo.principal_curvatures = {spec.dh(spec.length) / hL};
  } else {
    const double h0 = spec.h(0);
    if (!(h0 > 0)) throw ProfileInvalid(spec.family_tag + ": boundary radius must be positive");
    // Outward normal at r = 0 is -d/dr, flipping the curvature sign there.
    geo.principal_curvatures = {-spec.dh(0) / h0, spec.dh(spec.length) / hL};
  }
  geo.kappa = *std::min_element(geo.principal_curvatures.begin(),
                                geo.principal_curvatures.end());
  return geo;
}

namespace {

SmoothClosureReport closure_screen(const WarpSpec& spec, double tol2, double tol4) {
  SmoothClosureReport rep;
  rep.tol2 = tol2;
  rep.tol4 = tol4;
  rep.h0 = spec.h(0);
  rep.dh0 = spec.dh(0);
  rep.d2h0 = spec.d2h(0);
  // h'''' at the closed end from a one-sided 6-point second difference of
  // h'', exact through quintics. Its leading error carries h^(8)(0), which
  // vanishes for any odd extension, leaving ~1.6 delta^5 h^(9)(0): under
  // 4e-8 even for profiles with ninth derivatives in the thousands (tanh
  // reaches 7936); tol4 floors at the estimator's generic accuracy.
  const double delta = spec.length / 200.0;
  const double f[6] = {spec.d2h(0),         spec.d2h(delta),
                       spec.d2h(2 * delta), spec.d2h(3 * delta),
                       spec.d2h(4 * delta), spec.d2h(5 * delta)};
  rep.d4h0 = (15.0 / 4 * f[0] - 77.0 / 6 * f[1] + 107.0 / 6 * f[2] -
              13.0 * f[3] + 61.0 / 12 * f[4] - 5.0 / 6 * f[5]) /
             (delta * delta);
  rep.pass = std::abs(rep.h0) <= tol2 && std::abs(rep.dh0 - 1) <= tol2 &&
             std::abs(rep.d2h0) <= tol2 && std::abs(rep.d4h0) <= tol4;
  return rep;
}

}  // namespace

SmoothClosureReport check_assumption_A(const WarpSpec& spec, double tol) {
  if (spec.topology != Topology::Connected)
    throw DomainError("check_assumption_A: connected topology only");
  return closure_screen(spec, tol, std::max(100 * tol, 1e-6));
}

ConvexityReport check_ricci_convex(const WarpSpec& spec, double tol, int samples) {
  if (spec.topology != Topology::Connected)
    throw DomainError("check_ricci_convex: connected topology only");
  if (samples < 2) throw DomainError("check_ricci_convex: need >= 2 samples");
  const auto s = scan_grid(spec, samples, 0.0);
  ConvexityReport rep;
  rep.max_d2h = s.max_d2h;
  rep.min_dh = s.min_dh;
  rep.max_dh = s.max_dh;
  rep.kappa = spec.dh(spec.length) / spec.h(spec.length);
  rep.pass = s.max_d2h <= tol && s.min_dh > tol && s.max_dh <= 1 + tol &&
             rep.kappa > tol;
  return rep;
}

std::pair<double, double> derivative_consistency(const WarpSpec& spec, int samples) {
  if (samples < 1) throw DomainError("derivative_consistency: need >= 1 sample");
  const double L = spec.length;
  const double d1 = 1e-5 * L;  // first-derivative step: truncation ~ 1e-10 L^2
  const double d2 = 1e-3 * L;  // second-derivative step: rounding ~ 1e-10
  double worst1 = 0, worst2 = 0;
  for (int i = 1; i <= samples; ++i) {
    const double r = L * i / (samples + 1);
    const double rc = std::clamp(r, d2, L - d2);
    const double fd1 = (spec.h(rc + d1) - spec.h(rc - d1)) / (2 * d1);
    const double fd2 = (spec.h(rc + d2) - 2 * spec.h(rc) + spec.h(rc - d2)) / (d2 * d2);
    worst1 = std::max(worst1, std::abs(fd1 - spec.dh(rc)));
    worst2 = std::max(worst2, std::abs(fd2 - spec.d2h(rc)));
  }
  return {worst1, worst2};
}

}  // namespace steklov
