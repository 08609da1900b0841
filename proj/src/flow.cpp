#include "rayforge/flow.hpp"

#include <cmath>

#include "rayforge/errors.hpp"
#include "rayforge/quadrature.hpp"

namespace rayforge {

void flow_rhs(const MagneticSystem& sys, const Vec2& x, const Vec2& v,
              double sign, Vec2& dx, Vec2& dv) {
  dx = v;
  Christoffel ch = sys.christoffel_raw(x);
  dv = -ch.apply(v, v) + sys.force_raw(x, v, sign);
}

PhasePoint rk4_phase_step(const MagneticSystem& sys, const PhasePoint& p,
                          double h, double sign) {
  Vec2 k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v;
  flow_rhs(sys, p.x, p.v, sign, k1x, k1v);
  flow_rhs(sys, p.x + 0.5 * h * k1x, p.v + 0.5 * h * k1v, sign, k2x, k2v);
  flow_rhs(sys, p.x + 0.5 * h * k2x, p.v + 0.5 * h * k2v, sign, k3x, k3v);
  flow_rhs(sys, p.x + h * k3x, p.v + h * k3v, sign, k4x, k4v);
  PhasePoint q;
  q.x = p.x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  q.v = p.v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return q;
}

PhasePoint flow_step(const MagneticSystem& sys, const PhasePoint& p, double h,
                     double sign) {
  PhasePoint q = rk4_phase_step(sys, p, h, sign);
  q.v = sys.g_normalize(q.x, q.v);
  return q;
}

namespace {

constexpr double kCrossingTolS = 1e-10;
constexpr int kBisectMax = 50;

bool is_glancing_boundary_start(const MagneticSystem& sys,
                                const PhasePoint& p) {
  if (!sys.domain().on_boundary(p.x)) return false;
  Vec2 n_vec = sys.metric_inverse_raw(p.x) * sys.domain().inward_normal_raw(p.x);
  Vec2 nu = sys.g_normalize(p.x, n_vec);
  return std::abs(sys.g_inner(p.x, p.v, nu)) < 1e-8;
}

}  // namespace

GeodesicTrace integrate_magnetic_geodesic(const MagneticSystem& sys,
                                          const PhasePoint& start,
                                          const FlowOptions& opts) {
  const ChartDomain& dom = sys.domain();
  if (opts.h <= 0.0) fail_input("integrate: step size must be positive");
  if (!dom.inside_or_boundary(start.x))
    fail_input("integrate: start point outside domain");

  GeodesicTrace tr;
  tr.h = opts.h;
  tr.force_sign = opts.force_sign;

  PhasePoint p = start;
  p.v = sys.g_normalize(p.x, p.v);
  tr.s.push_back(0.0);
  tr.x.push_back(p.x);
  tr.v.push_back(p.v);

  if (is_glancing_boundary_start(sys, p)) {
    // kappa = 0 by convention on the glancing region
    tr.glancing = true;
    tr.exit_time = 0.0;
    tr.s.push_back(0.0);
    tr.x.push_back(p.x);
    tr.v.push_back(p.v);
    return tr;
  }

  double s_max = opts.s_max > 0.0 ? opts.s_max : 100.0 * dom.diameter();
  double s = 0.0;
  for (;;) {
    if (s >= s_max)
      fail_validation("trapped-ray: no boundary exit before s_max");
    PhasePoint q = rk4_phase_step(sys, p, opts.h, opts.force_sign);
    if (opts.renormalize) q.v = sys.g_normalize(q.x, q.v);
    if (dom.rho(q.x) > 0.0) {
      // transversal crossing inside this step; bisect on the substep length
      double lo = 0.0, hi = opts.h;
      PhasePoint exit_pt = q;
      for (int it = 0; it < kBisectMax && (hi - lo) > kCrossingTolS; ++it) {
        double mid = 0.5 * (lo + hi);
        PhasePoint m = rk4_phase_step(sys, p, mid, opts.force_sign);
        if (opts.renormalize) m.v = sys.g_normalize(m.x, m.v);
        if (dom.rho(m.x) > 0.0) {
          hi = mid;
          exit_pt = m;
        } else {
          lo = mid;
        }
      }
      if (hi <= kCrossingTolS && tr.s.size() == 1) {
        // boundary start pointing outward
        tr.exit_time = 0.0;
        tr.s.push_back(0.0);
        tr.x.push_back(p.x);
        tr.v.push_back(p.v);
        return tr;
      }
      tr.exit_time = s + hi;
      tr.s.push_back(tr.exit_time);
      tr.x.push_back(exit_pt.x);
      tr.v.push_back(exit_pt.v);
      return tr;
    }
    s += opts.h;
    p = q;
    tr.s.push_back(s);
    tr.x.push_back(p.x);
    tr.v.push_back(p.v);
  }
}

PhasePoint flow_to(const MagneticSystem& sys, const PhasePoint& start,
                   double s_target, double h, double sign) {
  if (h <= 0.0) fail_input("flow_to: step size must be positive");
  PhasePoint p = start;
  p.v = sys.g_normalize(p.x, p.v);
  double dir = s_target < 0.0 ? -1.0 : 1.0;
  double remaining = std::abs(s_target);
  while (remaining > 0.0) {
    double step = std::min(h, remaining);
    p = flow_step(sys, p, dir * step, sign);
    remaining -= step;
    if (!sys.domain().inside_or_boundary(p.x))
      fail_input("flow_to: parameter outside the maximal interval");
  }
  return p;
}

double exit_time(const MagneticSystem& sys, const PhasePoint& p,
                 const FlowOptions& opts) {
  return integrate_magnetic_geodesic(sys, p, opts).exit_time;
}

double enter_time(const MagneticSystem& sys, const PhasePoint& p,
                  const FlowOptions& opts) {
  FlowOptions rev = opts;
  rev.force_sign = -opts.force_sign;
  PhasePoint q{p.x, Vec2(-p.v)};
  return -integrate_magnetic_geodesic(sys, q, rev).exit_time;
}

void null_lift(const MagneticSystem& sys, GeodesicTrace& trace, double t0) {
  if (trace.s.empty()) fail_input("null_lift: empty trace");
  std::vector<double> w(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i)
    w[i] = sys.omega_of(trace.x[i], trace.v[i]);
  auto cum = cumulative_integral(trace.s, w);
  trace.t0 = t0;
  trace.t.resize(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i)
    trace.t[i] = t0 + trace.s[i] - cum[i];
}

}  // namespace rayforge
