#ifndef RAYFORGE_FLOW_HPP_
#define RAYFORGE_FLOW_HPP_

#include <vector>

#include "rayforge/magnetic.hpp"
#include "rayforge/types.hpp"

namespace rayforge {

// Point of the unit sphere bundle SM; v is g-renormalized on construction.
struct PhasePoint {
  Vec2 x, v;

  static PhasePoint make(const MagneticSystem& sys, const Vec2& x,
                         const Vec2& v) {
    return {x, sys.g_normalize(x, v)};
  }
};

struct FlowOptions {
  double h = 1e-3;
  double s_max = 0.0;        // 0 selects 100 * domain diameter
  double force_sign = 1.0;   // -1 integrates the reversed system
  bool renormalize = true;   // per-step g-renormalization of v
};

struct GeodesicTrace {
  double h = 0.0;
  double force_sign = 1.0;
  std::vector<double> s;     // s[0] = 0, s.back() = exit_time
  std::vector<Vec2> x;
  std::vector<Vec2> v;
  double exit_time = 0.0;
  bool glancing = false;

  // null time-lift, populated by null_lift()
  double t0 = 0.0;
  std::vector<double> t;
  bool has_lift() const { return !t.empty(); }

  std::size_t size() const { return s.size(); }
  PhasePoint at(std::size_t i) const { return {x[i], v[i]}; }
};

// right-hand side of the Lorentz force system: dx/ds = v,
// dv/ds = -Gamma(v,v) + sign * F(v)
void flow_rhs(const MagneticSystem& sys, const Vec2& x, const Vec2& v,
              double sign, Vec2& dx, Vec2& dv);

// one classical 4th-order step (no renormalization)
PhasePoint rk4_phase_step(const MagneticSystem& sys, const PhasePoint& p,
                          double h, double sign);

// step + g-renormalization; the sampled flow map used everywhere
PhasePoint flow_step(const MagneticSystem& sys, const PhasePoint& p, double h,
                     double sign = 1.0);

// Integrates until the boundary crossing (bisection-refined to 1e-10 in s)
// or throws a trapped-ray validation error at s_max. Glancing boundary
// starts yield a degenerate trace with exit_time 0.
GeodesicTrace integrate_magnetic_geodesic(const MagneticSystem& sys,
                                          const PhasePoint& start,
                                          const FlowOptions& opts = {});

// flow for a fixed parameter interval; fails if the path leaves the domain
PhasePoint flow_to(const MagneticSystem& sys, const PhasePoint& start,
                   double s_target, double h, double sign = 1.0);

double exit_time(const MagneticSystem& sys, const PhasePoint& p,
                 const FlowOptions& opts = {});
// enter time sigma <= 0 via the reversed system
double enter_time(const MagneticSystem& sys, const PhasePoint& p,
                  const FlowOptions& opts = {});

// t_i = t0 + s_i - cumulative quadrature of omega(xdot); requires sup of
// |omega|_g < 1 for monotonicity
void null_lift(const MagneticSystem& sys, GeodesicTrace& trace, double t0);

}  // namespace rayforge

#endif  // RAYFORGE_FLOW_HPP_
