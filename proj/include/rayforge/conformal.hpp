#ifndef RAYFORGE_CONFORMAL_HPP_
#define RAYFORGE_CONFORMAL_HPP_

#include <functional>
#include <vector>

#include "rayforge/connection.hpp"
#include "rayforge/transform.hpp"
#include "rayforge/volume.hpp"

namespace rayforge {

// Positive conformal factor c(t, x) on the spacetime cylinder.
struct ConformalFactor {
  std::function<double(double, const Vec2&)> value;

  static ConformalFactor constant(double k);
  // 1 + a exp(-|x-c|^2/s^2), a > -1, time independent
  static ConformalFactor spatial_gaussian(double a, double width,
                                          const Vec2& center);
};

// Dense output of a lifted trace: cubic Hermite in each step interval using
// the sampled derivatives (xdot = v, vdot from the force equation, tdot
// from the null lift relation).
class TraceInterpolant {
 public:
  TraceInterpolant(const MagneticSystem& sys, const GeodesicTrace& trace);

  Vec2 position(double s) const;
  Vec2 velocity(double s) const;
  double time(double s) const;
  double length() const { return s_.back(); }

 private:
  std::size_t interval(double s, double& t) const;
  std::vector<double> s_;
  std::vector<Vec2> x_, v_, vdot_;
  std::vector<double> t_, tdot_;
};

// Null pregeodesic reparametrization under c^2 g-bar: the new parameter s~
// and h with h'(s~) = (c(gamma(0)) / c(gamma(h)))^2, resampled over the
// same point set.
struct Reparametrization {
  std::vector<double> s_tilde;
  std::vector<double> h;
  std::vector<double> hprime;
  std::vector<Vec2> x, v;
  std::vector<double> t;
  double length() const { return s_tilde.back(); }
};

Reparametrization reparametrize(const MagneticSystem& sys,
                                const GeodesicTrace& trace,
                                const ConformalFactor& c);

struct ConformalCheck {
  MatN lhs;                    // light ray transform along the base curve
  MatN rhs;                    // c(gamma(0))^2 * rescaled transform along
                               // the reparametrized curve
  double defect = 0.0;         // Frobenius norm of lhs - rhs
  double transport_invariance = 0.0;  // sup |P o h - P~| over shared samples
};

// Verifies L_A Q(gamma) = c(gamma(0))^2 L~_A (Q / c^2)(gamma~) along the
// influx ray p lifted at initial time t0.
ConformalCheck conformal_lightray_check(const MagneticSystem& sys,
                                        const ConnectionData& conn,
                                        const VolumeField& Q,
                                        const ConformalFactor& c,
                                        const PhasePoint& p, double t0,
                                        const RayTransformOptions& opt = {});

}  // namespace rayforge

#endif  // RAYFORGE_CONFORMAL_HPP_
