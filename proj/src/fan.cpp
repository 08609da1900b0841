#include "rayforge/fan.hpp"

#include <algorithm>
#include <cmath>

namespace rayforge {

PhasePoint BoundaryFan::phase_point_at(const MagneticSystem& sys, double th,
                                       double al) const {
  Vec2 x, nu, tang;
  sys.boundary_frame(th, x, nu, tang);
  Vec2 v = std::cos(al) * nu + std::sin(al) * tang;
  return {x, v};
}

PhasePoint BoundaryFan::phase_point(const MagneticSystem& sys, int j,
                                    int k) const {
  return phase_point_at(sys, theta(j), alpha(k));
}

PhasePoint BoundaryFan::outflux_point(const MagneticSystem& sys, int j,
                                      int k) const {
  Vec2 x, nu, tang;
  sys.boundary_frame(theta(j), x, nu, tang);
  double al = alpha(k);
  Vec2 v = -std::cos(al) * nu + std::sin(al) * tang;
  return {x, v};
}

double Sinogram::max_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, v.norm());
  return m;
}

}  // namespace rayforge
