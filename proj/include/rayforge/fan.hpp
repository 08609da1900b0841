#ifndef RAYFORGE_FAN_HPP_
#define RAYFORGE_FAN_HPP_

#include <cstdint>
#include <vector>

#include "rayforge/flow.hpp"
#include "rayforge/types.hpp"

namespace rayforge {

// Influx-boundary sampling in fan-beam coordinates: boundary parameter theta
// and direction angle alpha measured from the inward normal in the
// g-orthonormal boundary frame. |alpha| stays below pi/2 - eps_g so every
// sample lies in the influx boundary away from the glancing region.
struct BoundaryFan {
  int n_theta = 64;
  int n_alpha = 64;
  double eps_g = 0.05;

  double theta(int j) const { return 2.0 * M_PI * (j + 0.5) / n_theta; }
  double alpha(int k) const {
    double amax = 0.5 * M_PI - eps_g;
    return -amax + (k + 0.5) * 2.0 * amax / n_alpha;
  }
  std::size_t count() const {
    return static_cast<std::size_t>(n_theta) * n_alpha;
  }
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j) * n_alpha + k;
  }

  // influx phase point: v = cos(alpha) nu + sin(alpha) tangent
  PhasePoint phase_point(const MagneticSystem& sys, int j, int k) const;
  PhasePoint phase_point_at(const MagneticSystem& sys, double th,
                            double al) const;
  // outflux mirror: v = -cos(alpha) nu + sin(alpha) tangent
  PhasePoint outflux_point(const MagneticSystem& sys, int j, int k) const;
};

// Matrix-valued transform samples over a fan.
struct Sinogram {
  BoundaryFan fan;
  int N = 1;
  std::uint64_t scene_hash = 0;
  double quad_step = 0.0;
  std::vector<MatN> values;

  MatN& at(int j, int k) { return values[fan.index(j, k)]; }
  const MatN& at(int j, int k) const { return values[fan.index(j, k)]; }
  double max_norm() const;
};

}  // namespace rayforge

#endif  // RAYFORGE_FAN_HPP_
