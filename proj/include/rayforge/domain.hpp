#ifndef RAYFORGE_DOMAIN_HPP_
#define RAYFORGE_DOMAIN_HPP_

#include <string>
#include <vector>

#include "rayforge/types.hpp"

namespace rayforge {

// Strictly convex planar chart domain with smooth boundary. Both built-in
// kinds share the super-ellipse implicit function |x/a|^p + |y/b|^p = 1;
// the unit disk is p = 2, a = b = 1.
class ChartDomain {
 public:
  static constexpr double kBoundaryTol = 1e-9;

  static ChartDomain unit_disk();
  static ChartDomain super_ellipse(double p, double ax, double ay);

  const std::string& kind() const { return kind_; }
  double exponent() const { return p_; }
  double semi_axis_x() const { return ax_; }
  double semi_axis_y() const { return ay_; }

  // implicit function, negative inside
  double rho(const Vec2& x) const;
  Vec2 rho_grad(const Vec2& x) const;

  // boundary parametrization over [0, 2*pi) and its derivatives
  Vec2 beta(double theta) const;
  Vec2 beta_d1(double theta) const;
  Vec2 beta_d2(double theta) const;

  // inward Euclidean normal direction (not normalized) at a point near the
  // boundary; callers g-normalize
  Vec2 inward_normal_raw(const Vec2& x) const { return -rho_grad(x); }

  bool inside(const Vec2& x) const { return rho(x) < 0.0; }
  bool on_boundary(const Vec2& x) const;
  bool inside_or_boundary(const Vec2& x) const;

  // Euclidean distance to the boundary curve (positive everywhere),
  // polyline approximation refined enough for support masks
  double boundary_distance(const Vec2& x) const;

  double diameter() const { return 2.0 * std::max(ax_, ay_); }
  void bbox(Vec2& lo, Vec2& hi) const;

 private:
  ChartDomain(std::string kind, double p, double ax, double ay);

  std::string kind_;
  double p_, ax_, ay_;
  std::vector<Vec2> boundary_poly_;
};

}  // namespace rayforge

#endif  // RAYFORGE_DOMAIN_HPP_
