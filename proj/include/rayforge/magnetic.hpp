#ifndef RAYFORGE_MAGNETIC_HPP_
#define RAYFORGE_MAGNETIC_HPP_

#include <memory>

#include "rayforge/domain.hpp"
#include "rayforge/fields.hpp"
#include "rayforge/types.hpp"

namespace rayforge {

// Christoffel symbols Gamma^k_{ij}; symmetric in (i,j) by construction.
struct Christoffel {
  std::array<Mat2, 2> gamma;  // gamma[k](i,j)
  // contraction Gamma^k_{ij} u^i w^j
  Vec2 apply(const Vec2& u, const Vec2& w) const {
    return {u.dot(gamma[0] * w), u.dot(gamma[1] * w)};
  }
};

// Magnetic system (g, omega) on a strictly convex chart domain. Immutable
// after construction; all evaluators are safe for concurrent reads.
class MagneticSystem {
 public:
  MagneticSystem(ChartDomain domain, MetricField g, OneFormField omega);

  const ChartDomain& domain() const { return *domain_; }

  // spec-facing evaluators; reject points outside the domain
  Mat2 metric_eval(const Vec2& x) const;
  Christoffel christoffel(const Vec2& x) const;
  Vec2 lorentz_force(const Vec2& x, const Vec2& v) const;

  // evaluators without the domain check, used by integrator stages that may
  // probe slightly past the boundary
  Mat2 metric_raw(const Vec2& x) const { return g_.value(x); }
  Mat2 metric_inverse_raw(const Vec2& x) const;
  Christoffel christoffel_raw(const Vec2& x) const;
  // (d omega)_{12} = partial_1 omega_2 - partial_2 omega_1
  double domega_raw(const Vec2& x) const;
  // F_x(v) with indices raised by g; sign > 0 gives F, sign < 0 the reversed
  // field used by the backward (enter-time) system
  Vec2 force_raw(const Vec2& x, const Vec2& v, double sign = 1.0) const;

  double g_inner(const Vec2& x, const Vec2& u, const Vec2& w) const {
    return u.dot(metric_raw(x) * w);
  }
  double g_norm(const Vec2& x, const Vec2& v) const;
  Vec2 g_normalize(const Vec2& x, const Vec2& v) const;

  Vec2 omega_eval(const Vec2& x) const { return omega_.value(x); }
  double omega_of(const Vec2& x, const Vec2& v) const {
    return omega_.value(x).dot(v);
  }
  double omega_norm_g(const Vec2& x) const;

  // g-orthonormal boundary frame at beta(theta): inward unit normal and the
  // unit tangent in the direction of increasing theta
  void boundary_frame(double theta, Vec2& x, Vec2& nu, Vec2& tang) const;

  // Pi_x(v,v) - g_x(F_x(v), nu) for unit v tangent to the boundary
  double convexity_margin(double theta, const Vec2& v) const;

  // minimum of the margin over a boundary sweep, both orientations
  double convexity_sweep_min(int n_samples = 720) const;
  // sup of |omega|_g over a sampling of the closed domain
  double omega_sup(int n_samples = 96) const;

 private:
  std::shared_ptr<const ChartDomain> domain_;
  MetricField g_;
  OneFormField omega_;
};

}  // namespace rayforge

#endif  // RAYFORGE_MAGNETIC_HPP_
