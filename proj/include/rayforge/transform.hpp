#ifndef RAYFORGE_TRANSFORM_HPP_
#define RAYFORGE_TRANSFORM_HPP_

#include <cstdint>
#include <vector>

#include "rayforge/connection.hpp"
#include "rayforge/fan.hpp"
#include "rayforge/volume.hpp"

namespace rayforge {

struct RayTransformOptions {
  double h = 1e-3;        // integrator step
  double quad_step = 0.0; // 0: quadrature on the trace grid; a positive
                          // value must not exceed h and becomes the common
                          // integrator/quadrature step
  double s_max = 0.0;
  int worker_cap = 0;
};

// Non-Abelian magnetic X-ray transform of Q along the influx ray (theta,
// alpha): composite Simpson of P^{-1} (Q o phi_s) P over [0, kappa].
MatN xray_ray(const MagneticSystem& sys, const ConnectionData& conn,
              const VolumeField& Q, const PhasePoint& p,
              const RayTransformOptions& opt = {});
Sinogram xray_transform(const MagneticSystem& sys, const ConnectionData& conn,
                        const VolumeField& Q, const BoundaryFan& fan,
                        const RayTransformOptions& opt = {},
                        std::uint64_t scene_hash = 0);

// Fourier-slice transform: the same conjugated integral with the phase
// e^{i tau (t(s) - t0)}, t(s) - t0 the null-lift increment. tau = 0 reduces
// bit-identically to the X-ray transform.
MatN slice_ray(const MagneticSystem& sys, const ConnectionData& conn,
               const VolumeField& q, double tau, const PhasePoint& p,
               const RayTransformOptions& opt = {});
Sinogram slice_transform(const MagneticSystem& sys, const ConnectionData& conn,
                         const VolumeField& q, double tau,
                         const BoundaryFan& fan,
                         const RayTransformOptions& opt = {},
                         std::uint64_t scene_hash = 0);

// Light ray transform of a separably time-dependent Q along the null lift
// of the magnetic geodesic through (theta, alpha) at initial time t0.
MatN lightray_transform(const MagneticSystem& sys, const ConnectionData& conn,
                        const VolumeField& Q, double t0, const PhasePoint& p,
                        const RayTransformOptions& opt = {});

// W^V evaluated at one phase point: the same integral started inside SM.
MatN wv_value(const MagneticSystem& sys, const ConnectionData& conn,
              const VolumeField& V, const PhasePoint& p,
              const RayTransformOptions& opt = {});

struct SMGridSpec {
  int nx = 12, ny = 12, n_dir = 12;
};

// W^V sampled over a spatial lattice times a uniform direction fan.
struct SMField {
  SMGridSpec spec;
  std::vector<Vec2> nodes;
  std::vector<double> angles;
  std::vector<MatN> values;  // node-major: [node * n_dir + dir]

  const MatN& at(std::size_t node, int dir) const {
    return values[node * spec.n_dir + dir];
  }
  PhasePoint phase(const MagneticSystem& sys, std::size_t node,
                   int dir) const {
    Vec2 v(std::cos(angles[dir]), std::sin(angles[dir]));
    return PhasePoint::make(sys, nodes[node], v);
  }
};

SMField wv_field(const MagneticSystem& sys, const ConnectionData& conn,
                 const VolumeField& V, const SMGridSpec& spec = {},
                 const RayTransformOptions& opt = {});

struct TransportResidualReport {
  double sup_residual = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // centered stencil would leave the domain
  std::vector<double> residuals;  // aligned with the field values, -1 if skipped
};

// Residual of G W + [A, W] + V over the field samples; G W is the centered
// flow derivative with one integrator step of size delta each way.
TransportResidualReport transport_residual(const MagneticSystem& sys,
                                           const ConnectionData& conn,
                                           const VolumeField& V,
                                           const SMField& W,
                                           const RayTransformOptions& opt = {},
                                           double delta = 1e-4);

}  // namespace rayforge

#endif  // RAYFORGE_TRANSFORM_HPP_
