#include "rayforge/transform.hpp"

#include <cmath>

#include "rayforge/errors.hpp"
#include "rayforge/parallel.hpp"
#include "rayforge/quadrature.hpp"

namespace rayforge {

namespace {

enum class RayMode { xray, slice, light };

double effective_step(const RayTransformOptions& opt) {
  if (opt.quad_step > 0.0) {
    if (opt.quad_step > opt.h)
      fail_input("transform: quadrature step exceeds the trace step");
    return opt.quad_step;
  }
  return opt.h;
}

MatN ray_integral(const MagneticSystem& sys, const ConnectionData& conn,
                  const VolumeField& Q, const PhasePoint& p, RayMode mode,
                  double tau, double t0, const RayTransformOptions& opt) {
  FlowOptions fo;
  fo.h = effective_step(opt);
  fo.s_max = opt.s_max;
  GeodesicTrace trace = integrate_magnetic_geodesic(sys, p, fo);
  if (trace.exit_time <= 0.0) return mat_zero(conn.N);
  if (mode != RayMode::xray)
    null_lift(sys, trace, mode == RayMode::light ? t0 : 0.0);

  TransportMatrix P, R;
  parallel_transport_pair(sys, trace, conn, P, R);

  std::vector<MatN> f(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    MatN val = R.P[i] * Q.value(trace.x[i]) * P.P[i];
    if (mode == RayMode::slice)
      val *= std::polar(1.0, tau * trace.t[i]);
    else if (mode == RayMode::light)
      val *= Q.profile().eval(trace.t[i]);
    f[i] = val;
  }
  return integral(trace.s, f);
}

Sinogram fan_transform(const MagneticSystem& sys, const ConnectionData& conn,
                       const VolumeField& Q, const BoundaryFan& fan,
                       RayMode mode, double tau,
                       const RayTransformOptions& opt,
                       std::uint64_t scene_hash) {
  Sinogram sino;
  sino.fan = fan;
  sino.N = conn.N;
  sino.scene_hash = scene_hash;
  sino.quad_step = effective_step(opt);
  sino.values.assign(fan.count(), mat_zero(conn.N));
  parallel_for(
      fan.count(),
      [&](std::size_t r) {
        int j = static_cast<int>(r) / fan.n_alpha;
        int k = static_cast<int>(r) % fan.n_alpha;
        PhasePoint p = fan.phase_point(sys, j, k);
        sino.values[r] = ray_integral(sys, conn, Q, p, mode, tau, 0.0, opt);
      },
      opt.worker_cap);
  return sino;
}

}  // namespace

MatN xray_ray(const MagneticSystem& sys, const ConnectionData& conn,
              const VolumeField& Q, const PhasePoint& p,
              const RayTransformOptions& opt) {
  return ray_integral(sys, conn, Q, p, RayMode::xray, 0.0, 0.0, opt);
}

Sinogram xray_transform(const MagneticSystem& sys, const ConnectionData& conn,
                        const VolumeField& Q, const BoundaryFan& fan,
                        const RayTransformOptions& opt,
                        std::uint64_t scene_hash) {
  return fan_transform(sys, conn, Q, fan, RayMode::xray, 0.0, opt, scene_hash);
}

MatN slice_ray(const MagneticSystem& sys, const ConnectionData& conn,
               const VolumeField& q, double tau, const PhasePoint& p,
               const RayTransformOptions& opt) {
  return ray_integral(sys, conn, q, p, RayMode::slice, tau, 0.0, opt);
}

Sinogram slice_transform(const MagneticSystem& sys, const ConnectionData& conn,
                         const VolumeField& q, double tau,
                         const BoundaryFan& fan,
                         const RayTransformOptions& opt,
                         std::uint64_t scene_hash) {
  return fan_transform(sys, conn, q, fan, RayMode::slice, tau, opt,
                       scene_hash);
}

MatN lightray_transform(const MagneticSystem& sys, const ConnectionData& conn,
                        const VolumeField& Q, double t0, const PhasePoint& p,
                        const RayTransformOptions& opt) {
  return ray_integral(sys, conn, Q, p, RayMode::light, 0.0, t0, opt);
}

MatN wv_value(const MagneticSystem& sys, const ConnectionData& conn,
              const VolumeField& V, const PhasePoint& p,
              const RayTransformOptions& opt) {
  return ray_integral(sys, conn, V, p, RayMode::xray, 0.0, 0.0, opt);
}

SMField wv_field(const MagneticSystem& sys, const ConnectionData& conn,
                 const VolumeField& V, const SMGridSpec& spec,
                 const RayTransformOptions& opt) {
  SMField field;
  field.spec = spec;
  Vec2 lo, hi;
  sys.domain().bbox(lo, hi);
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) {
      Vec2 x(lo[0] + (hi[0] - lo[0]) * (i + 0.5) / spec.nx,
             lo[1] + (hi[1] - lo[1]) * (j + 0.5) / spec.ny);
      if (!sys.domain().inside(x)) continue;
      if (sys.domain().boundary_distance(x) < 1e-6) continue;
      field.nodes.push_back(x);
    }
  field.angles.resize(spec.n_dir);
  for (int d = 0; d < spec.n_dir; ++d)
    field.angles[d] = 2.0 * M_PI * (d + 0.5) / spec.n_dir;
  field.values.assign(field.nodes.size() * spec.n_dir, mat_zero(conn.N));
  parallel_for(
      field.values.size(),
      [&](std::size_t idx) {
        std::size_t node = idx / spec.n_dir;
        int dir = static_cast<int>(idx % spec.n_dir);
        field.values[idx] =
            wv_value(sys, conn, V, field.phase(sys, node, dir), opt);
      },
      opt.worker_cap);
  return field;
}

TransportResidualReport transport_residual(const MagneticSystem& sys,
                                           const ConnectionData& conn,
                                           const VolumeField& V,
                                           const SMField& W,
                                           const RayTransformOptions& opt,
                                           double delta) {
  TransportResidualReport rep;
  rep.residuals.assign(W.values.size(), -1.0);
  std::vector<std::uint8_t> skipped(W.values.size(), 0);
  parallel_for(
      W.values.size(),
      [&](std::size_t idx) {
        std::size_t node = idx / W.spec.n_dir;
        int dir = static_cast<int>(idx % W.spec.n_dir);
        PhasePoint p = W.phase(sys, node, dir);
        PhasePoint fwd = flow_step(sys, p, delta);
        PhasePoint bwd = flow_step(sys, p, -delta);
        if (!sys.domain().inside(fwd.x) || !sys.domain().inside(bwd.x)) {
          skipped[idx] = 1;
          return;
        }
        MatN wf = wv_value(sys, conn, V, fwd, opt);
        MatN wb = wv_value(sys, conn, V, bwd, opt);
        MatN gw = (wf - wb) / (2.0 * delta);
        MatN att = attenuation(sys, conn, p.x, p.v);
        const MatN& w0 = W.values[idx];
        MatN res = gw + att * w0 - w0 * att + V.value(p.x);
        rep.residuals[idx] = res.norm();
      },
      opt.worker_cap);
  for (std::size_t idx = 0; idx < W.values.size(); ++idx) {
    if (skipped[idx]) {
      ++rep.skipped;
    } else {
      ++rep.evaluated;
      rep.sup_residual = std::max(rep.sup_residual, rep.residuals[idx]);
    }
  }
  return rep;
}

}  // namespace rayforge
