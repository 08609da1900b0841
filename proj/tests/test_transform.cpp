#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rayforge/errors.hpp"
#include "rayforge/transform.hpp"
#include "support/oracles.hpp"

using namespace rayforge;

namespace {

MagneticSystem euclid_disk(double b) {
  return MagneticSystem(ChartDomain::unit_disk(), euclidean_metric(),
                        constant_field_one_form(b));
}

VolumeField zero_potential(const ChartDomain& dom, int N) {
  auto geom = VolumeField::default_lattice(dom, 64);
  return VolumeField::from_function(
      dom, N, geom, [N](const Vec2&, double) { return mat_zero(N); });
}

// node-wise linear combination on a shared lattice
VolumeField combine(const VolumeField& a, const VolumeField& b, cplx ca,
                    cplx cb) {
  std::vector<MatN> vals(a.node_values().size());
  for (std::size_t k = 0; k < vals.size(); ++k)
    vals[k] = ca * a.node_values()[k] + cb * b.node_values()[k];
  return VolumeField(a.fiber_dim(), a.geom(), std::move(vals),
                     std::vector<std::uint8_t>(a.mask()), a.profile());
}

}  // namespace

TEST_CASE("xray transform") {
  SUBCASE("zero potential gives the zero sinogram") {
    auto sys = euclid_disk(0.3);
    auto conn = su2_gaussian_connection(0.5, 0.5, {0.0, 0.0});
    BoundaryFan fan{8, 8, 0.1};
    auto sino = xray_transform(sys, conn, zero_potential(sys.domain(), 2), fan);
    CHECK(sino.max_norm() == 0.0);
  }

  SUBCASE("gaussian bump against the closed-form line integral") {
    auto sys = euclid_disk(0.0);
    auto conn = zero_connection(1);
    const double sigma = 0.2;
    const Vec2 c0(0.15, -0.1);
    auto Q = gaussian_bump_potential(sys.domain(), 1, c0, sigma, mat_id(1));
    BoundaryFan fan{16, 16, 0.08};
    auto sino = xray_transform(sys, conn, Q, fan);
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < fan.n_theta; ++j)
      for (int k = 0; k < fan.n_alpha; ++k) {
        PhasePoint p = fan.phase_point(sys, j, k);
        Vec2 rel = c0 - p.x;
        double d = (rel - rel.dot(p.v) * p.v).norm();
        double oracle = sigma * std::sqrt(M_PI) * std::exp(-d * d / (sigma * sigma));
        worst = std::max(worst, std::abs(sino.at(j, k)(0, 0).real() - oracle));
        scale = std::max(scale, oracle);
      }
    CHECK(worst / scale < 1e-4);
  }

  SUBCASE("constant attenuation against a brute-force conjugated quadrature") {
    auto sys = euclid_disk(0.0);
    oracles::Rng rng(61);
    MatN C = rng.matrix(2, 0.7);
    auto conn = constant_connection(C);
    auto Q = random_smooth_potential(sys.domain(), 2, 977, 96);
    BoundaryFan fan{1, 1, 0.3};
    PhasePoint p = fan.phase_point(sys, 0, 0);
    MatN got = xray_ray(sys, conn, Q, p);

    double kappa = exit_time(sys, p);
    MatN oracle = oracles::simpson(
        [&](double s) {
          Vec2 x = p.x + s * p.v;
          return MatN(oracles::expm(MatN(s * C)) * Q.value(x) *
                      oracles::expm(MatN(-s * C)));
        },
        0.0, kappa, 5000);
    CHECK((got - oracle).norm() < 1e-8);
  }

  SUBCASE("linearity in the potential") {
    auto sys = euclid_disk(0.25);
    auto conn = su2_gaussian_connection(0.6, 0.5, {0.1, 0.0});
    auto Q1 = random_smooth_potential(sys.domain(), 2, 101, 64);
    auto Q2 = random_smooth_potential(sys.domain(), 2, 202, 64);
    cplx a(1.7, -0.3), b(-0.4, 0.9);
    auto Qc = combine(Q1, Q2, a, b);
    BoundaryFan fan{6, 4, 0.2};
    RayTransformOptions opt;
    opt.h = 2e-3;
    auto s1 = xray_transform(sys, conn, Q1, fan, opt);
    auto s2 = xray_transform(sys, conn, Q2, fan, opt);
    auto sc = xray_transform(sys, conn, Qc, fan, opt);
    double worst = 0.0;
    for (std::size_t r = 0; r < fan.count(); ++r)
      worst = std::max(
          worst, (sc.values[r] - (a * s1.values[r] + b * s2.values[r])).norm());
    CHECK(worst < 1e-10);
  }

  SUBCASE("zero extension: padding does not change the sinogram") {
    auto sys = euclid_disk(0.2);
    auto conn = zero_connection(1);
    const Vec2 c0(0.1, 0.05);
    auto fn = [&](const Vec2& x, double) {
      return MatN(std::exp(-(x - c0).squaredNorm() / 0.09) * mat_id(1));
    };
    auto geom_a = VolumeField::default_lattice(sys.domain(), 96, 3);
    GridGeom geom_b = geom_a;  // same lattice, 4 extra rings of nodes
    geom_b.x0 -= 4 * geom_b.dx;
    geom_b.y0 -= 4 * geom_b.dy;
    geom_b.nx += 8;
    geom_b.ny += 8;
    auto Qa = VolumeField::from_function(sys.domain(), 1, geom_a, fn);
    auto Qb = VolumeField::from_function(sys.domain(), 1, geom_b, fn);
    BoundaryFan fan{8, 6, 0.15};
    RayTransformOptions opt;
    opt.h = 2e-3;
    auto sa = xray_transform(sys, conn, Qa, fan, opt);
    auto sb = xray_transform(sys, conn, Qb, fan, opt);
    double worst = 0.0;
    for (std::size_t r = 0; r < fan.count(); ++r)
      worst = std::max(worst, (sa.values[r] - sb.values[r]).norm());
    CHECK(worst < 1e-12);
  }

  SUBCASE("glancing limit: outermost alpha rings decay with kappa") {
    auto sys = euclid_disk(0.0);
    auto conn = su2_gaussian_connection(0.5, 0.5, {0.0, 0.0});
    auto Q = random_smooth_potential(sys.domain(), 2, 313, 64);
    double qmax = 0.0;
    for (const auto& m : Q.node_values()) qmax = std::max(qmax, m.norm());
    BoundaryFan fan{4, 24, 0.02};
    RayTransformOptions opt;
    opt.h = 2e-3;
    auto sino = xray_transform(sys, conn, Q, fan, opt);
    double prev_env = -1.0;
    // rings from the outermost alpha inward: envelope grows monotonically
    for (int ring = 0; ring < 4; ++ring) {
      double env = 0.0, kmax = 0.0;
      for (int j = 0; j < fan.n_theta; ++j)
        for (int k : {ring, fan.n_alpha - 1 - ring}) {
          env = std::max(env, sino.at(j, k).norm());
          kmax = std::max(kmax, exit_time(sys, fan.phase_point(sys, j, k),
                                          FlowOptions{2e-3}));
        }
      CHECK(env <= kmax * qmax * (1.0 + 1e-6));
      CHECK(env >= prev_env);  // monotone envelope toward less glancing rays
      prev_env = env;
    }
  }

  SUBCASE("coarser quadrature than trace step is rejected") {
    auto sys = euclid_disk(0.0);
    auto conn = zero_connection(1);
    auto Q = zero_potential(sys.domain(), 1);
    RayTransformOptions opt;
    opt.h = 1e-3;
    opt.quad_step = 5e-3;
    BoundaryFan fan{2, 2, 0.2};
    CHECK_THROWS_AS((void)xray_transform(sys, conn, Q, fan, opt), Error);
  }
}

TEST_CASE("W^V field and the transport identity") {
  SUBCASE("zero potential gives the zero field and zero residual") {
    auto sys = euclid_disk(0.2);
    auto conn = su2_gaussian_connection(0.4, 0.5, {0.0, 0.1});
    auto V = zero_potential(sys.domain(), 2);
    SMGridSpec spec{5, 5, 4};
    RayTransformOptions opt;
    opt.h = 2e-3;
    auto W = wv_field(sys, conn, V, spec, opt);
    for (const auto& m : W.values) CHECK(m.norm() == 0.0);
    auto rep = transport_residual(sys, conn, V, W, opt);
    CHECK(rep.sup_residual == 0.0);
  }

  SUBCASE("boundary values: influx matches the sinogram, outflux vanishes") {
    auto sys = euclid_disk(0.3);
    auto conn = su2_gaussian_connection(0.6, 0.5, {0.05, -0.05});
    auto V = random_smooth_potential(sys.domain(), 2, 404, 64);
    BoundaryFan fan{6, 6, 0.15};
    RayTransformOptions opt;
    opt.h = 2e-3;
    auto sino = xray_transform(sys, conn, V, fan, opt);
    double worst_in = 0.0, worst_out = 0.0;
    for (int j = 0; j < fan.n_theta; ++j)
      for (int k = 0; k < fan.n_alpha; ++k) {
        MatN w = wv_value(sys, conn, V, fan.phase_point(sys, j, k), opt);
        worst_in = std::max(worst_in, (w - sino.at(j, k)).norm());
        MatN wo = wv_value(sys, conn, V, fan.outflux_point(sys, j, k), opt);
        worst_out = std::max(worst_out, wo.norm());
      }
    CHECK(worst_in < 1e-9);
    CHECK(worst_out < 1e-6);
  }

  SUBCASE("transport residual of W^V stays inside the error budget") {
    MagneticSystem sys(ChartDomain::unit_disk(),
                       conformal_gaussian_metric(0.15, 0.6, Vec2(0.1, 0.0)),
                       constant_field_one_form(0.3));
    auto conn = su2_gaussian_connection(0.7, 0.5, {0.0, 0.0});
    auto V = random_smooth_potential(sys.domain(), 2, 505, 96);
    SMGridSpec spec{7, 7, 8};
    RayTransformOptions opt;
    opt.h = 1e-3;
    auto W = wv_field(sys, conn, V, spec, opt);
    auto rep = transport_residual(sys, conn, V, W, opt);
    CHECK(rep.evaluated > 0);
    CHECK(rep.sup_residual < 5e-4);
  }

  SUBCASE("constant attenuation residual on single rays") {
    auto sys = euclid_disk(0.0);
    oracles::Rng rng(71);
    auto conn = constant_connection(rng.skew_hermitian(2, 0.8));
    auto V = gaussian_bump_potential(sys.domain(), 2, {0.1, 0.0}, 0.3,
                                     mat_id(2), 96);
    SMGridSpec spec{3, 3, 4};
    RayTransformOptions opt;
    opt.h = 1e-3;
    auto W = wv_field(sys, conn, V, spec, opt);
    auto rep = transport_residual(sys, conn, V, W, opt);
    CHECK(rep.sup_residual < 1e-6);
  }
}

TEST_CASE("slice and light ray transforms") {
  SUBCASE("tau = 0 is bit-identical to the X-ray transform") {
    auto sys = euclid_disk(0.35);
    auto conn = su2_gaussian_connection(0.5, 0.5, {0.1, -0.1});
    auto q = random_smooth_potential(sys.domain(), 2, 606, 64);
    BoundaryFan fan{5, 4, 0.2};
    RayTransformOptions opt;
    opt.h = 2e-3;
    auto s0 = slice_transform(sys, conn, q, 0.0, fan, opt);
    auto sx = xray_transform(sys, conn, q, fan, opt);
    for (std::size_t r = 0; r < fan.count(); ++r)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          CHECK(s0.values[r](a, b).real() == sx.values[r](a, b).real());
          CHECK(s0.values[r](a, b).imag() == sx.values[r](a, b).imag());
        }
  }

  SUBCASE("straight rays against dense 1-D quadrature") {
    auto sys = euclid_disk(0.0);
    auto conn = zero_connection(1);
    auto q = gaussian_bump_potential(sys.domain(), 1, {0.05, 0.1}, 0.25,
                                     mat_id(1), 96);
    const double tau = 1.7;
    BoundaryFan fan{4, 3, 0.25};
    for (int j = 0; j < fan.n_theta; ++j)
      for (int k = 0; k < fan.n_alpha; ++k) {
        PhasePoint p = fan.phase_point(sys, j, k);
        MatN got = slice_ray(sys, conn, q, tau, p);
        double bq = p.x.dot(p.v);
        double kappa = -bq + std::sqrt(bq * bq - (p.x.squaredNorm() - 1.0));
        cplx oracle = oracles::simpson_cplx(
            [&](double s) {
              return std::polar(1.0, tau * s) *
                     q.value(Vec2(p.x + s * p.v))(0, 0);
            },
            0.0, kappa, 4000);
        CHECK(std::abs(got(0, 0) - oracle) < 1e-8);
      }
  }

  SUBCASE("time-independent Q: light ray equals X-ray for any t0") {
    auto sys = euclid_disk(0.4);
    auto conn = su2_gaussian_connection(0.6, 0.45, {0.0, 0.05});
    auto Q = random_smooth_potential(sys.domain(), 2, 707, 64);
    BoundaryFan fan{3, 3, 0.3};
    for (double t0 : {0.0, 1.3, -2.2}) {
      PhasePoint p = fan.phase_point(sys, 1, 2);
      MatN lr = lightray_transform(sys, conn, Q, t0, p);
      MatN xr = xray_ray(sys, conn, Q, p);
      CHECK((lr - xr).norm() < 1e-12);
    }
  }

  SUBCASE("separable Q: light ray equals the phase-weighted slice") {
    MagneticSystem sys(ChartDomain::unit_disk(),
                       conformal_gaussian_metric(0.1, 0.7, Vec2(0.0, 0.1)),
                       constant_field_one_form(0.4));
    auto conn = su2_gaussian_connection(0.5, 0.5, {0.05, 0.0});
    auto q = random_smooth_potential(sys.domain(), 2, 808, 64);
    const double t0 = 0.37;
    BoundaryFan fan{4, 4, 0.2};
    for (double tau : {0.0, 1.0, 2.5}) {
      VolumeField Q = q;
      TimeProfile prof;
      prof.kind = TimeProfile::Kind::separable;
      prof.tau = tau;
      Q.set_profile(prof);
      double worst = 0.0;
      for (int j = 0; j < fan.n_theta; ++j)
        for (int k = 0; k < fan.n_alpha; ++k) {
          PhasePoint p = fan.phase_point(sys, j, k);
          MatN lhs = lightray_transform(sys, conn, Q, t0, p);
          MatN rhs = std::polar(1.0, tau * t0) * slice_ray(sys, conn, q, tau, p);
          worst = std::max(worst, (lhs - rhs).norm());
        }
      CHECK(worst < 1e-6);
    }
  }

  SUBCASE("zero potential, spline time profile") {
    auto sys = euclid_disk(0.1);
    auto conn = zero_connection(1);
    auto Q = zero_potential(sys.domain(), 1);
    TimeProfile prof;
    prof.kind = TimeProfile::Kind::spline;
    prof.t_center = 0.5;
    prof.t_width = 1.0;
    Q.set_profile(prof);
    PhasePoint p = BoundaryFan{}.phase_point_at(sys, 0.8, 0.3);
    CHECK(lightray_transform(sys, conn, Q, 0.0, p).norm() == 0.0);
  }
}
