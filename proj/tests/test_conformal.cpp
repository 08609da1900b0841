#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rayforge/conformal.hpp"
#include "support/oracles.hpp"

using namespace rayforge;

namespace {

MagneticSystem scene_sys() {
  return MagneticSystem(ChartDomain::unit_disk(),
                        conformal_gaussian_metric(0.12, 0.6, Vec2(0.1, 0.0)),
                        constant_field_one_form(0.35));
}

GeodesicTrace lifted_trace(const MagneticSystem& sys, const PhasePoint& p,
                           double t0) {
  auto tr = integrate_magnetic_geodesic(sys, p);
  null_lift(sys, tr, t0);
  return tr;
}

}  // namespace

TEST_CASE("reparametrization") {
  auto sys = scene_sys();
  BoundaryFan fan{6, 6, 0.2};
  PhasePoint p = fan.phase_point(sys, 2, 3);
  auto tr = lifted_trace(sys, p, 0.4);

  SUBCASE("identity factor keeps the parameter") {
    auto rep = reparametrize(sys, tr, ConformalFactor::constant(1.0));
    CHECK(rep.length() == doctest::Approx(tr.exit_time).epsilon(1e-12));
    for (std::size_t i = 0; i < rep.h.size(); ++i) {
      CHECK(rep.h[i] == doctest::Approx(rep.s_tilde[i]).epsilon(1e-12));
      CHECK(rep.hprime[i] == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  SUBCASE("constant factor cancels in the ratio") {
    auto rep = reparametrize(sys, tr, ConformalFactor::constant(3.7));
    CHECK(rep.length() == doctest::Approx(tr.exit_time).epsilon(1e-12));
    for (double hp : rep.hprime) CHECK(hp == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("gaussian factor: ODE route vs quadrature of the closed-form ratio") {
    auto c = ConformalFactor::spatial_gaussian(0.4, 0.5, Vec2(0.05, -0.1));
    auto rep = reparametrize(sys, tr, c);
    CHECK(rep.h.back() == doctest::Approx(tr.exit_time).epsilon(1e-10));
    // independent route: s~(h) = int_0^h (c(gamma(u))/c(gamma(0)))^2 du,
    // inverted by a fine monotone table
    TraceInterpolant interp(sys, tr);
    double K = c.value(interp.time(0.0), interp.position(0.0));
    auto integrand = [&](double u) {
      double cv = c.value(interp.time(u), interp.position(u));
      return (cv / K) * (cv / K);
    };
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.h.size(); i += 50) {
      double st_oracle = oracles::simpson_scalar(integrand, 0.0, rep.h[i], 4000);
      worst = std::max(worst, std::abs(st_oracle - rep.s_tilde[i]));
    }
    CHECK(worst < 1e-8);
    // h' matches the ratio-squared form pointwise
    double worst_hp = 0.0;
    for (std::size_t i = 0; i < rep.h.size(); i += 50) {
      double cv = c.value(interp.time(rep.h[i]), interp.position(rep.h[i]));
      worst_hp = std::max(worst_hp,
                          std::abs(rep.hprime[i] - (K / cv) * (K / cv)));
    }
    CHECK(worst_hp < 1e-10);
    // h strictly increasing
    for (std::size_t i = 1; i < rep.h.size(); ++i) CHECK(rep.h[i] > rep.h[i - 1]);
  }

  SUBCASE("change of variables for a smooth scalar") {
    auto c = ConformalFactor::spatial_gaussian(0.3, 0.6, Vec2(-0.1, 0.1));
    auto rep = reparametrize(sys, tr, c);
    auto f = [](const Vec2& x) {
      return std::sin(2.0 * x[0]) * std::exp(x[1]);
    };
    TraceInterpolant interp(sys, tr);
    double base = oracles::simpson_scalar(
        [&](double s) { return f(interp.position(s)); }, 0.0, tr.exit_time,
        4000);
    std::vector<double> vals(rep.s_tilde.size());
    std::vector<double> sv = rep.s_tilde;
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] = f(rep.x[i]) * rep.hprime[i];
    double repar = integral(sv, vals);
    CHECK(std::abs(base - repar) < 1e-8);
  }

  SUBCASE("factor that is not bounded below is rejected") {
    CHECK_THROWS_AS((void)ConformalFactor::spatial_gaussian(-1.2, 0.5, Vec2(0, 0)),
                    Error);
  }
}

TEST_CASE("conformal invariance of the light ray transform") {
  auto sys = scene_sys();
  auto conn = su2_gaussian_connection(0.6, 0.5, {0.0, 0.05});
  auto q = random_smooth_potential(sys.domain(), 2, 909, 64);
  BoundaryFan fan{5, 4, 0.25};

  SUBCASE("identity factor gives a vanishing defect") {
    PhasePoint p = fan.phase_point(sys, 1, 1);
    auto chk = conformal_lightray_check(sys, conn, q, ConformalFactor::constant(1.0),
                                        p, 0.2);
    CHECK(chk.defect < 1e-12);
  }

  SUBCASE("constant factor cancels exactly") {
    PhasePoint p = fan.phase_point(sys, 3, 2);
    auto chk = conformal_lightray_check(sys, conn, q,
                                        ConformalFactor::constant(2.4), p, 0.0);
    CHECK(chk.defect < 1e-10);
  }

  SUBCASE("gaussian factor on a matrix scene") {
    auto c = ConformalFactor::spatial_gaussian(0.5, 0.55, Vec2(0.1, -0.05));
    VolumeField Q = q;
    TimeProfile prof;
    prof.kind = TimeProfile::Kind::separable;
    prof.tau = 0.8;
    Q.set_profile(prof);
    double worst_defect = 0.0, worst_inv = 0.0;
    for (int j = 0; j < fan.n_theta; ++j) {
      PhasePoint p = fan.phase_point(sys, j, j % fan.n_alpha);
      auto chk = conformal_lightray_check(sys, conn, Q, c, p, 0.3);
      worst_defect = std::max(worst_defect, chk.defect);
      worst_inv = std::max(worst_inv, chk.transport_invariance);
    }
    CHECK(worst_defect < 1e-6);
    CHECK(worst_inv < 1e-8);
  }
}
