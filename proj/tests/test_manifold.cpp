#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rayforge/errors.hpp"
#include "rayforge/magnetic.hpp"
#include "support/oracles.hpp"

using namespace rayforge;

namespace {

MagneticSystem euclid_disk(double b) {
  return MagneticSystem(ChartDomain::unit_disk(), euclidean_metric(),
                        constant_field_one_form(b));
}

MagneticSystem hyperbolic_cap() {
  return MagneticSystem(ChartDomain::super_ellipse(2.0, 0.7, 0.7),
                        hyperbolic_disk_metric(), zero_one_form());
}

}  // namespace

TEST_CASE("metric_eval on built-in scenes") {
  auto sys = euclid_disk(0.0);
  Mat2 g = sys.metric_eval({0.3, -0.1});
  CHECK((g - Mat2::Identity()).norm() == 0.0);

  auto hyp = hyperbolic_cap();
  Mat2 g0 = hyp.metric_eval({0.0, 0.0});
  CHECK((g0 - 4.0 * Mat2::Identity()).norm() < 1e-14);

  CHECK_THROWS_AS((void)sys.metric_eval({1.5, 0.0}), Error);
}

TEST_CASE("grid realization agrees with closed form") {
  auto dom = ChartDomain::unit_disk();
  Vec2 lo, hi;
  dom.bbox(lo, hi);
  auto geom = default_field_lattice(lo, hi);

  SUBCASE("euclidean metric stays identity through the grid") {
    auto grid_g = metric_from_grid(
        geom, [](const Vec2&) { return Mat2(Mat2::Identity()); });
    oracles::Rng rng(7);
    for (int k = 0; k < 200; ++k) {
      Vec2 x(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
      if (!dom.inside(x)) continue;
      CHECK((grid_g.value(x) - Mat2::Identity()).norm() < 1e-6);
    }
  }

  SUBCASE("christoffel grid vs closed form at 100 random points") {
    auto cf = conformal_gaussian_metric(0.05, 0.6, Vec2(0.1, -0.2));
    MagneticSystem closed(dom, cf, zero_one_form());
    auto grid_metric = metric_from_grid(geom, cf.value);
    MagneticSystem gridded(dom, grid_metric, zero_one_form());
    oracles::Rng rng(11);
    double worst = 0.0;
    int used = 0;
    while (used < 100) {
      Vec2 x(rng.uniform(-0.85, 0.85), rng.uniform(-0.85, 0.85));
      if (!dom.inside(x)) continue;
      ++used;
      auto ca = closed.christoffel(x);
      auto cb = gridded.christoffel(x);
      for (int k = 0; k < 2; ++k)
        worst = std::max(worst, (ca.gamma[k] - cb.gamma[k]).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("christoffel symbols") {
  auto sys = euclid_disk(0.3);
  auto ch = sys.christoffel({0.4, 0.2});
  CHECK(ch.gamma[0].norm() == 0.0);
  CHECK(ch.gamma[1].norm() == 0.0);

  auto hyp = hyperbolic_cap();
  auto ch0 = hyp.christoffel({0.0, 0.0});
  CHECK(ch0.gamma[0].norm() < 1e-14);
  CHECK(ch0.gamma[1].norm() < 1e-14);

  SUBCASE("agreement with central differences of g") {
    auto cf = conformal_gaussian_metric(0.2, 0.5, Vec2(0.05, 0.15));
    MagneticSystem sys2(ChartDomain::unit_disk(), cf, zero_one_form());
    oracles::Rng rng(3);
    const double h = 1e-4;
    for (int trial = 0; trial < 25; ++trial) {
      Vec2 x(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
      // finite-difference oracle for dg, then the Levi-Civita formula
      std::array<Mat2, 2> dg;
      for (int k = 0; k < 2; ++k) {
        Vec2 e = Vec2::Zero();
        e[k] = h;
        dg[k] = (cf.value(x + e) - cf.value(x - e)) / (2.0 * h);
      }
      Mat2 ginv = cf.value(x).inverse();
      auto ch2 = sys2.christoffel(x);
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            double ref = 0.0;
            for (int l = 0; l < 2; ++l)
              ref += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
            CHECK(ch2.gamma[k](i, j) == doctest::Approx(ref).epsilon(1e-6));
            CHECK(ch2.gamma[k](i, j) == ch2.gamma[k](j, i));
          }
    }
  }
}

TEST_CASE("lorentz force") {
  SUBCASE("vanishing magnetic field") {
    auto sys = euclid_disk(0.0);
    CHECK(sys.lorentz_force({0.2, 0.1}, {1.0, -2.0}).norm() == 0.0);
  }

  SUBCASE("constant field sign convention") {
    // domega = b dx1^dx2 by hand; F(1,0) = (0, b)
    double b = 0.7;
    auto sys = euclid_disk(b);
    Vec2 f = sys.lorentz_force({0.1, 0.2}, {1.0, 0.0});
    CHECK(f[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(b).epsilon(1e-12));

    // finite-difference cross-check of (domega)_{12}
    auto om = constant_field_one_form(b);
    Vec2 x(0.1, 0.2);
    double d12 = oracles::fd_central(
                     [&](double u) { return om.value(Vec2(u, x[1]))[1]; }, x[0]) -
                 oracles::fd_central(
                     [&](double u) { return om.value(Vec2(x[0], u))[0]; }, x[1]);
    CHECK(d12 == doctest::Approx(b).epsilon(1e-8));
  }

  SUBCASE("linearity in v") {
    auto sys = euclid_disk(0.4);
    Vec2 v(0.3, -0.5);
    Vec2 a = sys.lorentz_force({0.1, -0.3}, v);
    Vec2 c = sys.lorentz_force({0.1, -0.3}, Vec2(2.0 * v));
    CHECK((c - 2.0 * a).norm() < 1e-14);
  }

  SUBCASE("g-antisymmetry on random samples") {
    MagneticSystem sys(ChartDomain::unit_disk(),
                       conformal_gaussian_metric(0.3, 0.5, Vec2(0.1, 0.0)),
                       gaussian_one_form(0.2, 0.6, Vec2(-0.1, 0.2)));
    oracles::Rng rng(17);
    for (int k = 0; k < 200; ++k) {
      Vec2 x(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
      Vec2 u(rng.uniform(-1, 1), rng.uniform(-1, 1));
      Vec2 w(rng.uniform(-1, 1), rng.uniform(-1, 1));
      double lhs = sys.g_inner(x, sys.force_raw(x, u), w) +
                   sys.g_inner(x, u, sys.force_raw(x, w));
      CHECK(std::abs(lhs) <= 1e-10 * u.norm() * w.norm());
      CHECK(std::abs(sys.g_inner(x, sys.force_raw(x, u), u)) <=
            1e-12 * u.squaredNorm());
    }
  }
}

TEST_CASE("SPD sampling over the domain") {
  MagneticSystem sys(ChartDomain::super_ellipse(4.0, 0.9, 0.8),
                     conformal_gaussian_metric(0.25, 0.5, Vec2(0.2, -0.1)),
                     zero_one_form());
  oracles::Rng rng(23);
  int used = 0;
  while (used < 1000) {
    Vec2 x(rng.uniform(-0.9, 0.9), rng.uniform(-0.8, 0.8));
    if (!sys.domain().inside(x)) continue;
    ++used;
    Mat2 g = sys.metric_eval(x);
    Eigen::SelfAdjointEigenSolver<Mat2> es(g);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("convexity margin") {
  SUBCASE("unit circle curvature") {
    auto sys = euclid_disk(0.0);
    Vec2 x, nu, tang;
    sys.boundary_frame(1.1, x, nu, tang);
    CHECK(sys.convexity_margin(1.1, tang) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sys.convexity_sweep_min() == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("constant field margin bound") {
    double b = 0.5;
    auto sys = euclid_disk(b);
    double margin = sys.convexity_sweep_min();
    CHECK(margin >= 1.0 - std::abs(b) - 1e-10);
    CHECK(margin > 0.0);
  }

  SUBCASE("zero omega margin equals second fundamental form") {
    MagneticSystem sys(ChartDomain::super_ellipse(4.0, 0.9, 0.8),
                       euclidean_metric(), zero_one_form());
    // F = 0 drops the linear term; both orientations agree
    for (double theta : {0.3, 1.0, 2.4, 4.0}) {
      Vec2 x, nu, tang;
      sys.boundary_frame(theta, x, nu, tang);
      double m1 = sys.convexity_margin(theta, tang);
      double m2 = sys.convexity_margin(theta, Vec2(-tang));
      CHECK(m1 == doctest::Approx(m2).epsilon(1e-12));
      CHECK(m1 > 0.0);
    }
  }

  SUBCASE("margin is continuous along the sweep") {
    auto sys = euclid_disk(0.4);
    double prev = 0.0;
    const int n = 2000;
    for (int k = 0; k <= n; ++k) {
      double theta = 2.0 * M_PI * k / n;
      Vec2 x, nu, tang;
      sys.boundary_frame(theta, x, nu, tang);
      double m = sys.convexity_margin(theta, tang);
      if (k > 0) CHECK(std::abs(m - prev) < 50.0 / n);
      prev = m;
    }
  }

  SUBCASE("input validation") {
    auto sys = euclid_disk(0.0);
    Vec2 x, nu, tang;
    sys.boundary_frame(0.7, x, nu, tang);
    CHECK_THROWS_AS((void)sys.convexity_margin(0.7, Vec2(2.0 * tang)), Error);
    CHECK_THROWS_AS((void)sys.convexity_margin(0.7, nu), Error);
  }
}

TEST_CASE("domain membership consistency with the parametrization") {
  for (auto dom : {ChartDomain::unit_disk(),
                   ChartDomain::super_ellipse(3.0, 0.9, 0.7)}) {
    for (int k = 0; k < 64; ++k) {
      double theta = 2.0 * M_PI * k / 64.0;
      Vec2 b = dom.beta(theta);
      CHECK(std::abs(dom.rho(b)) < 1e-12);
      CHECK(dom.on_boundary(b));
      CHECK(dom.inside(Vec2(0.999999 * b)));
      CHECK(!dom.inside(Vec2(1.000001 * b)));
    }
  }
}

TEST_CASE("one-form sup norm is finite and reported") {
  auto sys = euclid_disk(0.5);
  double sup = sys.omega_sup();
  // |omega|_g = (b/2)|x| peaks at the boundary
  CHECK(sup == doctest::Approx(0.25).epsilon(1e-3));
}
