#include "rayforge/magnetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rayforge/errors.hpp"

namespace rayforge {

MagneticSystem::MagneticSystem(ChartDomain domain, MetricField g,
                               OneFormField omega)
    : domain_(std::make_shared<ChartDomain>(std::move(domain))),
      g_(std::move(g)),
      omega_(std::move(omega)) {}

Mat2 MagneticSystem::metric_eval(const Vec2& x) const {
  if (!domain_->inside_or_boundary(x))
    fail_input("metric_eval: point outside domain");
  Mat2 g = g_.value(x);
  if (g(0, 0) <= 0.0 || g.determinant() <= 0.0)
    fail_validation("metric_eval: metric not positive definite");
  return g;
}

Mat2 MagneticSystem::metric_inverse_raw(const Vec2& x) const {
  Mat2 g = g_.value(x);
  double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  Mat2 inv;
  inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return Mat2(inv / det);
}

Christoffel MagneticSystem::christoffel_raw(const Vec2& x) const {
  auto dg = g_.deriv(x);
  Mat2 ginv = metric_inverse_raw(x);
  Christoffel ch;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        ch.gamma[k](i, j) = 0.5 * s;
      }
  return ch;
}

Christoffel MagneticSystem::christoffel(const Vec2& x) const {
  if (!domain_->inside_or_boundary(x))
    fail_input("christoffel: point outside domain");
  return christoffel_raw(x);
}

double MagneticSystem::domega_raw(const Vec2& x) const {
  Mat2 d = omega_.deriv(x);  // d(i,j) = partial_j omega_i
  return d(1, 0) - d(0, 1);
}

Vec2 MagneticSystem::force_raw(const Vec2& x, const Vec2& v,
                               double sign) const {
  // (Fv)^i = -g^{ik} (domega)_{kj} v^j with (domega)_{12} = b:
  // Fv = b * ginv * (-v2, v1)
  double b = domega_raw(x);
  Mat2 ginv = metric_inverse_raw(x);
  Vec2 jv(-v[1], v[0]);
  return Vec2(sign * b * (ginv * jv));
}

Vec2 MagneticSystem::lorentz_force(const Vec2& x, const Vec2& v) const {
  if (!domain_->inside_or_boundary(x))
    fail_input("lorentz_force: point outside domain");
  return force_raw(x, v);
}

double MagneticSystem::g_norm(const Vec2& x, const Vec2& v) const {
  return std::sqrt(std::max(0.0, g_inner(x, v, v)));
}

Vec2 MagneticSystem::g_normalize(const Vec2& x, const Vec2& v) const {
  double n = g_norm(x, v);
  if (n <= 0.0) fail_input("g_normalize: zero vector");
  return Vec2(v / n);
}

double MagneticSystem::omega_norm_g(const Vec2& x) const {
  Vec2 w = omega_.value(x);
  return std::sqrt(std::max(0.0, w.dot(metric_inverse_raw(x) * w)));
}

void MagneticSystem::boundary_frame(double theta, Vec2& x, Vec2& nu,
                                    Vec2& tang) const {
  x = domain_->beta(theta);
  Vec2 n_cov = domain_->inward_normal_raw(x);
  Vec2 n_vec = metric_inverse_raw(x) * n_cov;
  nu = g_normalize(x, n_vec);
  tang = g_normalize(x, domain_->beta_d1(theta));
}

double MagneticSystem::convexity_margin(double theta, const Vec2& v) const {
  Vec2 x, nu, tang;
  boundary_frame(theta, x, nu, tang);
  double vn = g_norm(x, v);
  if (std::abs(vn - 1.0) > 1e-8)
    fail_input("convexity_margin: v must be g-unit");
  if (std::abs(g_inner(x, v, nu)) > 1e-8)
    fail_input("convexity_margin: v must be tangent to the boundary");

  // Pi(v,v) = g(beta'' + Gamma(beta', beta'), nu) / |beta'|_g^2 for the
  // curve parametrized by theta; the tangential part is killed by nu
  Vec2 t1 = domain_->beta_d1(theta);
  Vec2 t2 = domain_->beta_d2(theta);
  Christoffel ch = christoffel_raw(x);
  Vec2 acc = t2 + ch.apply(t1, t1);
  double pi_vv = g_inner(x, acc, nu) / g_inner(x, t1, t1);
  return pi_vv - g_inner(x, force_raw(x, v), nu);
}

double MagneticSystem::convexity_sweep_min(int n_samples) const {
  double best = std::numeric_limits<double>::max();
  for (int k = 0; k < n_samples; ++k) {
    double theta = 2.0 * M_PI * k / n_samples;
    Vec2 x, nu, tang;
    boundary_frame(theta, x, nu, tang);
    best = std::min(best, convexity_margin(theta, tang));
    best = std::min(best, convexity_margin(theta, Vec2(-tang)));
  }
  return best;
}

double MagneticSystem::omega_sup(int n_samples) const {
  Vec2 lo, hi;
  domain_->bbox(lo, hi);
  double sup = 0.0;
  for (int j = 0; j < n_samples; ++j)
    for (int i = 0; i < n_samples; ++i) {
      Vec2 x(lo[0] + (hi[0] - lo[0]) * i / (n_samples - 1.0),
             lo[1] + (hi[1] - lo[1]) * j / (n_samples - 1.0));
      if (!domain_->inside(x)) continue;
      sup = std::max(sup, omega_norm_g(x));
    }
  for (int k = 0; k < 4 * n_samples; ++k) {
    Vec2 x = domain_->beta(2.0 * M_PI * k / (4 * n_samples));
    // pull just inside so grid-backed fields stay in their hull
    sup = std::max(sup, omega_norm_g(Vec2(x * (1.0 - 1e-9))));
  }
  return sup;
}

}  // namespace rayforge
