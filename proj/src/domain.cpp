#include "rayforge/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rayforge/errors.hpp"

namespace rayforge {

namespace {
constexpr int kBoundaryPolyN = 1024;

inline double pow_abs(double u, double p) { return std::pow(std::abs(u), p); }

// |u|^{p-2} * u, the derivative kernel of |u|^p / p
inline double signed_pow(double u, double pm) {
  if (u == 0.0) return 0.0;
  return std::pow(std::abs(u), pm) * (u > 0 ? 1.0 : -1.0);
}
}  // namespace

ChartDomain::ChartDomain(std::string kind, double p, double ax, double ay)
    : kind_(std::move(kind)), p_(p), ax_(ax), ay_(ay) {
  if (p_ < 2.0) fail_input("ChartDomain: super-ellipse exponent must be >= 2");
  if (ax_ <= 0.0 || ay_ <= 0.0)
    fail_input("ChartDomain: semi-axes must be positive");
  boundary_poly_.reserve(kBoundaryPolyN);
  for (int k = 0; k < kBoundaryPolyN; ++k)
    boundary_poly_.push_back(beta(2.0 * M_PI * k / kBoundaryPolyN));
}

ChartDomain ChartDomain::unit_disk() {
  return ChartDomain("unit-disk", 2.0, 1.0, 1.0);
}

ChartDomain ChartDomain::super_ellipse(double p, double ax, double ay) {
  return ChartDomain("super-ellipse", p, ax, ay);
}

double ChartDomain::rho(const Vec2& x) const {
  if (p_ == 2.0) {
    double u = x[0] / ax_, v = x[1] / ay_;
    return u * u + v * v - 1.0;
  }
  return pow_abs(x[0] / ax_, p_) + pow_abs(x[1] / ay_, p_) - 1.0;
}

Vec2 ChartDomain::rho_grad(const Vec2& x) const {
  double u = x[0] / ax_, v = x[1] / ay_;
  if (p_ == 2.0) return {2.0 * u / ax_, 2.0 * v / ay_};
  return {p_ * signed_pow(u, p_ - 1.0) / ax_,
          p_ * signed_pow(v, p_ - 1.0) / ay_};
}

// Angular parametrization beta(theta) = r(theta) (cos, sin) with
// r = phi^{-1/p}, phi = |cos/ax|^p + |sin/ay|^p. Regular for p >= 2; the
// trigonometric power form would lose regularity on the axes for p > 2.
Vec2 ChartDomain::beta(double theta) const {
  double c = std::cos(theta), s = std::sin(theta);
  double phi = pow_abs(c / ax_, p_) + pow_abs(s / ay_, p_);
  double r = std::pow(phi, -1.0 / p_);
  return {r * c, r * s};
}

Vec2 ChartDomain::beta_d1(double theta) const {
  double c = std::cos(theta), s = std::sin(theta);
  double u = c / ax_, v = s / ay_;
  double du = -s / ax_, dv = c / ay_;
  double phi = pow_abs(u, p_) + pow_abs(v, p_);
  double dphi = p_ * (signed_pow(u, p_ - 1.0) * du + signed_pow(v, p_ - 1.0) * dv);
  double r = std::pow(phi, -1.0 / p_);
  double dr = -(1.0 / p_) * std::pow(phi, -1.0 / p_ - 1.0) * dphi;
  return {dr * c - r * s, dr * s + r * c};
}

Vec2 ChartDomain::beta_d2(double theta) const {
  double c = std::cos(theta), s = std::sin(theta);
  double u = c / ax_, v = s / ay_;
  double du = -s / ax_, dv = c / ay_;
  double phi = pow_abs(u, p_) + pow_abs(v, p_);
  double gu = signed_pow(u, p_ - 1.0), gv = signed_pow(v, p_ - 1.0);
  double dphi = p_ * (gu * du + gv * dv);
  // d/dtheta of signed_pow(u, p-1) = (p-1)|u|^{p-2} du; u'' = -u, v'' = -v
  double d2phi = p_ * ((p_ - 1.0) * pow_abs(u, p_ - 2.0) * du * du - gu * u +
                       (p_ - 1.0) * pow_abs(v, p_ - 2.0) * dv * dv - gv * v);
  double e = -1.0 / p_;
  double r = std::pow(phi, e);
  double dr = e * std::pow(phi, e - 1.0) * dphi;
  double d2r = e * ((e - 1.0) * std::pow(phi, e - 2.0) * dphi * dphi +
                    std::pow(phi, e - 1.0) * d2phi);
  return {d2r * c - 2.0 * dr * s - r * c, d2r * s + 2.0 * dr * c - r * s};
}

bool ChartDomain::on_boundary(const Vec2& x) const {
  // first-order distance estimate |rho|/|grad rho|; exact enough at the
  // 1e-9 tolerance where the polyline distance is too coarse
  double r = rho(x);
  double gn = rho_grad(x).norm();
  if (gn < 1e-14) return false;
  return std::abs(r) / gn <= kBoundaryTol;
}

bool ChartDomain::inside_or_boundary(const Vec2& x) const {
  return rho(x) < 0.0 || on_boundary(x);
}

double ChartDomain::boundary_distance(const Vec2& x) const {
  // nearest point on the boundary polyline (segment-accurate)
  double best = std::numeric_limits<double>::max();
  const auto n = boundary_poly_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = boundary_poly_[k];
    const Vec2& b = boundary_poly_[(k + 1) % n];
    Vec2 ab = b - a;
    double t = (x - a).dot(ab) / ab.squaredNorm();
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, (x - (a + t * ab)).norm());
  }
  return best;
}

void ChartDomain::bbox(Vec2& lo, Vec2& hi) const {
  lo = {-ax_, -ay_};
  hi = {ax_, ay_};
}

}  // namespace rayforge
