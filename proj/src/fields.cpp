#include "rayforge/fields.hpp"

#include <cmath>

#include "rayforge/errors.hpp"

namespace rayforge {

MetricField euclidean_metric() {
  MetricField f;
  f.value = [](const Vec2&) { return Mat2::Identity(); };
  f.deriv = [](const Vec2&) {
    return std::array<Mat2, 2>{Mat2::Zero(), Mat2::Zero()};
  };
  return f;
}

MetricField hyperbolic_disk_metric() {
  MetricField f;
  f.value = [](const Vec2& x) {
    double d = 1.0 - x.squaredNorm();
    if (d <= 0.0) fail_input("hyperbolic metric evaluated at |x| >= 1");
    double lam = 4.0 / (d * d);
    return Mat2(lam * Mat2::Identity());
  };
  f.deriv = [](const Vec2& x) {
    double d = 1.0 - x.squaredNorm();
    if (d <= 0.0) fail_input("hyperbolic metric evaluated at |x| >= 1");
    double dl = 16.0 / (d * d * d);  // d(4 d^-2)/d(|x|^2)
    std::array<Mat2, 2> out;
    out[0] = dl * x[0] * Mat2::Identity();
    out[1] = dl * x[1] * Mat2::Identity();
    return out;
  };
  return f;
}

MetricField conformal_gaussian_metric(double amplitude, double width,
                                      const Vec2& center) {
  if (width <= 0.0) fail_input("conformal-gaussian metric: width must be > 0");
  MetricField f;
  auto u = [=](const Vec2& x) {
    return amplitude * std::exp(-(x - center).squaredNorm() / (width * width));
  };
  f.value = [=](const Vec2& x) {
    return Mat2(std::exp(2.0 * u(x)) * Mat2::Identity());
  };
  f.deriv = [=](const Vec2& x) {
    double uu = u(x);
    double lam = std::exp(2.0 * uu);
    Vec2 du = -2.0 / (width * width) * uu * (x - center);
    std::array<Mat2, 2> out;
    out[0] = 2.0 * du[0] * lam * Mat2::Identity();
    out[1] = 2.0 * du[1] * lam * Mat2::Identity();
    return out;
  };
  return f;
}

OneFormField zero_one_form() {
  OneFormField f;
  f.value = [](const Vec2&) { return Vec2(Vec2::Zero()); };
  f.deriv = [](const Vec2&) { return Mat2(Mat2::Zero()); };
  return f;
}

OneFormField constant_field_one_form(double b) {
  OneFormField f;
  f.value = [b](const Vec2& x) { return Vec2(-0.5 * b * x[1], 0.5 * b * x[0]); };
  f.deriv = [b](const Vec2&) {
    Mat2 d;
    // d(i,j) = partial_j omega_i
    d << 0.0, -0.5 * b, 0.5 * b, 0.0;
    return d;
  };
  return f;
}

OneFormField gaussian_one_form(double amplitude, double width,
                               const Vec2& center) {
  if (width <= 0.0) fail_input("gaussian one-form: width must be > 0");
  OneFormField f;
  auto u = [=](const Vec2& x) {
    return amplitude * std::exp(-(x - center).squaredNorm() / (width * width));
  };
  f.value = [=](const Vec2& x) { return Vec2(u(x), 0.0); };
  f.deriv = [=](const Vec2& x) {
    double uu = u(x);
    Vec2 du = -2.0 / (width * width) * uu * (x - center);
    Mat2 d;
    d << du[0], du[1], 0.0, 0.0;
    return d;
  };
  return f;
}

namespace {

std::vector<double> sample_channel(const GridGeom& geom,
                                   const std::function<double(const Vec2&)>& f) {
  std::vector<double> v(geom.count());
  for (int j = 0; j < geom.ny; ++j)
    for (int i = 0; i < geom.nx; ++i) v[geom.index(i, j)] = f(geom.node(i, j));
  return v;
}

}  // namespace

MetricField metric_from_grid(const GridGeom& geom,
                             const std::function<Mat2(const Vec2&)>& sample) {
  auto g11 = std::make_shared<BicubicGrid>(
      geom, sample_channel(geom, [&](const Vec2& x) { return sample(x)(0, 0); }));
  auto g12 = std::make_shared<BicubicGrid>(
      geom, sample_channel(geom, [&](const Vec2& x) { return sample(x)(0, 1); }));
  auto g22 = std::make_shared<BicubicGrid>(
      geom, sample_channel(geom, [&](const Vec2& x) { return sample(x)(1, 1); }));
  MetricField f;
  f.value = [=](const Vec2& x) {
    auto st = make_stencil(geom, x[0], x[1], false);
    Mat2 g;
    double a = g11->value(st), b = g12->value(st), c = g22->value(st);
    g << a, b, b, c;
    return g;
  };
  f.deriv = [=](const Vec2& x) {
    auto st = make_stencil(geom, x[0], x[1], true);
    Vec2 d11 = g11->gradient(st), d12 = g12->gradient(st), d22 = g22->gradient(st);
    std::array<Mat2, 2> out;
    for (int k = 0; k < 2; ++k) {
      out[k] << d11[k], d12[k], d12[k], d22[k];
    }
    return out;
  };
  return f;
}

OneFormField one_form_from_grid(const GridGeom& geom,
                                const std::function<Vec2(const Vec2&)>& sample) {
  auto w1 = std::make_shared<BicubicGrid>(
      geom, sample_channel(geom, [&](const Vec2& x) { return sample(x)[0]; }));
  auto w2 = std::make_shared<BicubicGrid>(
      geom, sample_channel(geom, [&](const Vec2& x) { return sample(x)[1]; }));
  OneFormField f;
  f.value = [=](const Vec2& x) {
    auto st = make_stencil(geom, x[0], x[1], false);
    return Vec2(w1->value(st), w2->value(st));
  };
  f.deriv = [=](const Vec2& x) {
    auto st = make_stencil(geom, x[0], x[1], true);
    Vec2 d1 = w1->gradient(st), d2 = w2->gradient(st);
    Mat2 d;
    d << d1[0], d1[1], d2[0], d2[1];
    return d;
  };
  return f;
}

GridGeom default_field_lattice(const Vec2& lo, const Vec2& hi, int nodes) {
  GridGeom geom;
  double span = std::max(hi[0] - lo[0], hi[1] - lo[1]);
  double pad = 0.04 * span;
  double step = (span + 2.0 * pad) / (nodes - 1);
  geom.dx = geom.dy = step;
  geom.x0 = lo[0] - pad;
  geom.y0 = lo[1] - pad;
  geom.nx = nodes;
  geom.ny = static_cast<int>(std::ceil((hi[1] - lo[1] + 2.0 * pad) / step)) + 1;
  if (geom.ny < 5) geom.ny = 5;
  return geom;
}

}  // namespace rayforge
