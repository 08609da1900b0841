#ifndef RAYFORGE_FIELDS_HPP_
#define RAYFORGE_FIELDS_HPP_

#include <array>
#include <functional>
#include <memory>

#include "rayforge/interp.hpp"
#include "rayforge/types.hpp"

namespace rayforge {

// Riemannian metric on the chart: g_{ij}(x) and partial_k g_{ij}(x).
// deriv(x)[k](i,j) = partial_k g_{ij}.
struct MetricField {
  std::function<Mat2(const Vec2&)> value;
  std::function<std::array<Mat2, 2>(const Vec2&)> deriv;
};

// One-form omega_i(x); deriv(x)(i,j) = partial_j omega_i.
struct OneFormField {
  std::function<Vec2(const Vec2&)> value;
  std::function<Mat2(const Vec2&)> deriv;
};

MetricField euclidean_metric();
// g = 4/(1-|x|^2)^2 * delta (Poincare disk normalization)
MetricField hyperbolic_disk_metric();
// g = exp(2 a e^{-|x-c|^2/w^2}) * delta
MetricField conformal_gaussian_metric(double amplitude, double width,
                                      const Vec2& center);

OneFormField zero_one_form();
// omega = (b/2)(x^1 dx^2 - x^2 dx^1), d(omega) = b dx^1 ^ dx^2
OneFormField constant_field_one_form(double b);
// omega_1 = a e^{-|x-c|^2/w^2}, omega_2 = 0
OneFormField gaussian_one_form(double amplitude, double width,
                               const Vec2& center);

// Grid realizations: sample a closed-form field on a lattice and evaluate
// through the bicubic interpolant (the real data path).
MetricField metric_from_grid(const GridGeom& geom,
                             const std::function<Mat2(const Vec2&)>& sample);
OneFormField one_form_from_grid(const GridGeom& geom,
                                const std::function<Vec2(const Vec2&)>& sample);

// Lattice covering [lo,hi] with the default node density (128 nodes across
// the larger span), used by the scene layer for grid realizations.
GridGeom default_field_lattice(const Vec2& lo, const Vec2& hi, int nodes = 128);

}  // namespace rayforge

#endif  // RAYFORGE_FIELDS_HPP_
