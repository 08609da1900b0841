#ifndef RAYFORGE_QUADRATURE_HPP_
#define RAYFORGE_QUADRATURE_HPP_

#include <array>
#include <cstddef>
#include <vector>

#include "rayforge/errors.hpp"

namespace rayforge {

// Weights (w0,w1,w2) such that w0*f(a)+w1*f(b)+w2*f(c) equals the integral
// over [u,w] of the Lagrange quadratic through a,b,c. On a uniform triple
// with [u,w]=[a,c] this is Simpson's rule; arbitrary spacing covers the
// final partial interval of a trace.
inline std::array<double, 3> quad3_weights(double a, double b, double c,
                                           double u, double w) {
  // work in a frame anchored at a: the primitives are O(h^3) there, so the
  // endpoint differences do not cancel catastrophically for small intervals
  double bb = b - a, cc = c - a, uu = u - a, ww = w - a;
  auto prim = [](double p, double q, double x) {
    // antiderivative of (x-p)(x-q)
    return x * x * x / 3.0 - (p + q) * x * x / 2.0 + p * q * x;
  };
  auto integ = [&](double p, double q) {
    return prim(p, q, ww) - prim(p, q, uu);
  };
  return {integ(bb, cc) / (bb * cc),
          integ(0.0, cc) / (bb * (bb - cc)),
          integ(0.0, bb) / (cc * (cc - bb))};
}

// Cumulative integral F[i] = ∫_{s0}^{si} f along sample points, composite
// Simpson over pairs of intervals with a 3-point closed rule on a leftover
// interval. Two samples degrade to the trapezoid.
template <typename V>
std::vector<V> cumulative_integral(const std::vector<double>& s,
                                   const std::vector<V>& f) {
  if (s.size() != f.size() || s.empty())
    fail_input("cumulative_integral: mismatched or empty sample arrays");
  std::size_t m = s.size() - 1;  // interval count
  std::vector<V> out(s.size(), V(f[0] * 0.0));
  if (m == 0) return out;
  if (m == 1) {
    out[1] = out[0] + (f[0] + f[1]) * (0.5 * (s[1] - s[0]));
    return out;
  }
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    auto wa = quad3_weights(s[i], s[i + 1], s[i + 2], s[i], s[i + 1]);
    auto wb = quad3_weights(s[i], s[i + 1], s[i + 2], s[i + 1], s[i + 2]);
    out[i + 1] = out[i] + f[i] * wa[0] + f[i + 1] * wa[1] + f[i + 2] * wa[2];
    out[i + 2] =
        out[i + 1] + f[i] * wb[0] + f[i + 1] * wb[1] + f[i + 2] * wb[2];
  }
  if (i == m - 1) {
    auto wt = quad3_weights(s[m - 2], s[m - 1], s[m], s[m - 1], s[m]);
    out[m] = out[m - 1] + f[m - 2] * wt[0] + f[m - 1] * wt[1] + f[m] * wt[2];
  }
  return out;
}

template <typename V>
V integral(const std::vector<double>& s, const std::vector<V>& f) {
  return cumulative_integral(s, f).back();
}

// Per-sample quadrature weights of the same rule, i.e. integral(s,f) equals
// sum_i weight[i]*f[i]. Used where the transform must be assembled as an
// explicitly linear map.
std::vector<double> quadrature_weights(const std::vector<double>& s);

}  // namespace rayforge

#endif  // RAYFORGE_QUADRATURE_HPP_
