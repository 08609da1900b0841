#ifndef RAYFORGE_TESTS_ORACLES_HPP_
#define RAYFORGE_TESTS_ORACLES_HPP_

// Independent numerical oracles for the test suites. Everything here is
// deliberately decoupled from the library's own integration and quadrature
// paths.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "rayforge/types.hpp"

namespace oracles {

using rayforge::cplx;
using rayforge::MatN;
using rayforge::Vec2;
using rayforge::VecN;

// matrix exponential by scaling-and-squaring with a Taylor core
inline MatN expm(const MatN& a) {
  int n = static_cast<int>(a.rows());
  double norm = a.cwiseAbs().sum();
  int squarings = 0;
  MatN b = a;
  while (norm > 0.25) {
    b *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  MatN result = MatN::Identity(n, n);
  MatN term = MatN::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = MatN(term * b) / static_cast<double>(k);
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = MatN(result * result);
  return result;
}

// dense composite-Simpson quadrature of a matrix-valued function
inline MatN simpson(const std::function<MatN(double)>& f, double a, double b,
                    int n_pairs) {
  double h = (b - a) / (2 * n_pairs);
  MatN acc = f(a);
  acc += f(b);
  for (int k = 1; k < 2 * n_pairs; ++k)
    acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return MatN(acc * (h / 3.0));
}

inline double simpson_scalar(const std::function<double(double)>& f, double a,
                             double b, int n_pairs) {
  double h = (b - a) / (2 * n_pairs);
  double acc = f(a) + f(b);
  for (int k = 1; k < 2 * n_pairs; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline cplx simpson_cplx(const std::function<cplx(double)>& f, double a,
                         double b, int n_pairs) {
  double h = (b - a) / (2 * n_pairs);
  cplx acc = f(a) + f(b);
  for (int k = 1; k < 2 * n_pairs; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

// central finite difference of a scalar field component
inline double fd_central(const std::function<double(double)>& f, double x,
                         double h = 1e-4) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  cplx ucplx(double scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale)};
  }
  MatN matrix(int n, double scale = 1.0) {
    MatN m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = ucplx(scale);
    return m;
  }
  MatN skew_hermitian(int n, double scale = 1.0) {
    MatN m = matrix(n, scale);
    return MatN(0.5 * (m - m.adjoint().eval()));
  }
};

}  // namespace oracles

#endif  // RAYFORGE_TESTS_ORACLES_HPP_
