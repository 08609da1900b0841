#ifndef RAYFORGE_INTERP_HPP_
#define RAYFORGE_INTERP_HPP_

#include <vector>

#include "rayforge/types.hpp"

namespace rayforge {

// Regular node lattice. node(i,j) = (x0 + i*dx, y0 + j*dy).
struct GridGeom {
  double x0 = 0.0, y0 = 0.0;
  double dx = 1.0, dy = 1.0;
  int nx = 0, ny = 0;

  Vec2 node(int i, int j) const { return {x0 + i * dx, y0 + j * dy}; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  std::size_t count() const { return static_cast<std::size_t>(nx) * ny; }
};

// Per-query weights of the Hermite bicubic cell polynomial; shared across
// channels that live on the same lattice. Node quantities are gathered in
// corner order (i0,j0), (i0+1,j0), (i0,j0+1), (i0+1,j0+1).
struct BicubicStencil {
  int i0 = 0, j0 = 0;
  // value weights against f, fx, fy, fxy (derivatives in cell units)
  double wf[4], wfx[4], wfy[4], wfxy[4];
  // chart-coordinate gradient weights, filled when requested
  bool has_gradient = false;
  double gx_f[4], gx_fx[4], gx_fy[4], gx_fxy[4];
  double gy_f[4], gy_fx[4], gy_fy[4], gy_fxy[4];
};

BicubicStencil make_stencil(const GridGeom& geom, double x, double y,
                            bool want_gradient);

// Piecewise-bicubic interpolant of scalar node data. Node derivatives come
// from 4th-order finite differences, so the interpolant is strictly local
// (footprint of 4x4 value nodes reaches 6x6 through the differences) and
// reproduces exact zeros away from the data support.
class BicubicGrid {
 public:
  BicubicGrid() = default;
  BicubicGrid(GridGeom geom, std::vector<double> values);

  double value(const BicubicStencil& st) const;
  Vec2 gradient(const BicubicStencil& st) const;

  double value(double x, double y) const;
  // value and chart-coordinate gradient
  double value_gradient(double x, double y, Vec2& grad) const;

  const GridGeom& geom() const { return geom_; }
  const std::vector<double>& nodes() const { return f_; }

 private:
  GridGeom geom_;
  std::vector<double> f_, fx_, fy_, fxy_;
};

}  // namespace rayforge

#endif  // RAYFORGE_INTERP_HPP_
