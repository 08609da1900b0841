#include "rayforge/interp.hpp"

#include <algorithm>
#include <cmath>

#include "rayforge/errors.hpp"

namespace rayforge {

namespace {

// 4th-order five-point first-derivative rows (spacing 1), offsets relative
// to the node: interior is centered, the first/last two nodes use shifted
// stencils.
struct Fd4Row {
  int off[5];
  double c[5];
};

Fd4Row fd4_row(int k, int n) {
  constexpr double s = 1.0 / 12.0;
  if (k >= 2 && k <= n - 3)
    return {{-2, -1, 0, 1, 2}, {s, -8 * s, 0.0, 8 * s, -s}};
  if (k == 0)
    return {{0, 1, 2, 3, 4}, {-25 * s, 48 * s, -36 * s, 16 * s, -3 * s}};
  if (k == 1) return {{-1, 0, 1, 2, 3}, {-3 * s, -10 * s, 18 * s, -6 * s, s}};
  if (k == n - 2)
    return {{-3, -2, -1, 0, 1}, {-s, 6 * s, -18 * s, 10 * s, 3 * s}};
  // k == n-1
  return {{-4, -3, -2, -1, 0}, {3 * s, -16 * s, 36 * s, -48 * s, 25 * s}};
}

inline void hermite_basis(double t, double h[2], double k[2]) {
  double t2 = t * t, t3 = t2 * t;
  h[0] = 2 * t3 - 3 * t2 + 1;
  h[1] = -2 * t3 + 3 * t2;
  k[0] = t3 - 2 * t2 + t;
  k[1] = t3 - t2;
}

inline void hermite_basis_d(double t, double hd[2], double kd[2]) {
  double t2 = t * t;
  hd[0] = 6 * t2 - 6 * t;
  hd[1] = -6 * t2 + 6 * t;
  kd[0] = 3 * t2 - 4 * t + 1;
  kd[1] = 3 * t2 - 2 * t;
}

}  // namespace

BicubicStencil make_stencil(const GridGeom& geom, double x, double y,
                            bool want_gradient) {
  BicubicStencil st;
  double u = (x - geom.x0) / geom.dx;
  double v = (y - geom.y0) / geom.dy;
  st.i0 = std::clamp(static_cast<int>(std::floor(u)), 0, geom.nx - 2);
  st.j0 = std::clamp(static_cast<int>(std::floor(v)), 0, geom.ny - 2);
  double tx = u - st.i0;
  double ty = v - st.j0;

  double hx[2], kx[2], hy[2], ky[2];
  hermite_basis(tx, hx, kx);
  hermite_basis(ty, hy, ky);
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      int c = b * 2 + a;
      st.wf[c] = hx[a] * hy[b];
      st.wfx[c] = kx[a] * hy[b];
      st.wfy[c] = hx[a] * ky[b];
      st.wfxy[c] = kx[a] * ky[b];
    }

  st.has_gradient = want_gradient;
  if (want_gradient) {
    double hxd[2], kxd[2], hyd[2], kyd[2];
    hermite_basis_d(tx, hxd, kxd);
    hermite_basis_d(ty, hyd, kyd);
    double ix = 1.0 / geom.dx, iy = 1.0 / geom.dy;
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < 2; ++a) {
        int c = b * 2 + a;
        st.gx_f[c] = hxd[a] * hy[b] * ix;
        st.gx_fx[c] = kxd[a] * hy[b] * ix;
        st.gx_fy[c] = hxd[a] * ky[b] * ix;
        st.gx_fxy[c] = kxd[a] * ky[b] * ix;
        st.gy_f[c] = hx[a] * hyd[b] * iy;
        st.gy_fx[c] = kx[a] * hyd[b] * iy;
        st.gy_fy[c] = hx[a] * kyd[b] * iy;
        st.gy_fxy[c] = kx[a] * kyd[b] * iy;
      }
  }
  return st;
}

BicubicGrid::BicubicGrid(GridGeom geom, std::vector<double> values)
    : geom_(geom), f_(std::move(values)) {
  if (geom_.nx < 5 || geom_.ny < 5)
    fail_input("BicubicGrid: lattice must be at least 5x5");
  if (f_.size() != geom_.count())
    fail_input("BicubicGrid: node value count does not match lattice");
  auto n = geom_.count();
  fx_.assign(n, 0.0);
  fy_.assign(n, 0.0);
  fxy_.assign(n, 0.0);
  // derivatives in cell units: d/di and d/dj of the node data
  for (int j = 0; j < geom_.ny; ++j)
    for (int i = 0; i < geom_.nx; ++i) {
      auto row = fd4_row(i, geom_.nx);
      double s = 0.0;
      for (int t = 0; t < 5; ++t) s += row.c[t] * f_[geom_.index(i + row.off[t], j)];
      fx_[geom_.index(i, j)] = s;
    }
  for (int j = 0; j < geom_.ny; ++j) {
    auto row = fd4_row(j, geom_.ny);
    for (int i = 0; i < geom_.nx; ++i) {
      double s = 0.0, sx = 0.0;
      for (int t = 0; t < 5; ++t) {
        auto id = geom_.index(i, j + row.off[t]);
        s += row.c[t] * f_[id];
        sx += row.c[t] * fx_[id];
      }
      fy_[geom_.index(i, j)] = s;
      fxy_[geom_.index(i, j)] = sx;
    }
  }
}

double BicubicGrid::value(const BicubicStencil& st) const {
  double acc = 0.0;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      int c = b * 2 + a;
      auto id = geom_.index(st.i0 + a, st.j0 + b);
      acc += st.wf[c] * f_[id] + st.wfx[c] * fx_[id] + st.wfy[c] * fy_[id] +
             st.wfxy[c] * fxy_[id];
    }
  return acc;
}

Vec2 BicubicGrid::gradient(const BicubicStencil& st) const {
  double gx = 0.0, gy = 0.0;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      int c = b * 2 + a;
      auto id = geom_.index(st.i0 + a, st.j0 + b);
      gx += st.gx_f[c] * f_[id] + st.gx_fx[c] * fx_[id] +
            st.gx_fy[c] * fy_[id] + st.gx_fxy[c] * fxy_[id];
      gy += st.gy_f[c] * f_[id] + st.gy_fx[c] * fx_[id] +
            st.gy_fy[c] * fy_[id] + st.gy_fxy[c] * fxy_[id];
    }
  return {gx, gy};
}

double BicubicGrid::value(double x, double y) const {
  return value(make_stencil(geom_, x, y, false));
}

double BicubicGrid::value_gradient(double x, double y, Vec2& grad) const {
  auto st = make_stencil(geom_, x, y, true);
  grad = gradient(st);
  return value(st);
}

}  // namespace rayforge
