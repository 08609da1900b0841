#include "rayforge/volume.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rayforge/errors.hpp"

namespace rayforge {

VolumeField::VolumeField(int N, GridGeom geom, std::vector<MatN> node_values,
                         std::vector<std::uint8_t> mask, TimeProfile profile)
    : N_(N),
      geom_(geom),
      profile_(profile),
      nodes_(std::move(node_values)),
      mask_(std::move(mask)) {
  if (nodes_.size() != geom_.count() || mask_.size() != geom_.count())
    fail_input("VolumeField: node arrays do not match the lattice");
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (!mask_[k]) nodes_[k] = mat_zero(N_);
  rebuild_channels();
}

GridGeom VolumeField::default_lattice(const ChartDomain& domain, int nodes,
                                      int pad_cells) {
  Vec2 lo, hi;
  domain.bbox(lo, hi);
  double span = std::max(hi[0] - lo[0], hi[1] - lo[1]);
  int interior = nodes - 1 - 2 * pad_cells;
  if (interior < 4) fail_input("VolumeField lattice too coarse");
  GridGeom g;
  g.dx = g.dy = span / interior;
  g.x0 = lo[0] - pad_cells * g.dx;
  g.y0 = lo[1] - pad_cells * g.dy;
  g.nx = nodes;
  g.ny = static_cast<int>(std::ceil((hi[1] - lo[1]) / g.dy)) + 1 + 2 * pad_cells;
  if (g.ny < 5) g.ny = 5;
  return g;
}

VolumeField VolumeField::from_function(
    const ChartDomain& domain, int N, const GridGeom& geom,
    const std::function<MatN(const Vec2&, double)>& fn, TimeProfile profile) {
  std::vector<MatN> vals(geom.count(), mat_zero(N));
  std::vector<std::uint8_t> mask(geom.count(), 0);
  double standoff = 2.0 * std::max(geom.dx, geom.dy);
  for (int j = 0; j < geom.ny; ++j)
    for (int i = 0; i < geom.nx; ++i) {
      Vec2 x = geom.node(i, j);
      if (!domain.inside(x)) continue;
      double d = domain.boundary_distance(x);
      if (d < standoff) continue;
      auto id = geom.index(i, j);
      mask[id] = 1;
      vals[id] = fn(x, d);
    }
  return VolumeField(N, geom, std::move(vals), std::move(mask), profile);
}

void VolumeField::rebuild_channels() {
  chan_.clear();
  chan_.reserve(2 * N_ * N_);
  std::vector<double> buf(geom_.count());
  for (int r = 0; r < N_; ++r)
    for (int c = 0; c < N_; ++c) {
      for (std::size_t k = 0; k < nodes_.size(); ++k)
        buf[k] = nodes_[k](r, c).real();
      chan_.emplace_back(geom_, buf);
      for (std::size_t k = 0; k < nodes_.size(); ++k)
        buf[k] = nodes_[k](r, c).imag();
      chan_.emplace_back(geom_, buf);
    }
}

MatN VolumeField::value(const BicubicStencil& st) const {
  MatN m(N_, N_);
  int k = 0;
  for (int r = 0; r < N_; ++r)
    for (int c = 0; c < N_; ++c) {
      m(r, c) = cplx(chan_[k].value(st), chan_[k + 1].value(st));
      k += 2;
    }
  return m;
}

MatN VolumeField::value(const Vec2& x) const {
  // identically zero outside the lattice hull
  if (x[0] < geom_.x0 || x[1] < geom_.y0 ||
      x[0] > geom_.x0 + (geom_.nx - 1) * geom_.dx ||
      x[1] > geom_.y0 + (geom_.ny - 1) * geom_.dy)
    return mat_zero(N_);
  return value(make_stencil(geom_, x[0], x[1], false));
}

std::size_t VolumeField::masked_count() const {
  std::size_t n = 0;
  for (auto m : mask_) n += m;
  return n;
}

VolumeField gaussian_bump_potential(const ChartDomain& domain, int N,
                                    const Vec2& center, double sigma,
                                    const MatN& coeff, int nodes) {
  if (sigma <= 0.0) fail_input("gaussian bump: sigma must be > 0");
  auto geom = VolumeField::default_lattice(domain, nodes);
  return VolumeField::from_function(
      domain, N, geom, [&](const Vec2& x, double) {
        double g = std::exp(-(x - center).squaredNorm() / (sigma * sigma));
        return MatN(g * coeff);
      });
}

namespace {

// quintic smoothstep, C^2 at both ends
double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

}  // namespace

VolumeField random_smooth_potential(const ChartDomain& domain, int N,
                                    unsigned seed, int nodes, double scale) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double r_min = std::min(domain.semi_axis_x(), domain.semi_axis_y());
  double r_in = 0.45 * r_min;
  struct Bump {
    Vec2 c;
    double w;
    cplx a;
  };
  std::vector<std::vector<Bump>> bumps(N * N);
  for (auto& entry : bumps)
    for (int k = 0; k < 3; ++k) {
      double ang = 2.0 * M_PI * u01(gen);
      double rad = r_in * std::sqrt(u01(gen));
      entry.push_back({Vec2(rad * std::cos(ang), rad * std::sin(ang)),
                       0.18 + 0.12 * u01(gen),
                       scale * cplx(2.0 * u01(gen) - 1.0, 2.0 * u01(gen) - 1.0)});
    }
  double d0 = 0.10 * r_min, d1 = 0.30 * r_min;
  auto geom = VolumeField::default_lattice(domain, nodes);
  return VolumeField::from_function(
      domain, N, geom, [&](const Vec2& x, double dist) {
        double taper = smoothstep5((dist - d0) / (d1 - d0));
        MatN m(N, N);
        for (int r = 0; r < N; ++r)
          for (int c = 0; c < N; ++c) {
            cplx acc(0.0, 0.0);
            for (const auto& b : bumps[r * N + c])
              acc += b.a * std::exp(-(x - b.c).squaredNorm() / (b.w * b.w));
            m(r, c) = taper * acc;
          }
        return m;
      });
}

}  // namespace rayforge
