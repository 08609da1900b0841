#ifndef RAYFORGE_VOLUME_HPP_
#define RAYFORGE_VOLUME_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "rayforge/domain.hpp"
#include "rayforge/interp.hpp"
#include "rayforge/types.hpp"

namespace rayforge {

// Temporal factor of a separable time-dependent potential Q(t,x) =
// profile(t) * q(x).
struct TimeProfile {
  enum class Kind { none, separable, spline };
  Kind kind = Kind::none;
  double tau = 0.0;       // separable: e^{i tau t}
  double t_center = 0.0;  // spline bump parameters
  double t_width = 1.0;

  bool time_dependent() const { return kind != Kind::none; }
  cplx eval(double t) const {
    switch (kind) {
      case Kind::none:
        return {1.0, 0.0};
      case Kind::separable:
        return std::polar(1.0, tau * t);
      case Kind::spline: {
        double u = (t - t_center) / t_width;
        if (std::abs(u) >= 1.0) return {0.0, 0.0};
        double w = 1.0 - u * u;
        return {w * w * w, 0.0};
      }
    }
    return {1.0, 0.0};
  }
};

// Matrix-valued potential on a node lattice over the bounding box of M,
// bicubic per entry, supported strictly inside the domain (mask keeps a
// two-cell standoff from the boundary).
class VolumeField {
 public:
  VolumeField() = default;
  VolumeField(int N, GridGeom geom, std::vector<MatN> node_values,
              std::vector<std::uint8_t> mask, TimeProfile profile = {});

  static GridGeom default_lattice(const ChartDomain& domain, int nodes = 128,
                                  int pad_cells = 3);

  // Samples fn at unmasked nodes; fn receives the node position and its
  // Euclidean distance to the boundary (for tapers).
  static VolumeField from_function(
      const ChartDomain& domain, int N, const GridGeom& geom,
      const std::function<MatN(const Vec2&, double)>& fn,
      TimeProfile profile = {});

  MatN value(const Vec2& x) const;
  MatN value(const BicubicStencil& st) const;
  MatN value_t(double t, const Vec2& x) const {
    return MatN(profile_.eval(t) * value(x));
  }

  int fiber_dim() const { return N_; }
  const GridGeom& geom() const { return geom_; }
  const TimeProfile& profile() const { return profile_; }
  void set_profile(const TimeProfile& p) { profile_ = p; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  const std::vector<MatN>& node_values() const { return nodes_; }
  std::size_t masked_count() const;

 private:
  void rebuild_channels();

  int N_ = 1;
  GridGeom geom_;
  TimeProfile profile_;
  std::vector<MatN> nodes_;
  std::vector<std::uint8_t> mask_;
  std::vector<BicubicGrid> chan_;  // 2 N^2 scalar channels (re, im)
};

// q(x) = exp(-|x-c|^2/sigma^2) * coeff
VolumeField gaussian_bump_potential(const ChartDomain& domain, int N,
                                    const Vec2& center, double sigma,
                                    const MatN& coeff, int nodes = 128);

// Smooth random matrix field: a few complex Gaussian bumps per entry, times
// a C^2 taper vanishing near the boundary so the support is honestly inside.
VolumeField random_smooth_potential(const ChartDomain& domain, int N,
                                    unsigned seed, int nodes = 128,
                                    double scale = 1.0);

}  // namespace rayforge

#endif  // RAYFORGE_VOLUME_HPP_
