#ifndef RAYFORGE_TYPES_HPP_
#define RAYFORGE_TYPES_HPP_

#include <complex>

#include <Eigen/Dense>

namespace rayforge {

using cplx = std::complex<double>;

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Matrix fiber dimension is a runtime quantity but bounded so that the
// hot ODE loops never touch the heap.
inline constexpr int kMaxFiberDim = 4;

using MatN = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0,
                           kMaxFiberDim, kMaxFiberDim>;
using VecN = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxFiberDim, 1>;

inline MatN mat_id(int n) { return MatN::Identity(n, n); }
inline MatN mat_zero(int n) { return MatN::Zero(n, n); }

inline double frob_norm(const MatN& m) { return m.norm(); }

}  // namespace rayforge

#endif  // RAYFORGE_TYPES_HPP_
