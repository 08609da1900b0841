#ifndef RAYFORGE_CONNECTION_HPP_
#define RAYFORGE_CONNECTION_HPP_

#include <array>
#include <functional>
#include <vector>

#include "rayforge/flow.hpp"
#include "rayforge/interp.hpp"
#include "rayforge/magnetic.hpp"
#include "rayforge/types.hpp"

namespace rayforge {

// Time-independent connection A-bar = Phi dt + A-tilde together with the
// derived effective pair (B, Phi), B = A-tilde - Phi omega. The attenuation
// acting on null directions is A(x,v) = Phi(x) + B_x(v).
struct ConnectionData {
  int N = 1;
  std::function<MatN(const Vec2&)> phi;
  std::function<std::array<MatN, 2>(const Vec2&)> a_tilde;
  bool unitary = false;
};

ConnectionData zero_connection(int N);
// Phi = diag(entries), A-tilde = 0
ConnectionData constant_diagonal_connection(const std::vector<cplx>& diag);
// Phi constant matrix, A-tilde = 0
ConnectionData constant_connection(const MatN& C);
// skew-Hermitian su(2) scene: Phi = i f sigma_3, A-tilde_k = i f_k sigma_k
// with Gaussian profiles f, f_k of the given amplitude/width around center
ConnectionData su2_gaussian_connection(double amplitude, double width,
                                       const Vec2& center);
// grid-backed realization: samples of Phi, A1, A2 on a lattice, interpolated
// bicubically entry by entry
ConnectionData connection_from_grid(
    const GridGeom& geom, int N, const std::function<MatN(const Vec2&)>& phi,
    const std::function<std::array<MatN, 2>(const Vec2&)>& a_tilde,
    bool unitary);

// verifies the skew-Hermitian invariant on random interior samples
void check_unitary_flag(const ConnectionData& conn, const ChartDomain& domain,
                        int n_samples = 64, unsigned seed = 1234);

// A(x,v) = Phi(x) + A-tilde_x(v) - Phi(x) * omega_x(v)
MatN attenuation(const MagneticSystem& sys, const ConnectionData& conn,
                 const Vec2& x, const Vec2& v);

// dP/ds + A P = 0 (the transform-side convention) or dP/ds - A P = 0 (the
// on-geodesic beam convention)
enum class TransportSign { plus, minus };

struct TransportMatrix {
  std::vector<MatN> P;  // aligned with the trace samples

  const MatN& front() const { return P.front(); }
  const MatN& back() const { return P.back(); }
};

// Fundamental solution along a trace, jointly re-integrating the phase flow
// on the trace's own step grid. With `inverse`, also returns R solving
// dR/ds - R A = 0, R(0) = Id, i.e. R = P^{-1} without matrix inversion.
TransportMatrix parallel_transport(const MagneticSystem& sys,
                                   const GeodesicTrace& trace,
                                   const ConnectionData& conn,
                                   TransportSign sign = TransportSign::plus);
void parallel_transport_pair(const MagneticSystem& sys,
                             const GeodesicTrace& trace,
                             const ConnectionData& conn, TransportMatrix& P,
                             TransportMatrix& R,
                             TransportSign sign = TransportSign::plus);

// trace of fixed parameter length (no boundary stop); fails when the path
// leaves the domain
GeodesicTrace trace_to_param(const MagneticSystem& sys,
                             const PhasePoint& start, double s_target,
                             double h, double force_sign = 1.0);

// Frobenius norm of P(s+s',p) - P(s',phi_s(p)) P(s,p)
double cocycle_defect(const MagneticSystem& sys, const ConnectionData& conn,
                      const PhasePoint& p, double s, double sprime,
                      double h = 1e-3);

}  // namespace rayforge

#endif  // RAYFORGE_CONNECTION_HPP_
