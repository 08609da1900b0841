#ifndef RAYFORGE_BEAMS_HPP_
#define RAYFORGE_BEAMS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "rayforge/types.hpp"

namespace rayforge {

// On-geodesic data of one beam line: the attenuation pairing (A . gdot)(s),
// the scalar weight c(s), the potential samples Q(gamma(s)) and the initial
// amplitude vector. Everything lives on a uniform grid over [a, b]; the
// coefficient callbacks are smooth and evaluable between nodes.
struct BeamLine {
  double a = 0.0, b = 1.0;
  int m = 2000;  // interval count
  int N = 1;
  std::function<MatN(double)> attenuation;
  std::function<cplx(double)> weight;
  std::function<MatN(double)> potential;
  VecN x0;

  double h() const { return (b - a) / m; }
  double s_at(int i) const { return a + i * h(); }
};

BeamLine beam_zero(int N = 1);
BeamLine beam_constant(const MatN& A, const MatN& Q, cplx weight,
                       const VecN& x0, double a = 0.0, double b = 2.0,
                       int m = 2000);
// smooth random coefficients (trig + gaussian mixtures), fixed seed
BeamLine beam_random(unsigned seed, int N = 2, double a = 0.0, double b = 2.0,
                     int m = 2000);

// fundamental solution of d/ds P - (A.gdot) P = 0, P(a) = Id (the
// on-geodesic convention; the transform modules integrate dP/ds + A P = 0)
std::vector<MatN> transport_P(const BeamLine& line);
// r' + c = 0, r(a) = 0
std::vector<cplx> weight_r(const BeamLine& line);
// d/ds u + c u - (A.gdot) u = 0, u(a) = x0
std::vector<VecN> solve_a00(const BeamLine& line);
// d/ds c1 - (A.gdot) c1 = Q P(s) x0, c1(a) = 0  (P integrated jointly)
std::vector<VecN> solve_c1(const BeamLine& line);

// direct quadrature of int_a^b P^{-1} Q P ds with P and its inverse from a
// joint integration (the inverse via the adjoint equation)
MatN weighted_integral_quadrature(const BeamLine& line);

struct RecoveredIntegral {
  VecN applied;  // P(b)^{-1} c1(b) for the line's own x0
  MatN matrix;   // columns assembled from the basis sweep x0 = e_1..e_N
};

// the recovery chain: solving for c1 and undoing the endpoint transport
// reproduces the weighted integral applied to x0
RecoveredIntegral recover_weighted_integral(const BeamLine& line);

struct BeamDefects {
  double a00_closed_form = 0.0;  // ODE vs e^r P x0
  double c1_closed_form = 0.0;   // ODE vs P int P^{-1} Q P x0
  double recovery = 0.0;         // P(b)^{-1} c1(b) vs integral * x0
  double r_ode = 0.0;            // RK4 r vs independent quadrature of -c
  double cocycle = 0.0;          // split-interval transport consistency
};

BeamDefects beam_verify(const BeamLine& line);

}  // namespace rayforge

#endif  // RAYFORGE_BEAMS_HPP_
