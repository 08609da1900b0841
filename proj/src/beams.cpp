#include "rayforge/beams.hpp"

#include <cmath>
#include <random>

#include "rayforge/errors.hpp"
#include "rayforge/quadrature.hpp"

namespace rayforge {

BeamLine beam_zero(int N) {
  BeamLine l;
  l.N = N;
  l.attenuation = [N](double) { return mat_zero(N); };
  l.weight = [](double) { return cplx(0.0, 0.0); };
  l.potential = [N](double) { return mat_zero(N); };
  l.x0 = VecN::Zero(N);
  l.x0[0] = 1.0;
  return l;
}

BeamLine beam_constant(const MatN& A, const MatN& Q, cplx weight,
                       const VecN& x0, double a, double b, int m) {
  BeamLine l;
  l.a = a;
  l.b = b;
  l.m = m;
  l.N = static_cast<int>(A.rows());
  MatN Ac = A, Qc = Q;
  l.attenuation = [Ac](double) { return Ac; };
  l.weight = [weight](double) { return weight; };
  l.potential = [Qc](double) { return Qc; };
  l.x0 = x0;
  return l;
}

BeamLine beam_random(unsigned seed, int N, double a, double b, int m) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rmat = [&](double scale) {
    MatN mat(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) mat(i, j) = scale * cplx(u(gen), u(gen));
    return mat;
  };
  // A(s) = M0 + M1 sin(w1 s + p1) + M2 exp(-(s-c)^2/w^2), similarly Q
  struct Coeffs {
    MatN m0, m1, m2;
    double w1, p1, c, w;
  };
  auto mk = [&](double scale) {
    Coeffs co{rmat(scale), rmat(scale), rmat(scale),
              1.0 + 1.5 * std::abs(u(gen)), 3.0 * u(gen),
              a + (b - a) * (0.3 + 0.4 * std::abs(u(gen))),
              0.3 + 0.4 * std::abs(u(gen))};
    return co;
  };
  Coeffs ca = mk(0.6), cq = mk(1.0);
  auto eval = [](const Coeffs& co, double s) {
    double g = std::exp(-(s - co.c) * (s - co.c) / (co.w * co.w));
    return MatN(co.m0 + std::sin(co.w1 * s + co.p1) * co.m1 + g * co.m2);
  };
  double cw1 = 1.0 + std::abs(u(gen)), cp1 = u(gen);
  cplx c0(0.4 * u(gen), 0.4 * u(gen)), c1(0.4 * u(gen), 0.4 * u(gen));

  BeamLine l;
  l.a = a;
  l.b = b;
  l.m = m;
  l.N = N;
  l.attenuation = [=](double s) { return eval(ca, s); };
  l.weight = [=](double s) { return c0 + c1 * std::sin(cw1 * s + cp1); };
  l.potential = [=](double s) { return eval(cq, s); };
  l.x0 = VecN::Zero(N);
  for (int i = 0; i < N; ++i) l.x0[i] = cplx(u(gen), u(gen));
  return l;
}

namespace {

// RK4 over the uniform line grid for a generic linear-algebra state
template <typename State, typename Rhs>
std::vector<State> rk4_line(const BeamLine& line, State y0, const Rhs& rhs) {
  std::vector<State> out;
  out.reserve(line.m + 1);
  out.push_back(y0);
  double h = line.h();
  State y = y0;
  for (int i = 0; i < line.m; ++i) {
    double s = line.s_at(i);
    State k1 = rhs(s, y);
    State k2 = rhs(s + 0.5 * h, State(y + 0.5 * h * k1));
    State k3 = rhs(s + 0.5 * h, State(y + 0.5 * h * k2));
    State k4 = rhs(s + h, State(y + h * k3));
    y = State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    out.push_back(y);
  }
  return out;
}

}  // namespace

std::vector<MatN> transport_P(const BeamLine& line) {
  return rk4_line(line, MatN(mat_id(line.N)), [&](double s, const MatN& P) {
    return MatN(line.attenuation(s) * P);
  });
}

std::vector<cplx> weight_r(const BeamLine& line) {
  std::vector<cplx> out;
  out.reserve(line.m + 1);
  cplx r(0.0, 0.0);
  out.push_back(r);
  double h = line.h();
  for (int i = 0; i < line.m; ++i) {
    double s = line.s_at(i);
    cplx k1 = -line.weight(s);
    cplx k2 = -line.weight(s + 0.5 * h);
    cplx k4 = -line.weight(s + h);
    r += (h / 6.0) * (k1 + 4.0 * k2 + k4);
    out.push_back(r);
  }
  return out;
}

std::vector<VecN> solve_a00(const BeamLine& line) {
  return rk4_line(line, VecN(line.x0), [&](double s, const VecN& u) {
    return VecN(line.attenuation(s) * u - line.weight(s) * u);
  });
}

std::vector<VecN> solve_c1(const BeamLine& line) {
  // joint state (P, c1) packed side by side in an N x (N+1) matrix
  using Joint = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0,
                              kMaxFiberDim, kMaxFiberDim + 1>;
  int N = line.N;
  Joint y0(N, N + 1);
  y0.leftCols(N) = mat_id(N);
  y0.col(N) = VecN::Zero(N);
  auto states = rk4_line(line, y0, [&](double s, const Joint& y) {
    MatN A = line.attenuation(s);
    Joint d(N, N + 1);
    d.leftCols(N) = A * y.leftCols(N);
    d.col(N) = A * y.col(N) + line.potential(s) * (y.leftCols(N) * line.x0);
    return d;
  });
  std::vector<VecN> out;
  out.reserve(states.size());
  for (const auto& st : states) out.push_back(VecN(st.col(line.N)));
  return out;
}

MatN weighted_integral_quadrature(const BeamLine& line) {
  // joint (P, R): P' = A P, R' = -R A so that R = P^{-1}
  using Joint = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0,
                              kMaxFiberDim, 2 * kMaxFiberDim>;
  int N = line.N;
  Joint y0(N, 2 * N);
  y0.leftCols(N) = mat_id(N);
  y0.rightCols(N) = mat_id(N);
  auto states = rk4_line(line, y0, [&](double s, const Joint& y) {
    MatN A = line.attenuation(s);
    Joint d(N, 2 * N);
    d.leftCols(N) = A * y.leftCols(N);
    d.rightCols(N) = -(y.rightCols(N) * A);
    return d;
  });
  std::vector<double> svals(states.size());
  std::vector<MatN> f(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    svals[i] = line.s_at(static_cast<int>(i));
    MatN P = states[i].leftCols(N);
    MatN R = states[i].rightCols(N);
    f[i] = R * line.potential(svals[i]) * P;
  }
  return integral(svals, f);
}

RecoveredIntegral recover_weighted_integral(const BeamLine& line) {
  int N = line.N;
  if (line.x0.size() != N || line.x0.norm() == 0.0)
    fail_input("recover_weighted_integral: x0 must be nonzero");
  auto P = transport_P(line);
  MatN Pb_inv = P.back().inverse();
  RecoveredIntegral out;
  out.matrix = MatN(N, N);
  for (int j = 0; j < N; ++j) {
    BeamLine basis = line;
    basis.x0 = VecN::Zero(N);
    basis.x0[j] = 1.0;
    auto c1 = solve_c1(basis);
    out.matrix.col(j) = Pb_inv * c1.back();
  }
  out.applied = out.matrix * line.x0;
  return out;
}

BeamDefects beam_verify(const BeamLine& line) {
  BeamDefects d;
  auto P = transport_P(line);
  auto r = weight_r(line);
  auto a00 = solve_a00(line);
  auto c1 = solve_c1(line);

  for (std::size_t i = 0; i < P.size(); ++i) {
    VecN closed = std::exp(r[i]) * (P[i] * line.x0);
    d.a00_closed_form = std::max(d.a00_closed_form, (a00[i] - closed).norm());
  }

  // r against an independent cumulative quadrature of -c
  {
    std::vector<double> svals(line.m + 1);
    std::vector<cplx> w(line.m + 1);
    for (int i = 0; i <= line.m; ++i) {
      svals[i] = line.s_at(i);
      w[i] = -line.weight(svals[i]);
    }
    auto cum = cumulative_integral(svals, w);
    for (std::size_t i = 0; i < cum.size(); ++i)
      d.r_ode = std::max(d.r_ode, std::abs(cum[i] - r[i]));
  }

  MatN integ = weighted_integral_quadrature(line);
  d.c1_closed_form = (c1.back() - P.back() * (integ * line.x0)).norm();

  auto rec = recover_weighted_integral(line);
  d.recovery = (rec.applied - integ * line.x0).norm();

  // split-interval cocycle of the line transport
  {
    BeamLine first = line;
    first.b = 0.5 * (line.a + line.b);
    first.m = line.m / 2;
    BeamLine second = line;
    second.a = first.b;
    second.m = line.m - first.m;
    auto P1 = transport_P(first);
    auto P2 = transport_P(second);
    d.cocycle = (P.back() - P2.back() * P1.back()).norm();
  }
  return d;
}

}  // namespace rayforge
