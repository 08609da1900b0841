#include "rayforge/connection.hpp"

#include <cmath>
#include <random>

#include "rayforge/errors.hpp"

namespace rayforge {

ConnectionData zero_connection(int N) {
  ConnectionData c;
  c.N = N;
  c.phi = [N](const Vec2&) { return mat_zero(N); };
  c.a_tilde = [N](const Vec2&) {
    return std::array<MatN, 2>{mat_zero(N), mat_zero(N)};
  };
  c.unitary = true;
  return c;
}

ConnectionData constant_diagonal_connection(const std::vector<cplx>& diag) {
  int N = static_cast<int>(diag.size());
  MatN m = mat_zero(N);
  for (int i = 0; i < N; ++i) m(i, i) = diag[i];
  return constant_connection(m);
}

ConnectionData constant_connection(const MatN& C) {
  ConnectionData c;
  c.N = static_cast<int>(C.rows());
  MatN copy = C;
  c.phi = [copy](const Vec2&) { return copy; };
  int N = c.N;
  c.a_tilde = [N](const Vec2&) {
    return std::array<MatN, 2>{mat_zero(N), mat_zero(N)};
  };
  c.unitary = (C + C.adjoint()).norm() < 1e-14;
  return c;
}

ConnectionData su2_gaussian_connection(double amplitude, double width,
                                       const Vec2& center) {
  if (width <= 0.0) fail_input("su2-gaussian connection: width must be > 0");
  const cplx I(0.0, 1.0);
  MatN s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  auto bump = [width](const Vec2& x, const Vec2& c0) {
    return std::exp(-(x - c0).squaredNorm() / (width * width));
  };
  Vec2 c1 = center + Vec2(0.15, -0.1);
  Vec2 c2 = center + Vec2(-0.1, 0.2);
  ConnectionData c;
  c.N = 2;
  c.phi = [=](const Vec2& x) { return MatN(I * amplitude * bump(x, center) * s3); };
  c.a_tilde = [=](const Vec2& x) {
    return std::array<MatN, 2>{MatN(I * 0.7 * amplitude * bump(x, c1) * s1),
                               MatN(I * 0.5 * amplitude * bump(x, c2) * s2)};
  };
  c.unitary = true;
  return c;
}

namespace {

struct MatrixChannels {
  GridGeom geom;
  int N;
  std::vector<BicubicGrid> re, im;  // one pair per matrix entry

  MatrixChannels(const GridGeom& g, int n,
                 const std::function<MatN(const Vec2&)>& sample)
      : geom(g), N(n) {
    std::vector<std::vector<double>> vre(N * N), vim(N * N);
    for (auto& v : vre) v.resize(geom.count());
    for (auto& v : vim) v.resize(geom.count());
    for (int j = 0; j < geom.ny; ++j)
      for (int i = 0; i < geom.nx; ++i) {
        MatN m = sample(geom.node(i, j));
        auto id = geom.index(i, j);
        for (int r = 0; r < N; ++r)
          for (int cidx = 0; cidx < N; ++cidx) {
            vre[r * N + cidx][id] = m(r, cidx).real();
            vim[r * N + cidx][id] = m(r, cidx).imag();
          }
      }
    re.reserve(N * N);
    im.reserve(N * N);
    for (int k = 0; k < N * N; ++k) {
      re.emplace_back(geom, std::move(vre[k]));
      im.emplace_back(geom, std::move(vim[k]));
    }
  }

  MatN value(const Vec2& x) const {
    auto st = make_stencil(geom, x[0], x[1], false);
    MatN m(N, N);
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        m(r, c) = cplx(re[r * N + c].value(st), im[r * N + c].value(st));
    return m;
  }
};

}  // namespace

ConnectionData connection_from_grid(
    const GridGeom& geom, int N, const std::function<MatN(const Vec2&)>& phi,
    const std::function<std::array<MatN, 2>(const Vec2&)>& a_tilde,
    bool unitary) {
  auto phi_ch = std::make_shared<MatrixChannels>(geom, N, phi);
  auto a1_ch = std::make_shared<MatrixChannels>(
      geom, N, [&](const Vec2& x) { return a_tilde(x)[0]; });
  auto a2_ch = std::make_shared<MatrixChannels>(
      geom, N, [&](const Vec2& x) { return a_tilde(x)[1]; });
  ConnectionData c;
  c.N = N;
  c.phi = [phi_ch](const Vec2& x) { return phi_ch->value(x); };
  c.a_tilde = [a1_ch, a2_ch](const Vec2& x) {
    return std::array<MatN, 2>{a1_ch->value(x), a2_ch->value(x)};
  };
  c.unitary = unitary;
  return c;
}

void check_unitary_flag(const ConnectionData& conn, const ChartDomain& domain,
                        int n_samples, unsigned seed) {
  if (!conn.unitary) return;
  std::mt19937_64 gen(seed);
  Vec2 lo, hi;
  domain.bbox(lo, hi);
  std::uniform_real_distribution<double> ux(lo[0], hi[0]), uy(lo[1], hi[1]);
  int used = 0;
  while (used < n_samples) {
    Vec2 x(ux(gen), uy(gen));
    if (!domain.inside(x)) continue;
    ++used;
    MatN p = conn.phi(x);
    if ((p + p.adjoint()).norm() >= 1e-12)
      fail_validation("connection flagged unitary but Phi is not skew-Hermitian");
    auto a = conn.a_tilde(x);
    for (int k = 0; k < 2; ++k)
      if ((a[k] + a[k].adjoint()).norm() >= 1e-12)
        fail_validation(
            "connection flagged unitary but A-tilde is not skew-Hermitian");
  }
}

MatN attenuation(const MagneticSystem& sys, const ConnectionData& conn,
                 const Vec2& x, const Vec2& v) {
  MatN p = conn.phi(x);
  auto a = conn.a_tilde(x);
  if (p.rows() != conn.N || a[0].rows() != conn.N)
    fail_input("attenuation: matrix dimension mismatch");
  double om = sys.omega_of(x, v);
  return MatN(p + a[0] * v[0] + a[1] * v[1] - p * om);
}

namespace {

// Joint RK4 step for (x, v, P[, R]) over one trace interval; the phase
// stages repeat flow_rhs so the step grid matches the trace.
void joint_step(const MagneticSystem& sys, const ConnectionData& conn,
                double ode_sign, double force_sign, double h, PhasePoint& p,
                MatN& P, MatN* R) {
  struct Stage {
    Vec2 dx, dv;
    MatN dP, dR;
  };
  auto eval = [&](const Vec2& x, const Vec2& v, const MatN& Pc, const MatN* Rc,
                  Stage& st) {
    flow_rhs(sys, x, v, force_sign, st.dx, st.dv);
    MatN att = attenuation(sys, conn, x, v);
    st.dP = ode_sign * att * Pc;
    if (Rc) st.dR = -ode_sign * (*Rc) * att;
  };
  Stage k1, k2, k3, k4;
  eval(p.x, p.v, P, R, k1);
  {
    MatN P2 = P + 0.5 * h * k1.dP;
    MatN R2;
    if (R) R2 = *R + 0.5 * h * k1.dR;
    eval(p.x + 0.5 * h * k1.dx, p.v + 0.5 * h * k1.dv, P2, R ? &R2 : nullptr,
         k2);
  }
  {
    MatN P3 = P + 0.5 * h * k2.dP;
    MatN R3;
    if (R) R3 = *R + 0.5 * h * k2.dR;
    eval(p.x + 0.5 * h * k2.dx, p.v + 0.5 * h * k2.dv, P3, R ? &R3 : nullptr,
         k3);
  }
  {
    MatN P4 = P + h * k3.dP;
    MatN R4;
    if (R) R4 = *R + h * k3.dR;
    eval(p.x + h * k3.dx, p.v + h * k3.dv, P4, R ? &R4 : nullptr, k4);
  }
  Vec2 nx = p.x + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  Vec2 nv = p.v + (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  p.x = nx;
  p.v = sys.g_normalize(nx, nv);
  P += (h / 6.0) * (k1.dP + 2.0 * k2.dP + 2.0 * k3.dP + k4.dP);
  if (R) *R += (h / 6.0) * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR);
}

void transport_impl(const MagneticSystem& sys, const GeodesicTrace& trace,
                    const ConnectionData& conn, TransportSign sign,
                    TransportMatrix& Pout, TransportMatrix* Rout) {
  if (trace.s.empty()) fail_input("parallel_transport: empty trace");
  double ode_sign = (sign == TransportSign::plus) ? -1.0 : 1.0;
  int N = conn.N;
  PhasePoint p = trace.at(0);
  MatN P = mat_id(N);
  MatN R = mat_id(N);
  Pout.P.clear();
  Pout.P.reserve(trace.size());
  Pout.P.push_back(P);
  if (Rout) {
    Rout->P.clear();
    Rout->P.reserve(trace.size());
    Rout->P.push_back(R);
  }
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    double h = trace.s[i + 1] - trace.s[i];
    if (h > 0.0)
      joint_step(sys, conn, ode_sign, trace.force_sign, h, p, P,
                 Rout ? &R : nullptr);
    Pout.P.push_back(P);
    if (Rout) Rout->P.push_back(R);
  }
}

}  // namespace

TransportMatrix parallel_transport(const MagneticSystem& sys,
                                   const GeodesicTrace& trace,
                                   const ConnectionData& conn,
                                   TransportSign sign) {
  TransportMatrix P;
  transport_impl(sys, trace, conn, sign, P, nullptr);
  return P;
}

void parallel_transport_pair(const MagneticSystem& sys,
                             const GeodesicTrace& trace,
                             const ConnectionData& conn, TransportMatrix& P,
                             TransportMatrix& R, TransportSign sign) {
  transport_impl(sys, trace, conn, sign, P, &R);
}

GeodesicTrace trace_to_param(const MagneticSystem& sys,
                             const PhasePoint& start, double s_target,
                             double h, double force_sign) {
  if (h <= 0.0 || s_target < 0.0)
    fail_input("trace_to_param: bad step or target");
  GeodesicTrace tr;
  tr.h = h;
  tr.force_sign = force_sign;
  PhasePoint p = start;
  p.v = sys.g_normalize(p.x, p.v);
  tr.s.push_back(0.0);
  tr.x.push_back(p.x);
  tr.v.push_back(p.v);
  double s = 0.0;
  while (s < s_target) {
    double step = std::min(h, s_target - s);
    p = flow_step(sys, p, step, force_sign);
    if (!sys.domain().inside_or_boundary(p.x))
      fail_input("trace_to_param: parameter outside the maximal interval");
    s += step;
    tr.s.push_back(s);
    tr.x.push_back(p.x);
    tr.v.push_back(p.v);
  }
  tr.exit_time = s;
  return tr;
}

double cocycle_defect(const MagneticSystem& sys, const ConnectionData& conn,
                      const PhasePoint& p, double s, double sprime, double h) {
  if (s < 0.0 || sprime < 0.0)
    fail_input("cocycle_defect: parameters must be nonnegative");
  auto whole = trace_to_param(sys, p, s + sprime, h);
  MatN lhs = parallel_transport(sys, whole, conn).back();

  auto first = trace_to_param(sys, p, s, h);
  MatN P1 = parallel_transport(sys, first, conn).back();
  PhasePoint mid = first.at(first.size() - 1);
  auto second = trace_to_param(sys, mid, sprime, h);
  MatN P2 = parallel_transport(sys, second, conn).back();

  return (lhs - P2 * P1).norm();
}

}  // namespace rayforge
