#include "rayforge/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "rayforge/errors.hpp"
#include "rayforge/quadrature.hpp"

namespace rayforge {

ConformalFactor ConformalFactor::constant(double k) {
  if (k <= 0.0) fail_input("conformal factor must be positive");
  return {[k](double, const Vec2&) { return k; }};
}

ConformalFactor ConformalFactor::spatial_gaussian(double a, double width,
                                                  const Vec2& center) {
  if (a <= -1.0) fail_input("spatial gaussian factor needs a > -1");
  if (width <= 0.0) fail_input("spatial gaussian factor needs width > 0");
  return {[=](double, const Vec2& x) {
    return 1.0 + a * std::exp(-(x - center).squaredNorm() / (width * width));
  }};
}

TraceInterpolant::TraceInterpolant(const MagneticSystem& sys,
                                   const GeodesicTrace& trace)
    : s_(trace.s), x_(trace.x), v_(trace.v) {
  if (!trace.has_lift())
    fail_input("TraceInterpolant: trace needs a null lift");
  t_ = trace.t;
  vdot_.resize(s_.size());
  tdot_.resize(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) {
    Vec2 dx, dv;
    flow_rhs(sys, x_[i], v_[i], trace.force_sign, dx, dv);
    vdot_[i] = dv;
    tdot_[i] = 1.0 - sys.omega_of(x_[i], v_[i]);
  }
}

std::size_t TraceInterpolant::interval(double s, double& t) const {
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  std::size_t i = (it == s_.begin()) ? 0 : (it - s_.begin() - 1);
  if (i >= s_.size() - 1) i = s_.size() - 2;
  double w = s_[i + 1] - s_[i];
  t = w > 0.0 ? (s - s_[i]) / w : 0.0;
  return i;
}

namespace {
inline void hermite_w(double t, double w[4]) {
  double t2 = t * t, t3 = t2 * t;
  w[0] = 2 * t3 - 3 * t2 + 1;
  w[1] = t3 - 2 * t2 + t;
  w[2] = -2 * t3 + 3 * t2;
  w[3] = t3 - t2;
}
}  // namespace

Vec2 TraceInterpolant::position(double s) const {
  double t;
  auto i = interval(s, t);
  double dt = s_[i + 1] - s_[i];
  double w[4];
  hermite_w(t, w);
  return w[0] * x_[i] + w[1] * dt * v_[i] + w[2] * x_[i + 1] +
         w[3] * dt * v_[i + 1];
}

Vec2 TraceInterpolant::velocity(double s) const {
  double t;
  auto i = interval(s, t);
  double dt = s_[i + 1] - s_[i];
  double w[4];
  hermite_w(t, w);
  return w[0] * v_[i] + w[1] * dt * vdot_[i] + w[2] * v_[i + 1] +
         w[3] * dt * vdot_[i + 1];
}

double TraceInterpolant::time(double s) const {
  double t;
  auto i = interval(s, t);
  double dt = s_[i + 1] - s_[i];
  double w[4];
  hermite_w(t, w);
  return w[0] * t_[i] + w[1] * dt * tdot_[i] + w[2] * t_[i + 1] +
         w[3] * dt * tdot_[i + 1];
}

Reparametrization reparametrize(const MagneticSystem& sys,
                                const GeodesicTrace& trace,
                                const ConformalFactor& c) {
  if (!trace.has_lift()) fail_input("reparametrize: trace needs a null lift");
  TraceInterpolant interp(sys, trace);
  const double kappa = trace.exit_time;
  const double K = c.value(interp.time(0.0), interp.position(0.0));
  if (K <= 1e-12) fail_input("conformal factor not bounded below on trace");

  auto hprime_at = [&](double hval) {
    double cv = c.value(interp.time(hval), interp.position(hval));
    if (cv <= 1e-12) fail_input("conformal factor not bounded below on trace");
    double r = K / cv;
    return r * r;
  };
  auto rk4 = [&](double hval, double step) {
    double k1 = hprime_at(hval);
    double k2 = hprime_at(hval + 0.5 * step * k1);
    double k3 = hprime_at(hval + 0.5 * step * k2);
    double k4 = hprime_at(hval + step * k3);
    return hval + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
  };

  Reparametrization rep;
  double step = trace.h;
  double st = 0.0, hval = 0.0;
  auto push = [&](double stv, double hv) {
    rep.s_tilde.push_back(stv);
    rep.h.push_back(hv);
    rep.hprime.push_back(hprime_at(hv));
    rep.x.push_back(interp.position(hv));
    rep.v.push_back(interp.velocity(hv));
    rep.t.push_back(interp.time(hv));
  };
  push(0.0, 0.0);
  for (;;) {
    double hnext = rk4(hval, step);
    if (hnext >= kappa) {
      // refine the final substep so that h lands on kappa
      double lo = 0.0, hi = step;
      for (int it = 0; it < 60 && (hi - lo) > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        (rk4(hval, mid) >= kappa ? hi : lo) = mid;
      }
      hval = std::min(rk4(hval, hi), kappa);
      st += hi;
      push(st, hval);
      break;
    }
    hval = hnext;
    st += step;
    push(st, hval);
  }
  return rep;
}

ConformalCheck conformal_lightray_check(const MagneticSystem& sys,
                                        const ConnectionData& conn,
                                        const VolumeField& Q,
                                        const ConformalFactor& c,
                                        const PhasePoint& p, double t0,
                                        const RayTransformOptions& opt) {
  ConformalCheck out;
  out.lhs = lightray_transform(sys, conn, Q, t0, p, opt);

  FlowOptions fo;
  fo.h = opt.h;
  fo.s_max = opt.s_max;
  GeodesicTrace trace = integrate_magnetic_geodesic(sys, p, fo);
  null_lift(sys, trace, t0);
  auto rep = reparametrize(sys, trace, c);

  // transport along the reparametrized curve, dP~/ds~ = -h' A(gamma(h)) P~
  int N = conn.N;
  std::vector<MatN> Pt(rep.s_tilde.size());
  Pt[0] = mat_id(N);
  TraceInterpolant interp(sys, trace);
  auto att_at = [&](double hval) {
    return attenuation(sys, conn, interp.position(hval), interp.velocity(hval));
  };
  const double K = c.value(interp.time(0.0), interp.position(0.0));
  auto hp_at = [&](double hval) {
    double cv = c.value(interp.time(hval), interp.position(hval));
    double r = K / cv;
    return r * r;
  };
  for (std::size_t i = 0; i + 1 < rep.s_tilde.size(); ++i) {
    double step = rep.s_tilde[i + 1] - rep.s_tilde[i];
    // joint RK4 in (h, P~)
    double h0 = rep.h[i];
    MatN P0 = Pt[i];
    auto rhs = [&](double hval, const MatN& P, double& dh, MatN& dP) {
      double hp = hp_at(hval);
      dh = hp;
      dP = -hp * (att_at(hval) * P);
    };
    double dh1;
    MatN dP1;
    rhs(h0, P0, dh1, dP1);
    double dh2;
    MatN dP2;
    rhs(h0 + 0.5 * step * dh1, MatN(P0 + 0.5 * step * dP1), dh2, dP2);
    double dh3;
    MatN dP3;
    rhs(h0 + 0.5 * step * dh2, MatN(P0 + 0.5 * step * dP2), dh3, dP3);
    double dh4;
    MatN dP4;
    rhs(h0 + step * dh3, MatN(P0 + step * dP3), dh4, dP4);
    Pt[i + 1] = P0 + (step / 6.0) * (dP1 + 2.0 * dP2 + 2.0 * dP3 + dP4);
  }

  // invariance P o h = P~ (the proof's ODE-uniqueness step), checked against
  // an independent transport along the base parametrization
  TransportMatrix Pbase, Rbase;
  parallel_transport_pair(sys, trace, conn, Pbase, Rbase);
  {
    // Hermite interpolation of the base transport at the h sample points
    std::vector<MatN> Pdot(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i)
      Pdot[i] = -(attenuation(sys, conn, trace.x[i], trace.v[i]) * Pbase.P[i]);
    auto p_of = [&](double s) {
      auto it = std::upper_bound(trace.s.begin(), trace.s.end(), s);
      std::size_t i = (it == trace.s.begin()) ? 0 : (it - trace.s.begin() - 1);
      if (i >= trace.s.size() - 1) i = trace.s.size() - 2;
      double dt = trace.s[i + 1] - trace.s[i];
      double u = dt > 0.0 ? (s - trace.s[i]) / dt : 0.0;
      double w[4];
      double u2 = u * u, u3 = u2 * u;
      w[0] = 2 * u3 - 3 * u2 + 1;
      w[1] = u3 - 2 * u2 + u;
      w[2] = -2 * u3 + 3 * u2;
      w[3] = u3 - u2;
      return MatN(w[0] * Pbase.P[i] + w[1] * dt * Pdot[i] +
                  w[2] * Pbase.P[i + 1] + w[3] * dt * Pdot[i + 1]);
    };
    for (std::size_t i = 0; i < rep.h.size(); ++i)
      out.transport_invariance =
          std::max(out.transport_invariance, (p_of(rep.h[i]) - Pt[i]).norm());
  }

  // RHS quadrature: c(gamma(0))^2 int P~^{-1} (Q/c^2)(gamma~) P~ h' ds~
  std::vector<MatN> f(rep.s_tilde.size());
  for (std::size_t i = 0; i < rep.s_tilde.size(); ++i) {
    double cv = c.value(rep.t[i], rep.x[i]);
    MatN q = Q.value_t(rep.t[i], rep.x[i]) / (cv * cv);
    MatN Pinv = Pt[i].inverse();
    f[i] = rep.hprime[i] * (Pinv * q * Pt[i]);
  }
  out.rhs = K * K * integral(rep.s_tilde, f);
  out.defect = (out.lhs - out.rhs).norm();
  return out;
}

}  // namespace rayforge
