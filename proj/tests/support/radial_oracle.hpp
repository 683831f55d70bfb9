#pragma once

// Shooting solution of the radial problem for the incompressible neo-Hookean
// sheet, written from the stress equations alone: on the relaxed side the
// hoop stress vanishes, so r sigma_r = T_in R_in and v' = H^{-1}(T_in R_in / r);
// past the free boundary (r sigma_r)' = d2 f(v', v / r). The unknown v(R_in)
// is found by bisection on sigma_r(R_out) = T_out. Shares no code with the
// library.

#include <cmath>
#include <algorithm>
#include <numbers>

namespace wrinkle::testing {

struct RadialOracle {
  double v_inner = 0.0;
  double free_boundary = 0.0;      // NaN when there is no relaxed region
  double relaxed_energy = 0.0;     // 2 pi (int r f_r dr + R_in T_in v(R_in) - R_out T_out v(R_out))
  double excess_slope_at_L = 0.0;  // d/dr (w(v') - v / r) at L-
  double planar_gap = 0.0;         // 2 pi int_{R_in}^{L} r (f(v', v/r) - f_r) dr
  double sigma_out_error = 0.0;
};

namespace oracle_detail {

inline double f(double a, double b) { return a * a + b * b + 1.0 / (a * a * b * b) - 3.0; }
inline double f1(double a, double b) { return 2.0 * a - 2.0 / (a * a * a * b * b); }
inline double f2(double a, double b) { return 2.0 * b - 2.0 / (a * a * b * b * b); }
inline double width(double a) { return 1.0 / std::sqrt(a); }
/// Relaxed density on the wrinkled branch, f(a, a^{-1/2}).
inline double f_wrinkled(double a) { return a * a + 2.0 / a - 3.0; }

/// Inverse of H(a) = 2a - 2/a^2 on a > 1.
inline double uniaxial_inverse(double s) {
  double x = 1.5;
  for (int i = 0; i < 60; ++i) {
    const double step = (2.0 * x - 2.0 / (x * x) - s) / (2.0 + 4.0 / (x * x * x));
    x -= step;
    if (std::abs(step) < 1e-16 * x) break;
  }
  return x;
}

/// v' with d1 f(v', y) = s.
inline double taut_slope(double s, double y) {
  double x = std::max(1.0, y);
  for (int i = 0; i < 100; ++i) {
    const double step = (f1(x, y) - s) / (2.0 + 6.0 / (x * x * x * x * y * y));
    double next = x - step;
    if (next <= 0.1) next = 0.5 * (x + 0.1);
    if (std::abs(next - x) < 1e-16 * x) return next;
    x = next;
  }
  return x;
}

struct State {
  double r, v, q;  // q = r sigma_r
};

inline double taut_rhs_v(const State& s) { return taut_slope(s.q / s.r, s.v / s.r); }

/// One RK4 step of the taut system; adds the Simpson energy of the step to e.
inline State taut_step(const State& s, double h, double& e) {
  auto deriv = [](const State& x, double& dq) {
    const double dv = taut_rhs_v(x);
    dq = f2(dv, x.v / x.r);
    return dv;
  };
  double a1, a2, a3, a4;
  const double k1 = deriv(s, a1);
  const State m1{s.r + h / 2, s.v + h / 2 * k1, s.q + h / 2 * a1};
  const double k2 = deriv(m1, a2);
  const State m2{s.r + h / 2, s.v + h / 2 * k2, s.q + h / 2 * a2};
  const double k3 = deriv(m2, a3);
  const State e3{s.r + h, s.v + h * k3, s.q + h * a3};
  const double k4 = deriv(e3, a4);
  const State out{s.r + h, s.v + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4), s.q + h / 6 * (a1 + 2 * a2 + 2 * a3 + a4)};
  const State mid{s.r + h / 2, s.v + h / 4 * (k1 + k2), s.q + h / 4 * (a1 + a2)};
  auto dens = [](const State& x) { return x.r * f(taut_rhs_v(x), x.v / x.r); };
  e += h / 6 * (dens(s) + 4 * dens(mid) + dens(out));
  return out;
}

/// Relaxed phase from r0 to r1: v by Simpson on v' = H^{-1}(c / r); returns v(r1).
inline double relaxed_advance(double c, double r0, double v0, double r1, int sub, double* energy, double* gap) {
  const double h = (r1 - r0) / sub;
  double v = v0;
  for (int i = 0; i < sub; ++i) {
    const double a = r0 + i * h;
    const double da = uniaxial_inverse(c / a), dm = uniaxial_inverse(c / (a + h / 2)),
                 db = uniaxial_inverse(c / (a + h));
    const double vm = v + h / 24 * (5 * da + 8 * dm - db);
    const double vb = v + h / 6 * (da + 4 * dm + db);
    if (energy) *energy += h / 6 * (a * f_wrinkled(da) + 4 * (a + h / 2) * f_wrinkled(dm) + (a + h) * f_wrinkled(db));
    if (gap) {
      auto g = [](double r, double dv, double vv) { return r * (f(dv, vv / r) - f_wrinkled(dv)); };
      *gap += h / 6 * (g(a, da, v) + 4 * g(a + h / 2, dm, vm) + g(a + h, db, vb));
    }
    v = vb;
  }
  return v;
}

inline RadialOracle shoot(double v0, double r_in, double r_out, double t_in, double t_out, int steps) {
  using std::numbers::pi;
  const double c = t_in * r_in;
  RadialOracle out;
  out.v_inner = v0;
  out.free_boundary = std::nan("");
  double energy = 0.0, gap = 0.0;
  State s{r_in, v0, c};
  const double h = (r_out - r_in) / steps;
  auto relaxed_gap = [&](double r, double v) { return width(uniaxial_inverse(c / r)) - v / r; };

  // Relaxed phase while v / r < w(v').
  if (relaxed_gap(r_in, v0) > 0.0) {
    while (s.r < r_out - 1e-14) {
      const double r1 = std::min(s.r + h, r_out);
      const double v1 = relaxed_advance(c, s.r, s.v, r1, 4, nullptr, nullptr);
      if (relaxed_gap(r1, v1) > 0.0) {
        relaxed_advance(c, s.r, s.v, r1, 4, &energy, &gap);
        s = {r1, v1, c};
        continue;
      }
      double a = 0.0, b = r1 - s.r;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        (relaxed_gap(s.r + m, relaxed_advance(c, s.r, s.v, s.r + m, 16, nullptr, nullptr)) > 0.0 ? a : b) = m;
      }
      const double L = s.r + 0.5 * (a + b);
      const double vL = relaxed_advance(c, s.r, s.v, L, 16, &energy, &gap);
      const double dL = uniaxial_inverse(c / L);
      const double e = 1e-6;
      const double ddv = (uniaxial_inverse(c / (L + e)) - uniaxial_inverse(c / (L - e))) / (2 * e);
      out.free_boundary = L;
      out.excess_slope_at_L = -0.5 * std::pow(dL, -1.5) * ddv - (dL - vL / L) / L;
      s = {L, vL, c};
      break;
    }
  }
  // Taut phase.
  while (s.r < r_out - 1e-14) {
    const double step = std::min(h, r_out - s.r);
    s = taut_step(s, step, energy);
  }
  out.sigma_out_error = s.q / r_out - t_out;
  out.relaxed_energy = 2 * pi * (energy + r_in * t_in * v0 - r_out * t_out * s.v);
  out.planar_gap = 2 * pi * gap;
  return out;
}

}  // namespace oracle_detail

/// Bisection on v(R_in) in [lo, hi]; sigma_r(R_out) increases with v(R_in).
inline RadialOracle solve_by_shooting(double r_in, double r_out, double t_in, double t_out, int steps = 4000,
                                      double lo = 0.3, double hi = 3.0) {
  for (int it = 0; it < 60; ++it) {
    const double m = 0.5 * (lo + hi);
    (oracle_detail::shoot(m, r_in, r_out, t_in, t_out, steps).sigma_out_error > 0.0 ? hi : lo) = m;
  }
  return oracle_detail::shoot(0.5 * (lo + hi), r_in, r_out, t_in, t_out, steps);
}

}  // namespace wrinkle::testing
