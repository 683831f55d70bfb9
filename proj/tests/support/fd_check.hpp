#pragma once

#include "fixture.hpp"

#include "wrinkle/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace wrinkle::testing {

struct FdErrors {
  double grad = 0.0, hess = 0.0, symmetry = 0.0;
  int samples = 0;
  double worst_r = 0.0;
};

inline double distance_to(const std::vector<double>& pts, double r) {
  double d = std::numeric_limits<double>::infinity();
  for (double p : pts) d = std::min(d, std::abs(p - r));
  return d;
}

// Central differences in Cartesian coordinates, at points at least 1e-4 from
// every breakpoint, with a step far below the local wrinkle period and the
// distance to the nearest breakpoint. The radial profile is a cubic spline,
// so the Hessian also jumps at its nodes: stencils never straddle one.
inline FdErrors fd_check(const Deformation& d, int count, std::uint64_t seed) {
  using std::numbers::pi;
  Sampler s(seed);
  FdErrors out;
  const auto bp = d.breakpoints();
  const auto& nodes = d.solution().r;
  const double r0 = d.solution().inner_radius(), r1 = d.solution().outer_radius();
  while (out.samples < count) {
    const double r = s.uniform(r0 + 1e-4, r1 - 1e-4), t = s.uniform(0.0, 2 * pi);
    const double gap = distance_to(bp, r), node_gap = distance_to(nodes, r);
    if (gap < 1e-4 || node_gap < 1e-6) continue;
    ++out.samples;
    const int K = std::max(1, d.section(r).frequency);
    const double step = std::min(1e-4 * std::min({2 * pi * r / K, gap, 1.0}), 0.5 * node_gap);
    const PointJet p = eval_deformation(d, r, t);
    const double x = r * std::cos(t), y = r * std::sin(t);
    auto at = [&](double X, double Y) { return eval_deformation(d, std::hypot(X, Y), std::atan2(Y, X)); };
    for (int c = 0; c < 2; ++c) {
      const double dx = c == 0 ? step : 0.0, dy = c == 1 ? step : 0.0;
      const PointJet pp = at(x + dx, y + dy), pm = at(x - dx, y - dy);
      const Eigen::Vector3d fd = (pp.u - pm.u) / (2 * step);
      const double eg = (fd - p.grad.col(c)).norm() / std::max(1.0, p.grad.col(c).norm());
      if (eg > out.grad) {
        out.grad = eg;
        out.worst_r = r;
      }
      const Eigen::Vector2d fdh((pp.grad(2, 0) - pm.grad(2, 0)) / (2 * step), (pp.grad(2, 1) - pm.grad(2, 1)) / (2 * step));
      out.hess = std::max(out.hess, (fdh - p.hess_u3.col(c)).norm() / std::max(1.0, p.hess_u3.col(c).norm()));
    }
    out.symmetry = std::max(out.symmetry, std::abs(p.hess_u3(0, 1) - p.hess_u3(1, 0)));
  }
  return out;
}

}  // namespace wrinkle::testing
