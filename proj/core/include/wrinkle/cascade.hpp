#pragma once

#include "wrinkle/interpolation.hpp"
#include "wrinkle/material.hpp"
#include "wrinkle/relaxed_solver.hpp"

#include <vector>

namespace wrinkle {

/// Thickest film the constructions accept: k = floor(h^{-1/2}) >= 4.
inline constexpr double kMaxThickness = 1.0 / 16.0;

/// k = floor(h^{-1/2}).
int base_wrinkle_count(double h);
/// N = ceil(-log2(h) / 2), the least N with 4^N >= 1 / h.
int doubling_depth(double h);
/// Throws DomainError unless 0 < h <= kMaxThickness.
void check_thickness(double h);

/// eps(r) = w(v'(r)) r / v(r) - 1 with its first two derivatives, from the
/// solution's spline.
Jet excess_jet(const RadialSolution& sol, const RelaxedDensity& model, double r);

struct CascadeBand {
  int n = 0;
  double start = 0.0;   // a_n = L - delta 4^-n
  double end = 0.0;     // a_{n+1}
  double length = 0.0;  // l_n
  int frequency = 0;    // k 2^n wrinkles around the circle
  double period = 0.0;  // w_n = 2 pi / (k 2^n)
  bool cutoff = false;  // last band: single mode, amplitude cut to zero at its end
};

struct CascadePlan {
  double thickness = 0.0;
  double free_boundary = 0.0;
  double delta = 0.0;
  int dyadic_level = 0;  // delta = (L - R_in) / 2^level
  int base_count = 0;    // k
  int depth = 0;         // N
  double slope_min = 0.0;  // c2: min of -eps' on (L - delta, L)
  double slope_max = 0.0;  // c1: max of -eps'
  double band_ratio = 0.0;  // smallest c with l_n / c <= eps <= c l_n on every band
  std::vector<CascadeBand> bands;  // n = 0..N

  double zone_start() const { return free_boundary - delta; }
  /// a_{N+1}: beyond this radius the map is planar.
  double cutoff_radius() const { return bands.back().end; }
};

/// Chooses delta as the largest (L - R_in) / 2^j, j >= 1, on which eps' stays
/// in [-c1, -c2] with c2 > 0 and c1 <= 4 c2, then lays out the bands.
/// Throws StructuralError if no such delta exists down to 2^-20.
CascadePlan plan_cascade(const RadialSolution& sol, const RelaxedDensity& model, double h);

}  // namespace wrinkle
