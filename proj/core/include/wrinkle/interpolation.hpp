#pragma once

#include <span>
#include <vector>

namespace wrinkle {

/// Value and first two derivatives of a scalar function of one variable.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Piecewise cubic Hermite interpolant on strictly increasing nodes. C^1;
/// the second derivative is piecewise linear and may jump at nodes.
class CubicHermite {
public:
  CubicHermite() = default;
  CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> slope);

  Jet eval(double t) const;
  /// Third derivative, constant on each interval.
  double third(double t) const;
  double operator()(double t) const { return eval(t).value; }

  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& slopes() const { return d_; }
  bool empty() const { return x_.empty(); }

  /// Index of the interval [x_i, x_{i+1}] containing t (clamped).
  std::size_t interval(double t) const;

private:
  std::vector<double> x_, y_, d_;
  std::vector<double> c2_, c3_;
};

/// Fritsch-Carlson monotone slopes.
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y);

/// Second-order three-point slopes (parabola through neighbours; one-sided at ends).
std::vector<double> parabolic_slopes(std::span<const double> x, std::span<const double> y);

/// End condition of a cubic spline: zero second derivative, or a prescribed slope.
struct SplineEnd {
  bool clamped = false;
  double slope = 0.0;

  static SplineEnd natural() { return {}; }
  static SplineEnd clamp(double s) { return {true, s}; }
};

/// Nodal slopes of the C^2 cubic spline through (x, y) with the given end conditions.
std::vector<double> spline_slopes(std::span<const double> x, std::span<const double> y, SplineEnd left,
                                  SplineEnd right);

/// Slopes of the natural cubic spline (zero second derivative at both ends).
std::vector<double> natural_spline_slopes(std::span<const double> x, std::span<const double> y);

/// Clamped spline with end slopes from one-sided four-point differences.
std::vector<double> clamped_spline_slopes(std::span<const double> x, std::span<const double> y);

/// Quintic smoothstep on [0, 1]: 0 -> 1 with vanishing first and second
/// derivatives at both ends. Clamped outside.
Jet smoothstep5(double s);

/// Monotone C^3 blend on [0, 1], 0 -> 1, whose derivative is a flat plateau
/// of height 4/3 joined to zero by quintic ramps of width 1/4. Its slope never
/// exceeds 4/3, against 15/8 for smoothstep5.
Jet plateau_blend(double s);

}  // namespace wrinkle
