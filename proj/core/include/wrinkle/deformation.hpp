#pragma once

#include "wrinkle/cascade.hpp"
#include "wrinkle/interpolation.hpp"
#include "wrinkle/material.hpp"
#include "wrinkle/relaxed_solver.hpp"
#include "wrinkle/wrinkle_curve.hpp"

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wrinkle {

enum class DeformationMode { Planar, Naive, Cascade, Ansatz };

std::string to_string(DeformationMode mode);
/// Parses "planar", "naive", "cascade", "ansatz"; throws ConfigError otherwise.
DeformationMode parse_mode(const std::string& name);

/// Single-wavenumber trial family: wrinkle amplitude a(r) on [R_in, L] (zero
/// value and slope at L, zero beyond) and a radial correction dv(r) on
/// [R_in, R_out] with dv(R_out) = 0, both cubic splines through knot values.
struct AnsatzShape {
  int wavenumber = 1;
  std::vector<double> amplitude_knots;  // increasing, first R_in, last L
  std::vector<double> amplitude;        // same size; the last value is forced to 0
  std::vector<double> correction_knots;  // increasing, first R_in, last R_out
  std::vector<double> correction;        // same size; the last value is forced to 0
};

/// Everything about the map at a fixed radius that does not depend on theta.
/// u = V(r) (cos Theta, sin Theta, Z) with Theta = theta + chi P, Z = chi Q and
/// (P, Q) = Gamma(p1(r), p2(r), K theta) / K - (theta, 0).
struct RadialSection {
  double r = 0.0;
  Jet radius;            // V
  bool flat = true;      // Theta = theta, Z = 0
  int frequency = 0;     // K
  Jet cutoff{1.0, 0.0, 0.0};  // chi
  Jet p1, p2;            // (eps, alpha), or (A, alpha) when by_amplitude
  bool by_amplitude = false;
  std::shared_ptr<const CurveSection> curve;
};

struct PointJet {
  Eigen::Vector3d u;
  Eigen::Vector3d d_r;      // du/dr
  Eigen::Vector3d d_theta;  // du/dtheta
  Eigen::Matrix<double, 3, 2> grad;  // Cartesian columns d/dx, d/dy
  Eigen::Matrix2d hess_u3;           // Cartesian Hessian of u3
  Eigen::Matrix2d hess_u3_polar;     // same tensor in the (r-hat, theta-hat) frame
};

/// An immutable, explicitly evaluable test deformation of the annulus.
class Deformation {
public:
  DeformationMode mode() const { return mode_; }
  double thickness() const { return h_; }
  const RadialSolution& solution() const { return *sol_; }
  std::shared_ptr<const RadialSolution> solution_ptr() const { return sol_; }
  const RelaxedDensity& model() const { return model_; }
  const std::optional<CascadePlan>& plan() const { return plan_; }
  const std::optional<AnsatzShape>& shape() const { return shape_; }

  /// Wrinkles around the circle at r = R_in (0 for planar).
  int base_count() const { return k_; }
  /// Outer edge of the wrinkled zone: L - h (naive, before the boundary
  /// layer), a_{N+1} (cascade), L (ansatz); R_in for planar.
  double wrinkled_outer_radius() const;
  /// Radii where the construction changes form, sorted (quadrature cell edges).
  std::vector<double> breakpoints() const;

  RadialSection section(double r) const;
  PointJet eval(const RadialSection& sec, double theta) const;
  /// Planar relaxed map u0 = v(r)(cos theta, sin theta, 0) at the same point.
  PointJet eval_planar(double r, double theta) const;

  friend Deformation build_planar(std::shared_ptr<const RadialSolution>, const RelaxedDensity&);
  friend Deformation build_naive(std::shared_ptr<const RadialSolution>, const RelaxedDensity&, double);
  friend Deformation build_cascade(std::shared_ptr<const RadialSolution>, const RelaxedDensity&, double);
  friend Deformation build_ansatz(std::shared_ptr<const RadialSolution>, const RelaxedDensity&, double,
                                  AnsatzShape);

private:
  Deformation(DeformationMode mode, std::shared_ptr<const RadialSolution> sol, RelaxedDensity model, double h);
  Jet excess(double r) const { return excess_jet(*sol_, model_, r); }
  RadialSection curve_section(double r, int frequency, Jet p1, Jet p2, Jet cutoff) const;

  DeformationMode mode_;
  std::shared_ptr<const RadialSolution> sol_;
  RelaxedDensity model_;
  double h_ = 0.0;
  int k_ = 0;
  double L_ = 0.0;
  std::optional<CascadePlan> plan_;
  std::optional<AnsatzShape> shape_;
  CubicHermite amplitude_;
  CubicHermite correction_;
};

Deformation build_planar(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model);
/// k = floor(h^{-1/2}) wrinkles on (R_in, L - h), a boundary layer on
/// (L - h, L) that cuts amplitude and angular modulation off, planar beyond L.
Deformation build_naive(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h);
/// Fixed k on (R_in, L - delta), period-doubling bands on I_0..I_N, planar
/// beyond a_{N+1}.
Deformation build_cascade(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h);
Deformation build_ansatz(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h,
                         AnsatzShape shape);

/// Builds from a mode name; the ansatz mode is not buildable this way.
Deformation build_deformation(DeformationMode mode, std::shared_ptr<const RadialSolution> sol,
                              const RelaxedDensity& model, double h);

/// u, Cartesian grad u and Cartesian Hessian of u3 at (r, theta).
PointJet eval_deformation(const Deformation& def, double r, double theta);

}  // namespace wrinkle
