#pragma once

#include "wrinkle/interpolation.hpp"
#include "wrinkle/material.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wrinkle {

/// Dead loads on the annulus R_in < |x| < R_out: T_in pulls the inner rim
/// inwards, T_out pulls the outer rim outwards.
struct LoadCase {
  double r_in = 1.0;
  double r_out = 2.0;
  double t_in = 1.0;
  double t_out = 1.0;

  /// T_in R_in < T_out R_out; otherwise the relaxed energy has no minimizer.
  bool admissible() const { return t_in * r_in < t_out * r_out; }
  void validate_geometry() const;
};

struct SolverConfig {
  int node_count = 2048;
  double newton_tol = 1e-11;  // sup-norm of the discrete gradient (a rounding-level Newton step also counts)
  int max_iters = 200;
  int continuation_steps = 4;  // intermediate T_in values between T_out and the target
  bool refine_free_boundary = true;

  void validate() const;
};

/// Discrete minimizer of the radial relaxed problem with its stresses.
struct RadialSolution {
  LoadCase loads;
  std::vector<double> r;
  std::vector<double> v;
  std::vector<double> dv;  // nodal v' of the interpolating cubic spline
  std::vector<double> sigma_r;
  std::vector<double> sigma_theta;
  std::vector<char> relaxed;  // v/r < w(v') at the node

  std::optional<double> free_boundary;  // L; empty when there is no relaxed region
  double relaxed_energy = 0.0;          // full 2D value (2 pi times the radial functional)
  double excess_slope_at_L = 0.0;       // d/dr [w(v') - v/r] at L from the relaxed side
  double gradient_norm = 0.0;
  double el_residual = 0.0;  // max nodal weak residual of (r sigma_r)' = sigma_theta over lumped mass, / max sigma_r
  int iterations = 0;

  /// C^2 cubic spline through the nodal values.
  CubicHermite profile;

  bool has_relaxed_region() const { return free_boundary.has_value(); }
  double inner_radius() const { return r.front(); }
  double outer_radius() const { return r.back(); }
};

/// Minimizes int r f_r(v', v/r) dr + R_in T_in v(R_in) - R_out T_out v(R_out)
/// with P1 elements and damped Newton. Throws InadmissibleLoadError when
/// T_in R_in >= T_out R_out and ConvergenceError on stagnation.
RadialSolution solve_relaxed(const RelaxedDensity& model, const LoadCase& loads, const SolverConfig& cfg = {});

/// Same, starting Newton from the given nodal values on the given grid (no
/// continuation, no regrading).
RadialSolution solve_relaxed_from(const RelaxedDensity& model, const LoadCase& loads, const SolverConfig& cfg,
                                  std::vector<double> grid, std::vector<double> initial_v);

/// Discrete radial functional (one radian of the annulus) for nodal values v on grid r.
double radial_functional(const RelaxedDensity& model, const LoadCase& loads, std::span<const double> r,
                         std::span<const double> v);

/// Unique sign change of v/r - w(v'); empty if the profile is taut everywhere.
/// Throws StructuralError on several sign changes.
std::optional<double> find_free_boundary(const RadialSolution& sol, const RelaxedDensity& model);

/// w(v'(r)) / (v(r)/r) - 1 on [R_in, L).
double excess_arclength(const RadialSolution& sol, const RelaxedDensity& model, double r);

struct ValidationCheck {
  std::string name;
  bool pass;
  double value;  // measured quantity (residual, minimum margin, ...)
  double tolerance;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  double v_min = 0.0;  // min v'
  double v_max = 0.0;  // max v'
  bool all_pass() const;
  const ValidationCheck* find(const std::string& name) const;
};

struct ValidationOptions {
  bool uniqueness_probe = true;
  double integral_rel_tol = 1e-6;
  double boundary_rel_tol = 1e-4;
  double uniqueness_tol = 1e-8;
  double el_rel_tol = 1e-6;
  SolverConfig probe_config{};
};

ValidationReport validate_solution(const RadialSolution& sol, const RelaxedDensity& model,
                                   const ValidationOptions& opts = {});

struct AdmissibleRange {
  std::vector<double> t_in;
  std::vector<char> wrinkling;  // v(R_in) > 0 and a relaxed region is present
  std::vector<double> free_boundary;  // L, or NaN
  std::optional<double> lower;
  std::optional<double> upper;
  bool contiguous = true;
  bool empty() const { return !lower.has_value(); }
};

/// Scans T_in over [T_out, T_out R_out / R_in) by continuation.
AdmissibleRange find_admissible_range(const RelaxedDensity& model, double r_in, double r_out, double t_out,
                                      const SolverConfig& cfg = {}, int samples = 64);

/// Stretch kappa with d1 f_r(kappa, kappa) = T: the homogeneous solution for T_in = T_out = T.
double homogeneous_stretch(const RelaxedDensity& model, double traction);

}  // namespace wrinkle
