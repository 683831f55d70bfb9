#pragma once

#include "wrinkle/deformation.hpp"
#include "wrinkle/material.hpp"
#include "wrinkle/relaxed_solver.hpp"

#include <string>
#include <vector>

namespace wrinkle {

/// Quadrature layout for the annulus. Radial cells are the construction's
/// breakpoints merged with the solver grid (the profile spline has its knots
/// there); each cell gets a Gauss-Legendre rule. In theta the integrand of a
/// wrinkled section is 2 pi / K periodic, so one period is sampled with the
/// trapezoid rule and multiplied by K.
struct QuadratureSpec {
  int radial_order = 8;
  int angular_samples = 40;     // per wrinkle period; doubled where two modes mix
  int subdivisions = 1;         // equal parts per cell
  bool solver_nodes = true;     // cut cells at the radial grid as well
  bool exploit_periodicity = true;
  bool error_estimate = true;  // rerun at half resolution

  /// Throws ConfigError if radial_order < 2, angular_samples < 16 or subdivisions < 1.
  void validate() const;
  QuadratureSpec halved() const;
  QuadratureSpec doubled() const;
};

struct EnergyBreakdown {
  std::string mode;
  double thickness = 0.0;
  double membrane = 0.0;
  double bending = 0.0;
  double boundary_work = 0.0;
  double total = 0.0;           // membrane + bending + boundary_work
  double relaxed_energy = 0.0;  // E_0 of the planar relaxed map, same quadrature
  double excess = 0.0;          // total - relaxed_energy, summed pointwise
  double error_estimate = 0.0;  // |excess - excess at half resolution|, 0 if not requested
  double solver_relaxed_energy = 0.0;  // E_0 as reported by the radial solver
};

/// f(lambda_1, lambda_2) integrated over the annulus, lambda_i the singular
/// values of the 3x2 deformation gradient.
double membrane_energy(const Deformation& def, const MaterialModel& model, const QuadratureSpec& quad = {});
/// h^2 times the integral of |D^2 u_3|^2.
double bending_energy(const Deformation& def, double h, const QuadratureSpec& quad = {});
/// T_in times the integral of u . x / R_in over the inner circle minus the
/// same at the outer circle with T_out.
double boundary_work(const Deformation& def, const LoadCase& loads, const QuadratureSpec& quad = {});

/// All parts plus the excess over the relaxed energy. The excess is integrated
/// as f(grad u) - f_r(grad u0) point by point with u0 = v(r) x / |x| taken from
/// the same spline, so the smooth part of the quadrature error cancels.
/// Throws IntegrandError when a sample is not finite.
EnergyBreakdown total_energy(const Deformation& def, const MaterialModel& model, const LoadCase& loads, double h,
                             const QuadratureSpec& quad = {});

/// Same, with the deformation's own density and loads.
EnergyBreakdown total_energy(const Deformation& def, const QuadratureSpec& quad = {});

std::string energy_csv_header();
std::string energy_csv_row(const EnergyBreakdown& e);

}  // namespace wrinkle
