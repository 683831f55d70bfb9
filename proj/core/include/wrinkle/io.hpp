#pragma once

#include "wrinkle/ansatz.hpp"
#include "wrinkle/deformation.hpp"
#include "wrinkle/energy.hpp"
#include "wrinkle/relaxed_solver.hpp"
#include "wrinkle/scaling_fit.hpp"

#include <Eigen/Core>

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wrinkle {

/// Columns r,v,dv,sigma_r,sigma_theta,relaxed.
void write_solution_csv(std::ostream& os, const RadialSolution& sol);

/// JSON object: loads, node count, free boundary (or null), relaxed energy,
/// excess slope, residuals and the validation checks.
std::string solution_summary_json(const RadialSolution& sol, const ValidationReport& report);

/// JSON object: mode, h, k, breakpoints, and for the cascade the full band table.
std::string deformation_summary_json(const Deformation& def);

std::string scaling_fit_json(const ScalingFit& fit);

/// Scan table and best shape as JSON; iteration trace as CSV
/// (wavenumber,iteration,excess,gradient_norm,step).
std::string ansatz_result_json(const MinimizeResult& res);
void write_ansatz_trace_csv(std::ostream& os, const MinimizeResult& res);

/// Structured (r, theta) grid on the annulus, periodic in theta.
struct SurfaceMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // 1-based on export only
  std::vector<double> r, theta;           // vertex (i, j) is index i * theta.size() + j
  bool clamped = false;                   // angular resolution was raised to 16 per finest period
};

/// Radial samples: `radial` uniform values merged with the construction's
/// breakpoints. Angular samples: at least 16 per finest wrinkle period.
SurfaceMesh build_surface(const Deformation& def, int radial, int angular);

/// Triangles are wound counter-clockwise in the reference (x, y) plane.
void write_obj(std::ostream& os, const SurfaceMesh& mesh);
/// Columns r,theta,u1,u2,u3.
void write_surface_csv(std::ostream& os, const SurfaceMesh& mesh);

struct ObjData {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
};
/// Reads "v" and triangular "f" records; throws DomainError on malformed input.
ObjData read_obj(std::istream& is);

}  // namespace wrinkle
