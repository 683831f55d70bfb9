#pragma once

#include "wrinkle/deformation.hpp"
#include "wrinkle/energy.hpp"

#include <memory>
#include <string>
#include <vector>

namespace wrinkle {

struct AnsatzConfig {
  int amplitude_knots = 12;   // on [R_in, L], graded toward L; the value at L is fixed to 0
  int correction_knots = 6;   // uniform on [R_in, R_out]; the value at R_out is fixed to 0
  /// Wavenumbers tried: round(factor * h^{-1/2}), duplicates dropped.
  std::vector<double> wavenumber_factors{0.5, 0.7, 1.0, 1.4, 2.0, 2.8, 4.0};
  int max_iters = 120;              // quasi-Newton iterations per wavenumber
  double gradient_tol = 1e-8;       // relative to max(1, |E|)
  double stall_tol = 1e-12;         // stop when a step lowers E by less than this, relative
  double fd_step = 1e-6;            // forward difference step, times (1 + |c|)
  int max_line_search_failures = 50;
  /// Quadrature used inside the descent; the winner is re-evaluated with `final_quadrature`.
  QuadratureSpec search_quadrature{6, 16, 4, false, true, false};
  QuadratureSpec final_quadrature{};
  /// Start from -A instead of A (the same family shifted by half a period).
  bool flip_initial_sign = false;

  void validate() const;
};

struct AnsatzTraceEntry {
  int wavenumber;
  int iteration;
  double excess;         // search-quadrature objective
  double gradient_norm;  // sup norm
  double step;           // accepted line-search step
};

struct AnsatzScanEntry {
  int wavenumber;
  double excess;         // search quadrature
  double final_excess;   // final quadrature
  double gradient_norm;
  int iterations;
  std::string exit_reason;  // "gradient", "stalled", "max_iters"
};

struct MinimizeResult {
  double thickness = 0.0;
  int best_wavenumber = 0;
  AnsatzShape best_shape;
  EnergyBreakdown best;              // final quadrature
  double zero_amplitude_excess = 0.0;  // start of every descent with A = 0, dv = 0 (final quadrature)
  double gradient_norm = 0.0;
  std::vector<AnsatzScanEntry> scan;
  std::vector<AnsatzTraceEntry> trace;
};

/// Knots for the amplitude: R_in, then L - d_i with d_i geometric from
/// (L - R_in) / 2 down to max(2 h, 1e-4 (L - R_in)), then L.
std::vector<double> amplitude_knots(const RadialSolution& sol, double h, int count);

/// For each wavenumber in the scan, quasi-Newton descent (BFGS, forward
/// difference gradient, Armijo backtracking) on the knot values of the
/// amplitude and the radial correction, starting from the amplitude that
/// matches the excess arclength of the relaxed solution. Returns the best.
/// Throws ConvergenceError when line searches fail max_line_search_failures times.
MinimizeResult minimize_ansatz(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h,
                               const AnsatzConfig& cfg = {});

}  // namespace wrinkle
