#pragma once

#include "wrinkle/ansatz.hpp"
#include "wrinkle/audit.hpp"
#include "wrinkle/deformation.hpp"
#include "wrinkle/energy.hpp"
#include "wrinkle/material.hpp"
#include "wrinkle/relaxed_solver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wrinkle {

struct MaterialSpec {
  std::string model = "neo_hookean";  // neo_hookean, coupled_neo_hookean, compressible_neo_hookean
  double stiffness = 1.0;             // C
  double coupling = 0.0;              // beta, coupled_neo_hookean only
  double mu = 1.0;                    // compressible_neo_hookean only (reduced to 2D)
  double kappa = 10.0;
};

struct SweepSpec {
  std::string fixture = "fixture";
  std::vector<double> thicknesses;  // strictly decreasing
  std::vector<DeformationMode> modes{DeformationMode::Planar, DeformationMode::Naive, DeformationMode::Cascade};
  std::string output_dir = "out";

  /// 2^-8, 2^-9, ..., 2^-20.
  static std::vector<double> default_thicknesses();
};

struct RunConfig {
  MaterialSpec material;
  LoadCase loads{1.0, 2.0, 2.8, 1.6};
  SolverConfig solver;
  QuadratureSpec quadrature;
  SweepSpec sweep;
  AuditGrid audit;
  AnsatzConfig ansatz;
};

/// Parses an INI file with sections [material], [loads], [solver],
/// [quadrature], [sweep], [audit], [ansatz]. Missing keys keep their
/// defaults; unknown sections or keys and out-of-range values throw ConfigError.
RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in);

/// Throws ConfigError on any out-of-range field.
void validate_config(const RunConfig& cfg);

MaterialPtr make_material(const MaterialSpec& spec);

/// The INI text that load_config maps back to cfg.
std::string format_config(const RunConfig& cfg);

}  // namespace wrinkle
