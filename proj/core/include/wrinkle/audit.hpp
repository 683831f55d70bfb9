#pragma once

#include "wrinkle/material.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace wrinkle {

/// Sampling domain for the hypothesis audit. Stretches are log-spaced:
/// l1 in [l1_min, l_max] and, per l1, l2 in [w(l1), l_max].
struct AuditGrid {
  int n1 = 200;
  int n2 = 200;
  double l1_min = 1.01;
  double l_max = 3.0;
  /// Extra uniformly random (l1, l2) samples in (0.2, l_max)^2 checking f_r <= f.
  int random_samples = 0;
  std::uint64_t seed = 1;
};

struct AuditRow {
  double l1;
  double l2;
  std::string check;
  double margin;  // >= 0 (or > 0 for strict checks) means the hypothesis holds
  bool pass;
};

struct CheckSummary {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;
  double worst_l1 = 0.0;
  double worst_l2 = 0.0;
};

struct AuditReport {
  std::string model;
  std::vector<AuditRow> rows;
  std::map<std::string, CheckSummary> summary;
  /// Empirical growth constants for f >= c0 |l|^p - c1 on the sampled grid.
  double growth_c0 = 0.0;
  double growth_c1 = 0.0;

  bool all_pass() const;
  std::vector<AuditRow> failures() const;
};

/// Check ids, in report order.
inline constexpr const char* kCheckNonNegative = "f_nonneg";
inline constexpr const char* kCheckHessianPD = "hessian_pd";
inline constexpr const char* kCheckGradientFD = "gradient_fd";
inline constexpr const char* kCheckHessianFD = "hessian_fd";
inline constexpr const char* kCheckWidthMonotone = "width_nonincreasing";
inline constexpr const char* kCheckOrderedForce = "ordered_force";
inline constexpr const char* kCheckUniaxialMonotone = "uniaxial_force_increasing";
inline constexpr const char* kCheckCrossPartial = "cross_partial_nonneg";
inline constexpr const char* kCheckDeterminant = "determinant_condition";
inline constexpr const char* kCheckRelaxedBelow = "relaxed_below_f";

/// Samples every structural hypothesis on the density. Failures are data.
AuditReport audit_hypotheses(const MaterialModel& model, const AuditGrid& grid = {});

/// Left side minus right side of det D^2 f (l1 - w) > f12 f1 at (l1, w(l1)).
double determinant_condition_margin(const MaterialModel& model, double l1);

/// CSV with header l1,l2,check,margin,pass. Only failing rows when failures_only.
void write_audit_csv(std::ostream& os, const AuditReport& report, bool failures_only = false);

}  // namespace wrinkle
