#pragma once

#include "wrinkle/energy.hpp"

#include <span>
#include <string>
#include <vector>

namespace wrinkle {

/// Least squares in log space. For the one-parameter fits the slope is fixed
/// and only the prefactor is free.
struct LogFit {
  double slope = 0.0;
  double prefactor = 0.0;  // y ~ prefactor * g(h)
  double r2 = 0.0;         // 1 - rss / sum (ln y - mean ln y)^2
  double rss = 0.0;        // sum of squared log residuals
  std::size_t points = 0;
};

/// ln y = ln c + s ln h.
LogFit fit_power_law(std::span<const double> h, std::span<const double> y);
/// y = a h.
LogFit fit_linear(std::span<const double> h, std::span<const double> y);
/// y = a h ln(1/h).
LogFit fit_h_log(std::span<const double> h, std::span<const double> y);

struct ModeFit {
  std::string mode;
  std::vector<double> h;       // points kept
  std::vector<double> excess;
  std::size_t dropped = 0;     // error estimate >= 5% of excess, or excess <= 0
  LogFit power;
  LogFit linear;
  LogFit h_log;
  double residual_ratio = 0.0;  // linear.rss / h_log.rss
};

struct ScalingFit {
  std::vector<ModeFit> modes;
  /// excess(naive) / excess(cascade) at the h present in both, in decreasing h.
  std::vector<double> naive_cascade_h;
  std::vector<double> naive_cascade_ratio;
  bool ratio_increasing = false;

  const ModeFit* find(const std::string& mode) const;
};

/// Groups rows by mode and fits each; rows whose error estimate is >= 5% of
/// the excess are left out.
ScalingFit fit_scaling(std::span<const EnergyBreakdown> rows);

}  // namespace wrinkle
