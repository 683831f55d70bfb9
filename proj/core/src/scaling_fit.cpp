#include "wrinkle/scaling_fit.hpp"

#include "wrinkle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wrinkle {

namespace {

void check_sizes(std::span<const double> h, std::span<const double> y, std::size_t min_points) {
  if (h.size() != y.size()) throw DomainError("scaling fit: h and y differ in length");
  if (h.size() < min_points) throw DomainError("scaling fit: too few points");
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!(h[i] > 0.0 && h[i] < 1.0) || !(y[i] > 0.0)) throw DomainError("scaling fit: need 0 < h < 1 and y > 0");
}

double total_ss(std::span<const double> y) {
  double mean = 0.0;
  for (double v : y) mean += std::log(v);
  mean /= static_cast<double>(y.size());
  double ss = 0.0;
  for (double v : y) ss += (std::log(v) - mean) * (std::log(v) - mean);
  return ss;
}

/// Constant data (spread at rounding level) count as perfectly fit when the residual is as small.
double r_squared(double rss, std::span<const double> y) {
  const double ss = total_ss(y);
  const double floor = 1e-24 * static_cast<double>(y.size());
  if (ss <= floor) return rss <= floor ? 1.0 : 0.0;
  return 1.0 - rss / ss;
}

/// ln y = ln a + ln g(h) with the prefactor as the only parameter.
template <class G>
LogFit fixed_shape(std::span<const double> h, std::span<const double> y, double slope, G g) {
  check_sizes(h, y, 1);
  const std::size_t n = h.size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m += std::log(y[i]) - std::log(g(h[i]));
  m /= static_cast<double>(n);
  LogFit f;
  f.slope = slope;
  f.prefactor = std::exp(m);
  f.points = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::log(y[i]) - std::log(g(h[i])) - m;
    f.rss += e * e;
  }
  f.r2 = r_squared(f.rss, y);
  return f;
}

}  // namespace

LogFit fit_power_law(std::span<const double> h, std::span<const double> y) {
  check_sizes(h, y, 2);
  const std::size_t n = h.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(h[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (std::log(h[i]) - mx) * (std::log(h[i]) - mx);
    sxy += (std::log(h[i]) - mx) * (std::log(y[i]) - my);
  }
  if (!(sxx > 0.0)) throw DomainError("scaling fit: all h equal");
  LogFit f;
  f.slope = sxy / sxx;
  f.prefactor = std::exp(my - f.slope * mx);
  f.points = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::log(y[i]) - my - f.slope * (std::log(h[i]) - mx);
    f.rss += e * e;
  }
  f.r2 = r_squared(f.rss, y);
  return f;
}

LogFit fit_linear(std::span<const double> h, std::span<const double> y) {
  return fixed_shape(h, y, 1.0, [](double t) { return t; });
}

LogFit fit_h_log(std::span<const double> h, std::span<const double> y) {
  return fixed_shape(h, y, 1.0, [](double t) { return t * std::log(1.0 / t); });
}

const ModeFit* ScalingFit::find(const std::string& mode) const {
  for (const auto& m : modes)
    if (m.mode == mode) return &m;
  return nullptr;
}

ScalingFit fit_scaling(std::span<const EnergyBreakdown> rows) {
  std::map<std::string, std::vector<const EnergyBreakdown*>> by_mode;
  for (const auto& r : rows) by_mode[r.mode].push_back(&r);

  ScalingFit out;
  for (auto& [mode, list] : by_mode) {
    std::sort(list.begin(), list.end(), [](auto* a, auto* b) { return a->thickness > b->thickness; });
    ModeFit mf;
    mf.mode = mode;
    for (const auto* r : list) {
      if (r->excess > 0.0 && r->error_estimate < 0.05 * r->excess) {
        mf.h.push_back(r->thickness);
        mf.excess.push_back(r->excess);
      } else {
        ++mf.dropped;
      }
    }
    if (mf.h.size() >= 2) {
      mf.power = fit_power_law(mf.h, mf.excess);
      mf.linear = fit_linear(mf.h, mf.excess);
      mf.h_log = fit_h_log(mf.h, mf.excess);
      mf.residual_ratio = mf.h_log.rss > 0.0 ? mf.linear.rss / mf.h_log.rss : 0.0;
    }
    out.modes.push_back(std::move(mf));
  }

  const auto naive = by_mode.find("naive"), cascade = by_mode.find("cascade");
  if (naive != by_mode.end() && cascade != by_mode.end()) {
    for (const auto* n : naive->second)
      for (const auto* c : cascade->second)
        if (n->thickness == c->thickness && c->excess > 0.0) {
          out.naive_cascade_h.push_back(n->thickness);
          out.naive_cascade_ratio.push_back(n->excess / c->excess);
        }
    out.ratio_increasing = out.naive_cascade_ratio.size() >= 2;
    for (std::size_t i = 1; i < out.naive_cascade_ratio.size(); ++i)
      if (!(out.naive_cascade_ratio[i] > out.naive_cascade_ratio[i - 1])) out.ratio_increasing = false;
  }
  return out;
}

}  // namespace wrinkle
