#include "wrinkle/cascade.hpp"

#include "wrinkle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wrinkle {

int base_wrinkle_count(double h) { return static_cast<int>(std::floor(1.0 / std::sqrt(h) * (1.0 + 1e-12))); }

int doubling_depth(double h) { return static_cast<int>(std::ceil(-0.5 * std::log2(h) - 1e-12)); }

void check_thickness(double h) {
  if (!(h > 0.0) || h > kMaxThickness) {
    std::ostringstream os;
    os << "thickness h=" << h << " outside (0, " << kMaxThickness << "]: need at least 4 wrinkles";
    throw DomainError(os.str());
  }
}

Jet excess_jet(const RadialSolution& sol, const RelaxedDensity& model, double r) {
  const Jet v = sol.profile.eval(r);
  const double v3 = sol.profile.third(r);
  const Jet w = natural_width_jet(model.base(), std::max(v.d1, 1.0));
  const double g = w.value, g1 = w.d1 * v.d2, g2 = w.d2 * v.d2 * v.d2 + w.d1 * v3;
  const double rho = r / v.value;
  const double rho1 = (v.value - r * v.d1) / (v.value * v.value);
  const double rho2 = (-r * v.d2 * v.value - 2 * v.d1 * (v.value - r * v.d1)) / (v.value * v.value * v.value);
  return {g * rho - 1.0, g1 * rho + g * rho1, g2 * rho + 2 * g1 * rho1 + g * rho2};
}

CascadePlan plan_cascade(const RadialSolution& sol, const RelaxedDensity& model, double h) {
  check_thickness(h);
  if (!sol.free_boundary) throw DomainError("plan_cascade: solution has no relaxed region");
  if (!(sol.excess_slope_at_L < 0.0)) throw StructuralError("plan_cascade: excess slope at L is not negative");

  CascadePlan plan;
  plan.thickness = h;
  plan.free_boundary = *sol.free_boundary;
  plan.base_count = base_wrinkle_count(h);
  plan.depth = doubling_depth(h);
  const double L = plan.free_boundary;
  const double span = L - sol.inner_radius();

  constexpr int kSamples = 256;
  bool found = false;
  for (int j = 1; j <= 20 && !found; ++j) {
    const double delta = span / std::ldexp(1.0, j);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < kSamples; ++i) {
      const double r = L - delta * (i + 0.5) / kSamples;
      const double slope = -excess_jet(sol, model, r).d1;
      lo = std::min(lo, slope);
      hi = std::max(hi, slope);
    }
    if (lo > 0.0 && hi <= 4.0 * lo) {
      plan.delta = delta;
      plan.dyadic_level = j;
      plan.slope_min = lo;
      plan.slope_max = hi;
      found = true;
    }
  }
  if (!found) {
    throw StructuralError(
        "plan_cascade: eps' is not bounded away from zero near L on any dyadic zone; refine the radial grid");
  }

  const int N = plan.depth;
  double ratio = 1.0;
  for (int n = 0; n <= N; ++n) {
    CascadeBand b;
    b.n = n;
    b.start = L - plan.delta * std::ldexp(1.0, -2 * n);
    b.end = L - plan.delta * std::ldexp(1.0, -2 * (n + 1));
    b.length = b.end - b.start;
    b.frequency = plan.base_count << n;
    b.period = 2.0 * std::numbers::pi / b.frequency;
    b.cutoff = (n == N);
    for (double t : {0.0, 0.5, 1.0}) {
      const double e = excess_jet(sol, model, b.start + t * b.length).value;
      if (!(e > 0.0)) throw StructuralError("plan_cascade: excess vanishes inside the cascade zone");
      ratio = std::max({ratio, e / b.length, b.length / e});
    }
    plan.bands.push_back(b);
  }
  plan.band_ratio = ratio;
  return plan;
}

}  // namespace wrinkle
