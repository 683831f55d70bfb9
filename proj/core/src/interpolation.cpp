#include "wrinkle/interpolation.hpp"

#include "wrinkle/errors.hpp"
#include "wrinkle/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace wrinkle {

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> slope)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(slope)) {
  if (x_.size() < 2 || y_.size() != x_.size() || d_.size() != x_.size())
    throw DomainError("CubicHermite: need >= 2 nodes with matching values and slopes");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw DomainError("CubicHermite: nodes must be strictly increasing");
  // Monomial coefficients in t - x_i, computed once so that derivatives are
  // smooth in t rather than re-derived from node values at every call.
  c2_.resize(x_.size() - 1);
  c3_.resize(x_.size() - 1);
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double h = x_[i + 1] - x_[i], del = (y_[i + 1] - y_[i]) / h;
    c2_[i] = (3 * del - 2 * d_[i] - d_[i + 1]) / h;
    c3_[i] = (d_[i] + d_[i + 1] - 2 * del) / (h * h);
  }
}

std::size_t CubicHermite::interval(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

Jet CubicHermite::eval(double t) const {
  const std::size_t i = interval(t);
  const double u = t - x_[i], c1 = d_[i], c2 = c2_[i], c3 = c3_[i];
  Jet j;
  j.value = y_[i] + u * (c1 + u * (c2 + u * c3));
  j.d1 = c1 + u * (2 * c2 + 3 * c3 * u);
  j.d2 = 2 * c2 + 6 * c3 * u;
  return j;
}

double CubicHermite::third(double t) const { return 6 * c3_[interval(t)]; }

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    del[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = del[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) s = 0.0;
    else if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3 * d0)) s = 3 * d0;
    return s;
  };
  d[0] = end_slope(h[0], h[1], del[0], del[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  return d;
}

std::vector<double> parabolic_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) {
    if (n == 2) d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, double t) {
    // Derivative at t of the parabola through (x_a, y_a), (x_b, y_b), (x_c, y_c).
    const double xa = x[a], xb = x[b], xc = x[c];
    return y[a] * ((t - xb) + (t - xc)) / ((xa - xb) * (xa - xc)) +
           y[b] * ((t - xa) + (t - xc)) / ((xb - xa) * (xb - xc)) +
           y[c] * ((t - xa) + (t - xb)) / ((xc - xa) * (xc - xb));
  };
  d[0] = three_point(0, 1, 2, x[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = three_point(i - 1, i, i + 1, x[i]);
  d[n - 1] = three_point(n - 3, n - 2, n - 1, x[n - 1]);
  return d;
}

std::vector<double> spline_slopes(std::span<const double> x, std::span<const double> y, SplineEnd left,
                                  SplineEnd right) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  // Tridiagonal system for the slopes: continuity of the second derivative
  // at interior nodes plus one equation per end.
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    del[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (left.clamped) {
    b[0] = 1.0;
    r[0] = left.slope;
  } else {
    b[0] = 2.0;
    c[0] = 1.0;
    r[0] = 3.0 * del[0];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a[i] = h[i];
    b[i] = 2.0 * (h[i - 1] + h[i]);
    c[i] = h[i - 1];
    r[i] = 3.0 * (h[i] * del[i - 1] + h[i - 1] * del[i]);
  }
  if (right.clamped) {
    b[n - 1] = 1.0;
    r[n - 1] = right.slope;
  } else {
    a[n - 1] = 1.0;
    b[n - 1] = 2.0;
    r[n - 1] = 3.0 * del[n - 2];
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    r[i] -= w * r[i - 1];
  }
  d[n - 1] = r[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) d[i] = (r[i] - c[i] * d[i + 1]) / b[i];
  return d;
}

std::vector<double> natural_spline_slopes(std::span<const double> x, std::span<const double> y) {
  return spline_slopes(x, y, SplineEnd::natural(), SplineEnd::natural());
}

std::vector<double> clamped_spline_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 4) return parabolic_slopes(x, y);
  // Derivative at t of the cubic through four consecutive nodes.
  auto four_point = [&](std::size_t first, double t) {
    double sum = 0.0;
    for (std::size_t i = first; i < first + 4; ++i) {
      double num = 0.0, den = 1.0;
      for (std::size_t j = first; j < first + 4; ++j) {
        if (j == i) continue;
        den *= x[i] - x[j];
        double prod = 1.0;
        for (std::size_t k = first; k < first + 4; ++k)
          if (k != i && k != j) prod *= t - x[k];
        num += prod;
      }
      sum += y[i] * num / den;
    }
    return sum;
  };
  return spline_slopes(x, y, SplineEnd::clamp(four_point(0, x[0])), SplineEnd::clamp(four_point(n - 4, x[n - 1])));
}

Jet smoothstep5(double s) {
  if (s <= 0.0) return {0.0, 0.0, 0.0};
  if (s >= 1.0) return {1.0, 0.0, 0.0};
  const double s2 = s * s, s3 = s2 * s;
  return {s3 * (10 - 15 * s + 6 * s2), 30 * s2 * (1 - s) * (1 - s), 60 * s * (1 - s) * (1 - 2 * s)};
}

Jet plateau_blend(double s) {
  constexpr double b = 0.25;
  constexpr double c = 1.0 / (1.0 - b);
  if (s <= 0.0) return {0.0, 0.0, 0.0};
  if (s >= 1.0) return {1.0, 0.0, 0.0};
  if (s > 0.5) {
    const Jet m = plateau_blend(1.0 - s);
    return {1.0 - m.value, m.d1, -m.d2};
  }
  if (s < b) {
    // Integral of the quintic smoothstep from 0 to y.
    const double y = s / b;
    const Jet g = smoothstep5(y);
    return {c * b * y * y * y * y * (2.5 - 3.0 * y + y * y), c * g.value, c * g.d1 / b};
  }
  return {c * (0.5 * b + (s - b)), c, 0.0};
}

// ---------------------------------------------------------------------------

namespace {

GaussRule build_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
  return it->second;
}

}  // namespace wrinkle
