#include "wrinkle/relaxed_solver.hpp"

#include "wrinkle/errors.hpp"
#include "wrinkle/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wrinkle {

void LoadCase::validate_geometry() const {
  if (!(r_in > 0.0) || !(r_out > r_in)) throw DomainError("LoadCase: need 0 < R_in < R_out");
  if (!(t_in > 0.0) || !(t_out > 0.0)) throw DomainError("LoadCase: tractions must be positive");
}

void SolverConfig::validate() const {
  if (node_count < 64) throw ConfigError("SolverConfig: node_count must be >= 64");
  if (!(newton_tol > 0.0)) throw ConfigError("SolverConfig: newton_tol must be positive");
  if (max_iters < 1) throw ConfigError("SolverConfig: max_iters must be >= 1");
  if (continuation_steps < 0) throw ConfigError("SolverConfig: continuation_steps must be >= 0");
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

constexpr int kGaussPoints = 3;

struct NeumaierSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
    else comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Assembly {
  double energy = 0.0;
  std::vector<double> grad;
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

Assembly assemble(const RelaxedDensity& m, const LoadCase& loads, std::span<const double> r,
                  std::span<const double> v, bool with_derivatives) {
  const std::size_t n = r.size();
  const GaussRule& g = gauss_legendre(kGaussPoints);
  Assembly a;
  if (with_derivatives) {
    a.grad.assign(n, 0.0);
    a.diag.assign(n, 0.0);
    a.off.assign(n - 1, 0.0);
  }
  NeumaierSum e;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dr = r[i + 1] - r[i];
    const double slope = (v[i + 1] - v[i]) / dr;
    for (int q = 0; q < kGaussPoints; ++q) {
      const double xi = 0.5 * (g.nodes[q] + 1.0);
      const double wq = 0.5 * g.weights[q] * dr;
      const double rq = r[i] + xi * dr;
      const double n0 = 1.0 - xi, n1 = xi;
      const double hoop = (n0 * v[i] + n1 * v[i + 1]) / rq;
      e.add(wq * rq * m.value(slope, hoop));
      if (!with_derivatives) continue;
      const Eigen::Vector2d gr = m.gradient(slope, hoop);
      const Eigen::Matrix2d h = m.hessian(slope, hoop);
      // B maps (v_i, v_{i+1}) to (slope, hoop).
      Eigen::Matrix2d b;
      b << -1.0 / dr, 1.0 / dr, n0 / rq, n1 / rq;
      const Eigen::Vector2d ge = wq * rq * (b.transpose() * gr);
      const Eigen::Matrix2d he = wq * rq * (b.transpose() * h * b);
      a.grad[i] += ge(0);
      a.grad[i + 1] += ge(1);
      a.diag[i] += he(0, 0);
      a.diag[i + 1] += he(1, 1);
      a.off[i] += he(0, 1);
    }
  }
  e.add(loads.r_in * loads.t_in * v.front());
  e.add(-loads.r_out * loads.t_out * v.back());
  a.energy = e.value();
  if (with_derivatives) {
    a.grad.front() += loads.r_in * loads.t_in;
    a.grad.back() -= loads.r_out * loads.t_out;
  }
  return a;
}

// Solves the symmetric tridiagonal system (diag + shift, off) x = rhs.
bool solve_tridiagonal(const std::vector<double>& diag, const std::vector<double>& off, double shift,
                       const std::vector<double>& rhs, std::vector<double>& x) {
  const std::size_t n = diag.size();
  std::vector<double> d(n), l(n, 0.0);
  x = rhs;
  d[0] = diag[0] + shift;
  if (!(d[0] > 0.0)) return false;
  for (std::size_t i = 1; i < n; ++i) {
    l[i] = off[i - 1] / d[i - 1];
    d[i] = diag[i] + shift - l[i] * off[i - 1];
    if (!(d[i] > 0.0)) return false;
    x[i] -= l[i] * x[i - 1];
  }
  x[n - 1] /= d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = x[i] / d[i] - l[i + 1] * x[i + 1];
  return true;
}

double sup_norm(const std::vector<double>& g) {
  double m = 0.0;
  for (double x : g) m = std::max(m, std::abs(x));
  return m;
}

struct NewtonResult {
  std::vector<double> v;
  double gradient_norm;
  int iterations;
};

NewtonResult newton(const RelaxedDensity& m, const LoadCase& loads, const SolverConfig& cfg,
                    std::span<const double> r, std::vector<double> v) {
  const std::size_t n = r.size();
  int polish = 0;
  int it = 0;
  bool converged = false;
  double gn = std::numeric_limits<double>::infinity();
  std::vector<double> step, trial(n), rhs(n);
  for (; it < cfg.max_iters; ++it) {
    const Assembly a = assemble(m, loads, r, v, true);
    gn = sup_norm(a.grad);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -a.grad[i];

    double dmax = *std::max_element(a.diag.begin(), a.diag.end());
    double shift = 0.0;
    while (!solve_tridiagonal(a.diag, a.off, shift, rhs, step)) {
      shift = (shift == 0.0) ? 1e-12 * dmax : shift * 10.0;
      if (shift > 1e3 * dmax) throw ConvergenceError("solve_relaxed: Hessian not positive definite", gn);
    }

    // Converged once the gradient is small or the Newton correction is at
    // rounding level relative to v (the gradient floor grows with node count).
    const double vnorm = sup_norm(v);
    converged = gn <= cfg.newton_tol || sup_norm(step) <= 1e-13 * (1.0 + vnorm);
    if (converged) {
      // Two polishing steps drive the iterate to rounding level.
      if (polish >= 2 || gn == 0.0) break;
      ++polish;
      for (std::size_t i = 0; i < n; ++i) trial[i] = v[i] + step[i];
      const double gt = sup_norm(assemble(m, loads, r, trial, true).grad);
      if (gt < gn) v = trial;
      else break;
      continue;
    }

    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) slope += a.grad[i] * step[i];
    if (!(slope < 0.0)) {
      for (std::size_t i = 0; i < n; ++i) step[i] = rhs[i] / std::max(a.diag[i], 1e-300);
      slope = 0.0;
      for (std::size_t i = 0; i < n; ++i) slope += a.grad[i] * step[i];
    }
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-12) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = v[i] + t * step[i];
      const double et = assemble(m, loads, r, trial, false).energy;
      if (et <= a.energy + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // Energy differences are below rounding; fall back to the residual.
      for (std::size_t i = 0; i < n; ++i) trial[i] = v[i] + step[i];
      const double gt = sup_norm(assemble(m, loads, r, trial, true).grad);
      if (!(gt < gn)) break;
    }
    v = trial;
  }
  if (!converged) {
    std::ostringstream os;
    os << "solve_relaxed: Newton stagnated after " << it << " iterations, gradient sup-norm " << gn;
    throw ConvergenceError(os.str(), gn);
  }
  return {std::move(v), gn, it};
}

std::vector<double> uniform_grid(double a, double b, int nodes) {
  std::vector<double> r(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) r[static_cast<std::size_t>(i)] = a + (b - a) * i / (nodes - 1);
  r.back() = b;
  return r;
}

void append_segment(std::vector<double>& r, double a, double b, int elements) {
  for (int k = 1; k <= elements; ++k) r.push_back(a + (b - a) * k / elements);
  r.back() = b;
}

// 25% of the elements in a window of half-width 0.1 (R_out - R_in) around L.
std::vector<double> graded_grid(double r_in, double r_out, int nodes, double center) {
  const double hw = 0.1 * (r_out - r_in);
  const double a = std::max(r_in, center - hw), b = std::min(r_out, center + hw);
  const int ne = nodes - 1;
  const int nw = std::max(1, static_cast<int>(std::lround(0.25 * ne)));
  const double la = a - r_in, lb = r_out - b;
  int na = 0, nb = 0;
  const int rest = ne - nw;
  if (la + lb > 0.0) {
    na = (la > 0.0) ? std::max(1, static_cast<int>(std::lround(rest * la / (la + lb)))) : 0;
    nb = (lb > 0.0) ? std::max(1, rest - na) : 0;
    if (lb <= 0.0) na = rest;
  }
  const int nwin = ne - na - nb;
  std::vector<double> r{r_in};
  if (na > 0) append_segment(r, r_in, a, na);
  append_segment(r, a, b, nwin);
  if (nb > 0) append_segment(r, b, r_out, nb);
  return r;
}

void finalize(RadialSolution& sol, const RelaxedDensity& m, const NewtonResult& nr) {
  const auto& r = sol.r;
  const std::size_t n = r.size();
  sol.v = nr.v;
  sol.gradient_norm = nr.gradient_norm;
  sol.iterations = nr.iterations;
  sol.dv = clamped_spline_slopes(r, sol.v);
  sol.profile = CubicHermite(r, sol.v, sol.dv);
  sol.sigma_r.resize(n);
  sol.sigma_theta.resize(n);
  sol.relaxed.resize(n);
  double smax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double hoop = sol.v[i] / r[i];
    const Eigen::Vector2d g = m.gradient(sol.dv[i], hoop);
    sol.sigma_r[i] = g(0);
    sol.sigma_theta[i] = g(1);
    smax = std::max(smax, std::abs(g(0)));
    const double s = (sol.dv[i] >= 1.0) ? hoop - m.width(sol.dv[i]) : 0.0;
    sol.relaxed[i] = (s < -1e-12) ? 1 : 0;
  }
  sol.relaxed_energy = 2.0 * std::numbers::pi * radial_functional(m, sol.loads, r, sol.v);

  const Assembly a = assemble(m, sol.loads, r, sol.v, true);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = (i > 0) ? r[i] - r[i - 1] : 0.0;
    const double right = (i + 1 < n) ? r[i + 1] - r[i] : 0.0;
    res = std::max(res, std::abs(a.grad[i]) / (0.5 * (left + right)));
  }
  sol.el_residual = res / std::max(smax, 1e-300);

  sol.free_boundary = find_free_boundary(sol, m);
  sol.excess_slope_at_L = 0.0;
  if (sol.free_boundary) {
    const double L = *sol.free_boundary;
    const double lam = sol.profile.eval(L).d1;
    const double w = m.width(lam);
    const Eigen::Matrix2d h = m.base().hessian(lam, w);
    const double sig = uniaxial_force(m.base(), lam);
    const double stiff = uniaxial_stiffness(m.base(), lam);
    sol.excess_slope_at_L = h(0, 1) / h(1, 1) * sig / (L * stiff) - (lam - w) / L;
  }
}

RadialSolution solve_on_grid(const RelaxedDensity& m, const LoadCase& loads, const SolverConfig& cfg,
                             std::vector<double> r, std::vector<double> v0) {
  RadialSolution sol;
  sol.loads = loads;
  const NewtonResult nr = newton(m, loads, cfg, r, std::move(v0));
  sol.r = std::move(r);
  finalize(sol, m, nr);
  return sol;
}

void check_loads(const LoadCase& loads) {
  loads.validate_geometry();
  if (!loads.admissible()) {
    std::ostringstream os;
    os << "inadmissible loads: need T_in R_in < T_out R_out, got " << loads.t_in * loads.r_in
       << " >= " << loads.t_out * loads.r_out
       << " (the relaxed energy is not bounded from below, or is degenerate at equality)";
    throw InadmissibleLoadError(os.str());
  }
}

}  // namespace

double radial_functional(const RelaxedDensity& model, const LoadCase& loads, std::span<const double> r,
                         std::span<const double> v) {
  return assemble(model, loads, r, v, false).energy;
}

double homogeneous_stretch(const RelaxedDensity& model, double traction) {
  auto f = [&](double k) { return model.gradient(k, k)(0) - traction; };
  double lo = 1.0, hi = 2.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) throw ConvergenceError("homogeneous_stretch: no bracket", traction);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) lo = mid; else hi = mid;
  }
  // Newton polish.
  double k = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const Eigen::Matrix2d h = model.hessian(k, k);
    const double d = h(0, 0) + h(0, 1);
    if (d > 0.0) k -= f(k) / d;
  }
  return k;
}

RadialSolution solve_relaxed_from(const RelaxedDensity& model, const LoadCase& loads, const SolverConfig& cfg,
                                  std::vector<double> grid, std::vector<double> initial_v) {
  cfg.validate();
  check_loads(loads);
  if (grid.size() != initial_v.size() || grid.size() < 2) throw DomainError("solve_relaxed_from: size mismatch");
  return solve_on_grid(model, loads, cfg, std::move(grid), std::move(initial_v));
}

RadialSolution solve_relaxed(const RelaxedDensity& model, const LoadCase& loads, const SolverConfig& cfg) {
  cfg.validate();
  check_loads(loads);

  std::vector<double> r = uniform_grid(loads.r_in, loads.r_out, cfg.node_count);
  const double kappa = homogeneous_stretch(model, loads.t_out);
  std::vector<double> v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = kappa * r[i];

  const int steps = cfg.continuation_steps;
  for (int k = 1; k <= steps; ++k) {
    LoadCase step = loads;
    step.t_in = loads.t_out + (loads.t_in - loads.t_out) * k / (steps + 1);
    v = newton(model, step, cfg, r, std::move(v)).v;
  }
  RadialSolution sol = solve_on_grid(model, loads, cfg, r, std::move(v));

  if (cfg.refine_free_boundary && sol.free_boundary) {
    std::vector<double> rg = graded_grid(loads.r_in, loads.r_out, cfg.node_count, *sol.free_boundary);
    std::vector<double> vg(rg.size());
    for (std::size_t i = 0; i < rg.size(); ++i) vg[i] = sol.profile(rg[i]);
    sol = solve_on_grid(model, loads, cfg, std::move(rg), std::move(vg));
  }
  return sol;
}

std::optional<double> find_free_boundary(const RadialSolution& sol, const RelaxedDensity& model) {
  const auto& r = sol.r;
  const std::size_t n = r.size();
  auto s_at = [&](double x) {
    const Jet j = sol.profile.eval(x);
    const double lam = std::max(j.d1, 1.0);
    return j.value / x - model.width(lam);
  };
  // Nodal sign pattern; |s| < 1e-12 counts as taut.
  std::vector<char> neg(n);
  for (std::size_t i = 0; i < n; ++i) neg[i] = s_at(r[i]) < -1e-12;
  std::size_t changes = 0, last = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (neg[i] != neg[i + 1]) {
      ++changes;
      last = i;
    }
  }
  if (changes == 0) {
    if (neg[0]) throw StructuralError("find_free_boundary: no taut region (hoop stress vanishes everywhere)");
    return std::nullopt;
  }
  if (changes > 1 || !neg[0]) {
    std::ostringstream os;
    os << "find_free_boundary: relaxed region must be a single interval starting at R_in; found " << changes
       << " sign changes";
    throw StructuralError(os.str());
  }
  double a = r[last], b = r[last + 1];
  double sa = s_at(a);
  double mid = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (a + b);
    const double sm = s_at(mid);
    if (std::abs(sm) <= 1e-13 || b - a <= 4 * std::numeric_limits<double>::epsilon() * b) break;
    if ((sm < 0.0) == (sa < 0.0)) {
      a = mid;
      sa = sm;
    } else {
      b = mid;
    }
  }
  return mid;
}

double excess_arclength(const RadialSolution& sol, const RelaxedDensity& model, double r) {
  if (!sol.free_boundary) throw DomainError("excess_arclength: profile has no relaxed region");
  if (r < sol.inner_radius() || r >= *sol.free_boundary)
    throw DomainError("excess_arclength: radius outside [R_in, L)");
  const Jet j = sol.profile.eval(r);
  return model.width(std::max(j.d1, 1.0)) / (j.value / r) - 1.0;
}

ValidationReport validate_solution(const RadialSolution& sol, const RelaxedDensity& model,
                                   const ValidationOptions& opts) {
  ValidationReport rep;
  const auto& r = sol.r;
  const auto& v = sol.v;
  const std::size_t n = r.size();
  const LoadCase& L = sol.loads;
  const GaussRule& g = gauss_legendre(kGaussPoints);

  // (a) hoop-stress integral against the load imbalance.
  NeumaierSum hoop;
  std::vector<double> flux(n - 1), centre_stress(n - 1), centre(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dr = r[i + 1] - r[i];
    const double slope = (v[i + 1] - v[i]) / dr;
    double f = 0.0;
    for (int q = 0; q < kGaussPoints; ++q) {
      const double xi = 0.5 * (g.nodes[q] + 1.0);
      const double wq = 0.5 * g.weights[q];
      const double rq = r[i] + xi * dr;
      const Eigen::Vector2d gr = model.gradient(slope, ((1 - xi) * v[i] + xi * v[i + 1]) / rq);
      hoop.add(wq * dr * gr(1));
      f += wq * rq * gr(0);
    }
    flux[i] = f;
    centre[i] = 0.5 * (r[i] + r[i + 1]);
    centre_stress[i] = model.gradient(slope, 0.5 * (v[i] + v[i + 1]) / centre[i])(0);
  }
  const double target = L.t_out * L.r_out - L.t_in * L.r_in;
  const double rel = std::abs(hoop.value() - target) / std::abs(target);
  rep.checks.push_back({"hoop_integral", rel <= opts.integral_rel_tol, rel, opts.integral_rel_tol});

  // (b) radial stretch bounds.
  rep.v_min = *std::min_element(sol.dv.begin(), sol.dv.end());
  rep.v_max = *std::max_element(sol.dv.begin(), sol.dv.end());
  const double vmax_bound = uniaxial_stretch_for_force(model.base(), L.t_out * L.r_out / L.r_in);
  const bool bounds = rep.v_min > 1.0 && rep.v_max <= vmax_bound * (1.0 + 1e-9);
  rep.checks.push_back({"radial_stretch_bounds", bounds, rep.v_min - 1.0, vmax_bound});

  // (c), (d) interior orderings.
  double stress_margin = std::numeric_limits<double>::infinity();
  double stretch_margin = std::numeric_limits<double>::infinity();
  double hoop_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    stress_margin = std::min(stress_margin, sol.sigma_r[i] - sol.sigma_theta[i]);
    stretch_margin = std::min(stretch_margin, sol.dv[i] - v[i] / r[i]);
    hoop_min = std::min(hoop_min, sol.sigma_theta[i]);
  }
  // Strict only for T_in > T_out; at T_in = T_out the solution is v = kappa r and both sides agree.
  const double order_tol = L.t_in > L.t_out ? 0.0 : -1e-9;
  rep.checks.push_back({"radial_exceeds_hoop_stress", stress_margin > order_tol * std::abs(L.t_out),
                        stress_margin, order_tol});
  rep.checks.push_back({"radial_exceeds_hoop_stretch", stretch_margin > order_tol, stretch_margin, order_tol});
  rep.checks.push_back({"hoop_stress_nonnegative", hoop_min >= 0.0, hoop_min, 0.0});

  // (e) r sigma_r non-decreasing (element means), boundary tractions.
  const double fmax = *std::max_element(flux.begin(), flux.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  double drop = 0.0;
  for (std::size_t i = 1; i < flux.size(); ++i) drop = std::max(drop, flux[i - 1] - flux[i]);
  const double flux_tol = 1e-9 * std::abs(fmax);
  rep.checks.push_back({"flux_monotone", drop <= flux_tol, drop, flux_tol});

  auto extrapolate = [&](std::size_t a, std::size_t b, double x) {
    return centre_stress[a] + (centre_stress[a] - centre_stress[b]) * (x - centre[a]) / (centre[a] - centre[b]);
  };
  const double s_in = extrapolate(0, 1, r.front());
  const double s_out = extrapolate(n - 2, n - 3, r.back());
  const double bd = std::max(std::abs(s_in - L.t_in) / L.t_in, std::abs(s_out - L.t_out) / L.t_out);
  rep.checks.push_back({"boundary_stress", bd <= opts.boundary_rel_tol, bd, opts.boundary_rel_tol});

  rep.checks.push_back({"el_residual", sol.el_residual <= opts.el_rel_tol, sol.el_residual, opts.el_rel_tol});

  // (f) uniqueness: three unrelated starting profiles reach the same minimizer.
  if (opts.uniqueness_probe) {
    const double kappa = homogeneous_stretch(model, L.t_out);
    const double span = r.back() - r.front();
    std::vector<std::vector<double>> starts(3, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (r[i] - r.front()) / span;
      starts[0][i] = 1.05 * kappa * r[i];
      starts[1][i] = v[i] + 0.02 * std::sin(std::numbers::pi * x) + 0.01 * std::sin(5 * std::numbers::pi * x);
      starts[2][i] = (v.front() - 0.02) + (v.back() - v.front() + 0.04) * x;
    }
    double worst = 0.0;
    bool ok = true;
    for (auto& s : starts) {
      try {
        const NewtonResult nr = newton(model, L, opts.probe_config, r, std::move(s));
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(nr.v[i] - v[i]));
      } catch (const ConvergenceError&) {
        ok = false;
        worst = std::numeric_limits<double>::infinity();
      }
    }
    rep.checks.push_back({"uniqueness", ok && worst <= opts.uniqueness_tol, worst, opts.uniqueness_tol});
  }
  return rep;
}

AdmissibleRange find_admissible_range(const RelaxedDensity& model, double r_in, double r_out, double t_out,
                                      const SolverConfig& cfg, int samples) {
  cfg.validate();
  if (samples < 2) throw DomainError("find_admissible_range: need at least 2 samples");
  AdmissibleRange out;
  const double t_max = t_out * r_out / r_in;
  std::vector<double> r = uniform_grid(r_in, r_out, cfg.node_count);
  const double kappa = homogeneous_stretch(model, t_out);
  std::vector<double> v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = kappa * r[i];

  SolverConfig scan = cfg;
  scan.max_iters = std::max(cfg.max_iters, 400);
  for (int j = 0; j < samples; ++j) {
    LoadCase lc{r_in, r_out, t_out + (t_max - t_out) * j / samples, t_out};
    out.t_in.push_back(lc.t_in);
    try {
      RadialSolution sol = solve_on_grid(model, lc, scan, r, v);
      v = sol.v;
      const bool ok = sol.v.front() > 0.0 && sol.free_boundary.has_value();
      out.wrinkling.push_back(ok ? 1 : 0);
      out.free_boundary.push_back(sol.free_boundary.value_or(std::numeric_limits<double>::quiet_NaN()));
    } catch (const std::exception&) {
      out.wrinkling.push_back(0);
      out.free_boundary.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  int runs = 0;
  for (std::size_t j = 0; j < out.t_in.size(); ++j) {
    if (!out.wrinkling[j]) continue;
    if (!out.lower) out.lower = out.t_in[j];
    out.upper = out.t_in[j];
    if (j == 0 || !out.wrinkling[j - 1]) ++runs;
  }
  out.contiguous = runs <= 1;
  return out;
}

}  // namespace wrinkle
