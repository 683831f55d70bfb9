#include "wrinkle/ansatz.hpp"

#include "wrinkle/cascade.hpp"
#include "wrinkle/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wrinkle {

void AnsatzConfig::validate() const {
  if (amplitude_knots < 3) throw ConfigError("ansatz: amplitude_knots must be >= 3");
  if (correction_knots < 2) throw ConfigError("ansatz: correction_knots must be >= 2");
  if (wavenumber_factors.empty()) throw ConfigError("ansatz: empty wavenumber scan");
  for (double f : wavenumber_factors)
    if (!(f > 0.0)) throw ConfigError("ansatz: wavenumber factors must be positive");
  if (max_iters < 1) throw ConfigError("ansatz: max_iters must be >= 1");
  if (!(fd_step > 0.0)) throw ConfigError("ansatz: fd_step must be positive");
  if (max_line_search_failures < 1) throw ConfigError("ansatz: max_line_search_failures must be >= 1");
  search_quadrature.validate();
  final_quadrature.validate();
}

std::vector<double> amplitude_knots(const RadialSolution& sol, double h, int count) {
  if (!sol.free_boundary) throw DomainError("amplitude_knots: solution has no relaxed region");
  if (count < 3) throw DomainError("amplitude_knots: need at least 3 knots");
  const double r0 = sol.inner_radius(), L = *sol.free_boundary, span = L - r0;
  const double d_max = 0.5 * span, d_min = std::min(0.5 * d_max, std::max(2.0 * h, 1e-4 * span));
  std::vector<double> out{r0};
  const int inner = count - 2;
  for (int i = 0; i < inner; ++i) {
    const double t = inner == 1 ? 0.0 : static_cast<double>(i) / (inner - 1);
    out.push_back(L - d_max * std::pow(d_min / d_max, t));
  }
  out.push_back(L);
  return out;
}

namespace {

struct Problem {
  std::shared_ptr<const RadialSolution> sol;
  const RelaxedDensity& model;
  double h;
  const AnsatzConfig& cfg;
  std::vector<double> a_knots, c_knots;

  int amp_count() const { return static_cast<int>(a_knots.size()) - 1; }
  int size() const { return amp_count() + static_cast<int>(c_knots.size()) - 1; }

  AnsatzShape shape(int m, const Eigen::VectorXd& x) const {
    AnsatzShape s;
    s.wavenumber = m;
    s.amplitude_knots = a_knots;
    s.correction_knots = c_knots;
    s.amplitude.assign(a_knots.size(), 0.0);
    s.correction.assign(c_knots.size(), 0.0);
    const int na = amp_count();
    for (int i = 0; i < na; ++i) s.amplitude[i] = x[i];
    for (int i = na; i < size(); ++i) s.correction[i - na] = x[i];
    return s;
  }

  EnergyBreakdown evaluate(int m, const Eigen::VectorXd& x, const QuadratureSpec& quad) const {
    const Deformation d = build_ansatz(sol, model, h, shape(m, x));
    return total_energy(d, model.base(), sol->loads, h, quad);
  }

  /// Search objective; +inf where the map degenerates.
  double objective(int m, const Eigen::VectorXd& x) const {
    try {
      return evaluate(m, x, cfg.search_quadrature).excess;
    } catch (const IntegrandError&) {
      return std::numeric_limits<double>::infinity();
    }
  }

  Eigen::VectorXd gradient(int m, const Eigen::VectorXd& x, double fx) const {
    const int n = size();
    Eigen::VectorXd g(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) {
      const double step = cfg.fd_step * (1.0 + std::abs(x[i]));
      Eigen::VectorXd y = x;
      y[i] += step;
      double f = objective(m, y);
      if (std::isfinite(f)) {
        g[i] = (f - fx) / step;
      } else {
        y[i] = x[i] - step;
        g[i] = (fx - objective(m, y)) / step;
      }
    }
    return g;
  }
};

struct Descent {
  Eigen::VectorXd x;
  double f = 0.0;
  double gnorm = 0.0;
  int iterations = 0;
  std::string exit_reason;
};

Descent descend(const Problem& p, int m, Eigen::VectorXd x, std::vector<AnsatzTraceEntry>& trace,
                int& failures) {
  const AnsatzConfig& cfg = p.cfg;
  const int n = p.size();
  Descent out;
  double f = p.objective(m, x);
  if (!std::isfinite(f)) throw DomainError("minimize_ansatz: initial shape has a non-finite energy");
  Eigen::VectorXd g = p.gradient(m, x, f);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n) * (0.1 / std::max(g.cwiseAbs().maxCoeff(), 1e-12));
  bool fresh = true;
  trace.push_back({m, 0, f, g.cwiseAbs().maxCoeff(), 0.0});
  out.exit_reason = "max_iters";
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const double gmax = g.cwiseAbs().maxCoeff();
    if (gmax <= cfg.gradient_tol * std::max(1.0, std::abs(f))) {
      out.exit_reason = "gradient";
      break;
    }
    Eigen::VectorXd d = -H * g;
    if (g.dot(d) >= 0.0) {
      H = Eigen::MatrixXd::Identity(n, n) * (0.1 / gmax);
      d = -H * g;
      fresh = true;
    }
    const double slope = g.dot(d);
    double t = 1.0, f_new = f;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
      f_new = p.objective(m, x + t * d);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (++failures >= cfg.max_line_search_failures) {
        std::ostringstream os;
        os << "minimize_ansatz: " << failures << " line-search failures (m=" << m << ", iteration " << it
           << ", excess " << f << ", |g| " << gmax << ")";
        throw ConvergenceError(os.str(), gmax);
      }
      if (fresh) {
        out.exit_reason = "stalled";
        break;
      }
      H = Eigen::MatrixXd::Identity(n, n) * (0.1 / gmax);
      fresh = true;
      continue;
    }
    const Eigen::VectorXd s = t * d;
    x += s;
    const double drop = f - f_new;
    f = f_new;
    const Eigen::VectorXd g_new = p.gradient(m, x, f);
    const Eigen::VectorXd y = g_new - g;
    g = g_new;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh) H = Eigen::MatrixXd::Identity(n, n) * (sy / y.squaredNorm());
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      H = V * H * V.transpose() + rho * s * s.transpose();
      fresh = false;
    }
    trace.push_back({m, it + 1, f, g.cwiseAbs().maxCoeff(), t});
    if (drop <= cfg.stall_tol * std::max(1.0, std::abs(f))) {
      ++it;
      out.exit_reason = "stalled";
      break;
    }
  }
  out.x = x;
  out.f = f;
  out.gnorm = g.cwiseAbs().maxCoeff();
  out.iterations = it;
  return out;
}

}  // namespace

MinimizeResult minimize_ansatz(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h,
                               const AnsatzConfig& cfg) {
  cfg.validate();
  check_thickness(h);
  if (!sol || !sol->free_boundary) throw DomainError("minimize_ansatz: solution has no relaxed region");

  Problem p{sol, model, h, cfg, amplitude_knots(*sol, h, cfg.amplitude_knots), {}};
  for (int i = 0; i < cfg.correction_knots; ++i)
    p.c_knots.push_back(sol->inner_radius() +
                        (sol->outer_radius() - sol->inner_radius()) * i / (cfg.correction_knots - 1));
  p.c_knots.back() = sol->outer_radius();

  Eigen::VectorXd start = Eigen::VectorXd::Zero(p.size());
  for (int i = 0; i < p.amp_count(); ++i) {
    const double e = std::clamp(excess_jet(*sol, model, p.a_knots[i]).value, 0.0, 1.0);
    start[i] = CurveSection::from_excess(e, 0.0).amplitude() * (cfg.flip_initial_sign ? -1.0 : 1.0);
  }

  std::vector<int> waves;
  for (double f : cfg.wavenumber_factors) {
    const int m = std::max(1, static_cast<int>(std::lround(f / std::sqrt(h))));
    if (std::find(waves.begin(), waves.end(), m) == waves.end()) waves.push_back(m);
  }

  MinimizeResult res;
  res.thickness = h;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p.size());
  const EnergyBreakdown flat = p.evaluate(waves.front(), zero, cfg.final_quadrature);
  res.zero_amplitude_excess = flat.excess;

  int failures = 0;
  bool have = false;
  for (int m : waves) {
    const Descent d = descend(p, m, start, res.trace, failures);
    const EnergyBreakdown e = p.evaluate(m, d.x, cfg.final_quadrature);
    res.scan.push_back({m, d.f, e.excess, d.gnorm, d.iterations, d.exit_reason});
    if (!have || e.excess < res.best.excess) {
      have = true;
      res.best = e;
      res.best_wavenumber = m;
      res.best_shape = p.shape(m, d.x);
      res.gradient_norm = d.gnorm;
    }
  }
  if (flat.excess < res.best.excess) {
    res.best = flat;
    res.best_shape = p.shape(res.best_wavenumber, zero);
  }
  return res;
}

}  // namespace wrinkle
