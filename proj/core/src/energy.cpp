#include "wrinkle/energy.hpp"

#include "wrinkle/errors.hpp"
#include "wrinkle/quadrature.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace wrinkle {

void QuadratureSpec::validate() const {
  if (radial_order < 2) throw ConfigError("quadrature: radial_order must be >= 2");
  if (angular_samples < 16) throw ConfigError("quadrature: need >= 16 angular samples per wrinkle period");
  if (subdivisions < 1) throw ConfigError("quadrature: subdivisions must be >= 1");
}

QuadratureSpec QuadratureSpec::halved() const {
  QuadratureSpec q = *this;
  q.radial_order = std::max(2, radial_order / 2);
  q.angular_samples = std::max(4, angular_samples / 2);
  q.error_estimate = false;
  return q;
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec q = *this;
  q.radial_order = 2 * radial_order;
  q.angular_samples = 2 * angular_samples;
  return q;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Sums {
  double membrane = 0.0;
  double gap = 0.0;        // f(grad u) - f_r(grad u0)
  double reference = 0.0;  // f_r(grad u0)
  double bending = 0.0;    // without h^2
};

struct Neumaier {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

std::vector<double> radial_cells(const Deformation& def, const QuadratureSpec& quad) {
  std::vector<double> edges = def.breakpoints();
  if (quad.solver_nodes) {
    const auto& nodes = def.solution().r;
    edges.insert(edges.end(), nodes.begin(), nodes.end());
  }
  std::sort(edges.begin(), edges.end());
  std::vector<double> merged;
  for (double e : edges)
    if (merged.empty() || e - merged.back() > 1e-13 * std::max(1.0, std::abs(e))) merged.push_back(e);
  std::vector<double> out{merged.front()};
  for (std::size_t i = 1; i < merged.size(); ++i)
    for (int j = 1; j <= quad.subdivisions; ++j)
      out.push_back(j == quad.subdivisions ? merged[i]
                                           : merged[i - 1] + (merged[i] - merged[i - 1]) * j / quad.subdivisions);
  return out;
}

struct Stretches {
  double l1, l2;
};

Stretches singular_values(const PointJet& p, double r) {
  const double a = p.d_r.squaredNorm();
  const double c = p.d_theta.squaredNorm() / (r * r);
  const double b = p.d_r.dot(p.d_theta) / r;
  const double det = p.d_r.cross(p.d_theta).squaredNorm() / (r * r);
  const double mean = 0.5 * (a + c);
  const double big = mean + std::hypot(0.5 * (a - c), b);
  return {std::sqrt(big), std::sqrt(det / big)};
}

[[noreturn]] void bad_sample(const char* what, double r, double theta) {
  std::ostringstream os;
  os << std::setprecision(17) << "non-finite " << what << " at r=" << r << ", theta=" << theta;
  throw IntegrandError(os.str(), r, theta);
}

/// Theta samples of one section, with equal weights summing to 2 pi.
std::vector<double> angles(const RadialSection& sec, const QuadratureSpec& quad) {
  if (sec.flat) return {0.0};
  const int per = quad.angular_samples * ((!sec.by_amplitude && sec.p2.value > 0.0) ? 2 : 1);
  const int K = sec.frequency;
  const int n = quad.exploit_periodicity ? per : per * K;
  const double span = quad.exploit_periodicity ? kTwoPi / K : kTwoPi;
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = span * j / n;
  return out;
}

/// Angular integrals at radius r (times r), one per radial node.
Sums section_sums(const Deformation& def, const MaterialModel& model, double r, const QuadratureSpec& quad) {
  const RadialSection sec = def.section(r);
  const Jet v = def.solution().profile.eval(r);
  const double ref = def.model().value(v.d1, v.value / r);
  if (!std::isfinite(ref)) bad_sample("relaxed density", r, 0.0);
  const std::vector<double> th = angles(sec, quad);
  double mem = 0.0, gap = 0.0, bend = 0.0;
  for (double t : th) {
    const PointJet p = def.eval(sec, t);
    const Stretches s = singular_values(p, r);
    const double f = model.value(s.l1, s.l2);
    if (!std::isfinite(f)) bad_sample("membrane density", r, t);
    const double b = p.hess_u3_polar.squaredNorm();
    if (!std::isfinite(b)) bad_sample("bending density", r, t);
    mem += f;
    gap += f - ref;
    bend += b;
  }
  const double w = kTwoPi / static_cast<double>(th.size()) * r;
  return {mem * w, gap * w, ref * kTwoPi * r, bend * w};
}

Sums integrate_area(const Deformation& def, const MaterialModel& model, const QuadratureSpec& quad) {
  const std::vector<double> edges = radial_cells(def, quad);
  const GaussRule& g = gauss_legendre(quad.radial_order);
  const std::size_t per = g.nodes.size();
  const std::size_t cells = edges.size() - 1;
  std::vector<Sums> terms(cells * per);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < cells * per; ++i) {
    const std::size_t c = i / per, q = i % per;
    const double a = edges[c], b = edges[c + 1];
    const double half = 0.5 * (b - a);
    const double r = a + half * (1.0 + g.nodes[q]);
    try {
      Sums s = section_sums(def, model, r, quad);
      const double w = half * g.weights[q];
      terms[i] = {s.membrane * w, s.gap * w, s.reference * w, s.bending * w};
    } catch (...) {
#pragma omp critical(wrinkle_energy_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Neumaier mem, gap, ref, bend;
  for (const Sums& s : terms) {
    mem.add(s.membrane);
    gap.add(s.gap);
    ref.add(s.reference);
    bend.add(s.bending);
  }
  return {mem.value(), gap.value(), ref.value(), bend.value()};
}

struct Boundary {
  double work = 0.0;
  double reference = 0.0;  // same for u0
  double gap = 0.0;        // work - reference
};

/// Mean over theta of u . x / |x| - v(r) at a rim, and of u . x / |x|.
std::pair<double, double> rim_means(const Deformation& def, double r, const QuadratureSpec& quad) {
  const RadialSection sec = def.section(r);
  const double v = def.solution().profile.eval(r).value;
  const std::vector<double> th = angles(sec, quad);
  double dev = 0.0, full = 0.0;
  for (double t : th) {
    const PointJet p = def.eval(sec, t);
    const double radial = p.u.x() * std::cos(t) + p.u.y() * std::sin(t);
    if (!std::isfinite(radial)) bad_sample("boundary displacement", r, t);
    // V cos(chi P) - v written without cancelling V against v.
    const double chiP = std::atan2(p.u.y(), p.u.x()) - t;
    const double s = std::sin(0.5 * chiP);
    dev += -2.0 * sec.radius.value * s * s + (sec.radius.value - v);
    full += radial;
  }
  const double n = static_cast<double>(th.size());
  return {dev / n, full / n};
}

Boundary integrate_boundary(const Deformation& def, const LoadCase& loads, const QuadratureSpec& quad) {
  const RadialSolution& sol = def.solution();
  const double r0 = sol.inner_radius(), r1 = sol.outer_radius();
  const auto [dev0, full0] = rim_means(def, r0, quad);
  const auto [dev1, full1] = rim_means(def, r1, quad);
  Boundary b;
  b.reference = kTwoPi * (loads.t_in * r0 * sol.v.front() - loads.t_out * r1 * sol.v.back());
  b.work = kTwoPi * (loads.t_in * r0 * full0 - loads.t_out * r1 * full1);
  b.gap = kTwoPi * (loads.t_in * r0 * dev0 - loads.t_out * r1 * dev1);
  return b;
}

EnergyBreakdown assemble(const Deformation& def, const MaterialModel& model, const LoadCase& loads, double h,
                         const QuadratureSpec& quad) {
  const Sums area = integrate_area(def, model, quad);
  const Boundary bd = integrate_boundary(def, loads, quad);
  EnergyBreakdown e;
  e.mode = to_string(def.mode());
  e.thickness = h;
  e.membrane = area.membrane;
  e.bending = h * h * area.bending;
  e.boundary_work = bd.work;
  e.total = e.membrane + e.bending + e.boundary_work;
  e.relaxed_energy = area.reference + bd.reference;
  e.excess = area.gap + e.bending + bd.gap;
  e.solver_relaxed_energy = def.solution().relaxed_energy;
  return e;
}

}  // namespace

double membrane_energy(const Deformation& def, const MaterialModel& model, const QuadratureSpec& quad) {
  quad.validate();
  return integrate_area(def, model, quad).membrane;
}

double bending_energy(const Deformation& def, double h, const QuadratureSpec& quad) {
  quad.validate();
  if (def.mode() == DeformationMode::Planar) return 0.0;
  return h * h * integrate_area(def, def.model().base(), quad).bending;
}

double boundary_work(const Deformation& def, const LoadCase& loads, const QuadratureSpec& quad) {
  quad.validate();
  return integrate_boundary(def, loads, quad).work;
}

EnergyBreakdown total_energy(const Deformation& def, const MaterialModel& model, const LoadCase& loads, double h,
                             const QuadratureSpec& quad) {
  quad.validate();
  EnergyBreakdown e = assemble(def, model, loads, h, quad);
  if (quad.error_estimate) e.error_estimate = std::abs(e.excess - assemble(def, model, loads, h, quad.halved()).excess);
  return e;
}

EnergyBreakdown total_energy(const Deformation& def, const QuadratureSpec& quad) {
  return total_energy(def, def.model().base(), def.solution().loads, def.thickness(), quad);
}

std::string energy_csv_header() { return "mode,h,membrane,bending,boundary,total,E0,excess,err_est"; }

std::string energy_csv_row(const EnergyBreakdown& e) {
  std::ostringstream os;
  os << std::setprecision(17) << e.mode << ',' << e.thickness << ',' << e.membrane << ',' << e.bending << ','
     << e.boundary_work << ',' << e.total << ',' << e.relaxed_energy << ',' << e.excess << ',' << e.error_estimate;
  return os.str();
}

}  // namespace wrinkle
