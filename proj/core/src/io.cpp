#include "wrinkle/io.hpp"

#include "wrinkle/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wrinkle {

using nlohmann::json;

namespace {

json null_if_nan(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json fit_json(const LogFit& f) {
  return {{"slope", f.slope}, {"prefactor", f.prefactor}, {"r2", f.r2}, {"rss", f.rss}, {"points", f.points}};
}

}  // namespace

void write_solution_csv(std::ostream& os, const RadialSolution& sol) {
  os << "r,v,dv,sigma_r,sigma_theta,relaxed\n" << std::setprecision(17);
  for (std::size_t i = 0; i < sol.r.size(); ++i)
    os << sol.r[i] << ',' << sol.v[i] << ',' << sol.dv[i] << ',' << sol.sigma_r[i] << ',' << sol.sigma_theta[i] << ','
       << (sol.relaxed[i] ? 1 : 0) << '\n';
}

std::string solution_summary_json(const RadialSolution& sol, const ValidationReport& report) {
  json j;
  j["loads"] = {{"r_in", sol.loads.r_in}, {"r_out", sol.loads.r_out}, {"t_in", sol.loads.t_in},
                {"t_out", sol.loads.t_out}};
  j["nodes"] = sol.r.size();
  j["relaxed_region"] = sol.free_boundary.has_value();
  if (sol.free_boundary) {
    j["free_boundary"] = *sol.free_boundary;
    j["excess_slope_at_L"] = sol.excess_slope_at_L;
  } else {
    j["free_boundary"] = nullptr;
    j["note"] = "no relaxed region";
  }
  j["relaxed_energy"] = sol.relaxed_energy;
  j["gradient_norm"] = sol.gradient_norm;
  j["el_residual"] = sol.el_residual;
  j["iterations"] = sol.iterations;
  j["v_inner"] = sol.v.front();
  j["v_outer"] = sol.v.back();
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", null_if_nan(c.value)}, {"tolerance", c.tolerance}});
  j["validation"] = {{"all_pass", report.all_pass()}, {"checks", checks}, {"dv_min", report.v_min},
                     {"dv_max", report.v_max}};
  return j.dump(2);
}

std::string deformation_summary_json(const Deformation& def) {
  json j;
  j["mode"] = to_string(def.mode());
  j["h"] = def.thickness();
  j["base_count"] = def.base_count();
  j["wrinkled_outer_radius"] = def.wrinkled_outer_radius();
  if (def.solution().free_boundary) j["free_boundary"] = *def.solution().free_boundary;
  j["breakpoints"] = def.breakpoints();
  if (const auto& plan = def.plan()) {
    json bands = json::array();
    for (const auto& b : plan->bands)
      bands.push_back({{"n", b.n}, {"start", b.start}, {"end", b.end}, {"length", b.length},
                       {"frequency", b.frequency}, {"period", b.period}, {"cutoff", b.cutoff}});
    j["cascade"] = {{"delta", plan->delta}, {"dyadic_level", plan->dyadic_level}, {"depth", plan->depth},
                    {"slope_min", plan->slope_min}, {"slope_max", plan->slope_max},
                    {"band_ratio", plan->band_ratio}, {"cutoff_radius", plan->cutoff_radius()}, {"bands", bands}};
  }
  if (const auto& s = def.shape()) {
    j["ansatz"] = {{"wavenumber", s->wavenumber}, {"amplitude_knots", s->amplitude_knots},
                   {"amplitude", s->amplitude}, {"correction_knots", s->correction_knots},
                   {"correction", s->correction}};
  }
  return j.dump(2);
}

std::string scaling_fit_json(const ScalingFit& fit) {
  json j;
  json modes = json::object();
  for (const auto& m : fit.modes) {
    json e = {{"h", m.h}, {"excess", m.excess}, {"dropped", m.dropped}};
    if (m.h.size() >= 2) {
      e["power_law"] = fit_json(m.power);
      e["linear"] = fit_json(m.linear);
      e["h_log"] = fit_json(m.h_log);
      e["residual_ratio_linear_over_hlog"] = m.residual_ratio;
    }
    modes[m.mode] = e;
  }
  j["modes"] = modes;
  j["naive_over_cascade"] = {{"h", fit.naive_cascade_h}, {"ratio", fit.naive_cascade_ratio},
                             {"increasing", fit.ratio_increasing}};
  return j.dump(2);
}

std::string ansatz_result_json(const MinimizeResult& res) {
  json scan = json::array();
  for (const auto& s : res.scan)
    scan.push_back({{"wavenumber", s.wavenumber}, {"search_excess", s.excess}, {"excess", s.final_excess},
                    {"gradient_norm", s.gradient_norm}, {"iterations", s.iterations}, {"exit", s.exit_reason}});
  const auto& b = res.best;
  json j;
  j["h"] = res.thickness;
  j["best_wavenumber"] = res.best_wavenumber;
  j["best"] = {{"membrane", b.membrane},   {"bending", b.bending}, {"boundary", b.boundary_work},
               {"total", b.total},         {"E0", b.relaxed_energy}, {"excess", b.excess},
               {"err_est", b.error_estimate}};
  j["zero_amplitude_excess"] = res.zero_amplitude_excess;
  j["gradient_norm"] = res.gradient_norm;
  j["shape"] = {{"amplitude_knots", res.best_shape.amplitude_knots}, {"amplitude", res.best_shape.amplitude},
                {"correction_knots", res.best_shape.correction_knots}, {"correction", res.best_shape.correction}};
  j["scan"] = scan;
  return j.dump(2);
}

void write_ansatz_trace_csv(std::ostream& os, const MinimizeResult& res) {
  os << "wavenumber,iteration,excess,gradient_norm,step\n" << std::setprecision(17);
  for (const auto& t : res.trace)
    os << t.wavenumber << ',' << t.iteration << ',' << t.excess << ',' << t.gradient_norm << ',' << t.step << '\n';
}

SurfaceMesh build_surface(const Deformation& def, int radial, int angular) {
  if (radial < 2 || angular < 3) throw DomainError("build_surface: need radial >= 2 and angular >= 3");
  int finest = def.base_count();
  if (const auto& plan = def.plan()) finest = plan->bands.back().frequency;
  SurfaceMesh mesh;
  if (finest > 0 && angular < 16 * finest) {
    angular = 16 * finest;
    mesh.clamped = true;
  }

  const RadialSolution& sol = def.solution();
  const double r0 = sol.inner_radius(), r1 = sol.outer_radius();
  std::vector<double> r = def.breakpoints();
  for (int i = 0; i < radial; ++i) r.push_back(r0 + (r1 - r0) * i / (radial - 1));
  std::sort(r.begin(), r.end());
  for (double x : r)
    if (mesh.r.empty() || x - mesh.r.back() > 1e-12) mesh.r.push_back(x);
  for (int j = 0; j < angular; ++j) mesh.theta.push_back(2.0 * std::numbers::pi * j / angular);

  const std::size_t nr = mesh.r.size(), nt = mesh.theta.size();
  mesh.vertices.resize(nr * nt);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < nr; ++i) {
    const RadialSection sec = def.section(mesh.r[i]);
    for (std::size_t j = 0; j < nt; ++j) mesh.vertices[i * nt + j] = def.eval(sec, mesh.theta[j]).u;
  }
  for (std::size_t i = 0; i + 1 < nr; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      const int a = static_cast<int>(i * nt + j), b = static_cast<int>(i * nt + (j + 1) % nt);
      const int c = static_cast<int>((i + 1) * nt + j), d = static_cast<int>((i + 1) * nt + (j + 1) % nt);
      mesh.faces.push_back({a, c, d});
      mesh.faces.push_back({a, d, b});
    }
  return mesh;
}

void write_obj(std::ostream& os, const SurfaceMesh& mesh) {
  os << "# annulus surface: " << mesh.r.size() << " radii x " << mesh.theta.size() << " angles\n"
     << std::setprecision(12);
  for (const auto& v : mesh.vertices) os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_surface_csv(std::ostream& os, const SurfaceMesh& mesh) {
  os << "r,theta,u1,u2,u3\n" << std::setprecision(12);
  const std::size_t nt = mesh.theta.size();
  for (std::size_t i = 0; i < mesh.r.size(); ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      const auto& v = mesh.vertices[i * nt + j];
      os << mesh.r[i] << ',' << mesh.theta[j] << ',' << v.x() << ',' << v.y() << ',' << v.z() << '\n';
    }
}

ObjData read_obj(std::istream& is) {
  ObjData out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(ls >> v.x() >> v.y() >> v.z())) throw DomainError("read_obj: bad vertex on line " + std::to_string(lineno));
      out.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int& k : f) {
        std::string tok;
        if (!(ls >> tok)) throw DomainError("read_obj: face with fewer than 3 vertices on line " + std::to_string(lineno));
        k = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      std::string extra;
      if (ls >> extra) throw DomainError("read_obj: only triangles are supported (line " + std::to_string(lineno) + ")");
      out.faces.push_back(f);
    }
  }
  for (const auto& f : out.faces)
    for (int k : f)
      if (k < 0 || k >= static_cast<int>(out.vertices.size())) throw DomainError("read_obj: face index out of range");
  return out;
}

}  // namespace wrinkle
