#include "cli.hpp"

#include "wrinkle/ansatz.hpp"
#include "wrinkle/audit.hpp"
#include "wrinkle/cascade.hpp"
#include "wrinkle/config.hpp"
#include "wrinkle/deformation.hpp"
#include "wrinkle/energy.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/io.hpp"
#include "wrinkle/relaxed_solver.hpp"
#include "wrinkle/scaling_fit.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>

namespace wrinkle::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int workers = 0;
};

struct Target {
  std::string mode = "cascade";
  std::string h_text;
};

fs::path output_dir(const Common& c, const RunConfig& cfg) {
  fs::path dir = cfg.sweep.output_dir;
  if (const char* env = std::getenv("WRINKLE_OUTPUT_DIR"); env && *env) dir = env;
  if (!c.out_dir.empty()) dir = c.out_dir;
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

RunConfig load(const Common& c) {
  RunConfig cfg = load_config(c.config_path);
  if (c.seed) cfg.audit.seed = *c.seed;
  return cfg;
}

double parse_thickness(const std::string& text) {
  std::istringstream is("[sweep]\nthicknesses = " + text + "\n");
  RunConfig cfg = parse_config(is);
  if (cfg.sweep.thicknesses.size() != 1) throw ConfigError("--thickness: expected one value");
  return cfg.sweep.thicknesses.front();
}

std::shared_ptr<const RadialSolution> solve_fixture(const RunConfig& cfg, const RelaxedDensity& rel) {
  return std::make_shared<const RadialSolution>(solve_relaxed(rel, cfg.loads, cfg.solver));
}

struct Built {
  Deformation def;
  std::optional<MinimizeResult> ansatz;
};

Built build(DeformationMode mode, std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& rel, double h,
            const RunConfig& cfg) {
  if (mode != DeformationMode::Ansatz) return {build_deformation(mode, sol, rel, h), std::nullopt};
  AnsatzConfig ac = cfg.ansatz;
  ac.final_quadrature = cfg.quadrature;
  MinimizeResult res = minimize_ansatz(sol, rel, h, ac);
  Deformation def = build_ansatz(sol, rel, h, res.best_shape);
  return {std::move(def), std::move(res)};
}

EnergyBreakdown evaluate(const Built& b, const RunConfig& cfg, double h) {
  EnergyBreakdown e = b.ansatz ? b.ansatz->best : total_energy(b.def, cfg.quadrature);
  e.thickness = h;  // the planar map carries no thickness of its own
  return e;
}

int cmd_audit(const Common& c, std::ostream& out) {
  const RunConfig cfg = load(c);
  const fs::path dir = output_dir(c, cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const AuditReport rep = audit_hypotheses(*make_material(cfg.material), cfg.audit);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json j;
  j["model"] = rep.model;
  j["all_pass"] = rep.all_pass();
  j["runtime_s"] = secs;
  j["growth"] = {{"c0", rep.growth_c0}, {"c1", rep.growth_c1}};
  for (const auto& [name, s] : rep.summary)
    j["checks"][name] = {{"samples", s.samples},  {"failures", s.failures}, {"worst_margin", s.worst_margin},
                         {"worst_l1", s.worst_l1}, {"worst_l2", s.worst_l2}};
  open_out(dir / "audit_summary.json") << j.dump(2) << '\n';
  {
    auto os = open_out(dir / "audit_failures.csv");
    write_audit_csv(os, rep, true);
  }
  for (const auto& [name, s] : rep.summary)
    out << std::left << std::setw(28) << name << (s.failures ? "FAIL" : "ok") << "  (" << s.failures << '/'
        << s.samples << ")\n";
  out << (rep.all_pass() ? "all hypotheses hold" : "hypothesis violations written to audit_failures.csv") << '\n';
  return rep.all_pass() ? kExitOk : kExitFailure;
}

int cmd_solve(const Common& c, bool refine, std::ostream& out) {
  const RunConfig cfg = load(c);
  const fs::path dir = output_dir(c, cfg);
  const RelaxedDensity rel(make_material(cfg.material));
  const RadialSolution sol = solve_relaxed(rel, cfg.loads, cfg.solver);
  const ValidationReport rep = validate_solution(sol, rel);

  json j = json::parse(solution_summary_json(sol, rep));
  if (refine) {
    SolverConfig fine = cfg.solver;
    fine.node_count = 2 * cfg.solver.node_count;
    const RadialSolution sol2 = solve_relaxed(rel, cfg.loads, fine);
    json r = {{"nodes", sol2.r.size()}, {"relaxed_energy", sol2.relaxed_energy}};
    if (sol.free_boundary && sol2.free_boundary) {
      r["free_boundary"] = *sol2.free_boundary;
      r["free_boundary_rel_change"] = std::abs(*sol2.free_boundary - *sol.free_boundary) / *sol.free_boundary;
    }
    j["refinement"] = r;
  }
  {
    auto os = open_out(dir / "solution.csv");
    write_solution_csv(os, sol);
  }
  open_out(dir / "solution.json") << j.dump(2) << '\n';

  out << std::setprecision(10);
  if (sol.free_boundary)
    out << "L = " << *sol.free_boundary << ", excess slope at L = " << sol.excess_slope_at_L << '\n';
  else
    out << "no relaxed region\n";
  out << "E0 = " << sol.relaxed_energy << '\n';
  for (const auto& ch : rep.checks) out << "  " << std::left << std::setw(30) << ch.name << (ch.pass ? "ok" : "FAIL") << '\n';
  return rep.all_pass() ? kExitOk : kExitFailure;
}

int cmd_construct(const Common& c, const Target& t, std::ostream& out) {
  const RunConfig cfg = load(c);
  const fs::path dir = output_dir(c, cfg);
  const double h = parse_thickness(t.h_text);
  const DeformationMode mode = parse_mode(t.mode);
  const RelaxedDensity rel(make_material(cfg.material));
  const Built b = build(mode, solve_fixture(cfg, rel), rel, h, cfg);
  const std::string text = deformation_summary_json(b.def);
  open_out(dir / ("construction_" + t.mode + ".json")) << text << '\n';
  out << text << '\n';
  return kExitOk;
}

int cmd_energy(const Common& c, const Target& t, std::ostream& out) {
  const RunConfig cfg = load(c);
  const fs::path dir = output_dir(c, cfg);
  const double h = parse_thickness(t.h_text);
  const DeformationMode mode = parse_mode(t.mode);
  const RelaxedDensity rel(make_material(cfg.material));
  const Built b = build(mode, solve_fixture(cfg, rel), rel, h, cfg);
  const EnergyBreakdown e = evaluate(b, cfg, h);
  auto os = open_out(dir / ("energy_" + t.mode + ".csv"));
  os << energy_csv_header() << '\n' << energy_csv_row(e) << '\n';
  if (b.ansatz) {
    open_out(dir / "ansatz.json") << ansatz_result_json(*b.ansatz) << '\n';
    auto tr = open_out(dir / "ansatz_trace.csv");
    write_ansatz_trace_csv(tr, *b.ansatz);
  }
  out << energy_csv_header() << '\n' << energy_csv_row(e) << '\n';
  return kExitOk;
}

int cmd_sweep(const Common& c, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load(c);
  const fs::path dir = output_dir(c, cfg);
  const RelaxedDensity rel(make_material(cfg.material));
  const auto sol = solve_fixture(cfg, rel);

  std::vector<EnergyBreakdown> rows;
  json failures = json::array();
  auto csv = open_out(dir / "sweep.csv");
  csv << kSweepSchema << " fixture=" << cfg.sweep.fixture << '\n' << energy_csv_header() << '\n';
  const auto start = std::chrono::steady_clock::now();
  for (double h : cfg.sweep.thicknesses) {
    for (DeformationMode mode : cfg.sweep.modes) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Built b = build(mode, sol, rel, h, cfg);
        rows.push_back(evaluate(b, cfg, h));
        csv << energy_csv_row(rows.back()) << '\n' << std::flush;
        err << to_string(mode) << " h=2^" << std::lround(std::log2(h)) << " excess=" << rows.back().excess << " ("
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s)\n";
      } catch (const std::exception& e) {
        failures.push_back({{"mode", to_string(mode)}, {"h", h}, {"error", e.what()}});
        err << to_string(mode) << " h=" << h << " failed: " << e.what() << '\n';
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json j = json::parse(scaling_fit_json(fit_scaling(rows)));
  j["fixture"] = cfg.sweep.fixture;
  j["schema"] = kSweepSchema + 2;
  j["failures"] = failures;
  j["runtime_s"] = secs;
  j["workers"] = omp_get_max_threads();
  if (sol->free_boundary) j["free_boundary"] = *sol->free_boundary;
  j["solver_relaxed_energy"] = sol->relaxed_energy;
  open_out(dir / "sweep_fit.json") << j.dump(2) << '\n';

  out << rows.size() << " rows, " << failures.size() << " failures, " << std::fixed << std::setprecision(1) << secs
      << " s\n";
  for (const auto& m : j["modes"].items()) {
    if (!m.value().contains("power_law")) continue;
    out << std::defaultfloat << std::setprecision(4) << "  " << m.key()
        << ": slope " << m.value()["power_law"]["slope"].get<double>()
        << ", R^2 " << m.value()["power_law"]["r2"].get<double>() << '\n';
  }
  return failures.empty() ? kExitOk : kExitFailure;
}

int cmd_export(const Common& c, const Target& t, int radial, int angular, const std::string& obj,
               const std::string& csv, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load(c);
  const fs::path dir = output_dir(c, cfg);
  const double h = parse_thickness(t.h_text);
  const DeformationMode mode = parse_mode(t.mode);
  const RelaxedDensity rel(make_material(cfg.material));
  const Built b = build(mode, solve_fixture(cfg, rel), rel, h, cfg);
  const SurfaceMesh mesh = build_surface(b.def, radial, angular);
  if (mesh.clamped)
    err << "warning: angular resolution raised to " << mesh.theta.size() << " (16 samples per finest period)\n";
  if (!obj.empty()) {
    auto os = open_out(dir / obj);
    write_obj(os, mesh);
    out << "wrote " << (dir / obj).string() << '\n';
  }
  if (!csv.empty()) {
    auto os = open_out(dir / csv);
    write_surface_csv(os, mesh);
    out << "wrote " << (dir / csv).string() << '\n';
  }
  out << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " triangles\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Annular membrane wrinkling: relaxed solves, wrinkle constructions and energy scaling", "wrinkle"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--workers", common.workers, "Threads for quadrature (default: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", common.seed, "Seed for the audit's random samples");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", common.config_path, "Config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", common.out_dir, "Output directory");
  };
  Target target;
  auto add_target = [&](CLI::App* sub) {
    sub->add_option("--mode", target.mode, "planar, naive, cascade or ansatz")->capture_default_str();
    sub->add_option("--thickness", target.h_text, "Thickness h, e.g. 0.001 or 2^-10")->required();
  };

  auto* audit = app.add_subcommand("audit", "Check the structural hypotheses on the material density");
  add_common(audit);
  auto* solve = app.add_subcommand("solve", "Solve the radial relaxed problem");
  add_common(solve);
  bool refine = false;
  solve->add_flag("--refine", refine, "Also solve with twice the nodes and report the change in L");
  auto* construct = app.add_subcommand("construct", "Build a wrinkle construction and describe it");
  add_common(construct);
  add_target(construct);
  auto* energy = app.add_subcommand("energy", "Energy breakdown of one construction");
  add_common(energy);
  add_target(energy);
  auto* sweep = app.add_subcommand("sweep", "Energies over the configured thicknesses and scaling fits");
  add_common(sweep);
  auto* exp = app.add_subcommand("export-surface", "Write the deformed surface as OBJ or CSV");
  add_common(exp);
  add_target(exp);
  int radial = 64, angular = 256;
  std::string obj, csv;
  exp->add_option("--radial", radial, "Uniform radial samples (breakpoints are added)")->capture_default_str();
  exp->add_option("--angular", angular, "Angular samples")->capture_default_str();
  auto* obj_opt = exp->add_option("--obj", obj, "OBJ file name in the output directory");
  auto* csv_opt = exp->add_option("--csv", csv, "CSV file name in the output directory");
  exp->callback([&] {
    if (obj_opt->count() == 0 && csv_opt->count() == 0) throw CLI::ValidationError("export-surface", "give --obj or --csv");
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (common.workers > 0) omp_set_num_threads(common.workers);

  try {
    if (*audit) return cmd_audit(common, out);
    if (*solve) return cmd_solve(common, refine, out);
    if (*construct) return cmd_construct(common, target, out);
    if (*energy) return cmd_energy(common, target, out);
    if (*sweep) return cmd_sweep(common, out, err);
    if (*exp) return cmd_export(common, target, radial, angular, obj, csv, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InadmissibleLoadError& e) {
    err << e.what() << '\n';
    return kExitFailure;
  } catch (const IntegrandError& e) {
    err << "error: " << e.what() << " at r=" << e.radius() << ", theta=" << e.angle() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace wrinkle::cli
