#include "wrinkle/config.hpp"

#include "wrinkle/cascade.hpp"
#include "wrinkle/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace wrinkle {

std::vector<double> SweepSpec::default_thicknesses() {
  std::vector<double> out;
  for (int e = 8; e <= 20; ++e) out.push_back(std::ldexp(1.0, -e));
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  // "2^-10" is accepted for thicknesses.
  if (t.rfind("2^", 0) == 0) return std::ldexp(1.0, static_cast<int>(to_double(key, t.substr(2))));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size() || !std::isfinite(v)) throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": not an integer: '" + text + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": not a boolean: '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;
using Schema = std::map<std::string, std::map<std::string, Setter>>;

template <class T>
Setter number(T RunConfig::*section, double T::*field) {
  return [=](RunConfig& c, const std::string& k, const std::string& v) { (c.*section).*field = to_double(k, v); };
}
template <class T>
Setter integer(T RunConfig::*section, int T::*field) {
  return [=](RunConfig& c, const std::string& k, const std::string& v) { (c.*section).*field = to_int(k, v); };
}
template <class T>
Setter flag(T RunConfig::*section, bool T::*field) {
  return [=](RunConfig& c, const std::string& k, const std::string& v) { (c.*section).*field = to_bool(k, v); };
}

const Schema& schema() {
  static const Schema s = [] {
    Schema m;
    m["material"]["model"] = [](RunConfig& c, const std::string&, const std::string& v) { c.material.model = trim(v); };
    m["material"]["stiffness"] = number(&RunConfig::material, &MaterialSpec::stiffness);
    m["material"]["coupling"] = number(&RunConfig::material, &MaterialSpec::coupling);
    m["material"]["mu"] = number(&RunConfig::material, &MaterialSpec::mu);
    m["material"]["kappa"] = number(&RunConfig::material, &MaterialSpec::kappa);

    m["loads"]["r_in"] = number(&RunConfig::loads, &LoadCase::r_in);
    m["loads"]["r_out"] = number(&RunConfig::loads, &LoadCase::r_out);
    m["loads"]["t_in"] = number(&RunConfig::loads, &LoadCase::t_in);
    m["loads"]["t_out"] = number(&RunConfig::loads, &LoadCase::t_out);

    m["solver"]["node_count"] = integer(&RunConfig::solver, &SolverConfig::node_count);
    m["solver"]["newton_tol"] = number(&RunConfig::solver, &SolverConfig::newton_tol);
    m["solver"]["max_iters"] = integer(&RunConfig::solver, &SolverConfig::max_iters);
    m["solver"]["continuation_steps"] = integer(&RunConfig::solver, &SolverConfig::continuation_steps);
    m["solver"]["refine_free_boundary"] = flag(&RunConfig::solver, &SolverConfig::refine_free_boundary);

    m["quadrature"]["radial_order"] = integer(&RunConfig::quadrature, &QuadratureSpec::radial_order);
    m["quadrature"]["angular_samples"] = integer(&RunConfig::quadrature, &QuadratureSpec::angular_samples);
    m["quadrature"]["subdivisions"] = integer(&RunConfig::quadrature, &QuadratureSpec::subdivisions);
    m["quadrature"]["exploit_periodicity"] = flag(&RunConfig::quadrature, &QuadratureSpec::exploit_periodicity);
    m["quadrature"]["error_estimate"] = flag(&RunConfig::quadrature, &QuadratureSpec::error_estimate);

    m["sweep"]["fixture"] = [](RunConfig& c, const std::string&, const std::string& v) { c.sweep.fixture = trim(v); };
    m["sweep"]["output_dir"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.sweep.output_dir = trim(v);
    };
    m["sweep"]["thicknesses"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.sweep.thicknesses.clear();
      for (const auto& t : split(v)) c.sweep.thicknesses.push_back(to_double(k, t));
    };
    m["sweep"]["modes"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.sweep.modes.clear();
      for (const auto& t : split(v)) c.sweep.modes.push_back(parse_mode(t));
    };

    m["audit"]["n1"] = integer(&RunConfig::audit, &AuditGrid::n1);
    m["audit"]["n2"] = integer(&RunConfig::audit, &AuditGrid::n2);
    m["audit"]["l1_min"] = number(&RunConfig::audit, &AuditGrid::l1_min);
    m["audit"]["l_max"] = number(&RunConfig::audit, &AuditGrid::l_max);
    m["audit"]["random_samples"] = integer(&RunConfig::audit, &AuditGrid::random_samples);
    m["audit"]["seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const double s = to_double(k, v);
      if (s < 0 || s != std::floor(s)) throw ConfigError(k + ": seed must be a non-negative integer");
      c.audit.seed = static_cast<std::uint64_t>(s);
    };

    m["ansatz"]["amplitude_knots"] = integer(&RunConfig::ansatz, &AnsatzConfig::amplitude_knots);
    m["ansatz"]["correction_knots"] = integer(&RunConfig::ansatz, &AnsatzConfig::correction_knots);
    m["ansatz"]["max_iters"] = integer(&RunConfig::ansatz, &AnsatzConfig::max_iters);
    m["ansatz"]["fd_step"] = number(&RunConfig::ansatz, &AnsatzConfig::fd_step);
    m["ansatz"]["wavenumber_factors"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.ansatz.wavenumber_factors.clear();
      for (const auto& t : split(v)) c.ansatz.wavenumber_factors.push_back(to_double(k, t));
    };
    return m;
  }();
  return s;
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  const MaterialSpec& m = cfg.material;
  if (m.model != "neo_hookean" && m.model != "coupled_neo_hookean" && m.model != "compressible_neo_hookean")
    throw ConfigError("material.model: unknown model '" + m.model +
                      "' (expected neo_hookean, coupled_neo_hookean or compressible_neo_hookean)");
  if (!(m.stiffness > 0.0)) throw ConfigError("material.stiffness: C must be positive");
  if (m.model == "compressible_neo_hookean" && (!(m.mu > 0.0) || !(m.kappa > 0.0)))
    throw ConfigError("material.mu, material.kappa: must be positive");
  try {
    cfg.loads.validate_geometry();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("loads: ") + e.what());
  }
  cfg.solver.validate();
  cfg.quadrature.validate();
  cfg.ansatz.validate();
  const auto& hs = cfg.sweep.thicknesses;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0) || hs[i] > kMaxThickness) {
      std::ostringstream os;
      os << "sweep.thicknesses: " << hs[i] << " outside (0, " << kMaxThickness << "]";
      throw ConfigError(os.str());
    }
    if (i > 0 && !(hs[i] < hs[i - 1])) throw ConfigError("sweep.thicknesses: must be strictly decreasing");
  }
  if (cfg.sweep.modes.empty()) throw ConfigError("sweep.modes: empty");
  if (cfg.audit.n1 < 2 || cfg.audit.n2 < 2) throw ConfigError("audit: n1, n2 must be >= 2");
  if (!(cfg.audit.l1_min > 1.0) || !(cfg.audit.l_max > cfg.audit.l1_min))
    throw ConfigError("audit: need 1 < l1_min < l_max");
  if (cfg.audit.random_samples < 0) throw ConfigError("audit.random_samples: must be >= 0");
}

RunConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  RunConfig cfg;
  cfg.sweep.thicknesses = SweepSpec::default_thicknesses();
  for (const auto& [section, body] : tree) {
    const auto sec = schema().find(section);
    if (sec == schema().end()) throw ConfigError("config: unknown section [" + section + "]");
    if (!body.data().empty()) throw ConfigError("config: key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      const auto set = sec->second.find(key);
      if (set == sec->second.end()) throw ConfigError("config: unknown key " + section + "." + key);
      set->second(cfg, section + "." + key, value.data());
    }
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  return parse_config(in);
}

MaterialPtr make_material(const MaterialSpec& spec) {
  if (!(spec.stiffness > 0.0)) throw ConfigError("material.stiffness: C must be positive");
  if (spec.model == "neo_hookean") return std::make_shared<NeoHookean>(spec.stiffness);
  if (spec.model == "coupled_neo_hookean") return std::make_shared<CoupledNeoHookean>(spec.stiffness, spec.coupling);
  if (spec.model == "compressible_neo_hookean")
    return std::make_shared<ReducedMaterial>(std::make_shared<CompressibleNeoHookean3D>(spec.mu, spec.kappa));
  throw ConfigError("material.model: unknown model '" + spec.model + "'");
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "[material]\nmodel = " << c.material.model << "\nstiffness = " << c.material.stiffness
     << "\ncoupling = " << c.material.coupling << "\nmu = " << c.material.mu << "\nkappa = " << c.material.kappa
     << "\n\n[loads]\nr_in = " << c.loads.r_in << "\nr_out = " << c.loads.r_out << "\nt_in = " << c.loads.t_in
     << "\nt_out = " << c.loads.t_out << "\n\n[solver]\nnode_count = " << c.solver.node_count
     << "\nnewton_tol = " << c.solver.newton_tol << "\nmax_iters = " << c.solver.max_iters
     << "\ncontinuation_steps = " << c.solver.continuation_steps
     << "\nrefine_free_boundary = " << (c.solver.refine_free_boundary ? "true" : "false")
     << "\n\n[quadrature]\nradial_order = " << c.quadrature.radial_order
     << "\nangular_samples = " << c.quadrature.angular_samples << "\nsubdivisions = " << c.quadrature.subdivisions
     << "\nexploit_periodicity = " << (c.quadrature.exploit_periodicity ? "true" : "false")
     << "\nerror_estimate = " << (c.quadrature.error_estimate ? "true" : "false") << "\n\n[sweep]\nfixture = "
     << c.sweep.fixture << "\noutput_dir = " << c.sweep.output_dir << "\nthicknesses = ";
  for (std::size_t i = 0; i < c.sweep.thicknesses.size(); ++i)
    os << (i ? ", " : "") << c.sweep.thicknesses[i];
  os << "\nmodes = ";
  for (std::size_t i = 0; i < c.sweep.modes.size(); ++i) os << (i ? ", " : "") << to_string(c.sweep.modes[i]);
  os << "\n\n[audit]\nn1 = " << c.audit.n1 << "\nn2 = " << c.audit.n2 << "\nl1_min = " << c.audit.l1_min
     << "\nl_max = " << c.audit.l_max << "\nrandom_samples = " << c.audit.random_samples
     << "\nseed = " << c.audit.seed << "\n\n[ansatz]\namplitude_knots = " << c.ansatz.amplitude_knots
     << "\ncorrection_knots = " << c.ansatz.correction_knots << "\nmax_iters = " << c.ansatz.max_iters
     << "\nfd_step = " << c.ansatz.fd_step << "\nwavenumber_factors = ";
  for (std::size_t i = 0; i < c.ansatz.wavenumber_factors.size(); ++i)
    os << (i ? ", " : "") << c.ansatz.wavenumber_factors[i];
  os << "\n";
  return os.str();
}

}  // namespace wrinkle
