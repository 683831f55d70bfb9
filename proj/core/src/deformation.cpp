#include "wrinkle/deformation.hpp"

#include "wrinkle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wrinkle {

std::string to_string(DeformationMode mode) {
  switch (mode) {
    case DeformationMode::Planar: return "planar";
    case DeformationMode::Naive: return "naive";
    case DeformationMode::Cascade: return "cascade";
    case DeformationMode::Ansatz: return "ansatz";
  }
  return "unknown";
}

DeformationMode parse_mode(const std::string& name) {
  if (name == "planar") return DeformationMode::Planar;
  if (name == "naive") return DeformationMode::Naive;
  if (name == "cascade") return DeformationMode::Cascade;
  if (name == "ansatz") return DeformationMode::Ansatz;
  throw ConfigError("unknown mode '" + name + "' (expected planar, naive, cascade or ansatz)");
}

Deformation::Deformation(DeformationMode mode, std::shared_ptr<const RadialSolution> sol, RelaxedDensity model,
                         double h)
    : mode_(mode), sol_(std::move(sol)), model_(std::move(model)), h_(h) {
  if (!sol_) throw DomainError("Deformation: null solution");
  L_ = sol_->free_boundary.value_or(sol_->inner_radius());
}

double Deformation::wrinkled_outer_radius() const {
  switch (mode_) {
    case DeformationMode::Planar: return sol_->inner_radius();
    case DeformationMode::Naive: return L_ - h_;
    case DeformationMode::Cascade: return plan_->cutoff_radius();
    case DeformationMode::Ansatz: return L_;
  }
  return L_;
}

std::vector<double> Deformation::breakpoints() const {
  const double r0 = sol_->inner_radius(), r1 = sol_->outer_radius();
  std::vector<double> out{r0, r1};
  if (sol_->free_boundary) out.push_back(L_);
  switch (mode_) {
    case DeformationMode::Planar: break;
    case DeformationMode::Naive: {
      // Geometric grading toward L - h (the wrinkled integrand grows like
      // 1/(L - r)) and toward L inside the boundary layer.
      for (double d = h_; L_ - d > r0; d *= 2.0) out.push_back(L_ - d);
      for (int j = 1; j <= 24; ++j) out.push_back(L_ - h_ * std::ldexp(1.0, -j));
      break;
    }
    case DeformationMode::Cascade: {
      out.push_back(plan_->zone_start());
      for (const CascadeBand& b : plan_->bands)
        for (double t : {0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0}) out.push_back(b.start + t * b.length);
      break;
    }
    case DeformationMode::Ansatz: {
      out.insert(out.end(), shape_->amplitude_knots.begin(), shape_->amplitude_knots.end());
      out.insert(out.end(), shape_->correction_knots.begin(), shape_->correction_knots.end());
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove_if(out.begin(), out.end(), [&](double r) { return r < r0 || r > r1; }), out.end());
  return out;
}

RadialSection Deformation::curve_section(double r, int frequency, Jet p1, Jet p2, Jet cutoff) const {
  RadialSection sec;
  sec.r = r;
  sec.flat = false;
  sec.frequency = frequency;
  sec.p1 = p1;
  sec.p2 = p2;
  sec.cutoff = cutoff;
  sec.curve = std::make_shared<const CurveSection>(CurveSection::from_excess(p1.value, p2.value));
  return sec;
}

RadialSection Deformation::section(double r) const {
  const double r0 = sol_->inner_radius(), r1 = sol_->outer_radius();
  if (!(r >= r0 - 1e-12 * r1 && r <= r1 * (1 + 1e-12))) {
    std::ostringstream os;
    os << "Deformation: radius " << r << " outside [" << r0 << ", " << r1 << "]";
    throw DomainError(os.str());
  }
  RadialSection flat;
  flat.r = r;
  flat.radius = sol_->profile.eval(r);
  const Jet one{1.0, 0.0, 0.0}, zero{0.0, 0.0, 0.0};

  switch (mode_) {
    case DeformationMode::Planar: return flat;

    case DeformationMode::Naive: {
      if (r >= L_) return flat;
      const Jet e = excess(r);
      if (!(e.value > 0.0)) return flat;
      Jet chi = one;
      if (r > L_ - h_) {
        const Jet s = smoothstep5((r - (L_ - h_)) / h_);
        chi = {1.0 - s.value, -s.d1 / h_, -s.d2 / (h_ * h_)};
      }
      RadialSection sec = curve_section(r, k_, e, zero, chi);
      sec.radius = flat.radius;
      return sec;
    }

    case DeformationMode::Cascade: {
      const CascadePlan& p = *plan_;
      if (r >= p.cutoff_radius()) return flat;
      const Jet e = excess(r);
      RadialSection sec;
      if (r < p.zone_start()) {
        sec = curve_section(r, k_, e, zero, one);
      } else {
        const auto it = std::find_if(p.bands.begin(), p.bands.end(), [&](const CascadeBand& b) { return r < b.end; });
        const CascadeBand& b = *it;
        if (!b.cutoff) {
          const Jet phi = plateau_blend((r - b.start - 0.25 * b.length) / (0.5 * b.length));
          const Jet mix{phi.value, phi.d1 * 2.0 / b.length, phi.d2 * 4.0 / (b.length * b.length)};
          sec = curve_section(r, b.frequency, e, mix, one);
        } else {
          const Jet s = smoothstep5((r - b.start) / b.length);
          const Jet chi{1.0 - s.value, -s.d1 / b.length, -s.d2 / (b.length * b.length)};
          sec = curve_section(r, b.frequency, e, zero, chi);
        }
      }
      sec.radius = flat.radius;
      return sec;
    }

    case DeformationMode::Ansatz: {
      const Jet dv = correction_.eval(r);
      flat.radius.value += dv.value;
      flat.radius.d1 += dv.d1;
      flat.radius.d2 += dv.d2;
      if (r >= L_) return flat;
      RadialSection sec;
      sec.r = r;
      sec.radius = flat.radius;
      sec.flat = false;
      sec.frequency = shape_->wavenumber;
      sec.p1 = amplitude_.eval(r);
      sec.p2 = zero;
      sec.by_amplitude = true;
      sec.curve = std::make_shared<const CurveSection>(CurveSection::from_amplitude(sec.p1.value, 0.0));
      return sec;
    }
  }
  return flat;
}

PointJet Deformation::eval(const RadialSection& sec, double theta) const {
  const double r = sec.r;
  const Jet& V = sec.radius;
  double P = 0, Pr = 0, Pt = 0, Q = 0, Qr = 0, Qt = 0, Qrr = 0, Qrt = 0, Qtt = 0;
  if (!sec.flat) {
    const double K = sec.frequency;
    const CurveJet g = sec.by_amplitude ? sec.curve->eval_amplitude(K * theta) : sec.curve->eval(K * theta);
    const ModulationJet m = modulate(g, 1.0 / K, sec.p1, sec.p2);
    const Jet& chi = sec.cutoff;
    P = chi.value * m.value(0);
    Pr = chi.d1 * m.value(0) + chi.value * m.dx(0);
    Pt = chi.value * m.dt(0);
    Q = chi.value * m.value(1);
    Qr = chi.d1 * m.value(1) + chi.value * m.dx(1);
    Qt = chi.value * m.dt(1);
    Qrr = chi.d2 * m.value(1) + 2 * chi.d1 * m.dx(1) + chi.value * m.dxx(1);
    Qrt = chi.d1 * m.dt(1) + chi.value * m.dxt(1);
    Qtt = chi.value * m.dtt(1);
  }
  const double Theta = theta + P;
  const double c = std::cos(Theta), s = std::sin(Theta);
  const double Theta_t = 1.0 + Pt;

  PointJet out;
  out.u = V.value * Eigen::Vector3d(c, s, Q);
  out.d_r = V.d1 * Eigen::Vector3d(c, s, Q) + V.value * Eigen::Vector3d(-s * Pr, c * Pr, Qr);
  out.d_theta = V.value * Eigen::Vector3d(-s * Theta_t, c * Theta_t, Qt);

  const double ct = std::cos(theta), st = std::sin(theta);
  const Eigen::Vector3d hoop = out.d_theta / r;
  out.grad.col(0) = out.d_r * ct - hoop * st;
  out.grad.col(1) = out.d_r * st + hoop * ct;

  const double U_r = V.d1 * Q + V.value * Qr;
  const double U_t = V.value * Qt;
  const double U_rr = V.d2 * Q + 2 * V.d1 * Qr + V.value * Qrr;
  const double U_rt = V.d1 * Qt + V.value * Qrt;
  const double U_tt = V.value * Qtt;
  Eigen::Matrix2d hp;
  hp(0, 0) = U_rr;
  hp(0, 1) = hp(1, 0) = U_rt / r - U_t / (r * r);
  hp(1, 1) = U_tt / (r * r) + U_r / r;
  out.hess_u3_polar = hp;
  Eigen::Matrix2d rot;
  rot << ct, -st, st, ct;
  out.hess_u3 = rot * hp * rot.transpose();
  return out;
}

PointJet Deformation::eval_planar(double r, double theta) const {
  RadialSection flat;
  flat.r = r;
  flat.radius = sol_->profile.eval(r);
  return eval(flat, theta);
}

Deformation build_planar(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model) {
  return Deformation(DeformationMode::Planar, std::move(sol), model, 0.0);
}

namespace {

void require_wrinkling(const RadialSolution& sol, const RelaxedDensity& model, const char* who) {
  if (!sol.free_boundary) throw DomainError(std::string(who) + ": solution has no relaxed region");
  const double e0 = excess_jet(sol, model, sol.inner_radius()).value;
  if (e0 > 1.0) {
    std::ostringstream os;
    os << who << ": excess arclength " << e0 << " at R_in exceeds 1";
    throw DomainError(os.str());
  }
}

}  // namespace

Deformation build_naive(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h) {
  check_thickness(h);
  require_wrinkling(*sol, model, "build_naive");
  Deformation d(DeformationMode::Naive, std::move(sol), model, h);
  if (!(d.L_ - h > d.sol_->inner_radius())) throw DomainError("build_naive: boundary layer wider than the relaxed region");
  d.k_ = base_wrinkle_count(h);
  return d;
}

Deformation build_cascade(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h) {
  check_thickness(h);
  require_wrinkling(*sol, model, "build_cascade");
  Deformation d(DeformationMode::Cascade, std::move(sol), model, h);
  d.plan_ = plan_cascade(*d.sol_, model, h);
  d.k_ = d.plan_->base_count;
  return d;
}

Deformation build_ansatz(std::shared_ptr<const RadialSolution> sol, const RelaxedDensity& model, double h,
                         AnsatzShape shape) {
  if (!sol->free_boundary) throw DomainError("build_ansatz: solution has no relaxed region");
  if (shape.wavenumber < 1) throw DomainError("build_ansatz: wavenumber must be >= 1");
  auto check_knots = [](const std::vector<double>& x, const std::vector<double>& y, double a, double b,
                        const char* what) {
    if (x.size() < 2 || x.size() != y.size())
      throw DomainError(std::string("build_ansatz: ") + what + " needs >= 2 knots with matching values");
    if (std::abs(x.front() - a) > 1e-12 * b || std::abs(x.back() - b) > 1e-12 * b)
      throw DomainError(std::string("build_ansatz: ") + what + " knots must span the required interval");
  };
  const double L = *sol->free_boundary;
  check_knots(shape.amplitude_knots, shape.amplitude, sol->inner_radius(), L, "amplitude");
  check_knots(shape.correction_knots, shape.correction, sol->inner_radius(), sol->outer_radius(), "correction");
  shape.amplitude.back() = 0.0;
  shape.correction.back() = 0.0;

  Deformation d(DeformationMode::Ansatz, std::move(sol), model, h);
  d.k_ = shape.wavenumber;
  d.amplitude_ = CubicHermite(shape.amplitude_knots, shape.amplitude,
                              spline_slopes(shape.amplitude_knots, shape.amplitude, SplineEnd::natural(),
                                            SplineEnd::clamp(0.0)));
  d.correction_ = CubicHermite(shape.correction_knots, shape.correction,
                               natural_spline_slopes(shape.correction_knots, shape.correction));
  d.shape_ = std::move(shape);
  return d;
}

Deformation build_deformation(DeformationMode mode, std::shared_ptr<const RadialSolution> sol,
                              const RelaxedDensity& model, double h) {
  switch (mode) {
    case DeformationMode::Planar: return build_planar(std::move(sol), model);
    case DeformationMode::Naive: return build_naive(std::move(sol), model, h);
    case DeformationMode::Cascade: return build_cascade(std::move(sol), model, h);
    case DeformationMode::Ansatz: break;
  }
  throw DomainError("build_deformation: the ansatz mode needs a shape; use build_ansatz");
}

PointJet eval_deformation(const Deformation& def, double r, double theta) {
  return def.eval(def.section(r), theta);
}

}  // namespace wrinkle
