#pragma once

#include "wrinkle/interpolation.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <vector>

namespace wrinkle {

/// Second-order jet of a point on a profile curve in three variables
/// (tau, p1, p2). The first component is stored as Gamma_1 - tau, which is
/// 2 pi-periodic, so large tau loses no precision.
struct CurveJet {
  Eigen::Vector2d value = Eigen::Vector2d::Zero();
  Eigen::Matrix<double, 2, 3> d1 = Eigen::Matrix<double, 2, 3>::Zero();
  std::array<Eigen::Matrix3d, 2> d2{Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()};
};

/// Partials of the amplitude A(eps, alpha) defined by mean(q - 1) = eps.
struct AmplitudeJet {
  double value = 0.0;
  double d_eps = 0.0, d_mix = 0.0;
  double d_eps_eps = 0.0, d_eps_mix = 0.0, d_mix_mix = 0.0;
};

/// A member of the profile family Gamma(eps, alpha, tau): the graph
/// sigma -> (sigma, A m(sigma)), m = (1 - alpha) sin sigma + alpha sin 2 sigma,
/// reparametrized by tau so that |d Gamma / d tau| = 1 + eps. Then
/// Gamma(tau + 2 pi) = Gamma(tau) + (2 pi, 0), Gamma(-tau) = -Gamma(tau), and
/// Gamma(eps, 1, tau) = Gamma(eps, 0, 2 tau) / 2.
class CurveSection {
public:
  /// Solves for the amplitude. eps = 0 gives the straight line.
  static CurveSection from_excess(double eps, double mix);
  static CurveSection from_amplitude(double amplitude, double mix);

  double excess() const { return eps_; }
  double amplitude() const { return a_; }
  double mix() const { return mix_; }
  bool straight() const { return a_ == 0.0; }

  /// A(eps, alpha) and its partials; all zero except the value on a straight section.
  const AmplitudeJet& amplitude_jet() const { return ajet_; }

  /// Jet in (tau, A, alpha): amplitude held as an independent variable.
  CurveJet eval_amplitude(double tau) const;
  /// Jet in (tau, eps, alpha). On a straight section the eps and alpha
  /// partials are reported as zero (A(eps) ~ 2 sqrt(eps) is singular there).
  CurveJet eval(double tau) const;

  /// Gamma itself (first component including tau).
  Eigen::Vector2d point(double tau) const;

  /// Mean excess and its partials in (A, alpha): E, E_A, E_alpha, E_AA, E_Aalpha, E_alphaalpha.
  const std::array<double, 6>& mean_excess() const { return mean_; }

private:
  CurveSection(double amplitude, double mix);
  double arc_excess(double sigma) const;                // int_0^sigma (q - 1)
  std::array<double, 6> arc_partials(double sigma) const;  // (q - 1, q_A, q_al, q_AA, q_Aal, q_alal) integrals
  double solve_sigma(double tau0) const;

  double a_ = 0.0;
  double mix_ = 0.0;
  double eps_ = 0.0;
  AmplitudeJet ajet_;
  std::array<double, 6> mean_{};
  std::vector<std::array<double, 6>> cumulative_;  // integrals at panel boundaries
};

/// Mean excess mean(q - 1) over a period for amplitude A and mix alpha.
double mean_excess(double amplitude, double mix);

/// The single-mode wrinkle curve gamma(eps) = Gamma(eps, 0, .).
class WrinkleCurve {
public:
  explicit WrinkleCurve(CurveSection section) : section_(std::move(section)) {}

  double excess() const { return section_.excess(); }
  double amplitude() const { return section_.amplitude(); }
  Eigen::Vector2d operator()(double t) const { return section_.point(t); }
  /// Jet in (t, eps, alpha).
  CurveJet jet(double t) const { return section_.eval(t); }
  const CurveSection& section() const { return section_; }

private:
  CurveSection section_;
};

/// Throws DomainError unless 0 <= eps <= 1.
WrinkleCurve build_gamma(double eps);

/// c Gamma(p1(x), p2(x), t / c) - (t, 0) and its partials in (x, t), for
/// parameters p1, p2 given as jets in x and a curve jet taken at tau = t / c.
struct ModulationJet {
  Eigen::Vector2d value, dx, dt, dxx, dxt, dtt;
};
ModulationJet modulate(const CurveJet& g, double scale, const Jet& p1, const Jet& p2);

/// Second-order jet of Psi(s, t) in R^3.
struct StripJet {
  Eigen::Vector3d value, ds, dt, dss, dst, dtt;
};

/// Period-doubling strip on (0, l) x R with period w in t:
/// Psi = (F(s), c Gamma(e(s), phi(s), t / c)), c = w / (2 pi), with phi a
/// monotone blend that is 0 on (0, l/4) and 1 on (3l/4, l).
class DoublingStrip {
public:
  DoublingStrip(std::function<Jet(double)> radial, std::function<Jet(double)> excess, double length, double period);

  double length() const { return l_; }
  double period() const { return w_; }
  Jet blend(double s) const;
  StripJet eval(double s, double t) const;

private:
  std::function<Jet(double)> radial_;
  std::function<Jet(double)> excess_;
  double l_;
  double w_;
};

/// Validates l, w > 0 and e > 0 on a sample of (0, l).
DoublingStrip build_doubling_strip(std::function<Jet(double)> radial, std::function<Jet(double)> excess,
                                   double length, double period);

}  // namespace wrinkle
