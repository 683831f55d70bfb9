#include "wrinkle/wrinkle_curve.hpp"

#include "wrinkle/errors.hpp"
#include "wrinkle/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wrinkle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPanels = 32;
constexpr int kPanelPoints = 12;
constexpr double kPanelWidth = kTwoPi / kPanels;

// Slope of the mode mix and its partials.
struct Modes {
  double u;        // m_sigma
  double u_mix;    // m_sigma_alpha
  double u_sigma;  // m_sigma_sigma
};

Modes modes_cs(double c1, double s1, double mix) {
  const double c2 = c1 * c1 - s1 * s1, s2 = 2 * s1 * c1;
  return {(1 - mix) * c1 + 2 * mix * c2, -c1 + 2 * c2, -(1 - mix) * s1 - 4 * mix * s2};
}

Modes modes(double sigma, double mix) { return modes_cs(std::cos(sigma), std::sin(sigma), mix); }

// q - 1 and the partials of q in (A, alpha), q = sqrt(1 + A^2 m_sigma^2).
std::array<double, 6> integrands_md(const Modes& md, double a) {
  const double au2 = a * a * md.u * md.u;
  const double q = std::sqrt(1.0 + au2);
  const double q3 = q * q * q;
  return {au2 / (1.0 + q),
          a * md.u * md.u / q,
          a * a * md.u * md.u_mix / q,
          md.u * md.u / q3,
          a * md.u * md.u_mix * (2.0 + au2) / q3,
          a * a * md.u_mix * md.u_mix / q3};
}

std::array<double, 6> integrands(double sigma, double a, double mix) { return integrands_md(modes(sigma, mix), a); }

template <typename Fn>
void panel_sum(double lo, double hi, Fn&& fn) {
  const GaussRule& g = gauss_legendre(kPanelPoints);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  for (int k = 0; k < kPanelPoints; ++k) fn(mid + half * g.nodes[k], half * g.weights[k]);
}

// Gauss nodes of the full panels with their cosines and sines.
struct NodeTable {
  std::vector<double> w, c, s;
};

const NodeTable& node_table() {
  static const NodeTable table = [] {
    NodeTable t;
    for (int j = 0; j < kPanels; ++j) {
      panel_sum(j * kPanelWidth, (j + 1) * kPanelWidth, [&](double x, double w) {
        t.w.push_back(w);
        t.c.push_back(std::cos(x));
        t.s.push_back(std::sin(x));
      });
    }
    return t;
  }();
  return table;
}

// Period means of the integrands; only the first `count` entries are filled.
std::array<double, 6> period_means(double a, double mix, int count) {
  const NodeTable& t = node_table();
  std::array<double, 6> sum{};
  for (std::size_t k = 0; k < t.w.size(); ++k) {
    const auto v = integrands_md(modes_cs(t.c[k], t.s[k], mix), a);
    for (int i = 0; i < count; ++i) sum[i] += t.w[k] * v[i];
  }
  for (double& x : sum) x /= kTwoPi;
  return sum;
}

double solve_amplitude(double eps, double mix) {
  const double mean_u2 = 0.5 * ((1 - mix) * (1 - mix) + 4 * mix * mix);
  // sqrt(1 + x) - 1 <= x / 2 makes this a lower bound for the root.
  double a = std::sqrt(2.0 * eps / mean_u2);
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    const auto m = period_means(a, mix, 2);
    const double g = m[0] - eps;
    if (g > 0.0) hi = std::min(hi, a);
    else lo = std::max(lo, a);
    if (std::abs(g) <= 4e-16 * eps) return a;
    double next = a - g / m[1];
    if (!(next > lo && next < hi)) next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * a;
    if (std::abs(next - a) <= 1e-16 * a) return next;
    a = next;
  }
  std::ostringstream os;
  os << "CurveSection: amplitude root-find failed for eps=" << eps << ", alpha=" << mix;
  throw ConvergenceError(os.str(), a);
}

}  // namespace

double mean_excess(double amplitude, double mix) { return period_means(amplitude, mix, 1)[0]; }

CurveSection::CurveSection(double amplitude, double mix) : a_(amplitude), mix_(mix) {
  if (!(mix >= 0.0 && mix <= 1.0)) throw DomainError("CurveSection: mix must lie in [0, 1]");
  if (!std::isfinite(amplitude)) throw DomainError("CurveSection: amplitude must be finite");
  const NodeTable& t = node_table();
  cumulative_.assign(kPanels + 1, std::array<double, 6>{});
  for (int j = 0; j < kPanels; ++j) {
    cumulative_[j + 1] = cumulative_[j];
    for (int p = 0; p < kPanelPoints; ++p) {
      const std::size_t k = static_cast<std::size_t>(j * kPanelPoints + p);
      const auto v = integrands_md(modes_cs(t.c[k], t.s[k], mix_), a_);
      for (int i = 0; i < 6; ++i) cumulative_[j + 1][i] += t.w[k] * v[i];
    }
  }
  for (int i = 0; i < 6; ++i) mean_[i] = cumulative_.back()[i] / kTwoPi;
  eps_ = mean_[0];
  ajet_.value = a_;
  if (straight()) return;
  // Implicit derivatives of E(A, alpha) = eps.
  const double ea = mean_[1], em = mean_[2], eaa = mean_[3], eam = mean_[4], emm = mean_[5];
  ajet_.d_eps = 1.0 / ea;
  ajet_.d_mix = -em / ea;
  ajet_.d_eps_eps = -eaa * ajet_.d_eps * ajet_.d_eps / ea;
  ajet_.d_eps_mix = -(eaa * ajet_.d_eps * ajet_.d_mix + eam * ajet_.d_eps) / ea;
  ajet_.d_mix_mix = -(emm + 2 * eam * ajet_.d_mix + eaa * ajet_.d_mix * ajet_.d_mix) / ea;
}

CurveSection CurveSection::from_amplitude(double amplitude, double mix) { return CurveSection(amplitude, mix); }

CurveSection CurveSection::from_excess(double eps, double mix) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("CurveSection: excess must be >= 0");
  if (!(mix >= 0.0 && mix <= 1.0)) throw DomainError("CurveSection: mix must lie in [0, 1]");
  if (eps == 0.0) return CurveSection(0.0, mix);
  return CurveSection(solve_amplitude(eps, mix), mix);
}

double CurveSection::arc_excess(double sigma) const {
  const int j = std::min(kPanels - 1, std::max(0, static_cast<int>(sigma / kPanelWidth)));
  double sum = cumulative_[j][0];
  panel_sum(j * kPanelWidth, sigma, [&](double x, double w) {
    const Modes md = modes(x, mix_);
    const double au2 = a_ * a_ * md.u * md.u;
    sum += w * au2 / (1.0 + std::sqrt(1.0 + au2));
  });
  return sum;
}

std::array<double, 6> CurveSection::arc_partials(double sigma) const {
  const int j = std::min(kPanels - 1, std::max(0, static_cast<int>(sigma / kPanelWidth)));
  std::array<double, 6> sum = cumulative_[j];
  panel_sum(j * kPanelWidth, sigma, [&](double x, double w) {
    const auto v = integrands(x, a_, mix_);
    for (int i = 0; i < 6; ++i) sum[i] += w * v[i];
  });
  return sum;
}

double CurveSection::solve_sigma(double tau0) const {
  const double target = (1.0 + eps_) * tau0;
  double lo = 0.0, hi = kTwoPi;
  double s = tau0;
  for (int it = 0; it < 60; ++it) {
    const double f = s + arc_excess(s) - target;
    if (f > 0.0) hi = s;
    else lo = s;
    const Modes md = modes(s, mix_);
    const double q = std::sqrt(1.0 + a_ * a_ * md.u * md.u);
    double next = s - f / q;
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-15) return next;
    s = next;
  }
  return s;
}

CurveJet CurveSection::eval_amplitude(double tau) const {
  CurveJet jet;
  const double n = std::floor(tau / kTwoPi);
  const double tau0 = tau - kTwoPi * n;
  const double s = (a_ == 0.0) ? tau0 : solve_sigma(tau0);
  const auto k = arc_partials(s);
  const double e = mean_[0], ea = mean_[1], em = mean_[2], eaa = mean_[3], eam = mean_[4], emm = mean_[5];

  const Modes md = modes(s, mix_);
  const double au2 = a_ * a_ * md.u * md.u;
  const double q = std::sqrt(1.0 + au2);
  const double q_s = a_ * a_ * md.u * md.u_sigma / q;
  const double q_a = a_ * md.u * md.u / q;
  const double q_m = a_ * a_ * md.u * md.u_mix / q;

  // F(s; tau, A, alpha) = s + K(s; A, alpha) - (1 + E(A, alpha)) tau = 0.
  const Eigen::Vector3d fx(-(1.0 + e), k[1] - ea * tau0, k[2] - em * tau0);
  const Eigen::Vector3d fsx(0.0, q_a, q_m);
  Eigen::Matrix3d fxx;
  fxx << 0.0, -ea, -em,
         -ea, k[3] - eaa * tau0, k[4] - eam * tau0,
         -em, k[4] - eam * tau0, k[5] - emm * tau0;
  const Eigen::Vector3d sx = -fx / q;
  Eigen::Matrix3d sxx;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      sxx(i, j) = -(fxx(i, j) + fsx(i) * sx(j) + fsx(j) * sx(i) + q_s * sx(i) * sx(j)) / q;

  const double m = (1 - mix_) * std::sin(s) + mix_ * std::sin(2 * s);
  const double m_mix = -std::sin(s) + std::sin(2 * s);
  Eigen::Vector3d mx = md.u * sx;
  mx(2) += m_mix;
  Eigen::Matrix3d mxx = md.u_sigma * sx * sx.transpose() + md.u * sxx;
  for (int i = 0; i < 3; ++i) {
    mxx(i, 2) += md.u_mix * sx(i);
    mxx(2, i) += md.u_mix * sx(i);
  }

  jet.value = Eigen::Vector2d(s - tau0, a_ * m);
  jet.d1.row(0) = sx.transpose();
  jet.d1(0, 0) -= 1.0;
  jet.d1.row(1) = (a_ * mx).transpose();
  jet.d1(1, 1) += m;
  jet.d2[0] = sxx;
  jet.d2[1] = a_ * mxx;
  for (int i = 0; i < 3; ++i) {
    jet.d2[1](i, 1) += mx(i);
    jet.d2[1](1, i) += mx(i);
  }
  return jet;
}

CurveJet CurveSection::eval(double tau) const {
  if (straight()) return CurveJet{};
  const CurveJet x = eval_amplitude(tau);
  Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
  jac(1, 1) = ajet_.d_eps;
  jac(1, 2) = ajet_.d_mix;
  Eigen::Matrix3d ha = Eigen::Matrix3d::Zero();
  ha(1, 1) = ajet_.d_eps_eps;
  ha(1, 2) = ha(2, 1) = ajet_.d_eps_mix;
  ha(2, 2) = ajet_.d_mix_mix;
  CurveJet y;
  y.value = x.value;
  y.d1 = x.d1 * jac;
  for (int c = 0; c < 2; ++c) y.d2[c] = jac.transpose() * x.d2[c] * jac + x.d1(c, 1) * ha;
  return y;
}

Eigen::Vector2d CurveSection::point(double tau) const {
  if (straight()) return {tau, 0.0};
  const double n = std::floor(tau / kTwoPi);
  const double tau0 = tau - kTwoPi * n;
  const double s = solve_sigma(tau0);
  return {s + kTwoPi * n, a_ * ((1 - mix_) * std::sin(s) + mix_ * std::sin(2 * s))};
}

WrinkleCurve build_gamma(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    std::ostringstream os;
    os << "build_gamma: excess " << eps << " outside [0, 1]";
    throw DomainError(os.str());
  }
  return WrinkleCurve(CurveSection::from_excess(eps, 0.0));
}

ModulationJet modulate(const CurveJet& g, double scale, const Jet& p1, const Jet& p2) {
  ModulationJet m;
  m.value = scale * g.value;
  m.dt = g.d1.col(0);
  for (int c = 0; c < 2; ++c) {
    const Eigen::Matrix3d& h = g.d2[c];
    m.dtt(c) = h(0, 0) / scale;
    m.dx(c) = scale * (g.d1(c, 1) * p1.d1 + g.d1(c, 2) * p2.d1);
    m.dxt(c) = h(0, 1) * p1.d1 + h(0, 2) * p2.d1;
    m.dxx(c) = scale * (h(1, 1) * p1.d1 * p1.d1 + 2 * h(1, 2) * p1.d1 * p2.d1 + h(2, 2) * p2.d1 * p2.d1 +
                        g.d1(c, 1) * p1.d2 + g.d1(c, 2) * p2.d2);
  }
  return m;
}

DoublingStrip::DoublingStrip(std::function<Jet(double)> radial, std::function<Jet(double)> excess, double length,
                             double period)
    : radial_(std::move(radial)), excess_(std::move(excess)), l_(length), w_(period) {}

Jet DoublingStrip::blend(double s) const {
  const Jet b = plateau_blend((s - 0.25 * l_) / (0.5 * l_));
  return {b.value, b.d1 * 2.0 / l_, b.d2 * 4.0 / (l_ * l_)};
}

StripJet DoublingStrip::eval(double s, double t) const {
  const double c = w_ / kTwoPi;
  const Jet f = radial_(s);
  const Jet e = excess_(s);
  const Jet phi = blend(s);
  const CurveSection sec = CurveSection::from_excess(e.value, phi.value);
  const ModulationJet m = modulate(sec.eval(t / c), c, e, phi);
  StripJet out;
  out.value = {f.value, t + m.value(0), m.value(1)};
  out.ds = {f.d1, m.dx(0), m.dx(1)};
  out.dt = {0.0, 1.0 + m.dt(0), m.dt(1)};
  out.dss = {f.d2, m.dxx(0), m.dxx(1)};
  out.dst = {0.0, m.dxt(0), m.dxt(1)};
  out.dtt = {0.0, m.dtt(0), m.dtt(1)};
  return out;
}

DoublingStrip build_doubling_strip(std::function<Jet(double)> radial, std::function<Jet(double)> excess,
                                   double length, double period) {
  if (!(length > 0.0) || !(period > 0.0)) throw DomainError("build_doubling_strip: need l > 0 and w > 0");
  for (int i = 0; i <= 64; ++i) {
    const double s = length * i / 64.0;
    const double e = excess(s).value;
    if (!(e > 0.0)) {
      std::ostringstream os;
      os << "build_doubling_strip: excess must be positive on (0, l); e(" << s << ") = " << e;
      throw DomainError(os.str());
    }
  }
  return DoublingStrip(std::move(radial), std::move(excess), length, period);
}

}  // namespace wrinkle
