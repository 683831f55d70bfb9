#include "wrinkle/material.hpp"

#include "wrinkle/errors.hpp"
#include "wrinkle/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wrinkle {

// ---------------------------------------------------------------------------
// Neo-Hookean family

NeoHookean::NeoHookean(double stiffness) : c_(stiffness) {
  if (!(stiffness > 0.0)) throw DomainError("neo-Hookean stiffness must be positive");
}

double NeoHookean::value(double a, double b) const {
  return c_ * (a * a + b * b + 1.0 / (a * a * b * b) - 3.0);
}

Eigen::Vector2d NeoHookean::gradient(double a, double b) const {
  const double inv = 1.0 / (a * a * b * b);
  return {2.0 * c_ * (a - inv / a), 2.0 * c_ * (b - inv / b)};
}

Eigen::Matrix2d NeoHookean::hessian(double a, double b) const {
  const double inv = 1.0 / (a * a * b * b);
  Eigen::Matrix2d h;
  h(0, 0) = 2.0 * c_ * (1.0 + 3.0 * inv / (a * a));
  h(1, 1) = 2.0 * c_ * (1.0 + 3.0 * inv / (b * b));
  h(0, 1) = h(1, 0) = 4.0 * c_ * inv / (a * b);
  return h;
}

std::optional<double> NeoHookean::closed_form_width(double l1) const { return 1.0 / std::sqrt(l1); }

CoupledNeoHookean::CoupledNeoHookean(double stiffness, double coupling)
    : base_(stiffness), beta_(coupling) {}

double CoupledNeoHookean::value(double a, double b) const {
  return base_.value(a, b) - beta_ * (a - 1.0) * (b - 1.0);
}

Eigen::Vector2d CoupledNeoHookean::gradient(double a, double b) const {
  Eigen::Vector2d g = base_.gradient(a, b);
  g(0) -= beta_ * (b - 1.0);
  g(1) -= beta_ * (a - 1.0);
  return g;
}

Eigen::Matrix2d CoupledNeoHookean::hessian(double a, double b) const {
  Eigen::Matrix2d h = base_.hessian(a, b);
  h(0, 1) -= beta_;
  h(1, 0) -= beta_;
  return h;
}

// ---------------------------------------------------------------------------
// 3D model and reduction

CompressibleNeoHookean3D::CompressibleNeoHookean3D(double mu, double kappa) : mu_(mu), kappa_(kappa) {
  if (!(mu > 0.0) || !(kappa > 0.0)) throw DomainError("compressible neo-Hookean needs mu, kappa > 0");
}

double CompressibleNeoHookean3D::value(double l1, double l2, double l3) const {
  const double j = l1 * l2 * l3;
  const double s = l1 * l1 + l2 * l2 + l3 * l3;
  return mu_ * (std::pow(j, -2.0 / 3.0) * s - 3.0) + kappa_ * (j - 1.0) * (j - 1.0);
}

Eigen::Vector3d CompressibleNeoHookean3D::gradient(double l1, double l2, double l3) const {
  const Eigen::Vector3d l(l1, l2, l3);
  const double j = l1 * l2 * l3;
  const double s = l.squaredNorm();
  const double a = std::pow(j, -2.0 / 3.0);
  Eigen::Vector3d g;
  for (int i = 0; i < 3; ++i) {
    g(i) = mu_ * a * (2.0 * l(i) - 2.0 * s / (3.0 * l(i))) + 2.0 * kappa_ * (j * j - j) / l(i);
  }
  return g;
}

Eigen::Matrix3d CompressibleNeoHookean3D::hessian(double l1, double l2, double l3) const {
  const Eigen::Vector3d l(l1, l2, l3);
  const double j = l1 * l2 * l3;
  const double s = l.squaredNorm();
  const double a = std::pow(j, -2.0 / 3.0);
  Eigen::Matrix3d h;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      const double d = (i == k) ? 1.0 : 0.0;
      const double iso = (-2.0 / 3.0) * a / l(k) * (2.0 * l(i) - 2.0 * s / (3.0 * l(i))) +
                         a * (2.0 * d - 4.0 * l(k) / (3.0 * l(i)) + d * 2.0 * s / (3.0 * l(i) * l(i)));
      const double vol = (2.0 * j * j - j) / (l(i) * l(k)) - d * (j * j - j) / (l(i) * l(i));
      h(i, k) = mu_ * iso + 2.0 * kappa_ * vol;
    }
  }
  return h;
}

double CompressibleNeoHookean3D::invariant_value(double i1, double /*i2*/, double j) const {
  return mu_ * (i1 - 3.0) + kappa_ * (j - 1.0) * (j - 1.0);
}

Eigen::Vector2d CompressibleNeoHookean3D::invariant_slopes(double, double, double) const { return {mu_, 0.0}; }

namespace {

double third_partial(const Material3D& m3, double l1, double l2, double z) { return m3.gradient(l1, l2, z)(2); }

}  // namespace

ReducedValue reduce_3d_to_2d(const Material3D& m3, double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) throw DomainError("reduce_3d_to_2d: stretches must be positive");

  // d3 f is negative for small z and positive for large z; bracket then
  // Newton with bisection fallback.
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (third_partial(m3, l1, l2, lo) > 0.0) {
    lo *= 0.5;
    if (++guard > 200) throw ConvergenceError("reduce_3d_to_2d: lower bracket not found", lo);
  }
  guard = 0;
  while (third_partial(m3, l1, l2, hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 200) throw ConvergenceError("reduce_3d_to_2d: upper bracket not found", hi);
  }

  double z = 0.5 * (lo + hi);
  double g = third_partial(m3, l1, l2, z);
  // Residual scale: |d33 f| z, so that stiff bulk moduli are judged fairly.
  double scale = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double h33 = m3.hessian(l1, l2, z)(2, 2);
    scale = std::max(1.0, std::abs(h33) * z);
    if (std::abs(g) <= 1e-14 * scale) break;
    if (g < 0.0) lo = z; else hi = z;
    double next = (h33 > 0.0) ? z - g / h33 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    z = next;
    g = third_partial(m3, l1, l2, z);
    if (hi - lo <= 1e-15 * hi) break;
  }
  if (std::abs(g) > 1e-10 * scale) throw ConvergenceError("reduce_3d_to_2d: no convergence", std::abs(g));
  return {m3.value(l1, l2, z), z};
}

ReducedMaterial::ReducedMaterial(Material3DPtr m3) : m3_(std::move(m3)) {
  if (!m3_) throw DomainError("ReducedMaterial needs a 3D model");
}

double ReducedMaterial::stiffness() const {
  // Small-strain shear-like scale: one quarter of the reduced d11 f at the identity.
  return 0.25 * hessian(1.0, 1.0)(0, 0);
}

double ReducedMaterial::value(double l1, double l2) const { return reduce_3d_to_2d(*m3_, l1, l2).energy; }

Eigen::Vector2d ReducedMaterial::gradient(double l1, double l2) const {
  const double z = reduce_3d_to_2d(*m3_, l1, l2).third_stretch;
  const Eigen::Vector3d g = m3_->gradient(l1, l2, z);
  return {g(0), g(1)};
}

Eigen::Matrix2d ReducedMaterial::hessian(double l1, double l2) const {
  const double z = reduce_3d_to_2d(*m3_, l1, l2).third_stretch;
  const Eigen::Matrix3d h = m3_->hessian(l1, l2, z);
  // Envelope: z = z(l1, l2) with d3 f = 0, dz/dli = -h_i3 / h_33.
  Eigen::Matrix2d r;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) r(i, k) = h(i, k) - h(i, 2) * h(k, 2) / h(2, 2);
  return r;
}

// ---------------------------------------------------------------------------
// Scalar operations

double eval_f(const MaterialModel& model, double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) {
    std::ostringstream os;
    os << "eval_f: stretches must be positive, got (" << l1 << ", " << l2 << ")";
    throw DomainError(os.str());
  }
  return model.value(l1, l2);
}

double natural_width(const MaterialModel& model, double l1) {
  if (!(l1 >= 1.0 - 1e-14)) throw DomainError("natural_width: first stretch must be >= 1");
  if (l1 <= 1.0) return 1.0;
  if (auto w = model.closed_form_width(l1)) return *w;

  auto d2 = [&](double t) { return model.gradient(l1, t)(1); };
  double lo = 1e-6, hi = l1;
  if (!(d2(lo) < 0.0 && d2(hi) > 0.0)) {
    throw ConvergenceError("natural_width: no bracket in [1e-6, l1]", std::abs(d2(hi)));
  }
  double t = std::clamp(1.0 / std::sqrt(l1), lo, hi);
  double g = d2(t);
  for (int it = 0; it < 200 && std::abs(g) > 1e-13; ++it) {
    if (g < 0.0) lo = t; else hi = t;
    const double h22 = model.hessian(l1, t)(1, 1);
    double next = (h22 > 0.0) ? t - g / h22 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
    g = d2(t);
    if (hi - lo < 1e-16) break;
  }
  if (std::abs(g) > 1e-10) throw ConvergenceError("natural_width: Newton/bisection stalled", std::abs(g));
  return t;
}

double natural_width_slope(const MaterialModel& model, double l1) {
  if (l1 <= 1.0) l1 = 1.0;
  const double w = natural_width(model, l1);
  const Eigen::Matrix2d h = model.hessian(l1, w);
  return -h(0, 1) / h(1, 1);
}

Jet natural_width_jet(const MaterialModel& model, double l1) {
  const double d = 1e-4 * l1;
  const double lo = std::max(1.0, l1 - d), hi = l1 + d;
  return {natural_width(model, l1), natural_width_slope(model, l1),
          (natural_width_slope(model, hi) - natural_width_slope(model, lo)) / (hi - lo)};
}

double uniaxial_force(const MaterialModel& model, double l) {
  if (!(l >= 1.0)) throw DomainError("uniaxial_force: stretch must be >= 1");
  return model.gradient(l, natural_width(model, l))(0);
}

double uniaxial_stiffness(const MaterialModel& model, double l) {
  const double w = natural_width(model, std::max(l, 1.0));
  const Eigen::Matrix2d h = model.hessian(std::max(l, 1.0), w);
  return h.determinant() / h(1, 1);
}

double uniaxial_stretch_for_force(const MaterialModel& model, double force) {
  if (!(force > 0.0)) throw DomainError("uniaxial_stretch_for_force: force must be positive");
  double lo = 1.0, hi = 2.0;
  int guard = 0;
  while (uniaxial_force(model, hi) < force) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 100) throw ConvergenceError("uniaxial_stretch_for_force: no bracket", force);
  }
  double l = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double r = uniaxial_force(model, l) - force;
    if (std::abs(r) <= 1e-15 * std::max(1.0, force)) break;
    if (r < 0.0) lo = l; else hi = l;
    double next = l - r / uniaxial_stiffness(model, l);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == l) break;
    l = next;
  }
  return l;
}

// ---------------------------------------------------------------------------
// Relaxed density

RelaxedDensity::RelaxedDensity(MaterialPtr base) : base_(std::move(base)) {
  if (!base_) throw DomainError("RelaxedDensity needs a base model");
}

TensionState RelaxedDensity::state(double l1, double l2) const {
  l1 = std::abs(l1);
  if (l2 <= 0.0) return l1 > 1.0 ? TensionState::Wrinkled1 : TensionState::Slack;
  if (l1 <= 1.0 && l2 <= 1.0) return TensionState::Slack;
  if (l1 > 1.0 && l2 < width(l1)) return TensionState::Wrinkled1;
  if (l2 > 1.0 && l1 < width(l2)) return TensionState::Wrinkled2;
  return TensionState::Taut;
}

double RelaxedDensity::value(double l1, double l2) const {
  const double a = std::abs(l1);
  switch (state(l1, l2)) {
    case TensionState::Slack: return 0.0;
    case TensionState::Wrinkled1: return base_->value(a, width(a));
    case TensionState::Wrinkled2: return base_->value(l2, width(l2));
    case TensionState::Taut: break;
  }
  return base_->value(a, l2);
}

Eigen::Vector2d RelaxedDensity::gradient(double l1, double l2) const {
  const double a = std::abs(l1);
  const double sign = l1 < 0.0 ? -1.0 : 1.0;
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  switch (state(l1, l2)) {
    case TensionState::Slack: return g;
    case TensionState::Wrinkled1: g(0) = uniaxial_force(*base_, a); break;
    case TensionState::Wrinkled2: g(1) = uniaxial_force(*base_, l2); break;
    case TensionState::Taut: g = base_->gradient(a, l2); break;
  }
  g(0) *= sign;
  return g;
}

Eigen::Matrix2d RelaxedDensity::hessian(double l1, double l2) const {
  const double a = std::abs(l1);
  const double sign = l1 < 0.0 ? -1.0 : 1.0;
  Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
  switch (state(l1, l2)) {
    case TensionState::Slack: return h;
    case TensionState::Wrinkled1: h(0, 0) = uniaxial_stiffness(*base_, a); break;
    case TensionState::Wrinkled2: h(1, 1) = uniaxial_stiffness(*base_, l2); break;
    case TensionState::Taut: h = base_->hessian(a, l2); break;
  }
  h(0, 1) *= sign;
  h(1, 0) *= sign;
  return h;
}

double eval_fr(const RelaxedDensity& rel, double l1, double l2) { return rel.value(l1, l2); }

}  // namespace wrinkle
