#pragma once

#include "wrinkle/interpolation.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <memory>
#include <optional>
#include <string>

namespace wrinkle {

/// Isotropic 2D stored-energy density written in the principal stretches,
/// f(l1, l2), per unit reference area. Implementations are immutable.
class MaterialModel {
public:
  virtual ~MaterialModel() = default;

  virtual std::string name() const = 0;
  /// Overall stiffness scale C.
  virtual double stiffness() const = 0;
  /// Exponent p of the large-strain growth bound f >= C0 |l|^p - C1.
  virtual double growth_exponent() const { return 2.0; }

  virtual double value(double l1, double l2) const = 0;
  virtual Eigen::Vector2d gradient(double l1, double l2) const = 0;
  virtual Eigen::Matrix2d hessian(double l1, double l2) const = 0;

  /// Natural width in closed form when known; the generic root-finder is used otherwise.
  virtual std::optional<double> closed_form_width(double /*l1*/) const { return std::nullopt; }
};

using MaterialPtr = std::shared_ptr<const MaterialModel>;

/// Incompressible neo-Hookean sheet: f = C (l1^2 + l2^2 + l1^-2 l2^-2 - 3).
class NeoHookean final : public MaterialModel {
public:
  explicit NeoHookean(double stiffness = 1.0);

  std::string name() const override { return "neo_hookean"; }
  double stiffness() const override { return c_; }
  double value(double l1, double l2) const override;
  Eigen::Vector2d gradient(double l1, double l2) const override;
  Eigen::Matrix2d hessian(double l1, double l2) const override;
  std::optional<double> closed_form_width(double l1) const override;

private:
  double c_;
};

/// Neo-Hookean plus a bilinear coupling -beta (l1 - 1)(l2 - 1). For beta large
/// enough the cross partial turns negative; used to exercise the auditor.
class CoupledNeoHookean final : public MaterialModel {
public:
  CoupledNeoHookean(double stiffness, double coupling);

  std::string name() const override { return "coupled_neo_hookean"; }
  double stiffness() const override { return base_.stiffness(); }
  double coupling() const { return beta_; }
  double value(double l1, double l2) const override;
  Eigen::Vector2d gradient(double l1, double l2) const override;
  Eigen::Matrix2d hessian(double l1, double l2) const override;

private:
  NeoHookean base_;
  double beta_;
};

/// Isotropic 3D density in principal stretches, with the invariant form
/// g(I1, I2, J) exposed for the perpendicular-third-column criterion.
class Material3D {
public:
  virtual ~Material3D() = default;

  virtual std::string name() const = 0;
  virtual double value(double l1, double l2, double l3) const = 0;
  virtual Eigen::Vector3d gradient(double l1, double l2, double l3) const = 0;
  virtual Eigen::Matrix3d hessian(double l1, double l2, double l3) const = 0;

  /// g(I1, I2, J) with I1 = J^{-2/3} tr C, I2 = J^{-4/3} ((tr C)^2 - tr C^2) / 2.
  virtual double invariant_value(double i1, double i2, double j) const = 0;
  /// (dg/dI1, dg/dI2).
  virtual Eigen::Vector2d invariant_slopes(double i1, double i2, double j) const = 0;
};

using Material3DPtr = std::shared_ptr<const Material3D>;

/// Compressible neo-Hookean: mu (I1 - 3) + kappa (J - 1)^2.
class CompressibleNeoHookean3D final : public Material3D {
public:
  CompressibleNeoHookean3D(double mu, double kappa);

  std::string name() const override { return "compressible_neo_hookean"; }
  double mu() const { return mu_; }
  double kappa() const { return kappa_; }
  double value(double l1, double l2, double l3) const override;
  Eigen::Vector3d gradient(double l1, double l2, double l3) const override;
  Eigen::Matrix3d hessian(double l1, double l2, double l3) const override;
  double invariant_value(double i1, double i2, double j) const override;
  Eigen::Vector2d invariant_slopes(double i1, double i2, double j) const override;

private:
  double mu_;
  double kappa_;
};

struct ReducedValue {
  double energy;
  double third_stretch;
};

/// min over z > 0 of f3(l1, l2, z) and its minimizer. Restricting the third
/// column of the 3x3 gradient to the normal of the first two is exact when
/// dg/dI1, dg/dI2 >= 0, so the minimization is one-dimensional in z.
ReducedValue reduce_3d_to_2d(const Material3D& m3, double l1, double l2);

/// 2D density obtained by optimizing the missing third stretch of a 3D model.
class ReducedMaterial final : public MaterialModel {
public:
  explicit ReducedMaterial(Material3DPtr m3);

  std::string name() const override { return "reduced_" + m3_->name(); }
  double stiffness() const override;
  double value(double l1, double l2) const override;
  Eigen::Vector2d gradient(double l1, double l2) const override;
  Eigen::Matrix2d hessian(double l1, double l2) const override;
  const Material3D& parent() const { return *m3_; }

private:
  Material3DPtr m3_;
};

/// f(l1, l2) with argument checking; throws DomainError unless both stretches are positive.
double eval_f(const MaterialModel& model, double l1, double l2);

/// argmin_{t>0} f(l1, t) for l1 >= 1.
double natural_width(const MaterialModel& model, double l1);

/// Derivative of the natural width, -f12 / f22 at (l1, w(l1)).
double natural_width_slope(const MaterialModel& model, double l1);

/// w, w', w'' at l1 >= 1 (w'' by central differences of the analytic slope).
Jet natural_width_jet(const MaterialModel& model, double l1);

/// Force needed to uniaxially stretch a strip to l: H(l) = d1 f(l, w(l)).
double uniaxial_force(const MaterialModel& model, double l);

/// dH/dl = det D^2 f / f22 at (l, w(l)).
double uniaxial_stiffness(const MaterialModel& model, double l);

/// Inverse of the uniaxial force on (1, inf); H is strictly increasing there.
double uniaxial_stretch_for_force(const MaterialModel& model, double force);

/// Which branch of the relaxed density is active.
enum class TensionState {
  Taut,        // both stresses tensile, f_r = f
  Wrinkled1,   // tension along direction 1 only
  Wrinkled2,   // tension along direction 2 only
  Slack,       // no tension
};

/// Tension-field relaxation of a MaterialModel, extended to non-positive
/// stretches so the radial problem can be posed without sign constraints.
class RelaxedDensity {
public:
  explicit RelaxedDensity(MaterialPtr base);

  const MaterialModel& base() const { return *base_; }
  MaterialPtr base_ptr() const { return base_; }

  double width(double l1) const { return natural_width(*base_, l1); }

  TensionState state(double l1, double l2) const;
  double value(double l1, double l2) const;
  Eigen::Vector2d gradient(double l1, double l2) const;
  Eigen::Matrix2d hessian(double l1, double l2) const;

private:
  MaterialPtr base_;
};

double eval_fr(const RelaxedDensity& rel, double l1, double l2);

}  // namespace wrinkle
