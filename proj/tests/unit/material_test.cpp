#include "fixture.hpp"

#include "wrinkle/errors.hpp"
#include "wrinkle/material.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace wrinkle;
using wrinkle::testing::Sampler;

namespace {

// Central differences of a scalar function of two variables.
Eigen::Vector2d fd_gradient(const std::function<double(double, double)>& f, double a, double b, double e) {
  return {(f(a + e, b) - f(a - e, b)) / (2 * e), (f(a, b + e) - f(a, b - e)) / (2 * e)};
}

double rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace

TEST(NeoHookean, ValueAtEqualStretch) {
  NeoHookean nh;
  // 2 (1.44) + 1 / 1.2^4 - 3
  EXPECT_NEAR(nh.value(1.2, 1.2), 2.88 + 1.0 / 2.0736 - 3.0, 1e-15);
  EXPECT_NEAR(nh.value(1.2, 1.2), 0.36225308641975, 1e-13);
  EXPECT_DOUBLE_EQ(nh.value(1.0, 1.0), 0.0);
}

TEST(NeoHookean, StiffnessScalesEverything) {
  NeoHookean a(1.0), b(2.5);
  EXPECT_NEAR(b.value(1.3, 0.9), 2.5 * a.value(1.3, 0.9), 1e-14);
  EXPECT_LT(rel_err(b.hessian(1.3, 0.9), 2.5 * a.hessian(1.3, 0.9)), 1e-14);
}

TEST(NeoHookean, ClosedFormWidthIsInverseSquareRoot) {
  NeoHookean nh;
  for (double l : {1.0, 1.1, 1.5, 2.0, 3.0}) EXPECT_NEAR(natural_width(nh, l), 1.0 / std::sqrt(l), 1e-15);
}

TEST(NeoHookean, GenericWidthMatchesClosedForm) {
  // Zero coupling has no closed form registered, so the root finder runs.
  CoupledNeoHookean plain(1.0, 0.0);
  for (double l : {1.05, 1.3, 2.0, 2.9}) EXPECT_NEAR(natural_width(plain, l), 1.0 / std::sqrt(l), 1e-12);
}

TEST(NeoHookean, UniaxialForceClosedForm) {
  NeoHookean nh;
  Sampler s(11);
  for (int i = 0; i < 100; ++i) {
    const double l = s.uniform(1.0, 3.0);
    EXPECT_NEAR(uniaxial_force(nh, l), 2 * l - 2 / (l * l), 1e-12);
    EXPECT_NEAR(uniaxial_stretch_for_force(nh, 2 * l - 2 / (l * l)), l, 1e-10);
  }
}

TEST(MaterialDerivatives, GradientAndHessianMatchFiniteDifferences) {
  Sampler s(7);
  const NeoHookean nh;
  const CoupledNeoHookean coupled(1.0, 0.3);
  const ReducedMaterial reduced(std::make_shared<CompressibleNeoHookean3D>(1.0, 10.0));
  for (const MaterialModel* m : {static_cast<const MaterialModel*>(&nh), static_cast<const MaterialModel*>(&coupled),
                                 static_cast<const MaterialModel*>(&reduced)}) {
    auto f = [&](double a, double b) { return m->value(a, b); };
    double worst_g = 0, worst_h = 0;
    for (int i = 0; i < 1000; ++i) {
      const double a = s.uniform(0.5, 3.0), b = s.uniform(0.5, 3.0), e = 1e-5;
      worst_g = std::max(worst_g, rel_err(m->gradient(a, b), fd_gradient(f, a, b, e)));
      Eigen::Matrix2d fd;
      fd.col(0) = (m->gradient(a + e, b) - m->gradient(a - e, b)) / (2 * e);
      fd.col(1) = (m->gradient(a, b + e) - m->gradient(a, b - e)) / (2 * e);
      worst_h = std::max(worst_h, rel_err(m->hessian(a, b), fd));
    }
    EXPECT_LT(worst_g, 1e-6) << m->name();
    EXPECT_LT(worst_h, 1e-6) << m->name();
  }
}

TEST(MaterialDerivatives, RejectsNonPositiveStretch) {
  NeoHookean nh;
  EXPECT_THROW(eval_f(nh, 0.0, 1.0), DomainError);
  EXPECT_THROW(eval_f(nh, 1.0, -0.5), DomainError);
  EXPECT_THROW(natural_width(nh, 0.9), DomainError);
}

TEST(Reduction, ThirdStretchRestoresIncompressibleLimit) {
  // Large bulk modulus: the optimal third stretch approaches 1 / (l1 l2).
  CompressibleNeoHookean3D stiff(1.0, 1e6);
  const ReducedValue rv = reduce_3d_to_2d(stiff, 1.3, 0.9);
  EXPECT_NEAR(rv.third_stretch, 1.0 / (1.3 * 0.9), 1e-5);
}

TEST(Reduction, IsTheMinimumOverTheThirdStretch) {
  CompressibleNeoHookean3D m(1.0, 5.0);
  Sampler s(3);
  for (int i = 0; i < 50; ++i) {
    const double a = s.uniform(0.7, 2.5), b = s.uniform(0.7, 2.5);
    const ReducedValue rv = reduce_3d_to_2d(m, a, b);
    EXPECT_NEAR(m.value(a, b, rv.third_stretch), rv.energy, 1e-13);
    for (double z : {0.98, 1.02}) EXPECT_LE(rv.energy, m.value(a, b, z * rv.third_stretch) + 1e-14);
  }
}

TEST(RelaxedDensity, NeverExceedsTheDensity) {
  const RelaxedDensity& rel = wrinkle::testing::neo_hookean();
  Sampler s(5);
  for (int i = 0; i < 2000; ++i) {
    const double a = s.uniform(0.2, 3.0), b = s.uniform(0.2, 3.0);
    EXPECT_LE(rel.value(a, b), rel.base().value(a, b) + 1e-12) << a << ", " << b;
  }
}

TEST(RelaxedDensity, BranchesByTension) {
  const RelaxedDensity& rel = wrinkle::testing::neo_hookean();
  EXPECT_EQ(rel.state(1.5, 1.4), TensionState::Taut);
  EXPECT_EQ(rel.state(1.5, 0.6), TensionState::Wrinkled1);
  EXPECT_EQ(rel.state(0.6, 1.5), TensionState::Wrinkled2);
  EXPECT_EQ(rel.state(0.7, 0.7), TensionState::Slack);
  EXPECT_DOUBLE_EQ(rel.value(0.7, 0.7), 0.0);
  // Wrinkled along 1: f_r = f(l1, w(l1)) = l1^2 + 2 / l1 - 3.
  EXPECT_NEAR(rel.value(1.5, 0.6), 1.5 * 1.5 + 2 / 1.5 - 3, 1e-13);
}

TEST(RelaxedDensity, GradientMatchesFiniteDifferencesAwayFromBranchEdges) {
  const RelaxedDensity& rel = wrinkle::testing::neo_hookean();
  auto f = [&](double a, double b) { return rel.value(a, b); };
  Sampler s(9);
  int tested = 0;
  while (tested < 1000) {
    const double a = s.uniform(0.3, 3.0), b = s.uniform(0.3, 3.0), e = 1e-6;
    // Skip points within 1e-3 of a branch switch.
    bool near_edge = false;
    for (double da : {-1e-3, 1e-3})
      for (double db : {-1e-3, 1e-3})
        if (rel.state(a + da, b + db) != rel.state(a, b)) near_edge = true;
    if (near_edge) continue;
    ++tested;
    EXPECT_LT(rel_err(rel.gradient(a, b), fd_gradient(f, a, b, e)), 1e-6) << a << ", " << b;
    Eigen::Matrix2d fd;
    fd.col(0) = (rel.gradient(a + e, b) - rel.gradient(a - e, b)) / (2 * e);
    fd.col(1) = (rel.gradient(a, b + e) - rel.gradient(a, b - e)) / (2 * e);
    EXPECT_LT(rel_err(rel.hessian(a, b), fd), 1e-6) << a << ", " << b;
  }
}

TEST(RelaxedDensity, IsContinuousAcrossTheWidthCurve) {
  const RelaxedDensity& rel = wrinkle::testing::neo_hookean();
  for (double l : {1.1, 1.6, 2.4}) {
    const double w = 1.0 / std::sqrt(l);
    EXPECT_NEAR(rel.value(l, w - 1e-9), rel.value(l, w + 1e-9), 1e-8);
  }
}
