#include "fixture.hpp"

#include "wrinkle/errors.hpp"
#include "wrinkle/wrinkle_curve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wrinkle;
using wrinkle::testing::Sampler;
using std::numbers::pi;

namespace {

// Amplitude oracle: bisection on the trapezoid mean of sqrt(1 + A^2 m'^2) - 1
// (spectrally accurate for the periodic integrand), frozen.
struct AmplitudeCase {
  double eps, mix, amplitude;
};
constexpr AmplitudeCase kAmplitudes[] = {
    {1e-4, 0.0, 0.020000749973440}, {1e-3, 0.0, 0.063269261894099}, {1e-2, 0.0, 0.200747368993487},
    {1e-1, 0.0, 0.655404048491617}, {1e-4, 0.5, 0.017889429231843}, {1e-3, 0.5, 0.056596521495104},
    {1e-2, 0.5, 0.179763974036701}, {1e-1, 0.5, 0.591843536910637},
};

Eigen::Vector2d tangent(const CurveJet& j) { return j.d1.col(0) + Eigen::Vector2d(1.0, 0.0); }

}  // namespace

TEST(WrinkleCurve, AmplitudeMatchesOracle) {
  for (const auto& c : kAmplitudes)
    EXPECT_NEAR(CurveSection::from_excess(c.eps, c.mix).amplitude(), c.amplitude, 1e-11) << c.eps << " " << c.mix;
}

TEST(WrinkleCurve, AmplitudeOverRootExcessTendsToTwo) {
  const double ratio = build_gamma(1e-4).amplitude() / std::sqrt(1e-4);
  EXPECT_NEAR(ratio, 2.0, 0.02 * 2.0);
  EXPECT_NEAR(ratio, 2.000074997344028, 1e-9);
}

TEST(WrinkleCurve, SpeedIsOnePlusExcess) {
  Sampler s(21);
  for (double eps : {1e-4, 1e-3, 1e-2, 1e-1}) {
    const WrinkleCurve g = build_gamma(eps);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(tangent(g.jet(s.uniform(-10.0, 10.0))).norm() - (1 + eps)));
    EXPECT_LE(worst, 1e-8) << eps;
  }
}

TEST(WrinkleCurve, MixedSectionsAlsoHaveConstantSpeed) {
  Sampler s(22);
  for (int i = 0; i < 50; ++i) {
    const double eps = s.log_uniform(1e-4, 0.2), mix = s.uniform(0.0, 1.0);
    const CurveSection c = CurveSection::from_excess(eps, mix);
    EXPECT_NEAR(tangent(c.eval(s.uniform(0.0, 2 * pi))).norm(), 1 + eps, 1e-8);
  }
}

TEST(WrinkleCurve, PeriodicityOddnessAndDoubling) {
  Sampler s(23);
  for (int i = 0; i < 200; ++i) {
    const double eps = s.log_uniform(1e-4, 0.2), t = s.uniform(-7.0, 7.0);
    const CurveSection c0 = CurveSection::from_excess(eps, 0.0), c1 = CurveSection::from_excess(eps, 1.0);
    EXPECT_LT((c0.point(t + 2 * pi) - c0.point(t) - Eigen::Vector2d(2 * pi, 0)).norm(), 1e-12);
    EXPECT_LT((c0.point(-t) + c0.point(t)).norm(), 1e-12);
    EXPECT_LT((c1.point(t) - 0.5 * c0.point(2 * t)).norm(), 1e-10);
  }
}

TEST(WrinkleCurve, JetMatchesFiniteDifferences) {
  Sampler s(24);
  double worst1 = 0.0, worst2 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double eps = s.log_uniform(1e-3, 0.2), mix = s.uniform(0.05, 0.95), t = s.uniform(-4.0, 4.0);
    const Eigen::Vector3d p(t, eps, mix);
    auto jet = [](const Eigen::Vector3d& q) { return CurveSection::from_excess(q(1), q(2)).eval(q(0)); };
    const CurveJet j = jet(p);
    for (int k = 0; k < 3; ++k) {
      const double e = 1e-5 * (k == 1 ? eps : 1.0);
      Eigen::Vector3d dp = Eigen::Vector3d::Zero();
      dp(k) = e;
      const CurveJet jp = jet(p + dp), jm = jet(p - dp);
      const Eigen::Vector2d fd = (jp.value - jm.value) / (2 * e);
      worst1 = std::max(worst1, (fd - j.d1.col(k)).norm() / std::max(1.0, j.d1.col(k).norm()));
      for (int c = 0; c < 2; ++c) {
        const Eigen::Vector3d fd2 = (jp.d1.row(c) - jm.d1.row(c)).transpose() / (2 * e);
        worst2 = std::max(worst2, (fd2 - j.d2[c].col(k)).norm() / std::max(1.0, j.d2[c].col(k).norm()));
      }
    }
  }
  EXPECT_LT(worst1, 1e-6);
  EXPECT_LT(worst2, 1e-6);
}

TEST(WrinkleCurve, AmplitudeJetMatchesFiniteDifferences) {
  Sampler s(25);
  for (int i = 0; i < 200; ++i) {
    const double eps = s.log_uniform(1e-3, 0.2), mix = s.uniform(0.05, 0.95);
    const AmplitudeJet a = CurveSection::from_excess(eps, mix).amplitude_jet();
    const double de = 1e-6 * eps, dm = 1e-6;
    auto A = [](double e, double m) { return CurveSection::from_excess(e, m).amplitude(); };
    EXPECT_NEAR(a.d_eps, (A(eps + de, mix) - A(eps - de, mix)) / (2 * de), 1e-6 * std::abs(a.d_eps));
    EXPECT_NEAR(a.d_mix, (A(eps, mix + dm) - A(eps, mix - dm)) / (2 * dm), 1e-6 * std::max(1.0, std::abs(a.d_mix)));
  }
}

TEST(WrinkleCurve, StraightSectionAndDomain) {
  const CurveSection flat = CurveSection::from_excess(0.0, 0.3);
  EXPECT_TRUE(flat.straight());
  EXPECT_LT((flat.point(1.7) - Eigen::Vector2d(1.7, 0.0)).norm(), 1e-15);
  EXPECT_THROW(build_gamma(-0.1), DomainError);
  EXPECT_THROW(build_gamma(1.5), DomainError);
}

TEST(WrinkleCurve, AmplitudeRoundTrip) {
  const CurveSection a = CurveSection::from_excess(0.05, 0.4);
  const CurveSection b = CurveSection::from_amplitude(a.amplitude(), 0.4);
  EXPECT_NEAR(b.excess(), 0.05, 1e-13);
  EXPECT_NEAR(mean_excess(a.amplitude(), 0.4), 0.05, 1e-13);
}
