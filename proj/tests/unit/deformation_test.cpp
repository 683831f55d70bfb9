#include "fd_check.hpp"
#include "fixture.hpp"

#include "wrinkle/ansatz.hpp"
#include "wrinkle/cascade.hpp"
#include "wrinkle/deformation.hpp"
#include "wrinkle/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace wrinkle;
namespace wt = wrinkle::testing;
using std::numbers::pi;

namespace {

AnsatzShape sample_shape(const RadialSolution& sol, double h) {
  AnsatzShape s;
  s.wavenumber = 24;
  s.amplitude_knots = amplitude_knots(sol, h, 8);
  for (std::size_t i = 0; i < s.amplitude_knots.size(); ++i) s.amplitude.push_back(0.5 * (1.0 - i / 7.0));
  s.correction_knots = {1.0, 1.25, 1.5, 1.75, 2.0};
  s.correction = {0.01, -0.005, 0.002, 0.001, 0.0};
  return s;
}

}  // namespace

TEST(Deformation, PlanarIsTheRelaxedMap) {
  const auto sol = wt::wrinkling_solution();
  const Deformation d = build_planar(sol, wt::neo_hookean());
  EXPECT_EQ(d.base_count(), 0);
  wt::Sampler s(41);
  for (int i = 0; i < 200; ++i) {
    const double r = s.uniform(1.0, 2.0), t = s.uniform(0.0, 2 * pi);
    const PointJet p = eval_deformation(d, r, t);
    const double v = sol->profile(r);
    EXPECT_LT((p.u - Eigen::Vector3d(v * std::cos(t), v * std::sin(t), 0.0)).norm(), 1e-14);
    EXPECT_EQ(p.hess_u3.norm(), 0.0);
  }
}

TEST(Deformation, NaiveHoopStretchIsNaturalWidth) {
  const auto sol = wt::wrinkling_solution();
  const double L = *sol->free_boundary;
  wt::Sampler s(42);
  for (double h : {std::ldexp(1.0, -8), std::ldexp(1.0, -12)}) {
    const Deformation d = build_naive(sol, wt::neo_hookean(), h);
    EXPECT_EQ(d.base_count(), base_wrinkle_count(h));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double r = s.uniform(1.0, L - h), t = s.uniform(0.0, 2 * pi);
      const PointJet p = eval_deformation(d, r, t);
      worst = std::max(worst, std::abs(p.d_theta.norm() / r - natural_width(wt::neo_hookean().base(), sol->profile.eval(r).d1)));
    }
    EXPECT_LE(worst, 1e-8) << h;
  }
}

TEST(Deformation, AnalyticDerivativesMatchFiniteDifferences) {
  const auto sol = wt::wrinkling_solution();
  for (double h : {std::ldexp(1.0, -8), std::ldexp(1.0, -12)}) {
    const Deformation defs[] = {build_naive(sol, wt::neo_hookean(), h), build_cascade(sol, wt::neo_hookean(), h),
                                build_ansatz(sol, wt::neo_hookean(), h, sample_shape(*sol, h))};
    for (const auto& d : defs) {
      const wt::FdErrors e = wt::fd_check(d, 1000, 43);
      EXPECT_LT(e.grad, 1e-6) << to_string(d.mode()) << " h=" << h << " r=" << e.worst_r;
      EXPECT_LT(e.hess, 1e-6) << to_string(d.mode()) << " h=" << h;
      EXPECT_LT(e.symmetry, 1e-9 * std::max(1.0, 1.0 / h));
    }
  }
}

TEST(Deformation, CascadeIsC1AcrossBandJoints) {
  const auto sol = wt::wrinkling_solution();
  for (double h : {std::ldexp(1.0, -8), std::ldexp(1.0, -10), std::ldexp(1.0, -14)}) {
    const Deformation d = build_cascade(sol, wt::neo_hookean(), h);
    double jump = 0.0;
    std::vector<double> joints{d.plan()->zone_start()};
    for (const auto& b : d.plan()->bands) joints.push_back(b.end);
    for (double a : joints)
      for (int j = 0; j < 64; ++j) {
        const double t = 2 * pi * (j + 0.37) / 64;
        const PointJet l = eval_deformation(d, a - 1e-13, t), r = eval_deformation(d, a + 1e-13, t);
        jump = std::max({jump, (l.u - r.u).norm(), (l.grad - r.grad).norm()});
      }
    EXPECT_LE(jump, 1e-8) << h;
  }
}

TEST(Deformation, FlatBeyondTheWrinkledZone) {
  const auto sol = wt::wrinkling_solution();
  const double h = std::ldexp(1.0, -10);
  const Deformation naive = build_naive(sol, wt::neo_hookean(), h);
  const Deformation cascade = build_cascade(sol, wt::neo_hookean(), h);
  wt::Sampler s(44);
  for (int i = 0; i < 200; ++i) {
    const double t = s.uniform(0.0, 2 * pi);
    const double r1 = s.uniform(*sol->free_boundary, 2.0), r2 = s.uniform(cascade.plan()->cutoff_radius(), 2.0);
    EXPECT_EQ(eval_deformation(naive, r1, t).u.z(), 0.0);
    EXPECT_EQ(eval_deformation(cascade, r2, t).u.z(), 0.0);
    EXPECT_LT((eval_deformation(naive, r1, t).u - naive.eval_planar(r1, t).u).norm(), 1e-13);
  }
}

TEST(Deformation, CascadeKeepsBaseWavenumberInTheBulk) {
  const auto sol = wt::wrinkling_solution();
  const double h = std::ldexp(1.0, -10);
  const Deformation d = build_cascade(sol, wt::neo_hookean(), h);
  EXPECT_EQ(d.section(1.05).frequency, 32);
  for (const auto& b : d.plan()->bands) {
    const double mid = 0.5 * (b.start + b.end);
    EXPECT_GE(d.section(mid).frequency, b.frequency) << b.n;
  }
}

TEST(Deformation, RejectsBadInput) {
  const auto sol = wt::wrinkling_solution();
  EXPECT_THROW(build_naive(sol, wt::neo_hookean(), 0.1), DomainError);
  EXPECT_THROW(build_deformation(DeformationMode::Ansatz, sol, wt::neo_hookean(), 1e-3), DomainError);
  EXPECT_EQ(parse_mode("cascade"), DeformationMode::Cascade);
  EXPECT_THROW(parse_mode("zigzag"), ConfigError);
  AnsatzShape bad = sample_shape(*sol, 1e-3);
  bad.amplitude_knots.back() = 1.9;
  EXPECT_THROW(build_ansatz(sol, wt::neo_hookean(), 1e-3, bad), DomainError);
}
