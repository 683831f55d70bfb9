#include "fixture.hpp"

#include "wrinkle/cascade.hpp"
#include "wrinkle/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wrinkle;
namespace wt = wrinkle::testing;

TEST(Cascade, CountsFromThickness) {
  EXPECT_EQ(base_wrinkle_count(1.0 / 16), 4);
  EXPECT_EQ(base_wrinkle_count(std::ldexp(1.0, -10)), 32);
  EXPECT_EQ(base_wrinkle_count(std::ldexp(1.0, -9)), 22);
  EXPECT_EQ(doubling_depth(std::ldexp(1.0, -10)), 5);
  EXPECT_EQ(doubling_depth(std::ldexp(1.0, -9)), 5);
  EXPECT_EQ(doubling_depth(std::ldexp(1.0, -20)), 10);
  for (int j = 4; j <= 30; ++j) {
    const double h = std::ldexp(1.0, -j);
    const int N = doubling_depth(h);
    EXPECT_GE(std::ldexp(1.0, 2 * N) * h, 1.0 - 1e-12);
    EXPECT_LT(std::ldexp(1.0, 2 * (N - 1)) * h, 1.0);
  }
  EXPECT_THROW(check_thickness(0.1), DomainError);
  EXPECT_THROW(check_thickness(0.0), DomainError);
}

TEST(Cascade, PlanLayout) {
  const auto sol = wt::wrinkling_solution();
  const double L = *sol->free_boundary;
  for (int j : {8, 10, 15, 20}) {
    const double h = std::ldexp(1.0, -j);
    const CascadePlan plan = plan_cascade(*sol, wt::neo_hookean(), h);
    EXPECT_EQ(plan.base_count, base_wrinkle_count(h));
    EXPECT_EQ(plan.depth, doubling_depth(h));
    ASSERT_EQ(plan.bands.size(), static_cast<std::size_t>(plan.depth + 1));
    EXPECT_NEAR(plan.delta, (L - 1.0) / std::ldexp(1.0, plan.dyadic_level), 1e-15);
    EXPECT_GT(plan.slope_min, 0.0);
    EXPECT_LE(plan.slope_max, 4.0 * plan.slope_min);
    for (const auto& b : plan.bands) {
      EXPECT_NEAR(b.start, L - plan.delta * std::pow(4.0, -b.n), 1e-14);
      EXPECT_NEAR(b.end, L - plan.delta * std::pow(4.0, -(b.n + 1)), 1e-14);
      EXPECT_EQ(b.frequency, plan.base_count << b.n);
      EXPECT_NEAR(b.period, 2 * std::numbers::pi / b.frequency, 1e-15);
      EXPECT_EQ(b.cutoff, b.n == plan.depth);
    }
    for (std::size_t i = 1; i < plan.bands.size(); ++i) EXPECT_EQ(plan.bands[i].start, plan.bands[i - 1].end);
    EXPECT_LT(plan.cutoff_radius(), L);
    EXPECT_GE(L - plan.cutoff_radius(), 0.0);
  }
}

TEST(Cascade, FixtureZone) {
  // The whole relaxed region halves once: delta = (L - R_in) / 2.
  const CascadePlan plan = plan_cascade(*wt::wrinkling_solution(), wt::neo_hookean(), std::ldexp(1.0, -10));
  EXPECT_EQ(plan.dyadic_level, 1);
  EXPECT_NEAR(plan.delta, 0.1332329784166, 1e-5);
}

TEST(Cascade, ExcessJetMatchesFiniteDifferences) {
  const auto sol = wt::wrinkling_solution();
  const double L = *sol->free_boundary;
  wt::Sampler s(31);
  for (int i = 0; i < 200; ++i) {
    const double r = s.uniform(1.01, L - 0.01), e = 1e-5;
    const Jet j = excess_jet(*sol, wt::neo_hookean(), r);
    EXPECT_NEAR(j.value, excess_arclength(*sol, wt::neo_hookean(), r), 1e-12);
    const Jet p = excess_jet(*sol, wt::neo_hookean(), r + e), m = excess_jet(*sol, wt::neo_hookean(), r - e);
    EXPECT_NEAR(j.d1, (p.value - m.value) / (2 * e), 1e-6 * std::max(1.0, std::abs(j.d1)));
  }
}

TEST(Cascade, RejectsTautSolution) {
  const double T = wt::homogeneous_traction();
  const RadialSolution sol = solve_relaxed(wt::neo_hookean(), LoadCase{1.0, 2.0, T, T});
  EXPECT_THROW(plan_cascade(sol, wt::neo_hookean(), 1e-3), DomainError);
}
