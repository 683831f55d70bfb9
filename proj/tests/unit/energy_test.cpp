#include "fixture.hpp"
#include "radial_oracle.hpp"

#include "wrinkle/energy.hpp"
#include "wrinkle/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace wrinkle;
namespace wt = wrinkle::testing;

namespace {

constexpr double kOracleE0 = -26.037699718388;
constexpr double kOraclePlanarGap = 0.0657723294742;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(QuadratureSpec, Validation) {
  QuadratureSpec q;
  EXPECT_NO_THROW(q.validate());
  q.angular_samples = 8;
  EXPECT_THROW(q.validate(), ConfigError);
  q = {};
  q.radial_order = 1;
  EXPECT_THROW(q.validate(), ConfigError);
  const QuadratureSpec d = QuadratureSpec{}.doubled();
  EXPECT_EQ(d.angular_samples, 80);
  EXPECT_EQ(QuadratureSpec{}.halved().angular_samples, 20);
}

TEST(Energy, PlanarExcessIsTheRelaxationGap) {
  const Deformation d = build_planar(wt::wrinkling_solution(), wt::neo_hookean());
  const EnergyBreakdown e = total_energy(d);
  EXPECT_NEAR(e.excess, kOraclePlanarGap, 1e-6 * kOraclePlanarGap);
  EXPECT_NEAR(e.relaxed_energy, kOracleE0, 1e-9 * std::abs(kOracleE0));
  EXPECT_EQ(e.bending, 0.0);
  EXPECT_NEAR(e.total, e.membrane + e.bending + e.boundary_work, 1e-12);
}

TEST(Energy, HomogeneousClosedForm) {
  const double T = wt::homogeneous_traction(), kappa = wt::kHomogeneousStretch;
  const auto sol = std::make_shared<const RadialSolution>(solve_relaxed(wt::neo_hookean(), LoadCase{1.0, 2.0, T, T}));
  const Deformation d = build_planar(sol, wt::neo_hookean());
  const EnergyBreakdown e = total_energy(d);
  const double f = 2 * kappa * kappa + std::pow(kappa, -4) - 3;
  EXPECT_NEAR(e.membrane / (std::numbers::pi * 3.0 * f), 1.0, 1e-8);
  EXPECT_NEAR(e.boundary_work / (2 * std::numbers::pi * T * kappa * (1.0 - 4.0)), 1.0, 1e-8);
  EXPECT_NEAR(e.excess, 0.0, 1e-10);
}

TEST(Energy, PeriodAwareMatchesBruteForce) {
  // h = 1/64: k = 8 wrinkles.
  const double h = 1.0 / 64;
  const auto sol = wt::wrinkling_solution();
  for (const Deformation& d : {build_naive(sol, wt::neo_hookean(), h), build_cascade(sol, wt::neo_hookean(), h)}) {
    ASSERT_EQ(d.base_count(), 8);
    QuadratureSpec fast, brute;
    fast.error_estimate = brute.error_estimate = false;
    brute.exploit_periodicity = false;
    const EnergyBreakdown a = total_energy(d, fast), b = total_energy(d, brute);
    EXPECT_LT(rel(a.membrane, b.membrane), 1e-9) << to_string(d.mode());
    EXPECT_LT(rel(a.bending, b.bending), 1e-9) << to_string(d.mode());
    EXPECT_LT(rel(a.excess, b.excess), 1e-9) << to_string(d.mode());
  }
}

TEST(Energy, BoundaryWorkOfNaiveTendsToPlanar) {
  // The wrinkled inner rim is displaced by v(R_in) on average only; the
  // difference in boundary work is O(h).
  const auto sol = wt::wrinkling_solution();
  const Deformation p = build_planar(sol, wt::neo_hookean());
  const double planar = boundary_work(p, wt::kWrinklingLoads);
  const double exact = 2 * std::numbers::pi * (1.0 * 2.8 * sol->v.front() - 2.0 * 1.6 * sol->v.back());
  EXPECT_NEAR(planar, exact, 1e-12 * std::abs(exact));
  for (int j : {8, 10, 12}) {
    const double h = std::ldexp(1.0, -j);
    const double naive = boundary_work(build_naive(sol, wt::neo_hookean(), h), wt::kWrinklingLoads);
    EXPECT_LT(std::abs(naive - planar), 0.1 * h) << j;
  }
}

TEST(Energy, ExcessIsNonNegativeAndShrinksWithThickness) {
  const auto sol = wt::wrinkling_solution();
  double prev_naive = INFINITY, prev_cascade = INFINITY;
  for (int j : {8, 10, 12, 14}) {
    const double h = std::ldexp(1.0, -j);
    const EnergyBreakdown n = total_energy(build_naive(sol, wt::neo_hookean(), h));
    const EnergyBreakdown c = total_energy(build_cascade(sol, wt::neo_hookean(), h));
    EXPECT_GE(n.excess, -n.error_estimate);
    EXPECT_GE(c.excess, -c.error_estimate);
    EXPECT_LT(n.excess, prev_naive);
    EXPECT_LT(c.excess, prev_cascade);
    prev_naive = n.excess;
    prev_cascade = c.excess;
  }
}

TEST(Energy, DoublingResolutionMovesLittle) {
  const auto sol = wt::wrinkling_solution();
  const double h = std::ldexp(1.0, -10);
  for (const Deformation& d : {build_naive(sol, wt::neo_hookean(), h), build_cascade(sol, wt::neo_hookean(), h)}) {
    QuadratureSpec q;
    q.error_estimate = false;
    const EnergyBreakdown a = total_energy(d, q), b = total_energy(d, q.doubled());
    for (auto [x, y] : {std::pair{a.membrane, b.membrane}, std::pair{a.bending, b.bending},
                        std::pair{a.boundary_work, b.boundary_work}, std::pair{a.total, b.total}})
      EXPECT_LE(rel(x, y), 1e-6) << to_string(d.mode());
  }
}

TEST(Energy, CsvRowMatchesHeader) {
  EnergyBreakdown e;
  e.mode = "naive";
  e.thickness = 0.5;
  const std::string header = energy_csv_header(), row = energy_csv_row(e);
  EXPECT_EQ(header, "mode,h,membrane,bending,boundary,total,E0,excess,err_est");
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
  EXPECT_EQ(row.rfind("naive,0.5,", 0), 0u);
}
