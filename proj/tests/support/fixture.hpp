#pragma once

#include "wrinkle/material.hpp"
#include "wrinkle/relaxed_solver.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>

namespace wrinkle::testing {

/// Incompressible neo-Hookean annulus R_in = 1, R_out = 2, T_out = 1.6, T_in = 2.8.
inline const LoadCase kWrinklingLoads{1.0, 2.0, 2.8, 1.6};

/// T_in = T_out = T* with homogeneous stretch 1.2.
inline constexpr double kHomogeneousStretch = 1.2;
inline double homogeneous_traction() { return 2.0 * kHomogeneousStretch - 2.0 * std::pow(kHomogeneousStretch, -5.0); }

inline const RelaxedDensity& neo_hookean() {
  static const RelaxedDensity rel(std::make_shared<NeoHookean>(1.0));
  return rel;
}

/// Solved once per process.
inline std::shared_ptr<const RadialSolution> wrinkling_solution() {
  static const auto sol = std::make_shared<const RadialSolution>(solve_relaxed(neo_hookean(), kWrinklingLoads));
  return sol;
}

/// Seeded uniform sampler; every property test draws its cases from one of these.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  /// Log-uniform on [a, b], a > 0.
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

private:
  std::mt19937_64 rng_;
};

}  // namespace wrinkle::testing
