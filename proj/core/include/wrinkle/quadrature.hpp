#pragma once

#include <vector>

namespace wrinkle {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule (cached per n, thread safe).
const GaussRule& gauss_legendre(int n);

}  // namespace wrinkle
