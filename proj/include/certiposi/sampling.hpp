#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "certiposi/simplex.hpp"

namespace certiposi {

using Rng = std::mt19937_64;

/// Uniformly distributed point of D^ (flat Dirichlet weights pushed through theta).
std::vector<double> uniform_point(Rng& rng, const SimplexDomain& dom);

/// Uniform point of the unit sphere in R^n.
std::vector<double> random_direction(Rng& rng, int n);

}  // namespace certiposi
