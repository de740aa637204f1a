#pragma once

#include "pidwb/rational.hpp"

#include <cstddef>
#include <vector>

namespace pidwb::detail {

// Extreme rays of the pointed cone {x >= 0 : C x = 0} in R^n, each scaled to sum 1, by the
// double description method in exact arithmetic. Throws SolverFailure past `limit` rays.
std::vector<std::vector<Rational>> extreme_rays(const std::vector<std::vector<Rational>>& C, std::size_t n,
                                                std::size_t limit = 200000);

}  // namespace pidwb::detail
