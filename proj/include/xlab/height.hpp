#pragma once
#include <vector>

#include "xlab/config.hpp"

namespace xlab {

enum class Order { Equal, Greater, Less, Incomparable };

// Height profile of a segment configuration, indexed 0..2N. The walk rises
// by 2 eta(x) - 1 across sites 1..N and by 1 - 2 eta(2N+1-x) across the
// mirrored half, so h(0) = h(2N) = 0 and steps are +-1.
std::vector<int> height_function(const Configuration& c);

// Height profile recentred by its one-sided equilibrium mean
// min(x, 2N-x) (delta-beta)/(delta+beta); zero at both endpoints.
std::vector<double> h_star(const Configuration& c, double beta, double delta);

// Partial orders on segment configurations of equal length.
Order compare_componentwise(const Configuration& x, const Configuration& y);
// Prefix-sum domination, equivalent to pointwise domination of height profiles.
Order compare_height(const Configuration& x, const Configuration& y);

// Lattice meet/join under the height order: pointwise min/max of the two
// height profiles, decoded back to a configuration.
Configuration config_min(const Configuration& x, const Configuration& y);
Configuration config_max(const Configuration& x, const Configuration& y);

}  // namespace xlab
