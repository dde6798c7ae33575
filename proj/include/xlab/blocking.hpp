#pragma once
#include "xlab/config.hpp"
#include "xlab/rng.hpp"

namespace xlab {

// Site marginal of the blocking measure on the line (at unit weight):
// P(eta(x) = 1) = p^x / ((1-p)^x + p^x).
double blocking_marginal(double p, int x);

// Ground states on the line window: theta_n has particles exactly at x > n;
// the two-sided variant has particles on [-x, -1] and beyond x.
Configuration ground_state(int n, int window);
Configuration ground_state_pair(int x, int window);

// Balance index: (particles at sites <= n) - (holes at sites > n), with the
// window tails following the line convention. Membership in the n-th
// blocking class means balance 0.
long long balance_defect(const Configuration& c, int n);

// Rejection sampler for the blocking measure conditioned on the n-th
// balanced class, truncated to the window. The weight parameter cancels
// under the conditioning, so unit weight is used.
Configuration sample_blocking_measure(double p, int n, int window, CounterRng& rng);

}  // namespace xlab
