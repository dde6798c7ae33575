#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "xlab/config.hpp"
#include "xlab/engine.hpp"
#include "xlab/multispecies.hpp"
#include "xlab/params.hpp"

namespace xlab {

// Net left-boundary current J_t = entered - exited and the sample times at
// which it was recorded.
struct CurrentRecord {
  std::vector<double> times;
  std::vector<long long> current;
};

struct FluxEstimate {
  double j_hat = 0.0;      // particles per unit time
  double std_error = 0.0;  // batch-means standard error
  double horizon = 0.0;
};

// Long-run current per unit time through the left boundary. The first
// burn_in time units are discarded (default: half the horizon) and the
// remainder is split into 20 batches for the standard error.
FluxEstimate measure_flux(SegmentProcess& proc, double horizon, double burn_in = -1.0);

// Per-site occupation frequencies from `samples` snapshots dt apart,
// starting at the process's current time plus dt. Index 0 is site 1.
std::vector<double> density_profile(SegmentProcess& proc, double dt, int samples);

// Mean occupation over the bulk window [margin+1, N-margin].
double bulk_density(const std::vector<double>& profile, int margin);

// Number of disagreement labels (typed or untyped) in a multispecies state.
int second_class_count(const MultiConfiguration& chi);

// Mean-height comparison for the reversible one-sided chain at p = 1/2:
// integrates d/dt f = (1 + 1_{x=N}(beta+delta-1)) * (discrete Laplacian) on
// the folded interval [0, 2N] with pinned endpoints, estimates the same
// means by Monte Carlo, and checks both against the 3N e^{-lambda t}
// envelope with lambda = 1 - cos(pi / (2N + 1/(beta+delta))).
struct HeightCheckReport {
  std::vector<double> t_grid;
  double lambda = 0.0;
  std::vector<double> ode_max_abs;  // max_x |f(x,t)| per grid time
  std::vector<double> mc_max_abs;   // max_x |mean h*(x)| per grid time
  double max_deviation = 0.0;       // max |MC - ODE| over grid x time
  double max_z = 0.0;               // max |MC - ODE| / s.e.
  bool ode_within_envelope = false;
  bool mc_within_envelope = false;  // with 3 s.e. slack per point
};

HeightCheckReport mean_height_check(const Params& pr, int n, const Configuration& init,
                                    const std::vector<double>& t_grid, int replicas,
                                    uint64_t seed);

// Leftmost-particle front of a drainage run started from the rightmost-k
// block. Tracks L(eta_t) at multiples of dt; the fitted speed is the
// least-squares slope of L against time over the middle of the sweep
// (equivalently minus the slope of the shock coordinate N - L).
struct FrontTracker {
  std::vector<double> times;
  std::vector<int> front;              // L(eta_t); front.empty() if no particles
  std::optional<double> speed;         // sites per unit time, nullopt if undefined
};

FrontTracker shock_front(const Params& pr, int n, int k, double dt, double horizon,
                         uint64_t seed);

}  // namespace xlab
