#pragma once
#include <cstdint>
#include <vector>

#include "xlab/clocks.hpp"
#include "xlab/kernels.hpp"
#include "xlab/params.hpp"

namespace xlab {

// Exact generator of the open-boundary chain on {0,1}^N, indexed by the
// binary encoding with site 1 as the least significant bit. Off-diagonal
// rates are kept sparse; diag[i] is the negative exit rate of state i.
struct Generator {
  Params params;
  int nsites = 0;
  int dim = 0;
  kernels::Csr offdiag;
  std::vector<double> diag;
};

// banned_clocks suppresses the transitions driven by those clock ids
// (censored intervals are rebuilt as their own generators).
Generator build_generator(const Params& pr, int nsites,
                          const std::vector<uint32_t>& banned_clocks = {}, int cap = 14);

// Unique stationary law; throws on a reducible chain or if the solve
// residual exceeds 1e-12.
std::vector<double> stationary_exact(const Generator& g);

// Product form on the a*b = 1 manifold: occupation density 1/(1+a) per site.
std::vector<double> stationary_product(const Params& pr, int n);

// Reversible form for a sealed left boundary; Dirac branches when only one
// right rate is open.
std::vector<double> stationary_reversible(const Params& pr, int n);

// max over ordered pairs of |mu_i r_ij - mu_j r_ji|.
double detailed_balance_residual(const Generator& g, const std::vector<double>& mu);

double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// law * e^{tG} by uniformization; Poisson tail truncated at 1e-12.
std::vector<double> evolve_law(const Generator& g, std::vector<double> law, double t);

// TV(law_t, pi) on a nondecreasing time grid.
std::vector<double> tv_curve(const Generator& g, const std::vector<double>& initial_law,
                             const std::vector<double>& grid);
std::vector<double> tv_curve_from_state(const Generator& g, int state,
                                        const std::vector<double>& grid);

// Censored-law curve: piecewise-constant schedule, one rebuilt generator per
// interval, propagated in time order; TV is taken against the uncensored
// stationary law.
std::vector<double> tv_curve_censored(const Params& pr, int n, const CensoringSchedule& sched,
                                      int state, const std::vector<double>& grid);

// Worst-case mixing time inf{t : max_eta TV(P_t(eta,.), pi) < eps} to 1e-6
// relative tolerance. Dense doubling over all initial states; nsites <= 12.
double mixing_time_exact(const Generator& g, double eps);

struct SymmetrizationReport {
  Params adjoint;
  Params symmetrized;
  double gap = 0.0;  // smallest nonzero eigenvalue magnitude of the symmetrized generator
};

// Triple-point only: the adjoint is the parameter swap (1-p, gamma, delta,
// alpha, beta) and the additive symmetrization is the p = 1/2 chain with
// averaged boundary rates.
SymmetrizationReport adjoint_and_symmetrize(const Params& pr, int n);

struct DiaconisReport {
  double gap = 0.0;
  int violations = 0;      // grid points x initial states where the bound fails
  double max_ratio = 0.0;  // max TV / bound over the grid
};

// Checks TV(t) <= 2^{N/2+1} e^{-gap t} for every initial state and grid time.
DiaconisReport diaconis_bound_check(const Params& pr, int n, const std::vector<double>& grid);

struct KacReport {
  double kac_value = 0.0;          // 1 / (pi(state) * exit rate)
  double linear_solve_value = 0.0; // first-step analysis oracle
  double mc_mean = 0.0;
  double mc_se = 0.0;
  int replicas = 0;
};

// Mean return time to the empty configuration, three ways.
KacReport kac_check(const Params& pr, int n, int replicas, uint64_t seed);

// Poisson(mean) weights with both tails below 1e-12 of the total mass;
// jmin receives the first retained index.
std::vector<double> poisson_weights(double mean, int& jmin);

}  // namespace xlab
