#pragma once
#include <cstdint>
#include <vector>

#include "xlab/clocks.hpp"
#include "xlab/multispecies.hpp"
#include "xlab/params.hpp"

namespace xlab {

// Typed multispecies process chi on a segment, tracking four coupled chains:
// the extremal pair (through the xi component) and an equilibrium pair whose
// second member runs at an increased exit rate beta' (through zeta). The
// extra (beta'-beta) clock thins only the fourth chain, creating zeta-second
// class particles at site N when it holds a first class particle.
class MultiProcess {
 public:
  MultiProcess(const Params& pr, int n, double beta_prime, uint64_t seed,
               MultiConfiguration init);

  int sites() const { return n_; }
  double now() const { return now_; }
  const MultiConfiguration& chi() const { return chi_; }

  // zeta-component boundary currents at site 1 (entered minus exited):
  // J[0] empties, J[1] first class, J[2] second class
  long long current(int type) const { return J_[type]; }
  long long current_sum() const { return J_[0] + J_[1] + J_[2]; }

  int xi_second_count() const { return xi_second_; }
  const std::vector<uint8_t>& left_exit_record() const { return v_; }
  long long right_exits_low() const { return right_exits_low_; }    // types 1,2,3
  long long right_exits_high() const { return right_exits_high_; }  // types 4,5

  void run_to(double t_end);

  // burn-in helper: keep the zeta component, restart xi from the extremal
  // disagreement (every site re-labelled second class), reset all counters
  void restart_xi_from_extremes();

 private:
  void apply(const ClockEvent& ev);
  void relabel(int site, Species next);

  Params pr_;
  int n_;
  double beta_prime_;
  MultiConfiguration chi_;
  ClockStream clocks_;
  double now_ = 0.0;
  double fill_left_ = 0.0, fill_right_ = 0.0;
  long long J_[3] = {0, 0, 0};
  int xi_second_ = 0;
  std::vector<uint8_t> v_;
  long long right_exits_low_ = 0, right_exits_high_ = 0;
};

struct FourProcessResult {
  double horizon = 0.0;
  long long J0 = 0, J1 = 0, J2 = 0;
  bool current_conserved = false;  // J0 + J1 + J2 == 0 held at every step
  int xi_second_remaining = 0;
  long long left_exits = 0;
  long long right_exits_low = 0, right_exits_high = 0;
};

// Full experiment: burn the zeta pair from saturation for burn_in time
// units, restart the xi component from the extremal pair, then run for
// horizon time units and report the currents and the remaining xi-second
// class count.
FourProcessResult run_four_process_coupling(const Params& pr, int n, double beta_prime,
                                            double burn_in, double horizon, uint64_t seed);

}  // namespace xlab
