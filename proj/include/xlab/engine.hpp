#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xlab/clocks.hpp"
#include "xlab/config.hpp"
#include "xlab/params.hpp"

namespace xlab {

// Clock ids on a segment of N sites: 0 is the left reservoir (rate
// alpha+gamma, ring fills with probability alpha/(alpha+gamma)), x in
// [1, N-1] is the bulk edge (x, x+1) at rate 1, N+1 is the right reservoir
// (rate beta+delta, ring fills with probability delta/(beta+delta)).
constexpr uint32_t kLeftReservoir = 0;
inline uint32_t right_reservoir(int n) { return static_cast<uint32_t>(n) + 1; }

struct EventRecord {
  double time;
  uint32_t clock;
  bool changed;
};

class SegmentProcess {
 public:
  SegmentProcess(const Params& pr, int n, uint64_t seed, Configuration init);

  const Params& params() const { return pr_; }
  int sites() const { return n_; }
  double now() const { return now_; }
  const Configuration& config() const { return cfg_; }

  void set_censoring(CensoringSchedule sched);

  // particles entered minus exited through each boundary
  long long current_left() const { return entered_left_ - exited_left_; }
  long long current_right() const { return entered_right_ - exited_right_; }
  long long entered_left() const { return entered_left_; }
  long long exited_left() const { return exited_left_; }

  // apply the next ring if it is due before t_end; otherwise advance to t_end
  std::optional<EventRecord> step(double t_end);
  void run_to(double t_end);

  // advance the state by an externally supplied ring (replay/coupling hook);
  // bypasses the internal clock stream but honors censoring
  bool replay(const ClockEvent& ev);

  struct Snapshot {
    double now;
    Configuration cfg;
    long long counters[4];
    ClockStream::State clocks;
  };
  Snapshot snapshot() const;
  void restore(const Snapshot& s);

 private:
  bool apply(const ClockEvent& ev);

  Params pr_;
  int n_;
  Configuration cfg_;
  ClockStream clocks_;
  CensoringSchedule censor_;
  double now_ = 0.0;
  double fill_left_ = 0.0, fill_right_ = 0.0;  // fill probabilities of the reservoir rings
  long long entered_left_ = 0, exited_left_ = 0, entered_right_ = 0, exited_right_ = 0;
};

// Replicas driven by one shared clock stream. Shared reservoir clocks run at
// the componentwise minimum rates; every replica's surplus over the minimum
// gets its own private clock, so the standard order-preserving couplings are
// exactly the ones generated here. Bulk edges are shared at rate 1 and each
// replica resolves the ring with its own drift parameter.
class CoupledEnsemble {
 public:
  struct ReplicaSpec {
    Params pr;
    Configuration init;
  };

  CoupledEnsemble(std::vector<ReplicaSpec> specs, int n, uint64_t seed);

  int sites() const { return n_; }
  size_t replicas() const { return reps_.size(); }
  double now() const { return now_; }
  const Configuration& config(size_t r) const { return reps_[r].cfg; }
  const Params& params(size_t r) const { return reps_[r].pr; }

  void set_censoring(CensoringSchedule sched);

  void run_to(double t_end);
  std::optional<EventRecord> step(double t_end);

  // sites possibly touched by the last applied event (1 or 2 entries)
  const std::vector<int>& touched() const { return touched_; }

 private:
  bool apply(const ClockEvent& ev);

  struct Replica {
    Params pr;
    Configuration cfg;
  };
  struct ExtraClock {
    uint32_t replica;
    uint8_t channel;  // 0 fill left, 1 clear left, 2 fill right, 3 clear right
  };

  int n_;
  std::vector<Replica> reps_;
  std::vector<ExtraClock> extras_;  // clock id N+2+k
  ClockStream clocks_;
  CensoringSchedule censor_;
  double now_ = 0.0;
  double fill_left_ = 0.0, fill_right_ = 0.0;
  std::vector<int> touched_;
};

// First meeting time of the extremal pair (all-ones vs all-zeros) under the
// shared-clock coupling; nullopt if the pair has not met by t_max.
std::optional<double> coupling_time(const Params& pr, int n, uint64_t seed, double t_max);

struct HalflineResult {
  double time = 0.0;
  long long entered = 0, exited = 0;
  bool breach = false;  // activity reached the guard band at the window edge
};

// Half-line process on sites 1..W with boundary injection alpha_t / ejection
// gamma_t at site 1, started from the empty configuration. Stops early with
// the breach flag if any state change touches the two sites nearest the
// window edge.
HalflineResult run_halfline(double p, double alpha_t, double gamma_t, int window, double horizon,
                            uint64_t seed);

// Exclusion process on a line window with frozen tails (holes left,
// particles right). Used for blocking-measure dynamics; breaches of the
// guard bands near either window edge abort the run.
class LineProcess {
 public:
  LineProcess(double p, Configuration init, uint64_t seed);

  double now() const { return now_; }
  const Configuration& config() const { return cfg_; }
  bool breached() const { return breach_; }

  std::optional<EventRecord> step(double t_end);

  // First times at which max(R(eta), -L(eta)) exceeds each level, in one
  // sweep; stops once the largest level is exceeded, the horizon is reached,
  // or the window is breached. Returns one optional time per level.
  std::vector<std::optional<double>> first_exceedance(const std::vector<int>& levels,
                                                      double horizon);

 private:
  bool apply(const ClockEvent& ev);

  double p_;
  Configuration cfg_;
  ClockStream clocks_;
  double now_ = 0.0;
  bool breach_ = false;
};

}  // namespace xlab
