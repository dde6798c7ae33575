#pragma once
#include <cstdint>
#include <limits>
#include <vector>

#include "xlab/error.hpp"
#include "xlab/rng.hpp"

namespace xlab {

struct ClockEvent {
  double time;
  uint32_t clock;
  double u;  // uniform attached to the ring
};

// Superposition of independent Poisson clocks with fixed rates. Each clock
// draws from its own counter-based stream (two draws per ring: the waiting
// time and the attached uniform), so any run is replayable from (seed,
// per-clock counters) alone. Events are globally ordered by (time, clock id).
class ClockStream {
 public:
  ClockStream(uint64_t seed, std::vector<double> rates);

  size_t clock_count() const { return rates_.size(); }
  bool active() const { return !heap_.empty(); }
  double horizon_of_next() const {
    return heap_.empty() ? std::numeric_limits<double>::infinity() : tnext_[heap_[0]];
  }

  // Earliest pending event; advances that clock to its next ring.
  ClockEvent pop();

  // serialization support
  struct State {
    std::vector<uint64_t> counters;
    std::vector<double> tnext, unext;
  };
  State save() const;
  void restore(const State& st);
  uint64_t seed() const { return seed_; }
  const std::vector<double>& rates() const { return rates_; }

 private:
  void sift_down(size_t i);
  bool before(uint32_t a, uint32_t b) const {
    return tnext_[a] < tnext_[b] || (tnext_[a] == tnext_[b] && a < b);
  }

  uint64_t seed_ = 0;
  std::vector<double> rates_;
  std::vector<CounterRng> rng_;
  std::vector<double> tnext_, unext_;
  std::vector<uint32_t> heap_;
};

// Piecewise-constant censoring schedule over clock ids. Intervals are
// [starts[i], starts[i+1]) with the last one unbounded; the schedule is laid
// down before the run and never looks at the trajectory.
struct CensoringSchedule {
  std::vector<double> starts;
  std::vector<std::vector<uint32_t>> banned;  // sorted ids per interval

  static CensoringSchedule none() { return {}; }
  bool empty() const { return starts.empty(); }
  size_t interval_at(double t) const;
  bool is_censored(uint32_t clock, double t) const;
  void validate() const;
};

}  // namespace xlab
