#include "xlab/clocks.hpp"

#include <algorithm>

namespace xlab {

ClockStream::ClockStream(uint64_t seed, std::vector<double> rates)
    : seed_(seed), rates_(std::move(rates)) {
  const size_t m = rates_.size();
  rng_.reserve(m);
  tnext_.assign(m, std::numeric_limits<double>::infinity());
  unext_.assign(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    if (rates_[i] < 0.0) throw Error("clock rate must be nonnegative");
    rng_.push_back(CounterRng::for_stream(seed, i));
    if (rates_[i] > 0.0) {
      tnext_[i] = rng_[i].next_exp(rates_[i]);
      unext_[i] = rng_[i].next_unit();
      heap_.push_back(static_cast<uint32_t>(i));
    }
  }
  // Floyd heap construction, deterministic
  for (size_t i = heap_.size(); i-- > 0;) sift_down(i);
}

void ClockStream::sift_down(size_t i) {
  const size_t m = heap_.size();
  while (true) {
    size_t best = i, l = 2 * i + 1, r = 2 * i + 2;
    if (l < m && before(heap_[l], heap_[best])) best = l;
    if (r < m && before(heap_[r], heap_[best])) best = r;
    if (best == i) return;
    std::swap(heap_[i], heap_[best]);
    i = best;
  }
}

ClockEvent ClockStream::pop() {
  if (heap_.empty()) throw Error("no active clocks");
  const uint32_t id = heap_[0];
  ClockEvent ev{tnext_[id], id, unext_[id]};
  tnext_[id] += rng_[id].next_exp(rates_[id]);
  unext_[id] = rng_[id].next_unit();
  sift_down(0);
  return ev;
}

ClockStream::State ClockStream::save() const {
  State st;
  st.counters.reserve(rng_.size());
  for (const auto& r : rng_) st.counters.push_back(r.counter);
  st.tnext = tnext_;
  st.unext = unext_;
  return st;
}

void ClockStream::restore(const State& st) {
  if (st.counters.size() != rng_.size()) throw Error("clock state size mismatch");
  for (size_t i = 0; i < rng_.size(); ++i) rng_[i].counter = st.counters[i];
  tnext_ = st.tnext;
  unext_ = st.unext;
  heap_.clear();
  for (size_t i = 0; i < rates_.size(); ++i)
    if (rates_[i] > 0.0) heap_.push_back(static_cast<uint32_t>(i));
  for (size_t i = heap_.size(); i-- > 0;) sift_down(i);
}

size_t CensoringSchedule::interval_at(double t) const {
  // last interval whose start is <= t; times before the first start are free
  auto it = std::upper_bound(starts.begin(), starts.end(), t);
  return static_cast<size_t>(it - starts.begin());  // 0 means "before schedule"
}

bool CensoringSchedule::is_censored(uint32_t clock, double t) const {
  if (starts.empty()) return false;
  const size_t k = interval_at(t);
  if (k == 0) return false;
  const auto& b = banned[k - 1];
  return std::binary_search(b.begin(), b.end(), clock);
}

void CensoringSchedule::validate() const {
  if (starts.size() != banned.size()) throw Error("censoring schedule shape mismatch");
  for (size_t i = 1; i < starts.size(); ++i)
    if (!(starts[i] > starts[i - 1])) throw Error("censoring breakpoints must increase");
  for (const auto& b : banned)
    if (!std::is_sorted(b.begin(), b.end())) throw Error("censored clock ids must be sorted");
}

}  // namespace xlab
