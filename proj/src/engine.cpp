#include "xlab/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace xlab {

namespace {
std::vector<double> segment_rates(const Params& pr, int n) {
  // ids: 0 reservoir left, 1..n-1 edges, n unused, n+1 reservoir right
  std::vector<double> rates(static_cast<size_t>(n) + 2, 0.0);
  rates[kLeftReservoir] = pr.alpha + pr.gamma;
  for (int x = 1; x <= n - 1; ++x) rates[static_cast<size_t>(x)] = 1.0;
  rates[right_reservoir(n)] = pr.beta + pr.delta;
  return rates;
}
}  // namespace

SegmentProcess::SegmentProcess(const Params& pr, int n, uint64_t seed, Configuration init)
    : pr_(pr), n_(n), cfg_(std::move(init)), clocks_(seed, segment_rates(pr, n)) {
  pr_.validate();
  if (n < 1) throw Error("segment needs at least one site");
  if (cfg_.topology() != Topology::Segment || cfg_.size() != n)
    throw Error("initial configuration does not match the segment");
  if (pr.alpha + pr.gamma > 0) fill_left_ = pr.alpha / (pr.alpha + pr.gamma);
  if (pr.beta + pr.delta > 0) fill_right_ = pr.delta / (pr.beta + pr.delta);
}

void SegmentProcess::set_censoring(CensoringSchedule sched) {
  sched.validate();
  censor_ = std::move(sched);
}

bool SegmentProcess::apply(const ClockEvent& ev) {
  if (!censor_.empty() && censor_.is_censored(ev.clock, ev.time)) return false;
  if (ev.clock == kLeftReservoir) {
    const bool fill = ev.u <= fill_left_;
    const bool occ = cfg_.at(1);
    if (fill && !occ) {
      cfg_.set(1, true);
      ++entered_left_;
      return true;
    }
    if (!fill && occ) {
      cfg_.set(1, false);
      ++exited_left_;
      return true;
    }
    return false;
  }
  if (ev.clock == right_reservoir(n_)) {
    const bool fill = ev.u <= fill_right_;
    const bool occ = cfg_.at(n_);
    if (fill && !occ) {
      cfg_.set(n_, true);
      ++entered_right_;
      return true;
    }
    if (!fill && occ) {
      cfg_.set(n_, false);
      ++exited_right_;
      return true;
    }
    return false;
  }
  const int x = static_cast<int>(ev.clock);
  const bool l = cfg_.at(x), r = cfg_.at(x + 1);
  if (ev.u <= pr_.p ? (l && !r) : (!l && r)) {
    cfg_.set(x, r);
    cfg_.set(x + 1, l);
    return true;
  }
  return false;
}

std::optional<EventRecord> SegmentProcess::step(double t_end) {
  if (!clocks_.active() || clocks_.horizon_of_next() > t_end) {
    now_ = t_end;
    return std::nullopt;
  }
  const ClockEvent ev = clocks_.pop();
  now_ = ev.time;
  return EventRecord{ev.time, ev.clock, apply(ev)};
}

void SegmentProcess::run_to(double t_end) {
  while (clocks_.active() && clocks_.horizon_of_next() <= t_end) {
    const ClockEvent ev = clocks_.pop();
    now_ = ev.time;
    apply(ev);
  }
  now_ = t_end;
}

bool SegmentProcess::replay(const ClockEvent& ev) {
  now_ = ev.time;
  return apply(ev);
}

SegmentProcess::Snapshot SegmentProcess::snapshot() const {
  return Snapshot{now_, cfg_, {entered_left_, exited_left_, entered_right_, exited_right_},
                  clocks_.save()};
}

void SegmentProcess::restore(const Snapshot& s) {
  now_ = s.now;
  cfg_ = s.cfg;
  entered_left_ = s.counters[0];
  exited_left_ = s.counters[1];
  entered_right_ = s.counters[2];
  exited_right_ = s.counters[3];
  clocks_.restore(s.clocks);
}

CoupledEnsemble::CoupledEnsemble(std::vector<ReplicaSpec> specs, int n, uint64_t seed)
    : n_(n), clocks_(0, {}) {
  if (specs.empty()) throw Error("ensemble needs at least one replica");
  Params base;
  base.p = specs[0].pr.p;
  base.alpha = specs[0].pr.alpha;
  base.beta = specs[0].pr.beta;
  base.gamma = specs[0].pr.gamma;
  base.delta = specs[0].pr.delta;
  for (const auto& s : specs) {
    s.pr.validate();
    if (s.init.topology() != Topology::Segment || s.init.size() != n)
      throw Error("replica configuration does not match the segment");
    base.alpha = std::min(base.alpha, s.pr.alpha);
    base.beta = std::min(base.beta, s.pr.beta);
    base.gamma = std::min(base.gamma, s.pr.gamma);
    base.delta = std::min(base.delta, s.pr.delta);
  }
  std::vector<double> rates = segment_rates(base, n);
  for (uint32_t r = 0; r < specs.size(); ++r) {
    const Params& q = specs[r].pr;
    const double surplus[4] = {q.alpha - base.alpha, q.gamma - base.gamma, q.delta - base.delta,
                               q.beta - base.beta};
    const uint8_t channel[4] = {0, 1, 2, 3};
    for (int k = 0; k < 4; ++k) {
      if (surplus[k] > 0.0) {
        extras_.push_back({r, channel[k]});
        rates.push_back(surplus[k]);
      }
    }
    reps_.push_back({q, std::move(specs[r].init)});
  }
  if (base.alpha + base.gamma > 0) fill_left_ = base.alpha / (base.alpha + base.gamma);
  if (base.beta + base.delta > 0) fill_right_ = base.delta / (base.beta + base.delta);
  clocks_ = ClockStream(seed, std::move(rates));
  touched_.reserve(2);
}

void CoupledEnsemble::set_censoring(CensoringSchedule sched) {
  sched.validate();
  censor_ = std::move(sched);
}

bool CoupledEnsemble::apply(const ClockEvent& ev) {
  touched_.clear();
  if (!censor_.empty() && censor_.is_censored(ev.clock, ev.time)) return false;
  bool any = false;
  if (ev.clock >= static_cast<uint32_t>(n_) + 2) {
    const ExtraClock& ex = extras_[ev.clock - (static_cast<uint32_t>(n_) + 2)];
    Replica& rep = reps_[ex.replica];
    const int site = (ex.channel < 2) ? 1 : n_;
    const bool value = (ex.channel % 2) == 0;
    touched_.push_back(site);
    if (rep.cfg.at(site) != value) {
      rep.cfg.set(site, value);
      any = true;
    }
    return any;
  }
  if (ev.clock == kLeftReservoir || ev.clock == right_reservoir(n_)) {
    const bool left = ev.clock == kLeftReservoir;
    const int site = left ? 1 : n_;
    const bool value = ev.u <= (left ? fill_left_ : fill_right_);
    touched_.push_back(site);
    for (auto& rep : reps_) {
      if (rep.cfg.at(site) != value) {
        rep.cfg.set(site, value);
        any = true;
      }
    }
    return any;
  }
  const int x = static_cast<int>(ev.clock);
  touched_.push_back(x);
  touched_.push_back(x + 1);
  for (auto& rep : reps_) {
    const bool l = rep.cfg.at(x), r = rep.cfg.at(x + 1);
    if (ev.u <= rep.pr.p ? (l && !r) : (!l && r)) {
      rep.cfg.set(x, r);
      rep.cfg.set(x + 1, l);
      any = true;
    }
  }
  return any;
}

std::optional<EventRecord> CoupledEnsemble::step(double t_end) {
  if (!clocks_.active() || clocks_.horizon_of_next() > t_end) {
    now_ = t_end;
    return std::nullopt;
  }
  const ClockEvent ev = clocks_.pop();
  now_ = ev.time;
  return EventRecord{ev.time, ev.clock, apply(ev)};
}

void CoupledEnsemble::run_to(double t_end) {
  while (clocks_.active() && clocks_.horizon_of_next() <= t_end) {
    const ClockEvent ev = clocks_.pop();
    now_ = ev.time;
    apply(ev);
  }
  now_ = t_end;
}

std::optional<double> coupling_time(const Params& pr, int n, uint64_t seed, double t_max) {
  Configuration ones = Configuration::segment(n);
  ones.fill(true);
  Configuration zeros = Configuration::segment(n);
  CoupledEnsemble ens({{pr, std::move(ones)}, {pr, std::move(zeros)}}, n, seed);
  int diff = n;
  while (true) {
    const auto ev = ens.step(t_max);
    if (!ev) return std::nullopt;
    if (!ev->changed) continue;
    diff = 0;  // recount lazily only when cheap is impossible; see below
    const auto& a = ens.config(0).words();
    const auto& b = ens.config(1).words();
    for (size_t k = 0; k < a.size(); ++k) diff += std::popcount(a[k] ^ b[k]);
    if (diff == 0) return ev->time;
  }
}

HalflineResult run_halfline(double p, double alpha_t, double gamma_t, int window, double horizon,
                            uint64_t seed) {
  if (!(p >= 0.5 && p <= 1.0)) throw Error("p must lie in [1/2, 1]");
  if (alpha_t < 0 || gamma_t < 0) throw Error("boundary rates must be nonnegative");
  if (window < 8) throw Error("half-line window too small");
  // ids: 0 injection clock, 1..window-1 edges
  std::vector<double> rates(static_cast<size_t>(window), 1.0);
  rates[0] = alpha_t + gamma_t;
  ClockStream clocks(seed, std::move(rates));
  Configuration cfg = Configuration::half_line(window);
  const double fill = alpha_t + gamma_t > 0 ? alpha_t / (alpha_t + gamma_t) : 0.0;
  HalflineResult res;
  const int guard = window - 2;  // guard band: sites window-1, window
  while (clocks.active() && clocks.horizon_of_next() <= horizon) {
    const ClockEvent ev = clocks.pop();
    res.time = ev.time;
    if (ev.clock == 0) {
      const bool occ = cfg.at(1);
      if (ev.u <= fill && !occ) {
        cfg.set(1, true);
        ++res.entered;
      } else if (ev.u > fill && occ) {
        cfg.set(1, false);
        ++res.exited;
      }
      continue;
    }
    const int x = static_cast<int>(ev.clock);
    const bool l = cfg.at(x), r = cfg.at(x + 1);
    if (ev.u <= p ? (l && !r) : (!l && r)) {
      cfg.set(x, r);
      cfg.set(x + 1, l);
      if (x + 1 >= guard) {
        res.breach = true;
        return res;
      }
    }
  }
  res.time = horizon;
  return res;
}

LineProcess::LineProcess(double p, Configuration init, uint64_t seed)
    : p_(p), cfg_(std::move(init)),
      clocks_(seed, std::vector<double>(
                        cfg_.topology() == Topology::Line && cfg_.size() >= 2
                            ? static_cast<size_t>(cfg_.size() - 1)
                            : throw Error("line process needs a line window"),
                        1.0)) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");
}

bool LineProcess::apply(const ClockEvent& ev) {
  // clock k is the edge (lo+k, lo+k+1)
  const int x = cfg_.lo() + static_cast<int>(ev.clock);
  const bool l = cfg_.at(x), r = cfg_.at(x + 1);
  if (ev.u <= p_ ? (l && !r) : (!l && r)) {
    cfg_.set(x, r);
    cfg_.set(x + 1, l);
    if (x <= cfg_.lo() + 2 || x + 1 >= cfg_.hi() - 2) breach_ = true;
    return true;
  }
  return false;
}

std::optional<EventRecord> LineProcess::step(double t_end) {
  if (breach_) return std::nullopt;
  if (!clocks_.active() || clocks_.horizon_of_next() > t_end) {
    now_ = t_end;
    return std::nullopt;
  }
  const ClockEvent ev = clocks_.pop();
  now_ = ev.time;
  return EventRecord{ev.time, ev.clock, apply(ev)};
}

std::vector<std::optional<double>> LineProcess::first_exceedance(const std::vector<int>& levels,
                                                                 double horizon) {
  std::vector<std::optional<double>> out(levels.size());
  int top = 0;
  for (int lv : levels) top = std::max(top, lv);
  auto deviation = [&]() {
    const int r = *rightmost_hole(cfg_);
    const int l = *leftmost_particle(cfg_);
    return std::max(r, -l);
  };
  int dev = deviation();
  size_t pending = 0;
  for (size_t i = 0; i < levels.size(); ++i)
    if (dev > levels[i]) out[i] = 0.0; else ++pending;
  while (pending > 0) {
    const auto ev = step(horizon);
    if (!ev) break;
    if (!ev->changed) continue;
    dev = deviation();
    for (size_t i = 0; i < levels.size(); ++i) {
      if (!out[i] && dev > levels[i]) {
        out[i] = ev->time;
        --pending;
      }
    }
    if (dev > top) break;
  }
  return out;
}

}  // namespace xlab
