#include "xlab/fourprocess.hpp"

#include <utility>

#include "xlab/error.hpp"

namespace xlab {

namespace {

std::vector<double> multi_rates(const Params& pr, int n, double beta_prime) {
  if (n < 2) throw Error("multispecies process needs at least two sites");
  if (beta_prime < pr.beta) throw Error("beta' must not be below beta");
  std::vector<double> rates(static_cast<size_t>(n) + 3, 1.0);
  rates[0] = pr.alpha + pr.gamma;
  rates[static_cast<size_t>(n)] = 0.0;
  rates[static_cast<size_t>(n) + 1] = pr.beta + pr.delta;
  rates[static_cast<size_t>(n) + 2] = beta_prime - pr.beta;
  return rates;
}

}  // namespace

MultiProcess::MultiProcess(const Params& pr, int n, double beta_prime, uint64_t seed,
                           MultiConfiguration init)
    : pr_(pr),
      n_(n),
      beta_prime_(beta_prime),
      chi_(std::move(init)),
      clocks_(seed, multi_rates(pr, n, beta_prime)) {
  pr_.validate();
  if (chi_.size() != n_) throw Error("initial multispecies configuration size mismatch");
  if (pr_.alpha + pr_.gamma > 0.0) fill_left_ = pr_.alpha / (pr_.alpha + pr_.gamma);
  if (pr_.beta + pr_.delta > 0.0) fill_right_ = pr_.delta / (pr_.beta + pr_.delta);
  xi_second_ = chi_.count_xi_second();
}

void MultiProcess::relabel(int site, Species next) {
  Species old = chi_.at(site);
  xi_second_ += (is_xi_second(next) ? 1 : 0) - (is_xi_second(old) ? 1 : 0);
  chi_.set(site, next);
}

void MultiProcess::apply(const ClockEvent& ev) {
  const uint32_t left = 0;
  const uint32_t right = static_cast<uint32_t>(n_) + 1;
  const uint32_t extra = static_cast<uint32_t>(n_) + 2;

  if (ev.clock == left) {
    Species old = chi_.at(1);
    SpeciesPair zp = species_pair(old);
    if (ev.u <= fill_left_) {
      // all four chains fill site 1; a (1,1) site is unchanged
      if (zp.zeta == 1 && zp.xi == 1) return;
      if (is_second_class(old)) v_.push_back(old == Species::Type4 ? 1 : 0);
      relabel(1, Species::First);
      ++J_[1];
      --J_[zp.zeta];
    } else {
      if (old == Species::Empty) return;
      if (is_second_class(old))
        v_.push_back(old == Species::Type4 || old == Species::Type5 ? 1 : 0);
      relabel(1, Species::Empty);
      if (zp.zeta != 0) {
        ++J_[0];
        --J_[zp.zeta];
      }
    }
    return;
  }

  if (ev.clock == right) {
    Species old = chi_.at(n_);
    SpeciesPair zp = species_pair(old);
    if (ev.u <= fill_right_) {
      if (zp.zeta == 1 && zp.xi == 1) return;
      if (is_second_class(old)) {
        if (old == Species::Type4)
          ++right_exits_high_;
        else
          ++right_exits_low_;
      }
      relabel(n_, Species::First);
    } else {
      if (old == Species::Empty) return;
      if (is_second_class(old)) {
        if (old == Species::Type4 || old == Species::Type5)
          ++right_exits_high_;
        else
          ++right_exits_low_;
      }
      relabel(n_, Species::Empty);
    }
    return;
  }

  if (ev.clock == extra) {
    // thinning of the fourth chain only: its particle at site N exits
    Species old = chi_.at(n_);
    if (species_pair(old).zeta != 1) return;
    switch (old) {
      case Species::First:
      case Species::Type5:
        relabel(n_, Species::Type4);
        break;
      case Species::Type3:
        relabel(n_, Species::Type2);
        break;
      default:
        throw Error("unexpected label under the thinning clock");
    }
    return;
  }

  // bulk edge (x, x+1)
  int x = static_cast<int>(ev.clock);
  Species sl = chi_.at(x);
  Species sr = chi_.at(x + 1);
  int branch = ev.u <= pr_.p ? 1 : 0;
  uint8_t packed = PairTable::instance()
                       .next[static_cast<size_t>(sl)][static_cast<size_t>(sr)]
                            [static_cast<size_t>(branch)];
  Species nl = static_cast<Species>(packed & 0x0f);
  Species nr = static_cast<Species>(packed >> 4);
  if (nl != sl) relabel(x, nl);
  if (nr != sr) relabel(x + 1, nr);
}

void MultiProcess::run_to(double t_end) {
  while (clocks_.active() && clocks_.horizon_of_next() <= t_end) {
    ClockEvent ev = clocks_.pop();
    now_ = ev.time;
    apply(ev);
  }
  now_ = t_end;
}

void MultiProcess::restart_xi_from_extremes() {
  for (int x = 1; x <= n_; ++x) {
    switch (species_pair(chi_.at(x)).zeta) {
      case 0:
        chi_.set(x, Species::Type1);
        break;
      case 1:
        chi_.set(x, Species::Type3);
        break;
      default:
        chi_.set(x, Species::Type2);
        break;
    }
  }
  xi_second_ = n_;
  J_[0] = J_[1] = J_[2] = 0;
  v_.clear();
  right_exits_low_ = right_exits_high_ = 0;
}

FourProcessResult run_four_process_coupling(const Params& pr, int n, double beta_prime,
                                            double burn_in, double horizon, uint64_t seed) {
  MultiConfiguration all_first = MultiConfiguration::segment(n);
  for (int x = 1; x <= n; ++x) all_first.set(x, Species::First);
  MultiProcess proc(pr, n, beta_prime, seed, std::move(all_first));
  proc.run_to(burn_in);
  proc.restart_xi_from_extremes();
  proc.run_to(burn_in + horizon);

  FourProcessResult out;
  out.horizon = horizon;
  out.J0 = proc.current(0);
  out.J1 = proc.current(1);
  out.J2 = proc.current(2);
  out.current_conserved = out.J0 + out.J1 + out.J2 == 0;
  out.xi_second_remaining = proc.xi_second_count();
  out.left_exits = static_cast<long long>(proc.left_exit_record().size());
  out.right_exits_low = proc.right_exits_low();
  out.right_exits_high = proc.right_exits_high();
  return out;
}

}  // namespace xlab
