#include "xlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xlab/error.hpp"
#include "xlab/height.hpp"
#include "xlab/rng.hpp"

namespace xlab {

FluxEstimate measure_flux(SegmentProcess& proc, double horizon, double burn_in) {
  if (burn_in < 0.0) burn_in = 0.5 * horizon;
  if (!(horizon > 0.0) || burn_in >= horizon) throw Error("horizon must exceed the burn-in");
  const int kBatches = 20;
  const double t0 = proc.now();
  proc.run_to(t0 + burn_in);
  const long long j0 = proc.current_left();
  const double span = (horizon - burn_in) / kBatches;
  double batch[kBatches];
  long long prev = j0;
  for (int i = 0; i < kBatches; ++i) {
    proc.run_to(t0 + burn_in + (i + 1) * span);
    const long long j = proc.current_left();
    batch[i] = static_cast<double>(j - prev) / span;
    prev = j;
  }
  FluxEstimate est;
  est.horizon = horizon;
  est.j_hat = static_cast<double>(prev - j0) / (horizon - burn_in);
  double ss = 0.0;
  for (double b : batch) ss += (b - est.j_hat) * (b - est.j_hat);
  est.std_error = std::sqrt(ss / (kBatches * (kBatches - 1.0)));
  return est;
}

std::vector<double> density_profile(SegmentProcess& proc, double dt, int samples) {
  if (!(dt > 0.0) || samples <= 0) throw Error("density profile needs dt > 0 and samples > 0");
  const int n = proc.sites();
  std::vector<double> acc(static_cast<size_t>(n), 0.0);
  for (int s = 0; s < samples; ++s) {
    proc.run_to(proc.now() + dt);
    for (int x = 1; x <= n; ++x)
      if (proc.config().at(x)) acc[static_cast<size_t>(x - 1)] += 1.0;
  }
  for (double& v : acc) v /= samples;
  return acc;
}

double bulk_density(const std::vector<double>& profile, int margin) {
  const int n = static_cast<int>(profile.size());
  if (margin < 0 || 2 * margin >= n) throw Error("bulk window is empty");
  double sum = 0.0;
  for (int i = margin; i < n - margin; ++i) sum += profile[static_cast<size_t>(i)];
  return sum / (n - 2 * margin);
}

int second_class_count(const MultiConfiguration& chi) {
  int cnt = 0;
  for (int x = 1; x <= chi.size(); ++x)
    if (is_second_class(chi.at(x))) ++cnt;
  return cnt;
}

HeightCheckReport mean_height_check(const Params& pr, int n, const Configuration& init,
                                    const std::vector<double>& t_grid, int replicas,
                                    uint64_t seed) {
  pr.validate();
  if (std::abs(pr.p - 0.5) > 1e-12 || std::max(pr.alpha, pr.gamma) != 0.0)
    throw Error("mean-height check needs p = 1/2 and a sealed left boundary");
  const double bd = pr.beta + pr.delta;
  if (!(bd > 0.0)) throw Error("mean-height check needs an open right boundary");
  if (replicas < 2) throw Error("mean-height check needs at least two replicas");
  for (size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i + 1])) throw Error("time grid must be increasing");

  const int m = 2 * n;  // folded profile indices 0..2N
  HeightCheckReport rep;
  rep.t_grid = t_grid;
  rep.lambda = 1.0 - std::cos(std::numbers::pi / (2.0 * n + 1.0 / bd));

  // explicit integration of the pinned modified heat equation
  std::vector<std::vector<double>> ode(t_grid.size());
  {
    std::vector<double> f = h_star(init, pr.beta, pr.delta);
    std::vector<double> nf(f.size());
    const double dt_cap = 0.1 / (1.0 + bd);
    double t = 0.0;
    for (size_t g = 0; g < t_grid.size(); ++g) {
      while (t < t_grid[g] - 1e-15) {
        const double dt = std::min(dt_cap, t_grid[g] - t);
        nf[0] = 0.0;
        nf[static_cast<size_t>(m)] = 0.0;
        for (int x = 1; x < m; ++x) {
          const double lap =
              0.5 * (f[static_cast<size_t>(x - 1)] + f[static_cast<size_t>(x + 1)]) -
              f[static_cast<size_t>(x)];
          nf[static_cast<size_t>(x)] = f[static_cast<size_t>(x)] + dt * (x == n ? bd : 1.0) * lap;
        }
        f.swap(nf);
        t += dt;
      }
      ode[g] = f;
    }
  }

  // Monte Carlo means of h* over the same grid
  std::vector<std::vector<double>> sum(t_grid.size(),
                                       std::vector<double>(static_cast<size_t>(m) + 1, 0.0));
  std::vector<std::vector<double>> sumsq = sum;
  for (int r = 0; r < replicas; ++r) {
    SegmentProcess proc(pr, n, derive_seed(seed, "height-check", static_cast<uint64_t>(r)), init);
    for (size_t g = 0; g < t_grid.size(); ++g) {
      proc.run_to(t_grid[g]);
      const std::vector<double> hs = h_star(proc.config(), pr.beta, pr.delta);
      for (int x = 0; x <= m; ++x) {
        sum[g][static_cast<size_t>(x)] += hs[static_cast<size_t>(x)];
        sumsq[g][static_cast<size_t>(x)] += hs[static_cast<size_t>(x)] * hs[static_cast<size_t>(x)];
      }
    }
  }

  rep.ode_within_envelope = true;
  rep.mc_within_envelope = true;
  for (size_t g = 0; g < t_grid.size(); ++g) {
    const double envelope = 3.0 * n * std::exp(-rep.lambda * t_grid[g]);
    double ode_max = 0.0, mc_max = 0.0;
    for (int x = 0; x <= m; ++x) {
      const double mean = sum[g][static_cast<size_t>(x)] / replicas;
      const double var = std::max(
          0.0, sumsq[g][static_cast<size_t>(x)] / replicas - mean * mean);
      const double se = std::sqrt(var / replicas);
      const double dev = std::abs(mean - ode[g][static_cast<size_t>(x)]);
      ode_max = std::max(ode_max, std::abs(ode[g][static_cast<size_t>(x)]));
      mc_max = std::max(mc_max, std::abs(mean));
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (se > 0.0) rep.max_z = std::max(rep.max_z, dev / se);
      if (std::abs(mean) > envelope + 3.0 * se) rep.mc_within_envelope = false;
    }
    if (ode_max > envelope + 1e-9) rep.ode_within_envelope = false;
    rep.ode_max_abs.push_back(ode_max);
    rep.mc_max_abs.push_back(mc_max);
  }
  return rep;
}

FrontTracker shock_front(const Params& pr, int n, int k, double dt, double horizon,
                         uint64_t seed) {
  pr.validate();
  if (pr.alpha != 0.0 || !(pr.beta > 0.0))
    throw Error("shock-front run needs a blocked entry and an open right exit");
  if (k < 0 || k > n) throw Error("block size out of range");
  if (!(dt > 0.0)) throw Error("sampling step must be positive");

  FrontTracker ft;
  if (k == 0) return ft;  // no particles, front undefined

  Configuration init = Configuration::segment(n);
  for (int x = n - k + 1; x <= n; ++x) init.set(x, true);
  SegmentProcess proc(pr, n, seed, init);
  for (double t = 0.0; t <= horizon + 1e-12; t += dt) {
    proc.run_to(t);
    const std::optional<int> lp = leftmost_particle(proc.config());
    if (!lp) break;  // drained empty
    ft.times.push_back(t);
    ft.front.push_back(*lp);
  }

  // least-squares slope of L against t over the middle 80% of the recorded
  // sweep, skipping the jammed start and the drained tail
  const size_t cnt = ft.times.size();
  if (cnt >= 8) {
    const size_t lo = cnt / 10, hi = cnt - cnt / 10;
    double st = 0.0, sf = 0.0, stt = 0.0, stf = 0.0;
    const double num = static_cast<double>(hi - lo);
    for (size_t i = lo; i < hi; ++i) {
      st += ft.times[i];
      sf += ft.front[i];
      stt += ft.times[i] * ft.times[i];
      stf += ft.times[i] * ft.front[i];
    }
    const double denom = num * stt - st * st;
    if (denom > 0.0) ft.speed = (num * stf - st * sf) / denom;
  }
  return ft;
}

}  // namespace xlab
