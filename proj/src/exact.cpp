#include "xlab/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "xlab/config.hpp"
#include "xlab/engine.hpp"
#include "xlab/error.hpp"
#include "xlab/rng.hpp"

namespace xlab {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// K = I + G/Lambda with Lambda = 1.01 * max exit rate; substochastic with
// nonnegative entries, so the Poisson series has no cancellation.
struct Uniformized {
  kernels::Csr k;
  double lambda = 0.0;
};

Uniformized uniformize(const Generator& g) {
  double mx = 0.0;
  for (double d : g.diag) mx = std::max(mx, -d);
  if (!(mx > 0.0)) throw Error("chain has no transitions");
  Uniformized u;
  u.lambda = 1.01 * mx;
  u.k.rows = u.k.cols = g.dim;
  u.k.ptr.assign(1, 0);
  u.k.idx.reserve(g.offdiag.idx.size() + static_cast<size_t>(g.dim));
  u.k.val.reserve(u.k.idx.capacity());
  for (int i = 0; i < g.dim; ++i) {
    u.k.idx.push_back(i);
    u.k.val.push_back(1.0 + g.diag[static_cast<size_t>(i)] / u.lambda);
    for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
         e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e) {
      u.k.idx.push_back(g.offdiag.idx[static_cast<size_t>(e)]);
      u.k.val.push_back(g.offdiag.val[static_cast<size_t>(e)] / u.lambda);
    }
    u.k.ptr.push_back(static_cast<int>(u.k.idx.size()));
  }
  return u;
}

// row-vector product v <- v K (scatter by rows of K)
void apply_rowvec(const kernels::Csr& k, std::vector<double>& v, std::vector<double>& scratch) {
  scratch.assign(v.size(), 0.0);
  for (int i = 0; i < k.rows; ++i) {
    const double vi = v[static_cast<size_t>(i)];
    if (vi == 0.0) continue;
    for (int e = k.ptr[static_cast<size_t>(i)]; e < k.ptr[static_cast<size_t>(i) + 1]; ++e)
      scratch[static_cast<size_t>(k.idx[static_cast<size_t>(e)])] +=
          vi * k.val[static_cast<size_t>(e)];
  }
  v.swap(scratch);
}

// P <- e^{dt G} P via the truncated Poisson series.
void series_apply(const Uniformized& u, RowMat& p, double dt) {
  if (!(dt > 0.0)) return;
  int jmin = 0;
  const std::vector<double> w = poisson_weights(u.lambda * dt, jmin);
  const int dim = static_cast<int>(p.rows());
  const int cols = static_cast<int>(p.cols());
  RowMat cur = p;
  RowMat tmp(dim, cols);
  p.setZero();
  const size_t len = static_cast<size_t>(dim) * cols;
  const int jmax = jmin + static_cast<int>(w.size()) - 1;
  for (int j = 0; j <= jmax; ++j) {
    if (j >= jmin)
      kernels::axpy(w[static_cast<size_t>(j - jmin)], cur.data(), p.data(), len);
    if (j < jmax) {
      kernels::spmm(u.k, cur.data(), tmp.data(), cols);
      cur.swap(tmp);
    }
  }
}

RowMat series_kernel(const Uniformized& u, int dim, double dt) {
  RowMat p = RowMat::Identity(dim, dim);
  series_apply(u, p, dt);
  return p;
}

std::vector<double> delta_law(int dim, int state) {
  if (state < 0 || state >= dim) throw Error("state index out of range");
  std::vector<double> law(static_cast<size_t>(dim), 0.0);
  law[static_cast<size_t>(state)] = 1.0;
  return law;
}

void check_grid(const std::vector<double>& grid) {
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (grid[i] > grid[i + 1]) throw Error("time grid must be nondecreasing");
  if (!grid.empty() && grid.front() < 0.0) throw Error("time grid must be nonnegative");
}

Eigen::MatrixXd dense_generator(const Generator& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i) {
    a(i, i) = g.diag[static_cast<size_t>(i)];
    for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
         e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e)
      a(i, g.offdiag.idx[static_cast<size_t>(e)]) += g.offdiag.val[static_cast<size_t>(e)];
  }
  return a;
}

}  // namespace

std::vector<double> poisson_weights(double mean, int& jmin) {
  if (!(mean >= 0.0)) throw Error("Poisson mean must be nonnegative");
  if (mean > 5e7) throw Error("horizon too large for the uniformized series");
  if (mean == 0.0) {
    jmin = 0;
    return {1.0};
  }
  const int mode = static_cast<int>(mean);
  const double kCut = 1e-18;
  std::vector<double> up{1.0};
  for (int j = mode;; ++j) {
    const double nxt = up.back() * (mean / (j + 1));
    if (nxt < kCut) break;
    up.push_back(nxt);
  }
  std::vector<double> down;
  for (int j = mode; j >= 1; --j) {
    const double prv = (down.empty() ? 1.0 : down.back()) * (j / mean);
    if (prv < kCut) break;
    down.push_back(prv);
  }
  jmin = mode - static_cast<int>(down.size());
  std::vector<double> w;
  w.reserve(down.size() + up.size());
  for (auto it = down.rbegin(); it != down.rend(); ++it) w.push_back(*it);
  for (double v : up) w.push_back(v);
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return w;
}

Generator build_generator(const Params& pr, int nsites, const std::vector<uint32_t>& banned_clocks,
                          int cap) {
  pr.validate();
  if (nsites < 1) throw Error("need at least one site");
  if (nsites > cap) throw Error("site count exceeds the exact-analysis cap");
  std::vector<uint32_t> banned = banned_clocks;
  std::sort(banned.begin(), banned.end());
  const auto is_banned = [&banned](uint32_t c) {
    return std::binary_search(banned.begin(), banned.end(), c);
  };

  Generator g;
  g.params = pr;
  g.nsites = nsites;
  g.dim = 1 << nsites;
  g.diag.assign(static_cast<size_t>(g.dim), 0.0);
  g.offdiag.rows = g.offdiag.cols = g.dim;
  g.offdiag.ptr.assign(1, 0);

  const uint32_t right_clock = static_cast<uint32_t>(nsites) + 1;
  std::vector<std::pair<int, double>> row;
  for (int s = 0; s < g.dim; ++s) {
    double out = 0.0;
    row.clear();
    const auto push = [&](int to, double rate) {
      if (rate <= 0.0) return;
      row.emplace_back(to, rate);
      out += rate;
    };
    if (!is_banned(kLeftReservoir)) {
      if (s & 1)
        push(s & ~1, pr.gamma);
      else
        push(s | 1, pr.alpha);
    }
    for (int x = 1; x < nsites; ++x) {
      if (is_banned(static_cast<uint32_t>(x))) continue;
      const int b0 = (s >> (x - 1)) & 1;
      const int b1 = (s >> x) & 1;
      if (b0 == b1) continue;
      const int flip = s ^ ((1 << (x - 1)) | (1 << x));
      push(flip, b0 ? pr.p : 1.0 - pr.p);
    }
    if (!is_banned(right_clock)) {
      const int hi = 1 << (nsites - 1);
      if (s & hi)
        push(s & ~hi, pr.beta);
      else
        push(s | hi, pr.delta);
    }
    // coalesce duplicate targets (at N = 1 both reservoirs flip the same bit)
    std::sort(row.begin(), row.end());
    for (size_t e = 0; e < row.size(); ++e) {
      if (!g.offdiag.idx.empty() &&
          static_cast<int>(g.offdiag.idx.size()) > g.offdiag.ptr.back() &&
          g.offdiag.idx.back() == row[e].first) {
        g.offdiag.val.back() += row[e].second;
      } else {
        g.offdiag.idx.push_back(row[e].first);
        g.offdiag.val.push_back(row[e].second);
      }
    }
    g.diag[static_cast<size_t>(s)] = -out;
    g.offdiag.ptr.push_back(static_cast<int>(g.offdiag.idx.size()));
  }
  return g;
}

std::vector<double> stationary_exact(const Generator& g) {
  const int dim = g.dim;
  // strong connectivity: forward and backward reachability from state 0
  {
    std::vector<std::vector<int>> rev(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i)
      for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
           e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e)
        rev[static_cast<size_t>(g.offdiag.idx[static_cast<size_t>(e)])].push_back(i);
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<char> seen(static_cast<size_t>(dim), 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int count = 1;
      while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        if (pass == 0) {
          for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
               e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e) {
            const int j = g.offdiag.idx[static_cast<size_t>(e)];
            if (!seen[static_cast<size_t>(j)]) {
              seen[static_cast<size_t>(j)] = 1;
              ++count;
              stack.push_back(j);
            }
          }
        } else {
          for (int j : rev[static_cast<size_t>(i)])
            if (!seen[static_cast<size_t>(j)]) {
              seen[static_cast<size_t>(j)] = 1;
              ++count;
              stack.push_back(j);
            }
        }
      }
      if (count != dim) throw Error("reducible chain: no unique stationary law");
    }
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    a(i, i) = g.diag[static_cast<size_t>(i)];
    for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
         e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e)
      a(g.offdiag.idx[static_cast<size_t>(e)], i) += g.offdiag.val[static_cast<size_t>(e)];
  }
  for (int j = 0; j < dim; ++j) a(dim - 1, j) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
  b(dim - 1) = 1.0;
  Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu(a);  // in-place decomposition
  Eigen::VectorXd pi = lu.solve(b);

  std::vector<double> out(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    if (pi(i) < -1e-10) throw Error("stationary solve produced a negative mass");
    out[static_cast<size_t>(i)] = std::max(pi(i), 0.0);
  }
  double sum = 0.0;
  for (double v : out) sum += v;
  for (double& v : out) v /= sum;

  std::vector<double> resid(static_cast<size_t>(dim), 0.0);
  for (int i = 0; i < dim; ++i) {
    resid[static_cast<size_t>(i)] += out[static_cast<size_t>(i)] * g.diag[static_cast<size_t>(i)];
    for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
         e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e)
      resid[static_cast<size_t>(g.offdiag.idx[static_cast<size_t>(e)])] +=
          out[static_cast<size_t>(i)] * g.offdiag.val[static_cast<size_t>(e)];
  }
  double rmax = 0.0;
  for (double r : resid) rmax = std::max(rmax, std::abs(r));
  if (rmax > 1e-12) throw Error("stationary solve residual exceeds tolerance");
  return out;
}

std::vector<double> stationary_product(const Params& pr, int n) {
  pr.validate();
  if (!(pr.alpha > 0.0 && pr.beta > 0.0))
    throw Error("product form needs open entries on both sides");
  const double a = compute_a(pr);
  const double b = compute_b(pr);
  if (std::abs(a * b - 1.0) > 1e-10) throw Error("product form needs a*b = 1");
  const double rho = 1.0 / (1.0 + a);
  const int dim = 1 << n;
  std::vector<double> mu(static_cast<size_t>(dim));
  for (int s = 0; s < dim; ++s) {
    const int k = std::popcount(static_cast<unsigned>(s));
    mu[static_cast<size_t>(s)] = std::pow(rho, k) * std::pow(1.0 - rho, n - k);
  }
  return mu;
}

std::vector<double> stationary_reversible(const Params& pr, int n) {
  pr.validate();
  if (std::max(pr.alpha, pr.gamma) != 0.0)
    throw Error("reversible form needs a sealed left boundary");
  const int dim = 1 << n;
  std::vector<double> mu(static_cast<size_t>(dim), 0.0);
  if (pr.beta == 0.0 && pr.delta == 0.0)
    throw Error("both right rates zero: chain is reducible");
  if (pr.beta == 0.0) {
    mu[static_cast<size_t>(dim - 1)] = 1.0;  // filling only: absorbs at full
    return mu;
  }
  if (pr.delta == 0.0) {
    mu[0] = 1.0;  // draining only: absorbs at empty
    return mu;
  }
  const double lr = std::log(pr.delta / pr.beta);
  const double lq = std::log((1.0 - pr.p) / pr.p);  // -inf at p = 1
  std::vector<double> logw(static_cast<size_t>(dim));
  double mx = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < dim; ++s) {
    int zsum = 0;
    for (int x = 1; x <= n; ++x)
      if ((s >> (x - 1)) & 1) zsum += n - x;
    double lw = std::popcount(static_cast<unsigned>(s)) * lr;
    if (zsum > 0) lw += lq * zsum;
    logw[static_cast<size_t>(s)] = lw;
    mx = std::max(mx, lw);
  }
  double sum = 0.0;
  for (int s = 0; s < dim; ++s) {
    mu[static_cast<size_t>(s)] = std::exp(logw[static_cast<size_t>(s)] - mx);
    sum += mu[static_cast<size_t>(s)];
  }
  for (double& v : mu) v /= sum;
  return mu;
}

double detailed_balance_residual(const Generator& g, const std::vector<double>& mu) {
  if (static_cast<int>(mu.size()) != g.dim) throw Error("law dimension mismatch");
  double worst = 0.0;
  for (int i = 0; i < g.dim; ++i)
    for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
         e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e) {
      const int j = g.offdiag.idx[static_cast<size_t>(e)];
      if (j <= i) continue;
      const double forward = mu[static_cast<size_t>(i)] * g.offdiag.val[static_cast<size_t>(e)];
      const double back = mu[static_cast<size_t>(j)] * g.offdiag.at(j, i);
      worst = std::max(worst, std::abs(forward - back));
    }
  // pairs whose only transition is j -> i (e.g. p = 1 edges) are caught from row j
  for (int j = 0; j < g.dim; ++j)
    for (int e = g.offdiag.ptr[static_cast<size_t>(j)];
         e < g.offdiag.ptr[static_cast<size_t>(j) + 1]; ++e) {
      const int i = g.offdiag.idx[static_cast<size_t>(e)];
      if (i >= j) continue;
      if (g.offdiag.at(i, j) != 0.0) continue;  // already handled above
      worst = std::max(worst,
                       std::abs(mu[static_cast<size_t>(j)] * g.offdiag.val[static_cast<size_t>(e)]));
    }
  return worst;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw Error("law dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

std::vector<double> evolve_law(const Generator& g, std::vector<double> law, double t) {
  if (static_cast<int>(law.size()) != g.dim) throw Error("law dimension mismatch");
  if (!(t > 0.0)) return law;
  const Uniformized u = uniformize(g);
  int jmin = 0;
  const std::vector<double> w = poisson_weights(u.lambda * t, jmin);
  std::vector<double> acc(law.size(), 0.0), scratch;
  const int jmax = jmin + static_cast<int>(w.size()) - 1;
  for (int j = 0; j <= jmax; ++j) {
    if (j >= jmin)
      for (size_t i = 0; i < law.size(); ++i) acc[i] += w[static_cast<size_t>(j - jmin)] * law[i];
    if (j < jmax) apply_rowvec(u.k, law, scratch);
  }
  return acc;
}

std::vector<double> tv_curve(const Generator& g, const std::vector<double>& initial_law,
                             const std::vector<double>& grid) {
  check_grid(grid);
  const std::vector<double> pi = stationary_exact(g);
  std::vector<double> law = initial_law;
  std::vector<double> out;
  out.reserve(grid.size());
  double t = 0.0;
  for (double tg : grid) {
    law = evolve_law(g, std::move(law), tg - t);
    t = tg;
    out.push_back(tv_distance(law, pi));
  }
  return out;
}

std::vector<double> tv_curve_from_state(const Generator& g, int state,
                                        const std::vector<double>& grid) {
  return tv_curve(g, delta_law(g.dim, state), grid);
}

std::vector<double> tv_curve_censored(const Params& pr, int n, const CensoringSchedule& sched,
                                      int state, const std::vector<double>& grid) {
  sched.validate();
  check_grid(grid);
  const Generator free = build_generator(pr, n);
  const std::vector<double> pi = stationary_exact(free);

  // segment boundaries: [0, starts[0]) free, then [starts[k], starts[k+1])
  struct Segment {
    double begin, end;
    Generator gen;
  };
  std::vector<Segment> segments;
  const double inf = std::numeric_limits<double>::infinity();
  if (sched.empty()) {
    segments.push_back({0.0, inf, free});
  } else {
    if (sched.starts.front() > 0.0) segments.push_back({0.0, sched.starts.front(), free});
    for (size_t k = 0; k < sched.starts.size(); ++k) {
      const double end = k + 1 < sched.starts.size() ? sched.starts[k + 1] : inf;
      segments.push_back({sched.starts[k], end, build_generator(pr, n, sched.banned[k])});
    }
  }

  std::vector<double> law = delta_law(free.dim, state);
  std::vector<double> out;
  out.reserve(grid.size());
  double t = 0.0;
  size_t gi = 0;
  for (const Segment& seg : segments) {
    while (gi < grid.size() && grid[gi] < seg.end) {
      law = evolve_law(seg.gen, std::move(law), grid[gi] - t);
      t = grid[gi];
      out.push_back(tv_distance(law, pi));
      ++gi;
    }
    if (gi == grid.size()) break;
    if (seg.end < inf) {
      law = evolve_law(seg.gen, std::move(law), seg.end - t);
      t = seg.end;
    }
  }
  return out;
}

double mixing_time_exact(const Generator& g, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error("epsilon must lie in (0, 1)");
  if (g.nsites > 12) throw Error("dense doubling is budgeted for at most 12 sites");
  const int dim = g.dim;
  const std::vector<double> pi = stationary_exact(g);

  double pimin = 1.0;
  for (double v : pi) pimin = std::min(pimin, v);
  if (1.0 - pimin < eps) return 0.0;  // already mixed at t = 0

  const Uniformized u = uniformize(g);
  const double t0 = 64.0 / u.lambda;

  // geometric sweep t0 * 2^k until the worst row drops below eps
  const size_t bytes_per = static_cast<size_t>(dim) * dim * sizeof(double);
  const size_t max_chain = std::max<size_t>(12, size_t{2500000000} / bytes_per);
  std::vector<RowMat> chain;
  chain.push_back(series_kernel(u, dim, t0));
  std::vector<double> dk{kernels::tv_max_rows(chain.back().data(), dim, pi.data())};
  while (dk.back() >= eps) {
    if (chain.size() > max_chain || chain.size() > 48)
      throw Error("mixing time out of the dense-doubling budget");
    RowMat next(dim, dim);
    next.noalias() = chain.back() * chain.back();
    chain.push_back(std::move(next));
    dk.push_back(kernels::tv_max_rows(chain.back().data(), dim, pi.data()));
  }

  // bracket [t_lo, t_hi] with d(t_lo) >= eps > d(t_hi)
  const size_t m = chain.size() - 1;  // first index with d < eps
  RowMat plo;
  double tlo, dlo;
  double thi = t0 * std::pow(2.0, static_cast<double>(m));
  double dhi = dk[m];
  if (m == 0) {
    plo = RowMat::Identity(dim, dim);
    tlo = 0.0;
    dlo = 1.0 - pimin;
  } else {
    plo = chain[m - 1];
    tlo = t0 * std::pow(2.0, static_cast<double>(m - 1));
    dlo = dk[m - 1];
    // walk the remaining chain powers down to a bracket of width t0
    RowMat ptry(dim, dim);
    for (size_t j = m - 1; j-- > 0;) {
      const double tt = tlo + t0 * std::pow(2.0, static_cast<double>(j));
      if (tt >= thi) continue;
      ptry.noalias() = chain[j] * plo;
      const double dt = kernels::tv_max_rows(ptry.data(), dim, pi.data());
      if (dt >= eps) {
        plo.swap(ptry);
        tlo = tt;
        dlo = dt;
      } else {
        thi = tt;
        dhi = dt;
      }
    }
  }
  chain.clear();

  // Illinois on ln d(t) - ln eps within the final bracket
  const double kRelTol = 1e-6;
  double glo = std::log(dlo) - std::log(eps);
  double ghi = std::log(std::max(dhi, 1e-300)) - std::log(eps);
  int stale_side = 0;
  for (int iter = 0; thi - tlo > kRelTol * thi; ++iter) {
    if (iter > 200) throw Error("bracket refinement failed to converge");
    double frac = glo / (glo - ghi);
    frac = std::clamp(frac, 0.02, 0.98);
    const double tt = tlo + frac * (thi - tlo);
    RowMat ptry = plo;
    series_apply(u, ptry, tt - tlo);
    const double dt = kernels::tv_max_rows(ptry.data(), dim, pi.data());
    const double gt = std::log(std::max(dt, 1e-300)) - std::log(eps);
    if (dt >= eps) {
      plo.swap(ptry);
      tlo = tt;
      glo = gt;
      if (stale_side == 1) ghi *= 0.5;
      stale_side = 1;
    } else {
      thi = tt;
      ghi = gt;
      if (stale_side == -1) glo *= 0.5;
      stale_side = -1;
    }
  }
  return 0.5 * (tlo + thi);
}

SymmetrizationReport adjoint_and_symmetrize(const Params& pr, int n) {
  const PhaseDescriptor d = classify_phase(pr);
  if (d.phase != Phase::TriplePoint)
    throw Error("symmetrization shortcut is stated at the triple point only");
  SymmetrizationReport rep;
  rep.adjoint = Params{1.0 - pr.p, pr.gamma, pr.delta, pr.alpha, pr.beta};
  const double ag = 0.5 * (pr.alpha + pr.gamma);
  const double bd = 0.5 * (pr.beta + pr.delta);
  rep.symmetrized = Params{0.5, ag, bd, ag, bd};

  const Generator gs = build_generator(rep.symmetrized, n);
  Eigen::MatrixXd a = dense_generator(gs);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw Error("eigenvalue solve failed");
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  if (std::abs(ev(gs.dim - 1)) > 1e-9) throw Error("top eigenvalue is not zero");
  rep.gap = -ev(gs.dim - 2);
  if (!(rep.gap > 0.0)) throw Error("symmetrized chain has no spectral gap");
  return rep;
}

DiaconisReport diaconis_bound_check(const Params& pr, int n, const std::vector<double>& grid) {
  check_grid(grid);
  DiaconisReport rep;
  rep.gap = adjoint_and_symmetrize(pr, n).gap;
  const Generator g = build_generator(pr, n);
  const std::vector<double> pi = stationary_exact(g);
  const Uniformized u = uniformize(g);
  const int dim = g.dim;
  RowMat p = RowMat::Identity(dim, dim);
  double t = 0.0;
  const double prefactor = std::pow(2.0, 0.5 * n + 1.0);
  for (double tg : grid) {
    series_apply(u, p, tg - t);
    t = tg;
    const double bound = prefactor * std::exp(-rep.gap * t);
    for (int i = 0; i < dim; ++i) {
      double s = 0.0;
      for (int j = 0; j < dim; ++j) s += std::abs(p(i, j) - pi[static_cast<size_t>(j)]);
      const double tv = 0.5 * s;
      if (tv > bound + 1e-12) ++rep.violations;
      rep.max_ratio = std::max(rep.max_ratio, tv / bound);
    }
  }
  return rep;
}

KacReport kac_check(const Params& pr, int n, int replicas, uint64_t seed) {
  if (replicas < 2) throw Error("need at least two replicas");
  const Generator g = build_generator(pr, n);
  const std::vector<double> pi = stationary_exact(g);
  KacReport rep;
  rep.replicas = replicas;
  const double r0 = -g.diag[0];
  if (!(r0 > 0.0)) throw Error("empty configuration has no exit");
  rep.kac_value = 1.0 / (pi[0] * r0);

  // first-step analysis: u_j = E_j[hitting time of state 0] for j != 0
  {
    const int dim = g.dim;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim - 1, dim - 1);
    for (int i = 1; i < dim; ++i) {
      a(i - 1, i - 1) = g.diag[static_cast<size_t>(i)];
      for (int e = g.offdiag.ptr[static_cast<size_t>(i)];
           e < g.offdiag.ptr[static_cast<size_t>(i) + 1]; ++e) {
        const int j = g.offdiag.idx[static_cast<size_t>(e)];
        if (j != 0) a(i - 1, j - 1) = g.offdiag.val[static_cast<size_t>(e)];
      }
    }
    const Eigen::VectorXd uvec =
        a.partialPivLu().solve(Eigen::VectorXd::Constant(dim - 1, -1.0));
    double expected = 1.0 / r0;
    for (int e = g.offdiag.ptr[0]; e < g.offdiag.ptr[1]; ++e)
      expected += g.offdiag.val[static_cast<size_t>(e)] / r0 *
                  uvec(g.offdiag.idx[static_cast<size_t>(e)] - 1);
    rep.linear_solve_value = expected;
  }

  // Monte Carlo return times from the empty configuration
  double sum = 0.0, sumsq = 0.0;
  for (int r = 0; r < replicas; ++r) {
    SegmentProcess proc(pr, n, derive_seed(seed, "kac-return", static_cast<uint64_t>(r)),
                        Configuration::segment(n));
    bool left = false;
    double tau = -1.0;
    for (long long guard = 0; guard < 200000000; ++guard) {
      const auto ev = proc.step(std::numeric_limits<double>::infinity());
      if (!ev) break;
      if (!ev->changed) continue;
      if (!left) {
        left = true;
        continue;
      }
      if (proc.config().all_zero()) {
        tau = ev->time;
        break;
      }
    }
    if (tau < 0.0) throw Error("return-time run exhausted its event budget");
    sum += tau;
    sumsq += tau * tau;
  }
  rep.mc_mean = sum / replicas;
  const double var = std::max(0.0, sumsq / replicas - rep.mc_mean * rep.mc_mean);
  rep.mc_se = std::sqrt(var / replicas);
  return rep;
}

}  // namespace xlab
