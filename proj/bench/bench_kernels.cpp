#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "xlab/exact.hpp"
#include "xlab/kernels.hpp"
#include "xlab/params.hpp"
#include "xlab/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_per_call(const std::function<void()>& fn, int min_calls) {
  // one warmup call, then enough repetitions to pass ~0.2 s
  fn();
  int calls = 0;
  const auto t0 = Clock::now();
  double elapsed = 0.0;
  do {
    fn();
    ++calls;
    elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  } while (calls < min_calls || elapsed < 0.2);
  return elapsed / calls;
}

void report(const char* name, double serial_s, double parallel_s, double max_diff) {
  std::printf("%-24s serial %10.3f ms   parallel %10.3f ms   speedup %5.2fx   max|diff| %g\n",
              name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s, max_diff);
}

}  // namespace

int main() {
  using namespace xlab;
  std::printf("threads: %d (parallel %s)\n\n", kernels::thread_count(),
              kernels::parallel_enabled() ? "on" : "off");

  // spmm on the generator of a 10-site chain (1024 x 1024, ~11 entries/row)
  {
    Params pr;
    pr.p = 0.6;
    pr.alpha = 0.5;
    pr.beta = 0.4;
    pr.gamma = 0.1;
    pr.delta = 0.2;
    const Generator g = build_generator(pr, 10);
    const int n = g.dim, k = g.dim;
    CounterRng rng(7);
    std::vector<double> b(static_cast<size_t>(n) * k);
    for (double& x : b) x = rng.next_unit();
    std::vector<double> c1(b.size()), c2(b.size());
    const double ts = seconds_per_call([&] { kernels::spmm_serial(g.offdiag, b.data(), c1.data(), k); }, 3);
    const double tp = seconds_per_call([&] { kernels::spmm_omp(g.offdiag, b.data(), c2.data(), k); }, 3);
    double diff = 0.0;
    for (size_t i = 0; i < c1.size(); ++i) diff = std::max(diff, std::abs(c1[i] - c2[i]));
    report("spmm 1024x1024", ts, tp, diff);
  }

  // axpy on a large vector
  {
    const size_t len = 1u << 24;
    CounterRng rng(8);
    std::vector<double> x(len), y1(len, 0.0), y2(len, 0.0);
    for (double& v : x) v = rng.next_unit();
    const double ts = seconds_per_call([&] { kernels::axpy_serial(0.5, x.data(), y1.data(), len); }, 3);
    const double tp = seconds_per_call([&] { kernels::axpy_omp(0.5, x.data(), y2.data(), len); }, 3);
    // axpy accumulates, and the timing loops run different call counts;
    // compare one clean call each on zeroed buffers
    std::fill(y1.begin(), y1.end(), 0.0);
    std::fill(y2.begin(), y2.end(), 0.0);
    kernels::axpy_serial(0.5, x.data(), y1.data(), len);
    kernels::axpy_omp(0.5, x.data(), y2.data(), len);
    double diff = 0.0;
    for (size_t i = 0; i < len; ++i) diff = std::max(diff, std::abs(y1[i] - y2[i]));
    report("axpy 16M", ts, tp, diff);
  }

  // row-wise TV scan on a dense stochastic-like matrix
  {
    const int n = 2048;
    CounterRng rng(9);
    std::vector<double> p(static_cast<size_t>(n) * n), pi(static_cast<size_t>(n));
    for (double& v : p) v = rng.next_unit();
    for (double& v : pi) v = rng.next_unit();
    double r1 = 0.0, r2 = 0.0;
    const double ts = seconds_per_call([&] { r1 = kernels::tv_max_rows_serial(p.data(), n, pi.data()); }, 3);
    const double tp = seconds_per_call([&] { r2 = kernels::tv_max_rows_omp(p.data(), n, pi.data()); }, 3);
    report("tv_max_rows 2048", ts, tp, std::abs(r1 - r2));
  }
  return 0;
}
