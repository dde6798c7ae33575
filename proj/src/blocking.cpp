#include "xlab/blocking.hpp"

#include <cmath>

namespace xlab {

double blocking_marginal(double p, int x) {
  if (!(p > 0.5 && p < 1.0)) throw Error("blocking measure needs 1/2 < p < 1");
  // p^x / (q^x + p^x) = 1 / (1 + (q/p)^x), stable for both signs of x
  return 1.0 / (1.0 + std::pow((1.0 - p) / p, x));
}

Configuration ground_state(int n, int window) {
  Configuration c = Configuration::line(window);
  if (n < c.lo() - 1 || n > c.hi()) throw Error("ground state index outside window");
  for (int x = n + 1; x <= c.hi(); ++x) c.set(x, true);
  return c;
}

Configuration ground_state_pair(int x, int window) {
  if (x < 0 || x + 2 > window) throw Error("ground state index outside window");
  Configuration c = Configuration::line(window);
  for (int y = -x; y < 0; ++y) c.set(y, true);
  for (int y = x + 1; y <= c.hi(); ++y) c.set(y, true);
  return c;
}

long long balance_defect(const Configuration& c, int n) {
  if (c.topology() != Topology::Line) throw Error("balance needs a line window");
  long long particles_left = 0, holes_right = 0;
  for (int x = c.lo(); x <= n; ++x) particles_left += c.at(x);
  for (int x = n + 1; x <= c.hi(); ++x) holes_right += !c.at(x);
  return particles_left - holes_right;
}

Configuration sample_blocking_measure(double p, int n, int window, CounterRng& rng) {
  Configuration c = Configuration::line(window);
  if (n < c.lo() || n > c.hi()) throw Error("balance index outside window");
  for (long attempt = 0; attempt < 10'000'000; ++attempt) {
    for (int x = c.lo(); x <= c.hi(); ++x) c.set(x, rng.next_unit() < blocking_marginal(p, x));
    if (balance_defect(c, n) == 0) return c;
  }
  throw Error("blocking measure sampler failed to accept");
}

}  // namespace xlab
