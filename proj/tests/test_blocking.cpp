#include <cmath>

#include <doctest.h>

#include "xlab/blocking.hpp"
#include "xlab/rng.hpp"

using namespace xlab;

TEST_CASE("blocking marginal") {
  CHECK(blocking_marginal(0.7, 0) == doctest::Approx(0.5).epsilon(1e-12));
  // antisymmetry around the origin
  for (int x : {1, 2, 5}) {
    CHECK(blocking_marginal(0.7, x) + blocking_marginal(0.7, -x) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  // monotone in x, saturating to 1
  double prev = 0.0;
  for (int x = -8; x <= 8; ++x) {
    const double m = blocking_marginal(0.7, x);
    CHECK(m > prev);
    prev = m;
  }
  CHECK(blocking_marginal(0.7, 40) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ground states") {
  const int w = 8;
  const Configuration g0 = ground_state(0, w);
  for (int x = -w; x <= w; ++x) CHECK(g0.at(x) == (x > 0));
  CHECK(balance_defect(g0, 0) == 0);

  const Configuration g3 = ground_state(3, w);
  for (int x = -w; x <= w; ++x) CHECK(g3.at(x) == (x > 3));
  CHECK(balance_defect(g3, 3) == 0);
  // same configuration read against the wrong class index
  CHECK(balance_defect(g3, 0) == -3);

  const Configuration pair = ground_state_pair(2, w);
  for (int x = -w; x <= w; ++x) CHECK(pair.at(x) == ((x >= -2 && x <= -1) || x > 2));
  CHECK(balance_defect(pair, 0) == 0);
}

TEST_CASE("blocking sampler stays in the balanced class") {
  const double p = 0.7;
  const int window = 12;
  CounterRng rng(derive_seed(99, "blocking-test", 0));
  double occ_far = 0.0, occ_origin = 0.0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const Configuration c = sample_blocking_measure(p, 0, window, rng);
    CHECK(balance_defect(c, 0) == 0);
    occ_far += c.at(6);
    occ_origin += c.at(0);
  }
  occ_far /= reps;
  occ_origin /= reps;
  // the class conditioning shifts the origin marginal only mildly, and its
  // effect decays fast away from the origin
  CHECK(occ_origin > 0.2);
  CHECK(occ_origin < 0.8);
  CHECK(std::abs(occ_far - blocking_marginal(p, 6)) < 0.05);

  // counter-based stream: same key means same draw sequence
  CounterRng r1(42), r2(42);
  CHECK(sample_blocking_measure(p, 2, window, r1) == sample_blocking_measure(p, 2, window, r2));
  CHECK(balance_defect(sample_blocking_measure(p, 2, window, r1), 2) == 0);
}
