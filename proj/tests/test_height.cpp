#include <algorithm>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "xlab/config.hpp"
#include "xlab/height.hpp"

using namespace xlab;

namespace {
Configuration seg(std::initializer_list<int> bits) {
  Configuration c = Configuration::segment(static_cast<int>(bits.size()));
  int x = 1;
  for (int b : bits) c.set(x++, b != 0);
  return c;
}
}  // namespace

TEST_CASE("height walk closes at both ends") {
  const std::vector<int> h = height_function(seg({0, 0}));
  CHECK(h == std::vector<int>{0, -1, -2, -1, 0});
  const std::vector<int> hf = height_function(seg({1, 1}));
  CHECK(hf == std::vector<int>{0, 1, 2, 1, 0});
  const std::vector<int> hm = height_function(seg({1, 0, 1}));
  REQUIRE(hm.size() == 7);
  CHECK(hm.front() == 0);
  CHECK(hm.back() == 0);
  for (size_t i = 1; i < hm.size(); ++i) CHECK(std::abs(hm[i] - hm[i - 1]) == 1);
  // mirrored half retraces the first half's increments in reverse
  CHECK(hm == std::vector<int>{0, 1, 0, 1, 0, 1, 0});
}

TEST_CASE("recentred height vanishes when the right rates balance") {
  const Configuration c = seg({1, 0, 1, 1});
  const std::vector<int> h = height_function(c);
  const std::vector<double> hs = h_star(c, 0.4, 0.4);
  REQUIRE(hs.size() == h.size());
  for (size_t i = 0; i < h.size(); ++i) CHECK(hs[i] == doctest::Approx(h[i]).epsilon(1e-12));
  // asymmetric rates tilt by min(x, 2N-x) (delta-beta)/(delta+beta)
  const std::vector<double> ht = h_star(c, 0.1, 0.3);
  const int n2 = 2 * c.size();
  for (size_t i = 0; i < ht.size(); ++i) {
    const double corr = std::min<double>(static_cast<double>(i), n2 - static_cast<double>(i)) *
                        (0.3 - 0.1) / (0.3 + 0.1);
    CHECK(ht[i] == doctest::Approx(h[i] - corr).epsilon(1e-12));
  }
  CHECK(ht.front() == 0.0);
  CHECK(ht.back() == 0.0);
}

TEST_CASE("componentwise order") {
  CHECK(compare_componentwise(seg({0, 1, 0}), seg({0, 1, 0})) == Order::Equal);
  CHECK(compare_componentwise(seg({0, 1, 0}), seg({1, 1, 0})) == Order::Less);
  CHECK(compare_componentwise(seg({1, 1, 1}), seg({0, 1, 0})) == Order::Greater);
  CHECK(compare_componentwise(seg({1, 0, 0}), seg({0, 1, 0})) == Order::Incomparable);
  CHECK_THROWS_AS(compare_componentwise(seg({1, 0}), seg({1, 0, 0})), Error);
}

TEST_CASE("height order extends the componentwise order") {
  // componentwise incomparable, height comparable: a particle moved left
  CHECK(compare_componentwise(seg({1, 0}), seg({0, 1})) == Order::Incomparable);
  CHECK(compare_height(seg({1, 0}), seg({0, 1})) == Order::Greater);
  CHECK(compare_height(seg({0, 1}), seg({1, 0})) == Order::Less);
  CHECK(compare_height(seg({1, 0, 1}), seg({1, 0, 1})) == Order::Equal);
  // equal particle numbers, crossing prefix sums
  CHECK(compare_height(seg({1, 0, 0, 1}), seg({0, 1, 1, 0})) == Order::Incomparable);
  // componentwise domination implies height domination
  CHECK(compare_height(seg({0, 1, 0}), seg({1, 1, 0})) == Order::Less);
}

TEST_CASE("height lattice meet and join") {
  const Configuration x = seg({1, 0, 0, 1});
  const Configuration y = seg({0, 1, 1, 0});
  const Configuration lo = config_min(x, y);
  const Configuration hi = config_max(x, y);
  CHECK(compare_height(lo, x) != Order::Greater);
  CHECK(compare_height(lo, y) != Order::Greater);
  CHECK(compare_height(hi, x) != Order::Less);
  CHECK(compare_height(hi, y) != Order::Less);
  const std::vector<int> hx = height_function(x), hy = height_function(y);
  const std::vector<int> hl = height_function(lo), hh = height_function(hi);
  for (size_t i = 0; i < hx.size(); ++i) {
    CHECK(hl[i] == std::min(hx[i], hy[i]));
    CHECK(hh[i] == std::max(hx[i], hy[i]));
  }
  // comparable pairs reduce to the pair itself
  CHECK(config_min(seg({1, 0}), seg({0, 1})) == seg({0, 1}));
  CHECK(config_max(seg({1, 0}), seg({0, 1})) == seg({1, 0}));
}
