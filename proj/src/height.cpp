#include "xlab/height.hpp"

#include <algorithm>
#include <cmath>

namespace xlab {

namespace {
void require_segment_pair(const Configuration& x, const Configuration& y) {
  if (x.topology() != Topology::Segment || y.topology() != Topology::Segment)
    throw Error("order comparison needs segment configurations");
  if (x.size() != y.size()) throw Error("order comparison needs equal lengths");
}
}  // namespace

std::vector<int> height_function(const Configuration& c) {
  if (c.topology() != Topology::Segment) throw Error("height profile needs a segment");
  const int n = c.size();
  std::vector<int> h(static_cast<size_t>(2 * n + 1), 0);
  for (int x = 1; x <= n; ++x) h[static_cast<size_t>(x)] = h[static_cast<size_t>(x - 1)] + (c.at(x) ? 1 : -1);
  for (int x = n + 1; x <= 2 * n; ++x)
    h[static_cast<size_t>(x)] = h[static_cast<size_t>(x - 1)] + (c.at(2 * n + 1 - x) ? -1 : 1);
  return h;
}

std::vector<double> h_star(const Configuration& c, double beta, double delta) {
  if (beta + delta <= 0.0) throw Error("h* needs beta + delta > 0");
  const int n = c.size();
  const double slope = (delta - beta) / (delta + beta);
  const std::vector<int> h = height_function(c);
  std::vector<double> out(h.size());
  for (int x = 0; x <= 2 * n; ++x)
    out[static_cast<size_t>(x)] = h[static_cast<size_t>(x)] - slope * std::min(x, 2 * n - x);
  return out;
}

Order compare_componentwise(const Configuration& x, const Configuration& y) {
  require_segment_pair(x, y);
  bool ge = true, le = true;
  const auto& wx = x.words();
  const auto& wy = y.words();
  for (size_t k = 0; k < wx.size(); ++k) {
    if (wy[k] & ~wx[k]) ge = false;
    if (wx[k] & ~wy[k]) le = false;
  }
  if (ge && le) return Order::Equal;
  if (ge) return Order::Greater;
  if (le) return Order::Less;
  return Order::Incomparable;
}

Order compare_height(const Configuration& x, const Configuration& y) {
  require_segment_pair(x, y);
  const int n = x.size();
  bool ge = true, le = true;
  int diff = 0;  // running prefix-sum difference
  for (int s = 1; s <= n; ++s) {
    diff += (x.at(s) ? 1 : 0) - (y.at(s) ? 1 : 0);
    if (diff > 0) le = false;
    if (diff < 0) ge = false;
  }
  if (ge && le) return Order::Equal;
  if (ge) return Order::Greater;
  if (le) return Order::Less;
  return Order::Incomparable;
}

namespace {
Configuration decode_extreme(const Configuration& x, const Configuration& y, bool take_max) {
  require_segment_pair(x, y);
  const int n = x.size();
  const std::vector<int> hx = height_function(x);
  const std::vector<int> hy = height_function(y);
  Configuration out = Configuration::segment(n);
  int prev = 0;
  for (int s = 1; s <= n; ++s) {
    const int cur = take_max ? std::max(hx[static_cast<size_t>(s)], hy[static_cast<size_t>(s)])
                             : std::min(hx[static_cast<size_t>(s)], hy[static_cast<size_t>(s)]);
    out.set(s, cur > prev);
    prev = cur;
  }
  return out;
}
}  // namespace

Configuration config_min(const Configuration& x, const Configuration& y) {
  return decode_extreme(x, y, false);
}

Configuration config_max(const Configuration& x, const Configuration& y) {
  return decode_extreme(x, y, true);
}

}  // namespace xlab
