#include "xlab/config.hpp"

#include <bit>

namespace xlab {

Configuration::Configuration(Topology t, int lo, int hi) : topo_(t), lo_(lo), hi_(hi) {
  if (hi < lo) throw Error("empty site range");
  words_.assign((static_cast<size_t>(hi - lo + 1) + 63) / 64, 0ull);
}

Configuration Configuration::segment(int n) {
  if (n < 1) throw Error("segment needs at least one site");
  return Configuration(Topology::Segment, 1, n);
}

Configuration Configuration::half_line(int w) {
  if (w < 2) throw Error("half-line window too small");
  return Configuration(Topology::HalfLine, 1, w);
}

Configuration Configuration::line(int w) {
  if (w < 1) throw Error("line window too small");
  Configuration c(Topology::Line, -w, w);
  return c;
}

void Configuration::fill(bool v) {
  const uint64_t word = v ? ~0ull : 0ull;
  for (auto& w : words_) w = word;
  if (v) {
    const int rem = size() & 63;
    if (rem) words_.back() &= (1ull << rem) - 1;
  }
}

int Configuration::count() const {
  int c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool Configuration::all_zero() const {
  for (uint64_t w : words_) {
    if (w) return false;
  }
  return true;
}

bool Configuration::all_one() const { return count() == size(); }

std::string Configuration::to_string() const {
  std::string s(static_cast<size_t>(size()), '0');
  for (int i = 0; i < size(); ++i)
    if ((words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u) s[static_cast<size_t>(i)] = '1';
  return s;
}

uint64_t Configuration::to_index() const {
  if (topo_ != Topology::Segment || size() > 64) throw Error("index encoding needs a segment of <= 64 sites");
  return words_[0];
}

Configuration Configuration::segment_from_index(int n, uint64_t idx) {
  if (n < 1 || n > 64) throw Error("index encoding needs a segment of <= 64 sites");
  if (n < 64 && (idx >> n)) throw Error("index out of range");
  Configuration c = segment(n);
  c.words_[0] = idx;
  return c;
}

std::optional<int> leftmost_particle(const Configuration& c) {
  const auto& w = c.words();
  for (size_t k = 0; k < w.size(); ++k) {
    if (w[k]) return c.lo() + static_cast<int>(k * 64 + static_cast<size_t>(std::countr_zero(w[k])));
  }
  if (c.topology() == Topology::Line) return c.hi() + 1;
  return std::nullopt;
}

std::optional<int> rightmost_hole(const Configuration& c) {
  const auto& w = c.words();
  const int n = c.size();
  for (size_t k = w.size(); k-- > 0;) {
    uint64_t inv = ~w[k];
    if (k + 1 == w.size()) {
      const int rem = n & 63;
      if (rem) inv &= (1ull << rem) - 1;
    }
    if (inv) return c.lo() + static_cast<int>(k * 64 + 63 - static_cast<size_t>(std::countl_zero(inv)));
  }
  if (c.topology() == Topology::Line) return c.lo() - 1;
  return std::nullopt;
}

}  // namespace xlab
