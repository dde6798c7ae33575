#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlab/error.hpp"

namespace xlab {

enum class Topology : uint8_t {
  Segment,   // sites 1..N, reservoirs at both ends
  HalfLine,  // sites 1..W, reservoir at the left end only
  Line,      // window -W..W; implicit tails: holes on the left, particles on the right
};

// Bit-packed occupation configuration on a contiguous range of sites.
class Configuration {
 public:
  Configuration() = default;

  static Configuration segment(int n);
  static Configuration half_line(int w);
  static Configuration line(int w);

  Topology topology() const { return topo_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int size() const { return hi_ - lo_ + 1; }

  // Line topology resolves out-of-window sites from the tail convention;
  // the bounded topologies treat out-of-range access as a logic error.
  bool at(int x) const {
    if (x < lo_ || x > hi_) {
      if (topo_ == Topology::Line) return x > hi_;
      throw Error("site out of range");
    }
    const int i = x - lo_;
    return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u;
  }

  void set(int x, bool v) {
    if (x < lo_ || x > hi_) throw Error("site out of range");
    const int i = x - lo_;
    const uint64_t bit = 1ull << (i & 63);
    if (v)
      words_[static_cast<size_t>(i) >> 6] |= bit;
    else
      words_[static_cast<size_t>(i) >> 6] &= ~bit;
  }

  void fill(bool v);
  int count() const;  // particles inside the window

  bool operator==(const Configuration& o) const {
    return topo_ == o.topo_ && lo_ == o.lo_ && hi_ == o.hi_ && words_ == o.words_;
  }
  bool operator!=(const Configuration& o) const { return !(*this == o); }

  bool all_zero() const;
  bool all_one() const;

  // '0'/'1' per site, leftmost site first
  std::string to_string() const;

  // Segment only: encode sites as bits of an integer index, site 1 = bit 0.
  uint64_t to_index() const;
  static Configuration segment_from_index(int n, uint64_t idx);

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& mutable_words() { return words_; }

 private:
  Configuration(Topology t, int lo, int hi);
  Topology topo_ = Topology::Segment;
  int lo_ = 1, hi_ = 0;
  std::vector<uint64_t> words_;
};

// Leftmost occupied site / rightmost empty site inside the window. On the
// line topology the tail convention makes both always defined: an empty
// window has its leftmost particle at hi+1, a hole-free one its rightmost
// hole at lo-1. Bounded topologies yield nullopt when absent.
std::optional<int> leftmost_particle(const Configuration& c);
std::optional<int> rightmost_hole(const Configuration& c);

}  // namespace xlab
