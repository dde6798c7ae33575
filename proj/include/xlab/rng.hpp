#pragma once
#include <cmath>
#include <cstdint>
#include <string_view>

namespace xlab {

// splitmix64 finalizer; bijective on u64.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

inline uint64_t hash_str(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return mix64(h);
}

// Counter-based stream: value(i) = mix64(key + GOLDEN*(i+1)). Splittable by
// key, random-access by counter; replay needs only (key, counter).
struct CounterRng {
  uint64_t key = 0;
  uint64_t counter = 0;

  CounterRng() = default;
  explicit CounterRng(uint64_t k) : key(k) {}

  static CounterRng for_stream(uint64_t seed, uint64_t stream) {
    return CounterRng(hash_combine(seed, stream));
  }

  uint64_t next_u64() {
    ++counter;
    return mix64(key + 0x9e3779b97f4a7c15ull * counter);
  }

  // uniform on the open interval (0,1); never returns an endpoint
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_exp(double rate) { return -std::log(next_unit()) / rate; }
};

// Replica seeds: derived from the master seed, a stream label and an index.
inline uint64_t derive_seed(uint64_t master, std::string_view label, uint64_t index) {
  return hash_combine(hash_combine(master, hash_str(label)), index);
}

}  // namespace xlab
