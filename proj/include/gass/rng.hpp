// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 gass contributors

#pragma once

#include <cstdint>
#include <string_view>

namespace gass {

// splitmix64 finalizer. Full 64-bit avalanche, used both for key mixing and
// as the stream generator below.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Counter-based random stream keyed by (master seed, query id, sample
/// index). Streams are independent of scheduling order, so sampling is
/// reproducible under any thread count.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view query_id,
            std::uint64_t sample_index)
      : state_(mix64(mix64(master_seed ^ fnv1a64(query_id)) + sample_index)) {}

  explicit RngStream(std::uint64_t raw_state) : state_(raw_state) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n)) %
           n;
  }

 private:
  std::uint64_t state_;
};

}  // namespace gass
