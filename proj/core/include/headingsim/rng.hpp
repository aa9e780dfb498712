#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace hsim {

// 64-bit FNV-1a. Used for substream derivation, config fingerprints and
// output file checksums. Stable across platforms.
std::uint64_t fnv1a64(const void* data, std::size_t len,
                      std::uint64_t seed = 14695981039346656037ull);
std::uint64_t fnv1a64(std::string_view s);

// Derives an independent substream seed from a master seed and a stream
// name, optionally indexed. Same inputs always give the same seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index);

// Deterministic pseudo random stream (splitmix64 core). All sampling is
// implemented here rather than with <random> distributions so that a given
// seed produces the same draw sequence on every platform and toolchain.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double next_unit();

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi);

  // Normal via Box-Muller; two uniforms consumed per draw, no cached spare.
  double next_normal(double mean = 0.0, double stddev = 1.0);

  // Poisson by inversion (Knuth). Suitable for the small means used here.
  int next_poisson(double mean);

  // Uniform integer in [0, n). n must be nonzero.
  std::uint64_t next_below(std::uint64_t n);

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace hsim
