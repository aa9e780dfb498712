#include "headingsim/rng.hpp"

#include <cmath>

#include "headingsim/errors.hpp"

namespace hsim {

namespace {

constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) {
  std::uint64_t h = fnv1a64(&master, sizeof(master));
  h = fnv1a64(stream.data(), stream.size(), h);
  // One scramble round so adjacent masters do not yield adjacent states.
  return splitmix64(h);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index) {
  std::uint64_t h = derive_seed(master, stream);
  h = fnv1a64(&index, sizeof(index), h);
  return splitmix64(h);
}

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::next_unit() {
  // 53 high bits, the standard double-from-uint64 construction.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

double RngStream::next_normal(double mean, double stddev) {
  // u1 in (0, 1] keeps the log finite.
  double u1 = 1.0 - next_unit();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return mean + stddev * r * std::cos(kTwoPi * u2);
}

int RngStream::next_poisson(double mean) {
  if (mean < 0.0) throw DomainError("poisson mean must be nonnegative");
  if (mean == 0.0) return 0;
  const double limit = std::exp(-mean);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= next_unit();
  } while (p > limit);
  return k - 1;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n == 0) throw DomainError("next_below requires n > 0");
  return next_u64() % n;
}

}  // namespace hsim
