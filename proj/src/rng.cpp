#include "nsinfer/rng.hpp"

#include <cmath>
#include <numbers>

namespace nsinfer {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer: full-avalanche 64-bit hash.
std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(finalize(finalize(seed + kGolden) + stream * kGolden + 1)) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return finalize(key_ + counter_ * kGolden);
}

double CounterRng::next_uniform() {
  // 53 random bits, offset by half an ulp so 0 and 1 are excluded.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::next_normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u1 = next_uniform();
  double u2 = next_uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

bool CounterRng::next_bernoulli(double prob) { return next_uniform() < prob; }

std::uint32_t CounterRng::next_below(std::uint32_t bound) {
  // Rejection sampling on the top 32 bits to avoid modulo bias.
  const std::uint32_t limit = (0xFFFFFFFFu / bound) * bound;
  for (;;) {
    std::uint32_t v = static_cast<std::uint32_t>(next_u64() >> 32);
    if (v < limit) return v % bound;
  }
}

std::uint64_t CounterRng::mix(std::uint64_t seed, std::uint64_t label) {
  return finalize(seed + kGolden + finalize(label + kGolden));
}

}  // namespace nsinfer
