#pragma once

#include <cstdint>

namespace nsinfer {

/// Counter-based pseudo-random generator. The i-th output is a fixed integer
/// hash of (seed, stream, i), so sequences are reproducible across platforms
/// and independent streams can be split off a master seed without coupling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform in the open interval (0, 1).
  double next_uniform();

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double next_normal();

  bool next_bernoulli(double prob);

  /// Unbiased integer in [0, bound); bound must be positive.
  std::uint32_t next_below(std::uint32_t bound);

  /// Derive a child seed from a parent seed and a label. mix(mix(s,a),b)
  /// gives the (a,b)-indexed substream family used by the experiment harness.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t label);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace nsinfer
