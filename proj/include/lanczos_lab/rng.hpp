#pragma once

#include <cstdint>

namespace lanczos_lab {

/// SplitMix64 stream keyed by (seed, stream). Output depends only on the key
/// and the draw count, so trial t always sees the same numbers regardless of
/// scheduling.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by the Marsaglia polar method.
  double normal();

private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace lanczos_lab
