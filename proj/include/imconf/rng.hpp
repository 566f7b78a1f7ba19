#pragma once

#include <cstddef>
#include <cstdint>

namespace imconf {

/// Monte Carlo configuration. Identical (reps, seed, stream_id) reproduce
/// bit-identical estimates regardless of thread count.
struct MCConfig {
  std::size_t reps = 100000;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  void validate() const;
  MCConfig with_stream(std::uint64_t id) const {
    MCConfig c = *this;
    c.stream_id = id;
    return c;
  }
  MCConfig with_reps(std::size_t r) const {
    MCConfig c = *this;
    c.reps = r;
    return c;
  }
};

/// SplitMix64 finalizer (Steele, Lea & Flood 2014): constants
/// 0xBF58476D1CE4E5B9, 0x94D049BB133111EB, shifts 30/27/31.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output i of a stream is mix64(key + (i+1)*phi64)
/// with phi64 = 0x9E3779B97F4A7C15 (golden-ratio increment). The key is a
/// hash of (seed, stream, substream), so any draw can be addressed directly
/// and parallel loops stay reproducible.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
      : key_(mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + mix64(stream + kGolden) * 3 +
                   mix64(substream ^ 0xBB67AE8584CAA73BULL))) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform on the open interval (0,1) with 53-bit resolution.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Generator for replicate `index` of the configured stream.
inline CounterRng substream(const MCConfig& mc, std::uint64_t index) {
  return CounterRng(mc.seed, mc.stream_id, index);
}

}  // namespace imconf
