#pragma once

#include <cstdint>
#include <random>

namespace pabp {

/// Reproducible random stream. Identical (seed, stream) pairs yield
/// bit-identical draw sequences; distinct stream ids give streams that are
/// independent for practical purposes. Uniform doubles are produced from the
/// top 53 bits of the engine output, so sequences do not depend on the
/// standard library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, n); n must be positive.
  std::uint64_t next_below(std::uint64_t n);

  bool next_bernoulli(double p) { return next_double() < p; }

  /// Derived stream for a child task. Children with distinct ids are
  /// independent of each other and of the parent.
  RngStream substream(std::uint64_t child) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 gen_;
};

/// SplitMix64 finalizer; used for stream-id mixing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace pabp
