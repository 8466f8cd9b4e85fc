#pragma once

#include <cstdint>

namespace adiamix {

/// PCG32 (pcg_setseq_64_xsh_rr_32). Output is fully specified by (seed, stream),
/// so every platform produces the same sequence. Bounded draws use our own
/// rejection sampling rather than <random> distributions, whose algorithms are
/// implementation-defined.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0xda3e39cb94b95bdbULL);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t bounded(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffU; }
  result_type operator()() { return next_u32(); }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-instance seed: splitmix64 chained over (master, n, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t index);

}  // namespace adiamix
