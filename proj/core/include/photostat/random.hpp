#pragma once

#include <cstdint>
#include <random>

namespace photostat {

inline constexpr std::uint64_t default_seed = 0x5eed'1917'0000'0001ULL;

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/*!
 * Deterministic random source.
 *
 * Wraps a 64-bit Mersenne twister and derives every variate from raw 64-bit
 * words, so results depend only on the seed and never on the standard
 * library's distribution implementations.
 */
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = default_seed);

    /// Independent stream for worker `index` under a common `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1]; safe as a logarithm argument.
    double uniform_pos();
    /// Standard normal variate (Marsaglia polar method).
    double normal();

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace photostat
