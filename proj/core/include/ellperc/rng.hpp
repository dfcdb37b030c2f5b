#pragma once

// xoshiro256** with splitmix64 seeding. Substreams are keyed by a base seed
// plus any number of integer ids (replicate index, grid index, level, ...),
// so every replicate is reproducible on its own.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ellperc {

/// One splitmix64 step; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes a seed with a list of ids into a new 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids);

class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::array<std::uint64_t, 4> s_{};
};

/// Generator for the substream (seed, ids...).
Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids);

}  // namespace ellperc
