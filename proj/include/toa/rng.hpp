#pragma once

#include <array>
#include <cstdint>

namespace toa {

/**
 * Deterministic generator contract shared by every stochastic stage.
 *
 * Engine: xoshiro256** (Blackman & Vigna), state seeded by four consecutive
 * SplitMix64 outputs of the 64-bit seed. Derived quantities:
 *   uniform01()      = (next() >> 11) * 2^-53            in [0, 1)
 *   uniform_open0()  = ((next() >> 11) + 1) * 2^-53      in (0, 1]
 *   exponential(r)   = -ln(uniform_open0()) / r          (inverse CDF)
 *   normal()         = Box-Muller on (uniform_open0(), uniform01()); the
 *                      sine branch is cached and returned on the next call.
 * Any port that follows these definitions reproduces the same streams.
 */
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256ss(std::uint64_t seed);

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform_open0() noexcept { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
    double exponential(double rate) noexcept;
    double normal() noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

private:
    std::array<std::uint64_t, 4> s_{};
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// One SplitMix64 step; advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed for sub-stream `stream_id` of `master`: first SplitMix64 output of
/// master + stream_id * 0x9E3779B97F4A7C15.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) noexcept;

}  // namespace toa
