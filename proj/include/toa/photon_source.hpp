#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "toa/rng.hpp"

namespace toa {

/// All simulated time lives on an integer picosecond grid.
using Picoseconds = std::int64_t;

inline constexpr Picoseconds kPicosPerSecond = 1'000'000'000'000;

inline constexpr double to_seconds(Picoseconds t) noexcept {
    return static_cast<double>(t) / static_cast<double>(kPicosPerSecond);
}

/// Picoseconds rounded half up from a duration in seconds.
Picoseconds seconds_to_ps(double seconds);

struct SourceConfig {
    double mean_rate = 9.0e6;     ///< photons per second
    double duration = 1.0;        ///< seconds
    double drift_fraction = 0.0;  ///< relative intensity change per second
    std::uint64_t seed = 0;

    /// Throws ParameterError unless mean_rate > 0, duration >= 0, |drift| < 1.
    void validate() const;
    [[nodiscard]] Picoseconds duration_ps() const { return seconds_to_ps(duration); }
};

/// Photon arrival times in [0, duration_ps).
///
/// Non-decreasing rather than strictly increasing: two photons can share a
/// picosecond at GHz rates and dropping either would bias the counts.
struct ArrivalStream {
    std::vector<Picoseconds> timestamps;
    Picoseconds duration_ps = 0;
};

/// Exponential waiting time with mean 1/rate seconds, rounded half up to the
/// picosecond grid. Throws ParameterError if rate <= 0.
Picoseconds sample_interarrival(double rate, Xoshiro256ss& rng);

/**
 * Lazy Poisson arrival process.
 *
 * Without drift each arrival is the running sum of sample_interarrival()
 * draws. With drift the candidates are drawn at the peak rate over the run
 * and each is kept with probability rate(t) / peak, using one uniform01()
 * from the same generator, where rate(t) = mean_rate * (1 + drift * t).
 */
class ArrivalGenerator {
public:
    explicit ArrivalGenerator(const SourceConfig& config);

    /// Next arrival, or nullopt once the duration is exhausted.
    std::optional<Picoseconds> next();

    /// Appends up to `max_count` arrivals; returns how many were appended.
    std::size_t fill(std::vector<Picoseconds>& out, std::size_t max_count);

    [[nodiscard]] Picoseconds duration_ps() const noexcept { return duration_ps_; }

private:
    [[nodiscard]] double rate_at(Picoseconds t) const noexcept;

    SourceConfig config_;
    Xoshiro256ss rng_;
    Picoseconds duration_ps_;
    Picoseconds cursor_ = 0;
    double peak_rate_;
    bool done_ = false;
};

ArrivalStream generate_arrivals(const SourceConfig& config);

/// Number of timestamps in each window [k*window, (k+1)*window) over
/// ceil(horizon / window) windows. Throws ParameterError if window <= 0.
std::vector<std::uint64_t> window_counts(std::span<const Picoseconds> timestamps, Picoseconds horizon,
                                         Picoseconds window);
std::vector<std::uint64_t> window_counts(const ArrivalStream& stream, Picoseconds window);

double poisson_pmf(unsigned k, double mean);
double binomial_pmf(unsigned k, std::uint64_t trials, double p);

/// Total-variation distance between Binomial(bins, mean/bins) and
/// Poisson(mean), summed analytically over k <= k_max.
double binomial_poisson_tv_distance(std::uint64_t bins, double mean, unsigned k_max = 50);

}  // namespace toa
