#include "toa/photon_source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toa/error.hpp"

namespace toa {

namespace {

constexpr double kMaxRepresentablePs = 9.0e18;

}  // namespace

Picoseconds seconds_to_ps(double seconds) {
    const double ps = seconds * static_cast<double>(kPicosPerSecond);
    if (!(ps < kMaxRepresentablePs)) {
        throw ParameterError("duration exceeds the picosecond range");
    }
    return static_cast<Picoseconds>(std::floor(ps + 0.5));
}

void SourceConfig::validate() const {
    if (!(mean_rate > 0.0) || !std::isfinite(mean_rate)) {
        throw ParameterError("source mean_rate must be a positive finite rate");
    }
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw ParameterError("source duration must be >= 0");
    }
    if (!(std::abs(drift_fraction) < 1.0)) {
        throw ParameterError("source drift_fraction must satisfy |drift| < 1");
    }
}

Picoseconds sample_interarrival(double rate, Xoshiro256ss& rng) {
    if (!(rate > 0.0)) {
        throw ParameterError("inter-arrival rate must be positive");
    }
    const double ps = rng.exponential(rate) * static_cast<double>(kPicosPerSecond);
    if (!(ps < kMaxRepresentablePs)) {
        return static_cast<Picoseconds>(kMaxRepresentablePs);
    }
    return static_cast<Picoseconds>(std::floor(ps + 0.5));
}

ArrivalGenerator::ArrivalGenerator(const SourceConfig& config)
    : config_(config), rng_(config.seed), duration_ps_(0), peak_rate_(config.mean_rate) {
    config_.validate();
    duration_ps_ = config_.duration_ps();
    if (config_.drift_fraction > 0.0) {
        peak_rate_ = config_.mean_rate * (1.0 + config_.drift_fraction * config_.duration);
    }
    done_ = duration_ps_ == 0;
}

double ArrivalGenerator::rate_at(Picoseconds t) const noexcept {
    const double rate = config_.mean_rate * (1.0 + config_.drift_fraction * to_seconds(t));
    return std::max(rate, 0.0);
}

std::optional<Picoseconds> ArrivalGenerator::next() {
    while (!done_) {
        const Picoseconds gap = sample_interarrival(peak_rate_, rng_);
        if (gap >= duration_ps_ - cursor_) {
            done_ = true;
            break;
        }
        cursor_ += gap;
        if (config_.drift_fraction == 0.0) {
            return cursor_;
        }
        if (rng_.uniform01() * peak_rate_ < rate_at(cursor_)) {
            return cursor_;
        }
    }
    return std::nullopt;
}

std::size_t ArrivalGenerator::fill(std::vector<Picoseconds>& out, std::size_t max_count) {
    std::size_t appended = 0;
    while (appended < max_count) {
        const auto t = next();
        if (!t) {
            break;
        }
        out.push_back(*t);
        ++appended;
    }
    return appended;
}

ArrivalStream generate_arrivals(const SourceConfig& config) {
    ArrivalGenerator generator(config);
    ArrivalStream stream;
    stream.duration_ps = generator.duration_ps();
    stream.timestamps.reserve(static_cast<std::size_t>(
        std::min(config.mean_rate * config.duration * 1.01 + 16.0, 1.0e8)));
    generator.fill(stream.timestamps, std::numeric_limits<std::size_t>::max());
    return stream;
}

std::vector<std::uint64_t> window_counts(std::span<const Picoseconds> timestamps, Picoseconds horizon,
                                         Picoseconds window) {
    if (window <= 0) {
        throw ParameterError("window must be positive");
    }
    Picoseconds span = horizon;
    if (!timestamps.empty()) {
        span = std::max(span, timestamps.back() + 1);
    }
    const auto n_windows = static_cast<std::size_t>((span + window - 1) / window);
    std::vector<std::uint64_t> counts(n_windows, 0);
    for (const Picoseconds t : timestamps) {
        ++counts[static_cast<std::size_t>(t / window)];
    }
    return counts;
}

std::vector<std::uint64_t> window_counts(const ArrivalStream& stream, Picoseconds window) {
    return window_counts(stream.timestamps, stream.duration_ps, window);
}

double poisson_pmf(unsigned k, double mean) {
    if (mean == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double binomial_pmf(unsigned k, std::uint64_t trials, double p) {
    if (k > trials) {
        return 0.0;
    }
    if (p == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    const auto n = static_cast<double>(trials);
    const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

double binomial_poisson_tv_distance(std::uint64_t bins, double mean, unsigned k_max) {
    if (bins == 0 || !(mean >= 0.0) || mean > static_cast<double>(bins)) {
        throw ParameterError("need bins > 0 and 0 <= mean <= bins");
    }
    const double p = mean / static_cast<double>(bins);
    double sum = 0.0;
    for (unsigned k = 0; k <= k_max; ++k) {
        sum += std::abs(binomial_pmf(k, bins, p) - poisson_pmf(k, mean));
    }
    return 0.5 * sum;
}

}  // namespace toa
