#include "toa/health.hpp"

#include <algorithm>

#include "toa/error.hpp"

namespace toa {

RateBounds relative_bounds(double nominal_rate, double tolerance) {
    if (!(tolerance >= 0.0)) {
        throw ParameterError("health tolerance must be >= 0");
    }
    return {nominal_rate * (1.0 - tolerance), nominal_rate * (1.0 + tolerance)};
}

WindowCounter::WindowCounter(Picoseconds window) : window_(window) {
    if (window_ <= 0) {
        throw ParameterError("health window must be positive");
    }
}

void WindowCounter::add(Picoseconds timestamp) {
    const auto k = static_cast<std::size_t>(timestamp / window_);
    if (k >= counts_.size()) {
        counts_.resize(k + 1, 0);
    }
    ++counts_[k];
}

HealthStatus evaluate_health(const WindowCounter& counter, Picoseconds horizon, const RateBounds& bounds) {
    HealthStatus status;
    status.window = counter.window();
    status.bounds = bounds;
    const Picoseconds window = counter.window();
    const auto& counts = counter.counts();
    const auto covered = static_cast<std::size_t>((horizon + window - 1) / window);
    const std::size_t n_windows = std::max(covered, counts.size());
    // Events past the horizon (e.g. jittered) extend the span to whole windows.
    const auto last_start = counts.empty() ? Picoseconds{0} : static_cast<Picoseconds>(counts.size() - 1) * window;
    const Picoseconds span = horizon > last_start ? horizon : static_cast<Picoseconds>(counts.size()) * window;
    for (std::size_t k = 0; k < n_windows; ++k) {
        const Picoseconds start = static_cast<Picoseconds>(k) * window;
        const Picoseconds width = std::min(window, span - start);
        const double count = k < counts.size() ? static_cast<double>(counts[k]) : 0.0;
        const double rate = count / to_seconds(width);
        status.rates.push_back(rate);
        if (width == window && (rate < bounds.lower || rate > bounds.upper)) {
            status.alarmed_windows.push_back(k);
        }
    }
    status.flag = status.alarmed_windows.empty() ? HealthFlag::ok : HealthFlag::alarm;
    return status;
}

HealthStatus health_monitor(const DetectionStream& stream, Picoseconds window, const RateBounds& bounds) {
    WindowCounter counter(window);
    for (const auto& e : stream.events) {
        counter.add(e.timestamp);
    }
    return evaluate_health(counter, stream.duration_ps, bounds);
}

}  // namespace toa
