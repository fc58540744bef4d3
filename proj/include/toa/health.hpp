#pragma once

#include <cstdint>
#include <vector>

#include "toa/detector.hpp"

namespace toa {

struct RateBounds {
    double lower = 0.0;  ///< counts per second
    double upper = 0.0;
};

enum class HealthFlag : std::uint8_t { ok, alarm };

struct HealthStatus {
    Picoseconds window = 0;
    std::vector<double> rates;  ///< counts per second, one per window
    RateBounds bounds;
    HealthFlag flag = HealthFlag::ok;
    std::vector<std::size_t> alarmed_windows;
};

/// Bounds nominal * (1 - tolerance) .. nominal * (1 + tolerance).
RateBounds relative_bounds(double nominal_rate, double tolerance);

/// Per-window click counts accumulated on the fly; events must arrive in time order.
class WindowCounter {
public:
    explicit WindowCounter(Picoseconds window);
    void add(Picoseconds timestamp);
    [[nodiscard]] Picoseconds window() const noexcept { return window_; }
    [[nodiscard]] const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

private:
    Picoseconds window_;
    std::vector<std::uint64_t> counts_;
};

/// Compares whole windows of `counter` over [0, horizon) with `bounds`.
/// A trailing partial window is reported in `rates` but never alarms.
HealthStatus evaluate_health(const WindowCounter& counter, Picoseconds horizon, const RateBounds& bounds);

/// Throws ParameterError if window <= 0.
HealthStatus health_monitor(const DetectionStream& stream, Picoseconds window, const RateBounds& bounds);

}  // namespace toa
