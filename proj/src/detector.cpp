#include "toa/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toa/error.hpp"

namespace toa {

namespace {

constexpr double kJitterTruncation = 10.0;
constexpr Picoseconds kNever = std::numeric_limits<Picoseconds>::max();

}  // namespace

void DetectorConfig::validate() const {
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw ParameterError("detector efficiency must lie in [0, 1]");
    }
    if (dead_time < 0) {
        throw ParameterError("detector dead_time must be >= 0");
    }
    if (!(dark_count_rate >= 0.0) || !std::isfinite(dark_count_rate)) {
        throw ParameterError("detector dark_count_rate must be >= 0");
    }
    if (!(jitter_sigma >= 0.0) || !std::isfinite(jitter_sigma)) {
        throw ParameterError("detector jitter_sigma must be >= 0");
    }
}

DetectorModel::DetectorModel(const DetectorConfig& config, Picoseconds horizon, Sink sink)
    : config_(config),
      horizon_(horizon),
      sink_(std::move(sink)),
      thin_rng_(derive_seed(config.seed, 1)),
      dark_rng_(derive_seed(config.seed, 2)),
      jitter_rng_(derive_seed(config.seed, 3)),
      next_dark_(kNever),
      jitter_bound_(static_cast<Picoseconds>(std::ceil(kJitterTruncation * config.jitter_sigma))) {
    config_.validate();
    if (horizon_ < 0) {
        throw ParameterError("detector horizon must be >= 0");
    }
    if (config_.dark_count_rate > 0.0) {
        const Picoseconds first = sample_interarrival(config_.dark_count_rate, dark_rng_);
        next_dark_ = first < horizon_ ? first : kNever;
    }
}

void DetectorModel::advance_darks_before(Picoseconds t) {
    while (next_dark_ < t) {
        const Picoseconds dark = next_dark_;
        const Picoseconds gap = sample_interarrival(config_.dark_count_rate, dark_rng_);
        next_dark_ = gap < horizon_ - dark ? dark + gap : kNever;
        ++stats_.darks;
        jitter_and_buffer(dark, Origin::dark);
    }
}

void DetectorModel::push(Picoseconds arrival) {
    if (finished_) {
        throw ContractViolation("detector: push after finish");
    }
    if (arrival < last_input_) {
        throw ContractViolation("detector: arrivals must be non-decreasing");
    }
    last_input_ = arrival;
    ++stats_.photons_in;
    advance_darks_before(arrival);
    if (thin_rng_.uniform01() < config_.efficiency) {
        ++stats_.photons_kept;
        jitter_and_buffer(arrival, Origin::photon);
    }
}

void DetectorModel::finish() {
    if (finished_) {
        return;
    }
    advance_darks_before(kNever);
    release_up_to(kNever);
    finished_ = true;
}

void DetectorModel::jitter_and_buffer(Picoseconds t, Origin origin) {
    Picoseconds jittered = t;
    if (config_.jitter_sigma > 0.0) {
        double z = jitter_rng_.normal();
        while (std::abs(z) > kJitterTruncation) {
            z = jitter_rng_.normal();
        }
        jittered = std::max<Picoseconds>(0, t + std::llround(config_.jitter_sigma * z));
    }
    buffer_.push(Pending{jittered, order_++, origin});
    // Every later input has pre-jitter time >= t, hence jittered time >= t - bound.
    release_up_to(t - jitter_bound_);
}

void DetectorModel::release_up_to(Picoseconds limit) {
    while (!buffer_.empty() && buffer_.top().time <= limit) {
        gate(buffer_.top());
        buffer_.pop();
    }
}

void DetectorModel::gate(const Pending& p) {
    if (have_accepted_ && p.time - last_accepted_ < config_.dead_time) {
        ++stats_.dead_time_drops;
        return;
    }
    have_accepted_ = true;
    last_accepted_ = p.time;
    ++stats_.emitted;
    sink_(DetectionEvent{p.time, p.origin});
}

DetectionStream detect(const ArrivalStream& arrivals, const DetectorConfig& config) {
    DetectionStream out;
    out.duration_ps = arrivals.duration_ps;
    DetectorModel model(config, arrivals.duration_ps,
                        [&out](const DetectionEvent& e) { out.events.push_back(e); });
    for (const Picoseconds t : arrivals.timestamps) {
        model.push(t);
    }
    model.finish();
    return out;
}

std::vector<double> count_rate(const DetectionStream& stream, Picoseconds window) {
    if (window <= 0) {
        throw ParameterError("window must be positive");
    }
    if (stream.events.empty()) {
        return {};
    }
    const Picoseconds span = std::max(stream.duration_ps, stream.events.back().timestamp + 1);
    const auto n_windows = static_cast<std::size_t>((span + window - 1) / window);
    std::vector<double> counts(n_windows, 0.0);
    for (const auto& e : stream.events) {
        counts[static_cast<std::size_t>(e.timestamp / window)] += 1.0;
    }
    for (std::size_t k = 0; k < n_windows; ++k) {
        const Picoseconds start = static_cast<Picoseconds>(k) * window;
        const Picoseconds width = std::min(window, span - start);
        counts[k] /= to_seconds(width);
    }
    return counts;
}

}  // namespace toa
