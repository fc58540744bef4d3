#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "toa/photon_source.hpp"
#include "toa/rng.hpp"

namespace toa {

enum class Origin : std::uint8_t { photon, dark };

/// One detector click. `origin` is a simulation diagnostic; nothing
/// downstream of the detector reads it.
struct DetectionEvent {
    Picoseconds timestamp = 0;
    Origin origin = Origin::photon;

    friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct DetectionStream {
    std::vector<DetectionEvent> events;
    Picoseconds duration_ps = 0;
};

struct DetectorConfig {
    double efficiency = 0.1;               ///< eta in [0, 1]
    Picoseconds dead_time = 10'000'000;    ///< 10 us
    double dark_count_rate = 375.0;        ///< counts per second
    double jitter_sigma = 180.0;           ///< ps, Gaussian
    std::uint64_t seed = 0;

    void validate() const;
};

struct DetectorStats {
    std::uint64_t photons_in = 0;
    std::uint64_t photons_kept = 0;  ///< survived efficiency thinning
    std::uint64_t darks = 0;
    std::uint64_t dead_time_drops = 0;
    std::uint64_t emitted = 0;
};

/**
 * Streaming detector.
 *
 * Fixed stage order for every input arrival:
 *   1. keep with probability eta (one uniform01() per arrival, thinning stream);
 *   2. merge dark clicks from an independent Poisson process on [0, horizon)
 *      (a dark at the same picosecond as a photon goes after it);
 *   3. add round(sigma * z), z standard normal truncated to |z| <= 10, in merge
 *      order from the jitter stream; clamp negatives to 0;
 *   4. re-sort by jittered time, ties in merge order;
 *   5. non-paralyzable dead time: drop any click closer than dead_time to the
 *      last accepted one.
 * The truncation bounds how far jitter can reorder events, which lets step 4
 * release events as soon as no later input can overtake them.
 * Sub-stream seeds are derive_seed(seed, 1 | 2 | 3) for thinning, darks, jitter.
 */
class DetectorModel {
public:
    using Sink = std::function<void(const DetectionEvent&)>;

    DetectorModel(const DetectorConfig& config, Picoseconds horizon, Sink sink);

    /// Arrivals must be non-decreasing; throws ContractViolation otherwise.
    void push(Picoseconds arrival);

    /// Emits the remaining dark clicks and drains the re-sort buffer.
    void finish();

    [[nodiscard]] const DetectorStats& stats() const noexcept { return stats_; }

private:
    struct Pending {
        Picoseconds time;
        std::uint64_t order;
        Origin origin;
    };
    struct Later {
        bool operator()(const Pending& a, const Pending& b) const noexcept {
            return a.time != b.time ? a.time > b.time : a.order > b.order;
        }
    };

    void advance_darks_before(Picoseconds t);
    void jitter_and_buffer(Picoseconds t, Origin origin);
    void release_up_to(Picoseconds limit);
    void gate(const Pending& p);

    DetectorConfig config_;
    Picoseconds horizon_;
    Sink sink_;
    Xoshiro256ss thin_rng_;
    Xoshiro256ss dark_rng_;
    Xoshiro256ss jitter_rng_;
    Picoseconds next_dark_;
    Picoseconds jitter_bound_;
    Picoseconds last_input_ = 0;
    std::uint64_t order_ = 0;
    std::priority_queue<Pending, std::vector<Pending>, Later> buffer_;
    bool have_accepted_ = false;
    Picoseconds last_accepted_ = 0;
    bool finished_ = false;
    DetectorStats stats_;
};

DetectionStream detect(const ArrivalStream& arrivals, const DetectorConfig& config);

/// Per-window click rate in counts per second over ceil(duration / window)
/// windows; a trailing partial window is normalized by its own width.
/// Empty event list gives an empty result.
std::vector<double> count_rate(const DetectionStream& stream, Picoseconds window);

}  // namespace toa
