#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "toa/detector.hpp"
#include "toa/digitizer.hpp"
#include "toa/photon_source.hpp"
#include "toa/suite.hpp"

namespace toa {

struct HealthConfig {
    Picoseconds window = 10'000'000'000;  ///< 10 ms
    double nominal_rate = 0.0;            ///< counts per second; 0 = use the run's mean rate
    double tolerance = 0.1;               ///< relative half-width of the bounds
};

/**
 * Whole-pipeline configuration.
 *
 * Defaults describe the 2 MHz reference configuration: 500 ns period, 5 ps
 * TDC, 65536 digits, 6e6 photons/s at 10 % efficiency and 5 us dead time,
 * i.e. about 150 kcps of detections.
 */
struct PipelineConfig {
    std::uint64_t master_seed = 1;
    SourceConfig source{6.0e6, 1.0, 0.0, 0};
    DetectorConfig detector{0.1, 5'000'000, 375.0, 180.0, 0};
    ClockConfig clock{};
    SuiteConfig tests{};
    bool run_tests = true;
    HealthConfig health{};
    std::uint64_t max_bits = 0;  ///< stop once this many bits exist; 0 = run for the full duration

    /// Stage seeds: derive_seed(master_seed, 1 | 2 | 3) for source, detector, clock.
    void derive_stage_seeds();
    /// Validates every component; throws ConfigError naming the bad key.
    void validate() const;
};

/**
 * Flat key=value text. '#' starts a comment, blank lines are ignored, every
 * key may appear at most once and unknown keys are rejected:
 *   seed
 *   source.mean_rate source.duration source.drift_fraction
 *   detector.efficiency detector.dead_time_ps detector.dark_count_rate detector.jitter_sigma_ps
 *   clock.period_ps clock.resolution_ps clock.n_digits clock.jitter_sigma_ps
 *   clock.phase_offset_ps clock.mode
 *   tests.enabled tests.sequence_bits tests.block_frequency_m tests.approx_entropy_m
 *   tests.serial_m tests.min_pass_proportion
 *   health.window_ps health.nominal_rate_cps health.tolerance
 *   output.max_bits
 * Rates are per second, durations in seconds unless the key ends in _ps.
 */
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Sets one key; throws ConfigError for unknown keys or unparsable values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

/// Every key with its current value, in the order listed above; parse_config()
/// of the result gives back an equal configuration.
std::string to_config_text(const PipelineConfig& config);

}  // namespace toa
