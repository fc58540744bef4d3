#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "toa/bitstream.hpp"
#include "toa/config.hpp"
#include "toa/detector.hpp"
#include "toa/digitizer.hpp"
#include "toa/ent.hpp"
#include "toa/entropy.hpp"
#include "toa/health.hpp"
#include "toa/io.hpp"
#include "toa/suite.hpp"

namespace toa {

struct PipelineResult {
    std::uint64_t photons = 0;
    DetectorStats detector;
    DigitizerStats digitizer;
    double observed_seconds = 0.0;  ///< source duration, or time of the last used click when capped
    bool capped = false;
    BitStream bits;             ///< power-of-two alphabets
    std::vector<Digit> digits;  ///< other alphabets
    HealthStatus health;
    std::optional<EntropyReport> entropy;
    std::optional<EntReport> ent;
    std::optional<SuiteSummary> nist;
    io::Report report;

    [[nodiscard]] double throughput_bps() const noexcept { return digitizer.throughput_bps(observed_seconds); }
    /// False when some NIST test's pass proportion is below the threshold.
    [[nodiscard]] bool tests_ok() const noexcept { return !nist || nist->all_meet_threshold(); }
};

/**
 * Source -> detector -> digitizer -> entropy / ENT / NIST, streamed so the
 * photon stream is never held in memory.
 *
 * Stage seeds are derived from config.master_seed first, so the same
 * configuration always yields the same bytes. With a non-empty `out_dir` the
 * artifacts are written there: bits.bin (or digits.csv for other alphabets),
 * histogram.csv, report.txt and config.txt. Throws ConfigError for an invalid
 * configuration and StageError for failures inside a stage.
 */
PipelineResult run_pipeline(PipelineConfig config, const std::filesystem::path& out_dir = {});

}  // namespace toa
