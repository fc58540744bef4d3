#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toa/bitstream.hpp"
#include "toa/nist.hpp"

namespace toa {

struct SuiteConfig {
    std::uint64_t sequence_bits = 100'000;
    unsigned block_frequency_m = 128;
    unsigned approx_entropy_m = 10;
    unsigned serial_m = 12;
    double min_pass_proportion = 0.8;

    void validate() const;
};

struct TestSummary {
    std::string test_name;
    std::uint64_t sequences = 0;
    std::uint64_t passes = 0;
    std::uint64_t not_applicable = 0;  ///< counted as failures
    double pass_proportion = 0.0;
    double worst_p = 0.0;  ///< worst_p_value() over all sequences
    bool meets_threshold = false;
};

struct SuiteSummary {
    std::uint64_t sequences = 0;
    std::vector<std::vector<NistResult>> per_sequence;
    std::vector<TestSummary> tests;

    /// True when every test's pass proportion reaches the threshold (vacuously for no sequences).
    [[nodiscard]] bool all_meet_threshold() const;
};

/// Names of the implemented tests, in report order.
const std::vector<std::string>& nist_test_names();

/// Runs every implemented test on each whole sequence of `sequence_bits`;
/// trailing bits that do not fill a sequence are ignored.
SuiteSummary run_suite(const BitStream& bits, const SuiteConfig& config);

}  // namespace toa
