#include "toa/suite.hpp"

#include "toa/error.hpp"

namespace toa {

void SuiteConfig::validate() const {
    if (sequence_bits < 128) {
        throw ParameterError("tests.sequence_bits must be >= 128");
    }
    if (!(min_pass_proportion >= 0.0 && min_pass_proportion <= 1.0)) {
        throw ParameterError("tests.min_pass_proportion must lie in [0, 1]");
    }
}

bool SuiteSummary::all_meet_threshold() const {
    for (const auto& t : tests) {
        if (!t.meets_threshold) {
            return false;
        }
    }
    return true;
}

const std::vector<std::string>& nist_test_names() {
    static const std::vector<std::string> names{"frequency",       "block_frequency", "cumulative_sums",
                                                "runs",            "longest_run",     "approximate_entropy",
                                                "serial"};
    return names;
}

SuiteSummary run_suite(const BitStream& bits, const SuiteConfig& config) {
    config.validate();
    SuiteSummary summary;
    summary.sequences = bits.size() / config.sequence_bits;
    if (summary.sequences == 0) {
        return summary;
    }
    const auto& names = nist_test_names();
    for (std::uint64_t s = 0; s < summary.sequences; ++s) {
        const BitStream seq = bits.slice(s * config.sequence_bits, config.sequence_bits);
        summary.per_sequence.push_back({
            nist_frequency(seq),
            nist_block_frequency(seq, config.block_frequency_m),
            nist_cusum(seq),
            nist_runs(seq),
            nist_longest_run(seq),
            nist_approx_entropy(seq, config.approx_entropy_m),
            nist_serial(seq, config.serial_m),
        });
    }
    for (std::size_t t = 0; t < names.size(); ++t) {
        TestSummary ts;
        ts.test_name = names[t];
        ts.sequences = summary.sequences;
        std::vector<double> worst;
        for (const auto& seq : summary.per_sequence) {
            const NistResult& r = seq[t];
            ts.passes += r.pass ? 1 : 0;
            ts.not_applicable += r.applicable ? 0 : 1;
            worst.push_back(r.p_value);
        }
        ts.pass_proportion = static_cast<double>(ts.passes) / static_cast<double>(ts.sequences);
        ts.worst_p = worst_p_value(worst);
        ts.meets_threshold = ts.pass_proportion >= config.min_pass_proportion;
        summary.tests.push_back(std::move(ts));
    }
    return summary;
}

}  // namespace toa
