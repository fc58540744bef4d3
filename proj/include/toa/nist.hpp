#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "toa/bitstream.hpp"

namespace toa {

inline constexpr double kNistAlpha = 0.01;

/// Outcome of one SP 800-22 test on one sequence.
struct NistResult {
    std::string test_name;
    double p_value = 0.0;          ///< worst sub-p-value, see worst_p_value()
    bool pass = false;             ///< 0.01 <= p_value <= 0.99
    bool applicable = true;        ///< false when a pre-test rejects the input (p_value = 0)
    std::vector<double> p_values;  ///< every sub-p-value, in the test's natural order
};

/// The sub-p-value furthest from 1/2, so a sequence passes only if every
/// sub-p-value lies in [0.01, 0.99].
double worst_p_value(std::span<const double> p_values);

NistResult make_nist_result(std::string name, std::vector<double> p_values);

/*
 * Minimum lengths (InsufficientData below them):
 *   frequency, runs, cumulative sums          n >= 100
 *   block frequency                           n >= 100, 20 <= M <= n
 *   longest run of ones                       n >= 128 (M = 8 / 128 / 10^4 by n)
 *   approximate entropy                       n >= 100, 1 <= m < floor(log2 n) - 5
 *   serial                                    n >= 100, 2 <= m < floor(log2 n) - 2
 */
NistResult nist_frequency(const BitStream& bits);
NistResult nist_block_frequency(const BitStream& bits, unsigned block_size = 128);
NistResult nist_runs(const BitStream& bits);
NistResult nist_longest_run(const BitStream& bits);
NistResult nist_cusum(const BitStream& bits);  ///< forward and backward
NistResult nist_approx_entropy(const BitStream& bits, unsigned m = 10);
NistResult nist_serial(const BitStream& bits, unsigned m = 12);  ///< two p-values

/// Statistics without the length preconditions, on one byte (0/1) per bit.
/// Used to check the standard's short worked examples.
namespace nist_unchecked {
double frequency(std::span<const std::uint8_t> bits);
double block_frequency(std::span<const std::uint8_t> bits, unsigned block_size);
/// Returns 0 when the proportion pre-test fails.
double runs(std::span<const std::uint8_t> bits, bool* applicable = nullptr);
double longest_run(std::span<const std::uint8_t> bits);
double cusum(std::span<const std::uint8_t> bits, bool reverse);
double approx_entropy(std::span<const std::uint8_t> bits, unsigned m);
std::vector<double> serial(std::span<const std::uint8_t> bits, unsigned m);
}  // namespace nist_unchecked

}  // namespace toa
