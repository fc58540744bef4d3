#pragma once

#include <cstdint>
#include <optional>

#include "toa/bitstream.hpp"

namespace toa {

/// ENT-style summary of a bitstream, taken in bit mode.
struct EntReport {
    std::uint64_t bit_count = 0;
    double entropy_bits_per_bit = 0.0;
    double chi_square_statistic = 0.0;       ///< two cells, one degree of freedom
    double chi_square_exceed_percent = 0.0;  ///< 100 * P(chi2_1 > statistic)
    double arithmetic_mean = 0.0;
    std::uint64_t monte_carlo_points = 0;
    std::optional<double> monte_carlo_pi;      ///< absent below 48 bits
    std::optional<double> serial_correlation;  ///< absent for constant input
};

/// Throws InsufficientData on an empty stream.
EntReport ent_battery(const BitStream& bits);

/**
 * ENT's Monte Carlo estimate of pi.
 *
 * Consecutive blocks of 2 * coordinate_bits bits become the integer point
 * (x, y) with both coordinates in [0, 2^c - 1]; the point is a hit when
 * x^2 + y^2 <= (2^c - 1)^2 and pi ~ 4 * hits / points. ENT uses c = 24,
 * i.e. six bytes per point. nullopt if there is not a single block.
 */
std::optional<double> monte_carlo_pi(const BitStream& bits, unsigned coordinate_bits = 24);

/// Lag-1 serial correlation as ENT computes it: the last bit is paired with
/// the first. nullopt when the stream is constant (zero variance).
std::optional<double> serial_correlation(const BitStream& bits);

}  // namespace toa
