#include "toa/ent.hpp"

#include <cmath>

#include "toa/error.hpp"
#include "toa/special_functions.hpp"

namespace toa {

std::optional<double> monte_carlo_pi(const BitStream& bits, unsigned coordinate_bits) {
    if (coordinate_bits == 0 || coordinate_bits > 31) {
        throw ParameterError("Monte Carlo coordinates must be 1..31 bits wide");
    }
    const std::uint64_t block = 2ULL * coordinate_bits;
    const std::uint64_t points = bits.size() / block;
    if (points == 0) {
        return std::nullopt;
    }
    const std::uint64_t radius = (std::uint64_t{1} << coordinate_bits) - 1;
    const std::uint64_t radius_sq = radius * radius;
    std::uint64_t hits = 0;
    std::uint64_t pos = 0;
    for (std::uint64_t p = 0; p < points; ++p) {
        std::uint64_t x = 0;
        std::uint64_t y = 0;
        for (unsigned i = 0; i < coordinate_bits; ++i) {
            x = (x << 1) | static_cast<std::uint64_t>(bits.bit(pos + i));
            y = (y << 1) | static_cast<std::uint64_t>(bits.bit(pos + coordinate_bits + i));
        }
        pos += block;
        if (x * x + y * y <= radius_sq) {
            ++hits;
        }
    }
    return 4.0 * static_cast<double>(hits) / static_cast<double>(points);
}

std::optional<double> serial_correlation(const BitStream& bits) {
    const std::uint64_t n = bits.size();
    if (n == 0) {
        return std::nullopt;
    }
    double lagged = 0.0;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const bool u = bits.bit(i);
        const bool v = bits.bit(i + 1 == n ? 0 : i + 1);
        lagged += (u && v) ? 1.0 : 0.0;
        sum += u ? 1.0 : 0.0;
    }
    const auto total = static_cast<double>(n);
    // Bits are 0/1 so sum of squares equals the sum.
    const double denominator = total * sum - sum * sum;
    if (denominator == 0.0) {
        return std::nullopt;
    }
    return (total * lagged - sum * sum) / denominator;
}

EntReport ent_battery(const BitStream& bits) {
    if (bits.empty()) {
        throw InsufficientData("ENT battery needs at least one bit");
    }
    EntReport r;
    r.bit_count = bits.size();
    std::uint64_t ones = 0;
    for (const auto byte : bits.bytes()) {
        ones += static_cast<std::uint64_t>(__builtin_popcount(byte));
    }
    const auto n = static_cast<double>(r.bit_count);
    const double p1 = static_cast<double>(ones) / n;
    const double p0 = 1.0 - p1;
    for (const double p : {p0, p1}) {
        if (p > 0.0) {
            r.entropy_bits_per_bit -= p * std::log2(p);
        }
    }
    const double expected = n / 2.0;
    const double d1 = static_cast<double>(ones) - expected;
    r.chi_square_statistic = 2.0 * d1 * d1 / expected;
    r.chi_square_exceed_percent = 100.0 * special::igamc(0.5, r.chi_square_statistic / 2.0);
    r.arithmetic_mean = p1;
    r.monte_carlo_points = r.bit_count / 48;
    r.monte_carlo_pi = monte_carlo_pi(bits);
    r.serial_correlation = serial_correlation(bits);
    return r;
}

}  // namespace toa
