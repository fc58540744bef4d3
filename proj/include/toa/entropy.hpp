#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "toa/bitstream.hpp"
#include "toa/histogram.hpp"

namespace toa {

/// Sentinel order for renyi_entropy(): returns the min-entropy.
inline constexpr double kRenyiInfinity = std::numeric_limits<double>::infinity();

/// -sum p_i log2 p_i over non-empty bins. Throws InsufficientData on an empty histogram.
double shannon_entropy(const Histogram& hist);

struct MinEntropy {
    double bits = 0.0;        ///< -log2 max_i p_i
    double normalized = 0.0;  ///< bits / log2(alphabet)
};

MinEntropy min_entropy(const Histogram& hist);

/// (1 / (1 - alpha)) log2 sum p_i^alpha. alpha within 1e-9 of 1 gives the
/// Shannon value, kRenyiInfinity the min-entropy, 0 the log2 of the support
/// size. Throws ParameterError for negative alpha.
double renyi_entropy(const Histogram& hist, double alpha);

inline constexpr double kDefaultRenyiOrdersArray[] = {0.0, 0.5, 2.0, kRenyiInfinity};
inline constexpr std::span<const double> kDefaultRenyiOrders{kDefaultRenyiOrdersArray};

struct EntropyReport {
    std::size_t alphabet = 0;
    std::uint64_t samples = 0;
    double shannon_bits = 0.0;
    double min_entropy_bits = 0.0;
    double min_entropy_normalized = 0.0;
    double p_max = 0.0;
    std::map<double, double> renyi;  ///< order -> bits
    /// Set when samples < 100 * alphabet; the plug-in estimates are then noisy.
    bool low_sample_warning = false;
};

EntropyReport entropy_report(const Histogram& hist, std::span<const double> renyi_orders = kDefaultRenyiOrders);

/**
 * Binary Toeplitz matrix with `rows` x `cols` entries, stored by its
 * rows + cols - 1 diagonals: entry (i, j) = diagonals[i - j + cols - 1].
 * diagonals[cols - 1] is the main diagonal, index 0 the top-right corner.
 */
class ToeplitzMatrix {
public:
    ToeplitzMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> diagonals);

    /// Diagonals drawn bit by bit from Xoshiro256ss(seed), MSB of each word first.
    static ToeplitzMatrix from_seed(std::size_t rows, std::size_t cols, std::uint64_t seed);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool at(std::size_t i, std::size_t j) const noexcept {
        return diagonals_[i + cols_ - 1 - j] != 0;
    }

    /// Matrix-vector product over GF(2). Throws ParameterError unless
    /// input.size() == cols().
    [[nodiscard]] BitStream apply(const BitStream& input) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint8_t> diagonals_;
    std::vector<std::uint64_t> reversed_words_;
};

/// Hashes `bits` down to `out_len` bits with ToeplitzMatrix::from_seed.
/// Throws ParameterError if out_len > bits.size().
BitStream toeplitz_extract(const BitStream& bits, std::uint64_t matrix_seed, std::size_t out_len);

}  // namespace toa
