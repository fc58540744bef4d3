#include "toa/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "toa/error.hpp"
#include "toa/rng.hpp"

namespace toa {

Histogram::Histogram(std::vector<std::uint64_t> c)
    : counts(std::move(c)), total(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0})) {}

void Histogram::merge(const Histogram& other) {
    if (other.counts.size() != counts.size()) {
        throw ParameterError("cannot merge histograms over different alphabets");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        counts[i] += other.counts[i];
    }
    total += other.total;
}

Histogram histogram(std::span<const std::uint32_t> digits, std::size_t alphabet) {
    Histogram hist(alphabet);
    for (const auto d : digits) {
        if (d >= alphabet) {
            throw ContractViolation("digit " + std::to_string(d) + " outside alphabet of " +
                                    std::to_string(alphabet));
        }
        hist.add(d);
    }
    return hist;
}

namespace {

void require_samples(const Histogram& hist) {
    if (hist.total == 0) {
        throw InsufficientData("entropy of an empty histogram is undefined");
    }
}

double probability(std::uint64_t count, std::uint64_t total) noexcept {
    return static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

double shannon_entropy(const Histogram& hist) {
    require_samples(hist);
    double h = 0.0;
    for (const auto c : hist.counts) {
        if (c != 0) {
            const double p = probability(c, hist.total);
            h -= p * std::log2(p);
        }
    }
    return std::max(h, 0.0);
}

MinEntropy min_entropy(const Histogram& hist) {
    require_samples(hist);
    const auto max_count = *std::max_element(hist.counts.begin(), hist.counts.end());
    MinEntropy out;
    out.bits = -std::log2(probability(max_count, hist.total));
    if (out.bits == 0.0) {
        out.bits = 0.0;  // normalise -0
    }
    out.normalized = out.bits / std::log2(static_cast<double>(hist.alphabet()));
    return out;
}

double renyi_entropy(const Histogram& hist, double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) {
        throw ParameterError("Renyi order must be >= 0");
    }
    require_samples(hist);
    if (std::isinf(alpha)) {
        return min_entropy(hist).bits;
    }
    if (std::abs(alpha - 1.0) <= 1e-9) {
        return shannon_entropy(hist);
    }
    if (alpha == 0.0) {
        const auto support = std::count_if(hist.counts.begin(), hist.counts.end(), [](auto c) { return c != 0; });
        return std::log2(static_cast<double>(support));
    }
    // Factor out p_max so large orders do not underflow.
    const auto max_count = *std::max_element(hist.counts.begin(), hist.counts.end());
    const double p_max = probability(max_count, hist.total);
    double sum = 0.0;
    for (const auto c : hist.counts) {
        if (c != 0) {
            sum += std::pow(static_cast<double>(c) / static_cast<double>(max_count), alpha);
        }
    }
    const double h = (alpha * std::log2(p_max) + std::log2(sum)) / (1.0 - alpha);
    return std::max(h, 0.0);
}

EntropyReport entropy_report(const Histogram& hist, std::span<const double> renyi_orders) {
    EntropyReport r;
    r.alphabet = hist.alphabet();
    r.samples = hist.total;
    r.shannon_bits = shannon_entropy(hist);
    const auto me = min_entropy(hist);
    r.min_entropy_bits = me.bits;
    r.min_entropy_normalized = me.normalized;
    r.p_max = std::exp2(-me.bits);
    for (const double alpha : renyi_orders) {
        r.renyi[alpha] = renyi_entropy(hist, alpha);
    }
    r.low_sample_warning = hist.total < 100 * static_cast<std::uint64_t>(hist.alphabet());
    return r;
}

ToeplitzMatrix::ToeplitzMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> diagonals)
    : rows_(rows), cols_(cols), diagonals_(std::move(diagonals)) {
    if (rows_ == 0 || cols_ == 0) {
        throw ParameterError("Toeplitz matrix needs at least one row and column");
    }
    if (diagonals_.size() != rows_ + cols_ - 1) {
        throw ParameterError("Toeplitz matrix needs rows + cols - 1 diagonal entries");
    }
    // Row i is the window [rows - 1 - i, rows - 1 - i + cols) of the reversed diagonals.
    const std::size_t n = diagonals_.size();
    reversed_words_.assign((n + 63) / 64 + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (diagonals_[n - 1 - k] != 0) {
            reversed_words_[k / 64] |= std::uint64_t{1} << (k % 64);
        }
    }
}

ToeplitzMatrix ToeplitzMatrix::from_seed(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Xoshiro256ss rng(seed);
    std::vector<std::uint8_t> diagonals(rows + cols - 1);
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < diagonals.size(); ++k) {
        if (k % 64 == 0) {
            word = rng.next();
        }
        diagonals[k] = static_cast<std::uint8_t>((word >> (63 - k % 64)) & 1U);
    }
    return ToeplitzMatrix(rows, cols, std::move(diagonals));
}

BitStream ToeplitzMatrix::apply(const BitStream& input) const {
    if (input.size() != cols_) {
        throw ParameterError("Toeplitz input length must equal the column count");
    }
    const std::size_t words = (cols_ + 63) / 64;
    std::vector<std::uint64_t> x(words, 0);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (input.bit(j)) {
            x[j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }
    auto window = [this](std::size_t start) {
        const std::size_t q = start / 64;
        const unsigned b = start % 64;
        std::uint64_t w = reversed_words_[q] >> b;
        if (b != 0 && q + 1 < reversed_words_.size()) {
            w |= reversed_words_[q + 1] << (64 - b);
        }
        return w;
    };
    BitStream out;
    out.reserve_bits(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const std::size_t start = rows_ - 1 - i;
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words; ++w) {
            acc ^= window(start + 64 * w) & x[w];
        }
        out.push_back((std::popcount(acc) & 1) != 0);
    }
    return out;
}

BitStream toeplitz_extract(const BitStream& bits, std::uint64_t matrix_seed, std::size_t out_len) {
    if (out_len > bits.size()) {
        throw ParameterError("Toeplitz output cannot be longer than its input");
    }
    if (out_len == 0) {
        return {};
    }
    return ToeplitzMatrix::from_seed(out_len, bits.size(), matrix_seed).apply(bits);
}

}  // namespace toa
