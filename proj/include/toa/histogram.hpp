#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace toa {

/// Occurrence counts over a digit alphabet of size counts.size().
struct Histogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    Histogram() = default;
    explicit Histogram(std::size_t alphabet) : counts(alphabet, 0) {}
    explicit Histogram(std::vector<std::uint64_t> c);

    void add(std::uint32_t digit) {
        ++counts[digit];
        ++total;
    }
    void merge(const Histogram& other);
    [[nodiscard]] std::size_t alphabet() const noexcept { return counts.size(); }

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Exact counts; throws ContractViolation for a digit >= alphabet.
Histogram histogram(std::span<const std::uint32_t> digits, std::size_t alphabet);

}  // namespace toa
