#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace toa {

/// Packed bits, most significant bit first within each byte. Unused trailing
/// bits of the last byte are always zero.
class BitStream {
public:
    BitStream() = default;
    BitStream(std::vector<std::uint8_t> bytes, std::uint64_t bit_count);

    /// Appends the low `width` bits of `value`, most significant first.
    void append(std::uint64_t value, unsigned width);
    void push_back(bool bit) { append(bit ? 1U : 0U, 1); }

    [[nodiscard]] bool bit(std::uint64_t i) const noexcept {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U;
    }
    [[nodiscard]] std::uint64_t size() const noexcept { return bit_count_; }
    [[nodiscard]] bool empty() const noexcept { return bit_count_ == 0; }
    [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

    /// Bits [first, first + count) as a new stream.
    [[nodiscard]] BitStream slice(std::uint64_t first, std::uint64_t count) const;
    /// One byte (0 or 1) per bit.
    [[nodiscard]] std::vector<std::uint8_t> unpack() const;
    static BitStream from_bits(std::span<const std::uint8_t> bits);

    void truncate(std::uint64_t bit_count);
    void reserve_bits(std::uint64_t bit_count) { bytes_.reserve((bit_count + 7) / 8); }

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bit_count_ = 0;
};

}  // namespace toa
