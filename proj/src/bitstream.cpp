#include "toa/bitstream.hpp"

#include "toa/error.hpp"

namespace toa {

BitStream::BitStream(std::vector<std::uint8_t> bytes, std::uint64_t bit_count)
    : bytes_(std::move(bytes)), bit_count_(bit_count) {
    if (bit_count_ > 8 * static_cast<std::uint64_t>(bytes_.size())) {
        throw ParameterError("bit count exceeds the byte buffer");
    }
    bytes_.resize((bit_count_ + 7) / 8);
    if (const unsigned used = bit_count_ & 7; used != 0) {
        bytes_.back() &= static_cast<std::uint8_t>(0xFF00U >> used);
    }
}

void BitStream::append(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) {
        const unsigned offset = bit_count_ & 7;
        if (offset == 0) {
            bytes_.push_back(0);
        }
        if ((value >> i) & 1U) {
            bytes_.back() |= static_cast<std::uint8_t>(0x80U >> offset);
        }
        ++bit_count_;
    }
}

BitStream BitStream::slice(std::uint64_t first, std::uint64_t count) const {
    if (first > bit_count_ || count > bit_count_ - first) {
        throw ParameterError("bit slice out of range");
    }
    BitStream out;
    out.reserve_bits(count);
    if ((first & 7) == 0) {
        const auto begin = bytes_.begin() + static_cast<std::ptrdiff_t>(first / 8);
        out.bytes_.assign(begin, begin + static_cast<std::ptrdiff_t>((count + 7) / 8));
        out.bit_count_ = count;
        out.truncate(count);
        return out;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(bit(first + i));
    }
    return out;
}

std::vector<std::uint8_t> BitStream::unpack() const {
    std::vector<std::uint8_t> bits(bit_count_);
    for (std::uint64_t i = 0; i < bit_count_; ++i) {
        bits[i] = bit(i);
    }
    return bits;
}

BitStream BitStream::from_bits(std::span<const std::uint8_t> bits) {
    BitStream out;
    out.reserve_bits(bits.size());
    for (const auto b : bits) {
        out.push_back(b != 0);
    }
    return out;
}

void BitStream::truncate(std::uint64_t bit_count) {
    if (bit_count > bit_count_) {
        throw ParameterError("cannot truncate to a longer length");
    }
    bit_count_ = bit_count;
    bytes_.resize((bit_count_ + 7) / 8);
    if (const unsigned used = bit_count_ & 7; used != 0) {
        bytes_.back() &= static_cast<std::uint8_t>(0xFF00U >> used);
    }
}

}  // namespace toa
