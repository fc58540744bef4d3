#pragma once

#include <cstdint>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "toa/bitstream.hpp"

namespace toa {

using BigInt = boost::multiprecision::cpp_int;

/// Blum-Blum-Shub parameters: Blum primes p, q (both 3 mod 4) and a seed
/// coprime to M = p * q. One parity bit is emitted per squaring.
struct BbsParams {
    BigInt p;
    BigInt q;
    BigInt seed;

    /// Throws ParameterError unless p != q are probable primes, both 3 mod 4,
    /// gcd(seed, M) = 1 and seed^2 mod M is not 0 or 1.
    void validate() const;
    [[nodiscard]] BigInt modulus() const { return p * q; }

    /// 512-bit modulus from the two largest primes below 2^256 that are
    /// 3 mod 4 (2^256 - 189 and 2^256 - 357). The seed is eight
    /// SplitMix64 words of `seed` reduced mod M, stepped up to the next
    /// admissible value.
    static BbsParams reference(std::uint64_t seed);
};

/// (parity of state^2 mod M, state^2 mod M)
std::pair<bool, BigInt> bbs_next(const BigInt& state, const BigInt& modulus);

enum class BbsArithmetic : std::uint8_t {
    automatic,       ///< native when M < 2^64
    native64,        ///< 128-bit products; ParameterError if M >= 2^64
    multiprecision,  ///< cpp_int for any modulus
};

class BlumBlumShub {
public:
    explicit BlumBlumShub(const BbsParams& params, BbsArithmetic arithmetic = BbsArithmetic::automatic);

    bool next_bit();
    [[nodiscard]] BigInt state() const;
    [[nodiscard]] bool uses_native_arithmetic() const noexcept { return native_; }

private:
    bool native_ = false;
    std::uint64_t native_modulus_ = 0;
    std::uint64_t native_state_ = 0;
    BigInt modulus_;
    BigInt state_;
};

/// `n` consecutive bits, packed MSB first.
BitStream bbs_generate(const BbsParams& params, std::uint64_t n,
                       BbsArithmetic arithmetic = BbsArithmetic::automatic);

}  // namespace toa
