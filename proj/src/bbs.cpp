#include "toa/bbs.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include "toa/error.hpp"
#include "toa/rng.hpp"

namespace toa {

__extension__ using Uint128 = unsigned __int128;

namespace {

constexpr unsigned kPrimalityRounds = 32;

BigInt reference_prime(unsigned offset) { return (BigInt(1) << 256) - offset; }

bool admissible_seed(const BigInt& seed, const BigInt& modulus) {
    if (gcd(seed, modulus) != 1) {
        return false;
    }
    const BigInt first = (seed * seed) % modulus;
    return first != 0 && first != 1;
}

}  // namespace

void BbsParams::validate() const {
    if (p == q) {
        throw ParameterError("BBS primes must differ");
    }
    for (const BigInt* prime : {&p, &q}) {
        if (*prime < 3 || (*prime % 4) != 3) {
            throw ParameterError("BBS primes must be congruent to 3 mod 4");
        }
        if (!boost::multiprecision::miller_rabin_test(*prime, kPrimalityRounds)) {
            throw ParameterError("BBS modulus factor is not prime");
        }
    }
    if (seed <= 0 || !admissible_seed(seed, modulus())) {
        throw ParameterError("BBS seed must be coprime to M with seed^2 mod M not in {0, 1}");
    }
}

BbsParams BbsParams::reference(std::uint64_t seed) {
    BbsParams params{reference_prime(189), reference_prime(357), 0};
    const BigInt m = params.modulus();
    BigInt x = 0;
    std::uint64_t state = seed;
    for (int i = 0; i < 8; ++i) {
        x = (x << 64) | splitmix64(state);
    }
    x %= m;
    while (!admissible_seed(x, m)) {
        x = (x + 1) % m;
    }
    params.seed = x;
    return params;
}

std::pair<bool, BigInt> bbs_next(const BigInt& state, const BigInt& modulus) {
    BigInt next = (state * state) % modulus;
    const bool bit = bit_test(next, 0);
    return {bit, std::move(next)};
}

BlumBlumShub::BlumBlumShub(const BbsParams& params, BbsArithmetic arithmetic)
    : modulus_(params.modulus()), state_(params.seed % params.modulus()) {
    params.validate();
    const bool fits = modulus_ <= std::numeric_limits<std::uint64_t>::max();
    if (arithmetic == BbsArithmetic::native64 && !fits) {
        throw ParameterError("BBS modulus does not fit the native 64-bit path");
    }
    native_ = fits && arithmetic != BbsArithmetic::multiprecision;
    if (native_) {
        native_modulus_ = static_cast<std::uint64_t>(modulus_);
        native_state_ = static_cast<std::uint64_t>(state_);
    }
}

bool BlumBlumShub::next_bit() {
    if (native_) {
        const auto sq = static_cast<Uint128>(native_state_) * native_state_;
        native_state_ = static_cast<std::uint64_t>(sq % native_modulus_);
        return (native_state_ & 1U) != 0;
    }
    auto [bit, next] = bbs_next(state_, modulus_);
    state_ = std::move(next);
    return bit;
}

BigInt BlumBlumShub::state() const { return native_ ? BigInt(native_state_) : state_; }

BitStream bbs_generate(const BbsParams& params, std::uint64_t n, BbsArithmetic arithmetic) {
    BlumBlumShub gen(params, arithmetic);
    BitStream out;
    out.reserve_bits(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.push_back(gen.next_bit());
    }
    return out;
}

}  // namespace toa
