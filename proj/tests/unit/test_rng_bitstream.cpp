#include <doctest.h>

#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "toa/bitstream.hpp"
#include "toa/rng.hpp"

using toa::BitStream;
using toa::Xoshiro256ss;

// Reference values come from tests/oracles/rng_reference.py.
TEST_CASE("splitmix64 matches the reference sequence") {
    std::uint64_t state = 0;
    CHECK(toa::splitmix64(state) == 0xe220a8397b1dcdafULL);
    CHECK(toa::derive_seed(7, 3) == 0x953aeb70673e29cbULL);
}

TEST_CASE("xoshiro256** seeded through splitmix64") {
    Xoshiro256ss g(42);
    CHECK(g.next() == 0x15780b2e0c2ec716ULL);
    CHECK(g.next() == 0x6104d9866d113a7eULL);
    CHECK(g.next() == 0xae17533239e499a1ULL);
}

TEST_CASE("derived distributions follow the documented formulas") {
    CHECK(Xoshiro256ss(42).uniform01() == doctest::Approx(0.08386297105988216).epsilon(1e-15));
    CHECK(Xoshiro256ss(42).exponential(2.0) == doctest::Approx(1.2392855545292942).epsilon(1e-14));

    Xoshiro256ss g(42);
    CHECK(g.normal() == doctest::Approx(-1.6132237513849157).epsilon(1e-14));
    CHECK(g.normal() == doctest::Approx(1.5344873235334193).epsilon(1e-14));
}

TEST_CASE("uniform ranges") {
    Xoshiro256ss g(3);
    for (int i = 0; i < 100000; ++i) {
        const double u = g.uniform01();
        const double v = g.uniform_open0();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
    }
}

TEST_CASE("bitstream packs MSB first with zeroed padding") {
    BitStream b;
    b.append(0b101, 3);
    b.push_back(true);
    CHECK(b.size() == 4);
    REQUIRE(b.bytes().size() == 1);
    CHECK(b.bytes()[0] == 0b10110000);

    b.append(0xABCD, 16);
    CHECK(b.size() == 20);
    CHECK(b.bytes()[0] == 0xBA);
    CHECK(b.bytes()[1] == 0xBC);
    CHECK(b.bytes()[2] == 0xD0);

    BitStream dirty({0xFF}, 3);
    CHECK(dirty.bytes()[0] == 0xE0);
}

TEST_CASE("bitstream slice, unpack and truncate agree bit by bit") {
    const BitStream b = toa_test::splitmix_bits(11, 333);
    const BitStream s = b.slice(17, 200);
    REQUIRE(s.size() == 200);
    for (std::uint64_t i = 0; i < 200; ++i) {
        REQUIRE(s.bit(i) == b.bit(17 + i));
    }
    const auto raw = b.unpack();
    CHECK(BitStream::from_bits(raw) == b);

    BitStream t = b;
    t.truncate(13);
    CHECK(t == b.slice(0, 13));
    CHECK(t.bytes().size() == 2);
}
