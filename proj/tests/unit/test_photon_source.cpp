#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "toa/error.hpp"
#include "toa/photon_source.hpp"

using namespace toa;

namespace {

double sample_mean(double rate, std::uint64_t seed, int draws) {
    Xoshiro256ss rng(seed);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        sum += static_cast<double>(sample_interarrival(rate, rng));
    }
    return sum / draws;
}

}  // namespace

TEST_CASE("inter-arrival mean at the 7.7e9 /s flux") {
    CHECK(sample_mean(7.7e9, 1, 1'000'000) == doctest::Approx(1e12 / 7.7e9).epsilon(0.01));
}

TEST_CASE("inter-arrival at 1e12 /s sits on the picosecond floor") {
    // Half-up rounding of Exp(1 ps) has mean e^-1/2 / (1 - e^-1) = 0.9595 ps.
    const double m = sample_mean(1e12, 2, 1'000'000);
    CHECK(m == doctest::Approx(std::exp(-0.5) / (1.0 - std::exp(-1.0))).epsilon(0.01));
    CHECK(m == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("inter-arrival sampling is deterministic and rejects bad rates") {
    Xoshiro256ss a(99);
    Xoshiro256ss b(99);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(sample_interarrival(3e6, a) == sample_interarrival(3e6, b));
    }
    CHECK_THROWS_AS(sample_interarrival(0.0, a), ParameterError);
    CHECK_THROWS_AS(sample_interarrival(-1.0, a), ParameterError);
}

TEST_CASE("source config validation") {
    CHECK_THROWS_AS(generate_arrivals({0.0, 1.0, 0.0, 1}), ParameterError);
    CHECK_THROWS_AS(generate_arrivals({1e6, -1.0, 0.0, 1}), ParameterError);
    CHECK_THROWS_AS(generate_arrivals({1e6, 1.0, 1.0, 1}), ParameterError);
    CHECK_THROWS_AS(generate_arrivals({1e6, 1.0, -1.5, 1}), ParameterError);
    CHECK_NOTHROW(generate_arrivals({1e6, 0.001, -0.5, 1}));
}

TEST_CASE("zero duration gives an empty stream") {
    const auto s = generate_arrivals({1e9, 0.0, 0.0, 5});
    CHECK(s.timestamps.empty());
    CHECK(s.duration_ps == 0);
}

TEST_CASE("1e6 /s for one second") {
    const auto s = generate_arrivals({1e6, 1.0, 0.0, 17});
    const double n = static_cast<double>(s.timestamps.size());
    CHECK(std::abs(n - 1e6) <= 4.0 * 1e3);

    // Independent tally over 1 ms windows.
    std::vector<std::uint64_t> tally(1000, 0);
    for (const auto t : s.timestamps) {
        REQUIRE(t >= 0);
        REQUIRE(t < s.duration_ps);
        ++tally[static_cast<std::size_t>(t / 1'000'000'000)];
    }
    CHECK(window_counts(s, 1'000'000'000) == tally);
}

TEST_CASE("arrivals are ordered, bounded and deterministic") {
    const SourceConfig cfg{5e9, 2e-5, 0.0, 8};
    const auto a = generate_arrivals(cfg);
    const auto b = generate_arrivals(cfg);
    CHECK(a.timestamps == b.timestamps);
    for (std::size_t i = 1; i < a.timestamps.size(); ++i) {
        REQUIRE(a.timestamps[i - 1] <= a.timestamps[i]);
    }
    CHECK(a.timestamps.front() >= 0);
    CHECK(a.timestamps.back() < a.duration_ps);

    auto other = cfg;
    other.seed = 9;
    CHECK(generate_arrivals(other).timestamps != a.timestamps);
}

TEST_CASE("lazy generation in chunks equals the whole stream") {
    const SourceConfig cfg{2e7, 0.01, 0.3, 4};
    const auto whole = generate_arrivals(cfg);
    ArrivalGenerator gen(cfg);
    std::vector<Picoseconds> chunked;
    while (gen.fill(chunked, 777) == 777) {
    }
    CHECK(chunked == whole.timestamps);
    CHECK_FALSE(gen.next().has_value());
}

TEST_CASE("1 ns windows at 7.7e9 /s average 7.7 photons") {
    const auto s = generate_arrivals({7.7e9, 1e-4, 0.0, 21});
    const auto counts = window_counts(s, 1000);
    REQUIRE(counts.size() == 100'000);
    CHECK(std::abs(toa_test::mean_of(counts) - 7.7) < 3.0 * std::sqrt(7.7 / 1e5));
    CHECK(toa_test::poisson_gof_p(counts, 7.7) > 0.01);
}

TEST_CASE("window_counts basics") {
    std::vector<Picoseconds> one_per_window;
    for (Picoseconds k = 0; k < 50; ++k) {
        one_per_window.push_back(k * 100 + 37);
    }
    const auto counts = window_counts(one_per_window, 5000, 100);
    CHECK(counts == std::vector<std::uint64_t>(50, 1));
    CHECK_THROWS_AS(window_counts(one_per_window, 5000, 0), ParameterError);
    CHECK(window_counts(std::vector<Picoseconds>{}, 250, 100) == std::vector<std::uint64_t>(3, 0));
}

TEST_CASE("lambda T = 0.1: vacuum probability near 90.5 %") {
    const auto s = generate_arrivals({1e8, 2e-4, 0.0, 33});
    const auto counts = window_counts(s, 1000);
    const double n = static_cast<double>(counts.size());
    std::array<double, 3> freq{};
    for (const auto c : counts) {
        freq[std::min<std::uint64_t>(c, 2)] += 1.0 / n;
    }
    const std::array<double, 3> quoted{0.905, 0.090, 0.005};
    for (std::size_t k = 0; k < 3; ++k) {
        const double sigma = std::sqrt(quoted[k] * (1.0 - quoted[k]) / n);
        CHECK(std::abs(freq[k] - quoted[k]) < 3.0 * sigma);
    }
}

TEST_CASE("lambda T = 2 matches Poisson(2)") {
    const auto s = generate_arrivals({2e9, 2e-4, 0.0, 34});
    const auto counts = window_counts(s, 1000);
    CHECK(toa_test::poisson_gof_p(counts, 2.0) > 0.01);
}

TEST_CASE("window counts over 1e5 windows fit Poisson") {
    for (const double mu : {0.1, 0.77, 7.7}) {
        CAPTURE(mu);
        const auto s = generate_arrivals({mu * 1e9, 1e-4, 0.0, 40});
        CHECK(toa_test::poisson_gof_p(window_counts(s, 1000), mu) > 0.01);
    }
}

TEST_CASE("binomial approaches Poisson monotonically in the number of bins") {
    for (const double mu : {0.1, 0.77, 7.7}) {
        CAPTURE(mu);
        const double tv10 = binomial_poisson_tv_distance(10, mu);
        const double tv100 = binomial_poisson_tv_distance(100, mu);
        const double tv10k = binomial_poisson_tv_distance(10000, mu);
        CHECK(tv10 > tv100);
        CHECK(tv100 > tv10k);
    }
    CHECK(binomial_poisson_tv_distance(10000, 0.77) < 1e-3);
    CHECK_THROWS_AS(binomial_poisson_tv_distance(0, 1.0), ParameterError);
}

TEST_CASE("pmf helpers") {
    CHECK(binomial_pmf(0, 10, 0.0) == 1.0);
    CHECK(binomial_pmf(3, 10, 0.0) == 0.0);
    CHECK(binomial_pmf(11, 10, 0.5) == 0.0);
    CHECK(binomial_pmf(2, 4, 0.5) == doctest::Approx(6.0 / 16.0));
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(3, 2.0) == doctest::Approx(std::exp(-2.0) * 8.0 / 6.0));
}

TEST_CASE("inter-arrival times are serially uncorrelated") {
    const auto s = generate_arrivals({1e7, 0.02, 0.0, 55});
    std::vector<double> gaps;
    for (std::size_t i = 1; i < s.timestamps.size(); ++i) {
        gaps.push_back(static_cast<double>(s.timestamps[i] - s.timestamps[i - 1]));
    }
    const double m = toa_test::mean_of(gaps);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
        num += (gaps[i] - m) * (gaps[i + 1] - m);
    }
    for (const double g : gaps) {
        den += (g - m) * (g - m);
    }
    CHECK(std::abs(num / den) < 5.0 / std::sqrt(static_cast<double>(gaps.size())));
}

TEST_CASE("linear drift raises the rate over the run") {
    const auto s = generate_arrivals({1e5, 1.0, 0.5, 60});
    const auto counts = window_counts(s, 100'000'000'000);  // 0.1 s
    REQUIRE(counts.size() == 10);
    // Expected ratio of the last tenth to the first: (1 + 0.5 * 0.95) / (1 + 0.5 * 0.05).
    const double ratio = static_cast<double>(counts[9]) / static_cast<double>(counts[0]);
    CHECK(ratio == doctest::Approx(1.475 / 1.025).epsilon(0.05));
    // Mean rate over the run is lambda * (1 + d / 2).
    CHECK(static_cast<double>(s.timestamps.size()) == doctest::Approx(1.25e5).epsilon(0.02));

    const auto falling = generate_arrivals({1e5, 1.0, -0.5, 61});
    const auto fc = window_counts(falling, 100'000'000'000);
    CHECK(static_cast<double>(fc[9]) / static_cast<double>(fc[0]) == doctest::Approx(0.525 / 0.975).epsilon(0.06));
}
