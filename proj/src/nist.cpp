#include "toa/nist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "toa/error.hpp"
#include "toa/special_functions.hpp"

namespace toa {

double worst_p_value(std::span<const double> p_values) {
    if (p_values.empty()) {
        throw ParameterError("no p-values to summarise");
    }
    return *std::max_element(p_values.begin(), p_values.end(),
                             [](double a, double b) { return std::abs(a - 0.5) < std::abs(b - 0.5); });
}

NistResult make_nist_result(std::string name, std::vector<double> p_values) {
    NistResult r;
    r.test_name = std::move(name);
    for (auto& p : p_values) {
        p = std::clamp(p, 0.0, 1.0);
    }
    r.p_value = worst_p_value(p_values);
    r.pass = r.p_value >= kNistAlpha && r.p_value <= 1.0 - kNistAlpha;
    r.p_values = std::move(p_values);
    return r;
}

namespace nist_unchecked {

double frequency(std::span<const std::uint8_t> bits) {
    const auto n = static_cast<double>(bits.size());
    const auto ones = static_cast<double>(std::count(bits.begin(), bits.end(), 1));
    const double s = 2.0 * ones - n;
    return special::erfc(std::abs(s) / std::sqrt(n) / std::numbers::sqrt2);
}

double block_frequency(std::span<const std::uint8_t> bits, unsigned block_size) {
    const std::size_t blocks = bits.size() / block_size;
    double chi2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto first = bits.begin() + static_cast<std::ptrdiff_t>(b * block_size);
        const auto ones = std::count(first, first + block_size, 1);
        const double pi = static_cast<double>(ones) / block_size - 0.5;
        chi2 += pi * pi;
    }
    chi2 *= 4.0 * block_size;
    return special::igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0);
}

double runs(std::span<const std::uint8_t> bits, bool* applicable) {
    const auto n = static_cast<double>(bits.size());
    const double pi = static_cast<double>(std::count(bits.begin(), bits.end(), 1)) / n;
    const bool ok = std::abs(pi - 0.5) < 2.0 / std::sqrt(n);
    if (applicable != nullptr) {
        *applicable = ok;
    }
    if (!ok) {
        return 0.0;
    }
    double v_obs = 1.0;
    for (std::size_t k = 0; k + 1 < bits.size(); ++k) {
        v_obs += bits[k] != bits[k + 1] ? 1.0 : 0.0;
    }
    const double spread = 2.0 * n * pi * (1.0 - pi);
    return special::erfc(std::abs(v_obs - spread) / (2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi)));
}

double longest_run(std::span<const std::uint8_t> bits) {
    struct Table {
        unsigned block;
        unsigned lowest;  // run lengths <= lowest share the first class
        std::vector<double> probabilities;
    };
    static const Table kShort{8, 1, {0.21484375, 0.3671875, 0.23046875, 0.1875}};
    static const Table kMedium{
        128, 4, {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847}};
    static const Table kLong{10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
    const Table& t = bits.size() < 6272 ? kShort : bits.size() < 750000 ? kMedium : kLong;
    const std::size_t classes = t.probabilities.size();
    const std::size_t blocks = bits.size() / t.block;
    std::vector<double> observed(classes, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
        unsigned longest = 0;
        unsigned current = 0;
        for (std::size_t i = b * t.block; i < (b + 1) * t.block; ++i) {
            current = bits[i] ? current + 1 : 0;
            longest = std::max(longest, current);
        }
        const unsigned shifted = longest <= t.lowest ? 0 : longest - t.lowest;
        observed[std::min<std::size_t>(shifted, classes - 1)] += 1.0;
    }
    const auto total = static_cast<double>(blocks);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < classes; ++i) {
        const double expected = total * t.probabilities[i];
        chi2 += (observed[i] - expected) * (observed[i] - expected) / expected;
    }
    return special::igamc(static_cast<double>(classes - 1) / 2.0, chi2 / 2.0);
}

double cusum(std::span<const std::uint8_t> bits, bool reverse) {
    const auto n = static_cast<std::int64_t>(bits.size());
    std::int64_t partial = 0;
    std::int64_t z = 0;
    for (std::int64_t k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(reverse ? n - 1 - k : k);
        partial += bits[idx] ? 1 : -1;
        z = std::max(z, std::abs(partial));
    }
    const double root_n = std::sqrt(static_cast<double>(n));
    const auto zd = static_cast<double>(z);
    // Summation limits use C integer division, as in the reference code.
    double sum1 = 0.0;
    for (std::int64_t k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
        sum1 += special::normal_cdf(static_cast<double>(4 * k + 1) * zd / root_n);
        sum1 -= special::normal_cdf(static_cast<double>(4 * k - 1) * zd / root_n);
    }
    double sum2 = 0.0;
    for (std::int64_t k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
        sum2 += special::normal_cdf(static_cast<double>(4 * k + 3) * zd / root_n);
        sum2 -= special::normal_cdf(static_cast<double>(4 * k + 1) * zd / root_n);
    }
    return 1.0 - sum1 + sum2;
}

namespace {

/// Counts of every overlapping m-bit pattern, the sequence wrapped by m - 1 bits.
std::vector<std::uint64_t> pattern_counts(std::span<const std::uint8_t> bits, unsigned m) {
    if (m == 0) {
        return {static_cast<std::uint64_t>(bits.size())};
    }
    const std::size_t n = bits.size();
    const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    std::uint64_t window = 0;
    for (unsigned j = 0; j + 1 < m; ++j) {
        window = (window << 1) | bits[j % n];
    }
    for (std::size_t i = 0; i < n; ++i) {
        window = ((window << 1) | bits[(i + m - 1) % n]) & mask;
        ++counts[window];
    }
    return counts;
}

double phi(std::span<const std::uint8_t> bits, unsigned m) {
    if (m == 0) {
        return 0.0;
    }
    const auto n = static_cast<double>(bits.size());
    double sum = 0.0;
    for (const auto c : pattern_counts(bits, m)) {
        if (c != 0) {
            const double p = static_cast<double>(c) / n;
            sum += p * std::log(p);
        }
    }
    return sum;
}

double psi_squared(std::span<const std::uint8_t> bits, int m) {
    if (m <= 0) {
        return 0.0;
    }
    const auto n = static_cast<double>(bits.size());
    double sum = 0.0;
    for (const auto c : pattern_counts(bits, static_cast<unsigned>(m))) {
        sum += static_cast<double>(c) * static_cast<double>(c);
    }
    return std::ldexp(sum, m) / n - n;
}

}  // namespace

double approx_entropy(std::span<const std::uint8_t> bits, unsigned m) {
    const auto n = static_cast<double>(bits.size());
    const double ap_en = phi(bits, m) - phi(bits, m + 1);
    const double chi2 = 2.0 * n * (std::numbers::ln2 - ap_en);
    return special::igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi2 / 2.0);
}

std::vector<double> serial(std::span<const std::uint8_t> bits, unsigned m) {
    const int mi = static_cast<int>(m);
    const double psi_m = psi_squared(bits, mi);
    const double psi_m1 = psi_squared(bits, mi - 1);
    const double psi_m2 = psi_squared(bits, mi - 2);
    const double del1 = psi_m - psi_m1;
    const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
    return {special::igamc(std::ldexp(1.0, mi - 2), del1 / 2.0),
            special::igamc(std::ldexp(1.0, mi - 3), del2 / 2.0)};
}

}  // namespace nist_unchecked

namespace {

void require_length(const BitStream& bits, std::uint64_t minimum, const char* test) {
    if (bits.size() < minimum) {
        throw InsufficientData(std::string(test) + " needs at least " + std::to_string(minimum) + " bits, got " +
                               std::to_string(bits.size()));
    }
}

unsigned floor_log2(std::uint64_t n) { return 63U - static_cast<unsigned>(__builtin_clzll(n)); }

}  // namespace

NistResult nist_frequency(const BitStream& bits) {
    require_length(bits, 100, "frequency");
    return make_nist_result("frequency", {nist_unchecked::frequency(bits.unpack())});
}

NistResult nist_block_frequency(const BitStream& bits, unsigned block_size) {
    require_length(bits, 100, "block_frequency");
    if (block_size < 20 || block_size > bits.size()) {
        throw InsufficientData("block_frequency needs 20 <= M <= n");
    }
    return make_nist_result("block_frequency", {nist_unchecked::block_frequency(bits.unpack(), block_size)});
}

NistResult nist_runs(const BitStream& bits) {
    require_length(bits, 100, "runs");
    bool applicable = true;
    const double p = nist_unchecked::runs(bits.unpack(), &applicable);
    auto r = make_nist_result("runs", {p});
    if (!applicable) {
        r.applicable = false;
        r.pass = false;
    }
    return r;
}

NistResult nist_longest_run(const BitStream& bits) {
    require_length(bits, 128, "longest_run");
    return make_nist_result("longest_run", {nist_unchecked::longest_run(bits.unpack())});
}

NistResult nist_cusum(const BitStream& bits) {
    require_length(bits, 100, "cumulative_sums");
    const auto unpacked = bits.unpack();
    return make_nist_result("cumulative_sums",
                            {nist_unchecked::cusum(unpacked, false), nist_unchecked::cusum(unpacked, true)});
}

NistResult nist_approx_entropy(const BitStream& bits, unsigned m) {
    require_length(bits, 100, "approximate_entropy");
    if (m < 1 || static_cast<int>(m) >= static_cast<int>(floor_log2(bits.size())) - 5) {
        throw InsufficientData("approximate_entropy needs 1 <= m < floor(log2 n) - 5");
    }
    return make_nist_result("approximate_entropy", {nist_unchecked::approx_entropy(bits.unpack(), m)});
}

NistResult nist_serial(const BitStream& bits, unsigned m) {
    require_length(bits, 100, "serial");
    if (m < 2 || static_cast<int>(m) >= static_cast<int>(floor_log2(bits.size())) - 2) {
        throw InsufficientData("serial needs 2 <= m < floor(log2 n) - 2");
    }
    return make_nist_result("serial", nist_unchecked::serial(bits.unpack(), m));
}

}  // namespace toa
