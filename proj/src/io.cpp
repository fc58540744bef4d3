#include "toa/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "toa/error.hpp"

namespace toa::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

template <typename T>
T parse_field(std::string_view text, const std::filesystem::path& path, std::size_t line_no) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed number '" +
                                 std::string(text) + "'");
    }
    return value;
}

Picoseconds read_duration_header(std::istream& in, const std::filesystem::path& path) {
    std::string line;
    constexpr std::string_view prefix = "# duration_ps=";
    if (!std::getline(in, line) || !line.starts_with(prefix)) {
        throw std::runtime_error(path.string() + ": missing '# duration_ps=' header");
    }
    return parse_field<Picoseconds>(std::string_view(line).substr(prefix.size()), path, 1);
}

}  // namespace

void write_bits(const std::filesystem::path& path, const BitStream& bits) {
    auto out = open_out(path, true);
    const auto bytes = bits.bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    finish(out, path);
}

BitStream read_bits(const std::filesystem::path& path, std::optional<std::uint64_t> max_bits) {
    auto in = open_in(path, true);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::uint64_t count = 8 * static_cast<std::uint64_t>(bytes.size());
    if (max_bits && *max_bits < count) {
        count = *max_bits;
    }
    return BitStream(std::move(bytes), count);
}

void write_digits_csv(const std::filesystem::path& path, std::span<const Digit> digits) {
    auto out = open_out(path);
    for (const Digit d : digits) {
        out << d << '\n';
    }
    finish(out, path);
}

std::vector<Digit> read_digits_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<Digit> digits;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty()) {
            digits.push_back(parse_field<Digit>(line, path, line_no));
        }
    }
    return digits;
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram& hist) {
    auto out = open_out(path);
    out << "digit,count\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        out << i << ',' << hist.counts[i] << '\n';
    }
    finish(out, path);
}

void write_arrivals(const std::filesystem::path& path, const ArrivalStream& stream) {
    auto out = open_out(path);
    out << "# duration_ps=" << stream.duration_ps << '\n';
    for (const Picoseconds t : stream.timestamps) {
        out << t << '\n';
    }
    finish(out, path);
}

ArrivalStream read_arrivals(const std::filesystem::path& path) {
    auto in = open_in(path);
    ArrivalStream stream;
    stream.duration_ps = read_duration_header(in, path);
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty()) {
            stream.timestamps.push_back(parse_field<Picoseconds>(line, path, line_no));
        }
    }
    return stream;
}

void write_detections(const std::filesystem::path& path, const DetectionStream& stream) {
    auto out = open_out(path);
    out << "# duration_ps=" << stream.duration_ps << '\n';
    for (const auto& e : stream.events) {
        out << e.timestamp << ',' << (e.origin == Origin::dark ? "dark" : "photon") << '\n';
    }
    finish(out, path);
}

DetectionStream read_detections(const std::filesystem::path& path) {
    auto in = open_in(path);
    DetectionStream stream;
    stream.duration_ps = read_duration_header(in, path);
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::string_view view(line);
        const auto comma = view.find(',');
        if (comma == std::string_view::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected timestamp,origin");
        }
        const auto origin = view.substr(comma + 1);
        if (origin != "photon" && origin != "dark") {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": unknown origin");
        }
        stream.events.push_back({parse_field<Picoseconds>(view.substr(0, comma), path, line_no),
                                 origin == "dark" ? Origin::dark : Origin::photon});
    }
    return stream;
}

std::string format_fixed(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    // "-0.000000" and "0.000000" must compare equal across runs.
    if (std::string_view(buf) == "-0.000000") {
        return "0.000000";
    }
    return buf;
}

void Report::add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
void Report::add(std::string key, double value) { add(std::move(key), format_fixed(value)); }
void Report::add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
void Report::add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }

std::string Report::str() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

void Report::write(const std::filesystem::path& path) const {
    auto out = open_out(path);
    out << str();
    finish(out, path);
}

void add_entropy(Report& report, const EntropyReport& e) {
    report.add("entropy.alphabet", static_cast<std::uint64_t>(e.alphabet));
    report.add("entropy.samples", e.samples);
    report.add("entropy.shannon_bits", e.shannon_bits);
    report.add("entropy.min_entropy_bits", e.min_entropy_bits);
    report.add("entropy.min_entropy_normalized", e.min_entropy_normalized);
    report.add("entropy.p_max", e.p_max);
    for (const auto& [alpha, bits] : e.renyi) {
        report.add("entropy.renyi." + (std::isinf(alpha) ? std::string("inf") : format_fixed(alpha)), bits);
    }
    report.add("entropy.low_sample_warning", e.low_sample_warning);
}

void add_ent(Report& report, const EntReport& ent) {
    report.add("ent.bits", ent.bit_count);
    report.add("ent.entropy_bits_per_bit", ent.entropy_bits_per_bit);
    report.add("ent.chi_square_statistic", ent.chi_square_statistic);
    report.add("ent.chi_square_exceed_percent", ent.chi_square_exceed_percent);
    report.add("ent.arithmetic_mean", ent.arithmetic_mean);
    report.add("ent.monte_carlo_points", ent.monte_carlo_points);
    report.add("ent.monte_carlo_pi", ent.monte_carlo_pi ? format_fixed(*ent.monte_carlo_pi) : "absent");
    report.add("ent.serial_correlation",
               ent.serial_correlation ? format_fixed(*ent.serial_correlation) : "undefined");
}

void add_suite(Report& report, const SuiteSummary& suite) {
    report.add("nist.sequences", suite.sequences);
    for (const auto& t : suite.tests) {
        const std::string prefix = "nist." + t.test_name + ".";
        report.add(prefix + "passes", t.passes);
        report.add(prefix + "not_applicable", t.not_applicable);
        report.add(prefix + "pass_proportion", t.pass_proportion);
        report.add(prefix + "worst_p", t.worst_p);
        report.add(prefix + "meets_threshold", t.meets_threshold);
    }
    report.add("nist.all_meet_threshold", suite.all_meet_threshold());
}

void add_health(Report& report, const HealthStatus& health) {
    report.add("health.flag", health.flag == HealthFlag::ok ? "ok" : "alarm");
    report.add("health.window_ps", static_cast<std::uint64_t>(health.window));
    report.add("health.windows", static_cast<std::uint64_t>(health.rates.size()));
    report.add("health.lower_cps", health.bounds.lower);
    report.add("health.upper_cps", health.bounds.upper);
    report.add("health.alarmed_windows", static_cast<std::uint64_t>(health.alarmed_windows.size()));
}

}  // namespace toa::io
