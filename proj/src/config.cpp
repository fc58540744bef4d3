#include "toa/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "toa/error.hpp"

namespace toa {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw ConfigError("invalid boolean '" + std::string(value) + "' for " + std::string(key));
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

struct Key {
    std::string_view name;
    std::function<void(PipelineConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

template <typename T>
Key number_key(std::string_view name, T PipelineConfig::*outer) {
    return {name, [outer](PipelineConfig& c, auto k, auto v) { c.*outer = parse_number<T>(k, v); },
            [outer](const PipelineConfig& c) { return std::to_string(c.*outer); }};
}

template <typename Part, typename T>
Key nested_key(std::string_view name, Part PipelineConfig::*part, T Part::*field) {
    return {name,
            [part, field](PipelineConfig& c, auto k, auto v) { (c.*part).*field = parse_number<T>(k, v); },
            [part, field](const PipelineConfig& c) {
                if constexpr (std::is_floating_point_v<T>) {
                    return format_double((c.*part).*field);
                } else {
                    return std::to_string((c.*part).*field);
                }
            }};
}

const std::vector<Key>& keys() {
    using C = PipelineConfig;
    static const std::vector<Key> table{
        number_key("seed", &C::master_seed),
        nested_key("source.mean_rate", &C::source, &SourceConfig::mean_rate),
        nested_key("source.duration", &C::source, &SourceConfig::duration),
        nested_key("source.drift_fraction", &C::source, &SourceConfig::drift_fraction),
        nested_key("detector.efficiency", &C::detector, &DetectorConfig::efficiency),
        nested_key("detector.dead_time_ps", &C::detector, &DetectorConfig::dead_time),
        nested_key("detector.dark_count_rate", &C::detector, &DetectorConfig::dark_count_rate),
        nested_key("detector.jitter_sigma_ps", &C::detector, &DetectorConfig::jitter_sigma),
        nested_key("clock.period_ps", &C::clock, &ClockConfig::period),
        nested_key("clock.resolution_ps", &C::clock, &ClockConfig::resolution),
        nested_key("clock.n_digits", &C::clock, &ClockConfig::n_digits),
        nested_key("clock.jitter_sigma_ps", &C::clock, &ClockConfig::jitter_sigma),
        nested_key("clock.phase_offset_ps", &C::clock, &ClockConfig::phase_offset),
        {"clock.mode", [](C& c, auto, auto v) { c.clock.mode = parse_encoding_mode(v); },
         [](const C& c) { return std::string(to_string(c.clock.mode)); }},
        {"tests.enabled", [](C& c, auto k, auto v) { c.run_tests = parse_bool(k, v); },
         [](const C& c) { return std::string(c.run_tests ? "true" : "false"); }},
        nested_key("tests.sequence_bits", &C::tests, &SuiteConfig::sequence_bits),
        nested_key("tests.block_frequency_m", &C::tests, &SuiteConfig::block_frequency_m),
        nested_key("tests.approx_entropy_m", &C::tests, &SuiteConfig::approx_entropy_m),
        nested_key("tests.serial_m", &C::tests, &SuiteConfig::serial_m),
        nested_key("tests.min_pass_proportion", &C::tests, &SuiteConfig::min_pass_proportion),
        nested_key("health.window_ps", &C::health, &HealthConfig::window),
        nested_key("health.nominal_rate_cps", &C::health, &HealthConfig::nominal_rate),
        nested_key("health.tolerance", &C::health, &HealthConfig::tolerance),
        number_key("output.max_bits", &C::max_bits),
    };
    return table;
}

}  // namespace

void PipelineConfig::derive_stage_seeds() {
    source.seed = derive_seed(master_seed, 1);
    detector.seed = derive_seed(master_seed, 2);
    clock.seed = derive_seed(master_seed, 3);
}

void PipelineConfig::validate() const {
    auto check = [](const char* section, auto&& fn) {
        try {
            fn();
        } catch (const ParameterError& e) {
            throw ConfigError(std::string(section) + ": " + e.what());
        }
    };
    check("source", [this] { source.validate(); });
    check("detector", [this] { detector.validate(); });
    check("clock", [this] { clock.validate(); });
    check("tests", [this] { tests.validate(); });
    if (health.window <= 0) {
        throw ConfigError("health: window_ps must be positive");
    }
    if (!(health.tolerance >= 0.0) || !(health.nominal_rate >= 0.0)) {
        throw ConfigError("health: tolerance and nominal_rate_cps must be >= 0");
    }
}

void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value) {
    for (const auto& k : keys()) {
        if (k.name == key) {
            k.set(config, key, value);
            return;
        }
    }
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

PipelineConfig parse_config(std::string_view text) {
    PipelineConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) {
            throw ConfigError(where + "expected key=value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) {
            throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
        }
        try {
            apply_setting(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_config_text(const PipelineConfig& config) {
    std::string out;
    for (const auto& k : keys()) {
        out += k.name;
        out += '=';
        out += k.get(config);
        out += '\n';
    }
    return out;
}

}  // namespace toa
