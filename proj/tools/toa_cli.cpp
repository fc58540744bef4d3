// toaqrng: command-line front end for the time-of-arrival QRNG simulator.
//
// Each stage subcommand reads and writes the files documented in toa/io.hpp,
// so simulate | detect | digitize reproduces the bits of `pipeline` for the
// same configuration.
//
// Exit codes: 0 ok, 1 a test threshold or health check failed, 2 bad
// configuration or arguments, 3 I/O or runtime failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "toa/bbs.hpp"
#include "toa/config.hpp"
#include "toa/error.hpp"
#include "toa/io.hpp"
#include "toa/pipeline.hpp"

namespace fs = std::filesystem;
using namespace toa;

namespace {

constexpr int kOk = 0;
constexpr int kTestFailure = 1;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Options {
    std::string config_path;
    std::vector<std::string> settings;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::uint64_t> bits;
    std::string in;
    std::string out;
};

PipelineConfig build_config(const Options& o) {
    PipelineConfig c = o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
    for (const auto& s : o.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + s + "'");
        }
        apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
    }
    if (o.seed) {
        c.master_seed = *o.seed;
    }
    if (o.mode) {
        c.clock.mode = parse_encoding_mode(*o.mode);
    }
    c.validate();
    c.derive_stage_seeds();
    return c;
}

fs::path out_dir(const Options& o) {
    const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
    fs::create_directories(dir);
    return dir;
}

fs::path require_input(const Options& o) {
    if (o.in.empty()) {
        throw ConfigError("this command needs --in PATH");
    }
    return o.in;
}

// Prints the report and, when --out was given, keeps a copy next to the other artifacts.
void emit(const io::Report& r, const Options& o, const char* file) {
    std::cout << r.str();
    if (!o.out.empty()) {
        r.write(out_dir(o) / file);
    }
}

BitStream read_input_bits(const Options& o) {
    return io::read_bits(require_input(o), o.bits);
}

// Digits from a digit CSV, or regrouped from raw bits for power-of-two alphabets.
std::vector<Digit> read_input_digits(const Options& o, const ClockConfig& clock) {
    const auto path = require_input(o);
    if (path.extension() == ".csv") {
        return io::read_digits_csv(path);
    }
    if (!clock.power_of_two_alphabet()) {
        throw ConfigError("raw bit input needs a power-of-two clock.n_digits");
    }
    const auto width = static_cast<unsigned>(std::lround(clock.bits_per_digit()));
    const auto bits = io::read_bits(path, o.bits);
    std::vector<Digit> digits;
    digits.reserve(bits.size() / std::max(width, 1U));
    for (std::uint64_t i = 0; width > 0 && i + width <= bits.size(); i += width) {
        Digit d = 0;
        for (unsigned k = 0; k < width; ++k) {
            d = (d << 1) | static_cast<Digit>(bits.bit(i + k));
        }
        digits.push_back(d);
    }
    return digits;
}

int cmd_simulate(const Options& o) {
    const auto c = build_config(o);
    const auto arrivals = generate_arrivals(c.source);
    io::write_arrivals(out_dir(o) / "arrivals.csv", arrivals);
    std::cout << "photons=" << arrivals.timestamps.size() << "\n";
    return kOk;
}

int cmd_detect(const Options& o) {
    const auto c = build_config(o);
    const auto arrivals = io::read_arrivals(require_input(o));
    const auto events = detect(arrivals, c.detector);
    io::write_detections(out_dir(o) / "detections.csv", events);
    std::cout << "photons_in=" << arrivals.timestamps.size() << "\nclicks=" << events.events.size() << "\n";
    return kOk;
}

int cmd_digitize(const Options& o) {
    const auto c = build_config(o);
    const auto events = io::read_detections(require_input(o));
    const auto [digits, stats] = process_stream(events.events, c.clock);
    const auto dir = out_dir(o);
    io::Report r;
    r.add("digitizer.mode", std::string(to_string(c.clock.mode)));
    r.add("digitizer.events", stats.events);
    r.add("digitizer.accepted", stats.accepted);
    r.add("digitizer.rejected", stats.rejected);
    if (c.clock.power_of_two_alphabet()) {
        auto bits = pack_bits(digits, c.clock);
        if (o.bits && bits.size() > *o.bits) {
            bits.truncate(*o.bits);
        }
        io::write_bits(dir / "bits.bin", bits);
        r.add("digitizer.bits", bits.size());
    } else {
        io::write_digits_csv(dir / "digits.csv", digits.digits);
    }
    io::write_histogram_csv(dir / "histogram.csv", stats.histogram);
    std::cout << r.str();
    return kOk;
}

int cmd_entropy(const Options& o) {
    const auto c = build_config(o);
    const auto digits = read_input_digits(o, c.clock);
    io::Report r;
    io::add_entropy(r, entropy_report(histogram(digits, c.clock.n_digits)));
    emit(r, o, "entropy.txt");
    return kOk;
}

int cmd_ent(const Options& o) {
    const auto bits = read_input_bits(o);
    io::Report r;
    io::add_ent(r, ent_battery(bits));
    emit(r, o, "ent.txt");
    return kOk;
}

int cmd_nist(const Options& o) {
    const auto c = build_config(o);
    const auto summary = run_suite(read_input_bits(o), c.tests);
    io::Report r;
    io::add_suite(r, summary);
    emit(r, o, "nist.txt");
    return summary.all_meet_threshold() ? kOk : kTestFailure;
}

int cmd_health(const Options& o) {
    const auto c = build_config(o);
    const auto events = io::read_detections(require_input(o));
    const double seconds = to_seconds(events.duration_ps);
    const double mean_rate = seconds > 0.0 ? static_cast<double>(events.events.size()) / seconds : 0.0;
    const double nominal = c.health.nominal_rate > 0.0 ? c.health.nominal_rate : mean_rate;
    const auto h = health_monitor(events, c.health.window, relative_bounds(nominal, c.health.tolerance));
    io::Report r;
    io::add_health(r, h);
    emit(r, o, "health.txt");
    return h.flag == HealthFlag::ok ? kOk : kTestFailure;
}

int cmd_bbs(const Options& o) {
    const auto c = build_config(o);
    const std::uint64_t n = o.bits.value_or(1'000'000);
    const auto bits = bbs_generate(BbsParams::reference(c.master_seed), n);
    io::write_bits(out_dir(o) / "bbs.bin", bits);
    std::cout << "bbs.bits=" << bits.size() << "\n";
    return kOk;
}

int cmd_pipeline(const Options& o) {
    auto c = build_config(o);
    if (o.bits) {
        c.max_bits = *o.bits;
    }
    const auto r = run_pipeline(c, out_dir(o));
    std::cout << r.report.str();
    const bool ok = r.tests_ok() && r.health.flag == HealthFlag::ok;
    return ok ? kOk : kTestFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-of-arrival quantum random number generator simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--config", o.config_path, "key=value configuration file")->check(CLI::ExistingFile);
    app.add_option("--set", o.settings, "override one configuration key (key=value, repeatable)");
    app.add_option("--seed", o.seed, "master seed, overrides the config");
    app.add_option("--mode", o.mode, "encoding mode")->check(CLI::IsMember({"modulo_reject", "proportional"}));
    app.add_option("--bits", o.bits, "bit count: cap for pipeline/digitize, prefix for ent/nist, length for bbs");
    app.add_option("--in", o.in, "input file from an earlier stage");
    app.add_option("--out", o.out, "output directory");

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Options&);
    };
    const Command commands[] = {
        {"simulate", "photon arrivals -> arrivals.csv", cmd_simulate},
        {"detect", "--in arrivals.csv -> detections.csv", cmd_detect},
        {"digitize", "--in detections.csv -> bits.bin or digits.csv, histogram.csv", cmd_digitize},
        {"entropy", "--in digits.csv or bits -> Shannon, min and Renyi entropy", cmd_entropy},
        {"ent", "--in bits -> ENT battery", cmd_ent},
        {"nist", "--in bits -> NIST subset; exit 1 below the pass threshold", cmd_nist},
        {"health", "--in detections.csv -> count-rate monitor; exit 1 on alarm", cmd_health},
        {"bbs", "Blum-Blum-Shub reference bits -> bbs.bin", cmd_bbs},
        {"pipeline", "full run -> bits.bin, histogram.csv, report.txt, config.txt", cmd_pipeline},
    };
    for (const auto& c : commands) {
        app.add_subcommand(c.name, c.help);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        for (const auto& c : commands) {
            if (app.got_subcommand(c.name)) {
                return c.run(o);
            }
        }
        return kConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}
