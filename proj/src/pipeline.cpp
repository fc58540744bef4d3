#include "toa/pipeline.hpp"

#include <bit>
#include <fstream>

#include "toa/error.hpp"
#include "toa/photon_source.hpp"

namespace toa {

namespace {

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

}  // namespace

PipelineResult run_pipeline(PipelineConfig config, const std::filesystem::path& out_dir) {
    config.derive_stage_seeds();
    config.validate();

    PipelineResult result;
    const bool packed = config.clock.power_of_two_alphabet();
    const auto width = static_cast<unsigned>(std::countr_zero(config.clock.n_digits));
    const std::uint64_t cap = config.max_bits;

    ArrivalGenerator source(config.source);
    DigitEncoder encoder(config.clock);
    WindowCounter windows(config.health.window);
    bool stop = false;
    Picoseconds stop_time = 0;

    DetectorModel detector(config.detector, source.duration_ps(), [&](const DetectionEvent& e) {
        if (stop) {
            return;
        }
        windows.add(e.timestamp);
        const auto digit = encoder.process(e);
        if (!digit) {
            return;
        }
        if (!packed) {
            result.digits.push_back(*digit);
            return;
        }
        result.bits.append(*digit, width);
        if (cap != 0 && result.bits.size() >= cap) {
            result.bits.truncate(cap);
            stop = true;
            stop_time = e.timestamp;
        }
    });

    in_stage("simulate", [&] {
        while (!stop) {
            const auto t = source.next();
            if (!t) {
                break;
            }
            ++result.photons;
            detector.push(*t);
        }
        if (!stop) {
            detector.finish();
        }
    });

    result.capped = stop;
    result.detector = detector.stats();
    result.digitizer = encoder.stats();
    const Picoseconds horizon = stop ? stop_time + 1 : source.duration_ps();
    result.observed_seconds = stop ? to_seconds(stop_time) : config.source.duration;

    in_stage("health", [&] {
        const double mean_rate = result.observed_seconds > 0.0
                                     ? static_cast<double>(result.digitizer.events) / result.observed_seconds
                                     : 0.0;
        const double nominal = config.health.nominal_rate > 0.0 ? config.health.nominal_rate : mean_rate;
        result.health = evaluate_health(windows, horizon, relative_bounds(nominal, config.health.tolerance));
    });

    in_stage("entropy", [&] {
        if (result.digitizer.histogram.total > 0) {
            result.entropy = entropy_report(result.digitizer.histogram);
        }
    });
    in_stage("ent", [&] {
        if (!result.bits.empty()) {
            result.ent = ent_battery(result.bits);
        }
    });
    in_stage("nist", [&] {
        if (config.run_tests && packed) {
            result.nist = run_suite(result.bits, config.tests);
        }
    });

    auto& report = result.report;
    report.add("pipeline.seed", config.master_seed);
    report.add("pipeline.mode", std::string(to_string(config.clock.mode)));
    report.add("pipeline.n_digits", static_cast<std::uint64_t>(config.clock.n_digits));
    report.add("pipeline.photons", result.photons);
    report.add("pipeline.photons_kept", result.detector.photons_kept);
    report.add("pipeline.dark_counts", result.detector.darks);
    report.add("pipeline.dead_time_drops", result.detector.dead_time_drops);
    report.add("pipeline.detections", result.digitizer.events);
    report.add("pipeline.accepted", result.digitizer.accepted);
    report.add("pipeline.rejected", result.digitizer.rejected);
    report.add("pipeline.rejection_fraction", result.digitizer.rejection_fraction());
    report.add("pipeline.capped", result.capped);
    report.add("pipeline.bits", packed ? result.bits.size() : std::uint64_t{0});
    report.add("pipeline.bits_per_digit", result.digitizer.bits_per_digit);
    report.add("pipeline.observed_seconds", result.observed_seconds);
    report.add("pipeline.detection_rate_cps",
               result.observed_seconds > 0.0 ? static_cast<double>(result.digitizer.events) / result.observed_seconds
                                             : 0.0);
    report.add("pipeline.throughput_bps", result.throughput_bps());
    io::add_health(report, result.health);
    report.add("entropy.available", result.entropy.has_value());
    if (result.entropy) {
        io::add_entropy(report, *result.entropy);
    }
    report.add("ent.available", result.ent.has_value());
    if (result.ent) {
        io::add_ent(report, *result.ent);
    }
    report.add("nist.available", result.nist.has_value());
    if (result.nist) {
        io::add_suite(report, *result.nist);
    }

    if (!out_dir.empty()) {
        in_stage("output", [&] {
            std::filesystem::create_directories(out_dir);
            if (packed) {
                io::write_bits(out_dir / "bits.bin", result.bits);
            } else {
                io::write_digits_csv(out_dir / "digits.csv", result.digits);
            }
            io::write_histogram_csv(out_dir / "histogram.csv", result.digitizer.histogram);
            report.write(out_dir / "report.txt");
            std::ofstream cfg(out_dir / "config.txt");
            cfg << to_config_text(config);
            if (!cfg) {
                throw std::runtime_error("cannot write config.txt");
            }
        });
    }
    return result;
}

}  // namespace toa
