#include "toa/digitizer.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "toa/error.hpp"

namespace toa {

__extension__ using Uint128 = unsigned __int128;

std::string_view to_string(EncodingMode mode) noexcept {
    return mode == EncodingMode::proportional ? "proportional" : "modulo_reject";
}

EncodingMode parse_encoding_mode(std::string_view text) {
    if (text == "modulo_reject") {
        return EncodingMode::modulo_reject;
    }
    if (text == "proportional") {
        return EncodingMode::proportional;
    }
    throw ConfigError("unknown encoding mode '" + std::string(text) + "'");
}

void ClockConfig::validate() const {
    if (period <= 0 || resolution <= 0) {
        throw ParameterError("clock period and resolution must be positive");
    }
    if (n_digits < 2) {
        throw ParameterError("clock n_digits must be >= 2");
    }
    if (n_ticks() < n_digits) {
        throw ParameterError("clock period / resolution must be >= n_digits");
    }
    if (!(jitter_sigma >= 0.0) || !std::isfinite(jitter_sigma)) {
        throw ParameterError("clock jitter_sigma must be >= 0");
    }
}

double ClockConfig::bits_per_digit() const { return std::log2(static_cast<double>(n_digits)); }

double ClockConfig::uniform_rejection_fraction() const {
    // Modulo tail plus any trailing partial tick when resolution does not divide period.
    const Tick kept = mode == EncodingMode::proportional ? n_ticks() : accept_limit();
    return 1.0 - static_cast<double>(kept) * static_cast<double>(resolution) / static_cast<double>(period);
}

namespace {

Picoseconds wrap(Picoseconds value, Picoseconds period) noexcept {
    const Picoseconds r = value % period;
    return r < 0 ? r + period : r;
}

std::optional<Tick> tick_of(Picoseconds offset, const ClockConfig& config) {
    const auto tick = static_cast<Tick>(offset / config.resolution);
    if (tick >= config.n_ticks()) {
        return std::nullopt;
    }
    return tick;
}

}  // namespace

std::optional<Tick> quantize(Picoseconds timestamp, const ClockConfig& config) {
    return tick_of(wrap(timestamp - config.phase_offset, config.period), config);
}

std::optional<Tick> quantize(Picoseconds timestamp, const ClockConfig& config, Xoshiro256ss& clock_rng) {
    Picoseconds measured = timestamp - config.phase_offset;
    if (config.jitter_sigma > 0.0) {
        measured += std::llround(config.jitter_sigma * clock_rng.normal());
    }
    return tick_of(wrap(measured, config.period), config);
}

std::optional<Digit> encode_digit(Tick tick, const ClockConfig& config) {
    const Tick n_ticks = config.n_ticks();
    if (tick >= n_ticks) {
        throw ContractViolation("tick " + std::to_string(tick) + " outside [0, " + std::to_string(n_ticks) + ")");
    }
    if (config.mode == EncodingMode::proportional) {
        // tick * N_b < 2^64 for any n_ticks < 2^32 and N_b < 2^32.
        return static_cast<Digit>(static_cast<Uint128>(tick) * config.n_digits / n_ticks);
    }
    if (tick >= config.accept_limit()) {
        return std::nullopt;
    }
    return static_cast<Digit>(tick % config.n_digits);
}

BitStream pack_bits(std::span<const Digit> digits, const ClockConfig& config) {
    if (!config.power_of_two_alphabet()) {
        throw ParameterError("bit packing needs a power-of-two alphabet; export digits as CSV instead");
    }
    const auto width = static_cast<unsigned>(std::countr_zero(config.n_digits));
    BitStream bits;
    bits.reserve_bits(static_cast<std::uint64_t>(digits.size()) * width);
    for (const Digit d : digits) {
        bits.append(d, width);
    }
    return bits;
}

BitStream pack_bits(const DigitStream& digits, const ClockConfig& config) {
    return pack_bits(std::span<const Digit>(digits.digits), config);
}

double expected_throughput_bps(double event_rate, const ClockConfig& config) {
    return event_rate * (1.0 - config.uniform_rejection_fraction()) * config.bits_per_digit();
}

DigitEncoder::DigitEncoder(const ClockConfig& config) : config_(config), clock_rng_(config.seed) {
    config_.validate();
    stats_.bits_per_digit = config_.bits_per_digit();
    stats_.histogram = Histogram(config_.n_digits);
}

std::optional<Digit> DigitEncoder::process(const DetectionEvent& event) {
    ++stats_.events;
    std::optional<Digit> digit;
    if (const auto tick = quantize(event.timestamp, config_, clock_rng_)) {
        digit = encode_digit(*tick, config_);
    }
    if (digit) {
        ++stats_.accepted;
        stats_.histogram.add(*digit);
    } else {
        ++stats_.rejected;
    }
    return digit;
}

std::pair<DigitStream, DigitizerStats> process_stream(std::span<const DetectionEvent> events,
                                                      const ClockConfig& config) {
    DigitEncoder encoder(config);
    DigitStream out;
    out.digits.reserve(events.size());
    for (const auto& e : events) {
        if (const auto d = encoder.process(e)) {
            out.digits.push_back(*d);
        }
    }
    out.accepted_count = encoder.stats().accepted;
    out.rejected_count = encoder.stats().rejected;
    return {std::move(out), encoder.stats()};
}

}  // namespace toa
