#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "toa/bitstream.hpp"
#include "toa/detector.hpp"
#include "toa/histogram.hpp"
#include "toa/rng.hpp"

namespace toa {

using Tick = std::uint64_t;
using Digit = std::uint32_t;

enum class EncodingMode : std::uint8_t {
    modulo_reject,  ///< tick mod N_b, ticks at or above the last full multiple of N_b rejected
    proportional,   ///< floor(tick * N_b / n_ticks), never rejects, biased if N_b does not divide n_ticks
};

std::string_view to_string(EncodingMode mode) noexcept;
/// Throws ConfigError for anything other than "modulo_reject" / "proportional".
EncodingMode parse_encoding_mode(std::string_view text);

struct ClockConfig {
    Picoseconds period = 500'000;   ///< external reference period
    Picoseconds resolution = 5;     ///< TDC tick
    std::uint32_t n_digits = 65536; ///< N_b
    double jitter_sigma = 3.0;      ///< reference clock jitter, ps
    Picoseconds phase_offset = 0;   ///< position of the first reference edge
    EncodingMode mode = EncodingMode::modulo_reject;
    std::uint64_t seed = 0;         ///< clock-jitter stream

    void validate() const;

    /// Whole ticks per period; a trailing partial tick is never produced.
    [[nodiscard]] Tick n_ticks() const noexcept { return static_cast<Tick>(period / resolution); }
    /// First rejected tick in modulo_reject mode: floor(n_ticks / N_b) * N_b.
    [[nodiscard]] Tick accept_limit() const noexcept { return n_ticks() / n_digits * n_digits; }
    [[nodiscard]] bool power_of_two_alphabet() const noexcept { return (n_digits & (n_digits - 1)) == 0; }
    /// log2(N_b); integral when the alphabet is a power of two.
    [[nodiscard]] double bits_per_digit() const;
    /// Fraction of uniformly distributed ticks the encoder rejects.
    [[nodiscard]] double uniform_rejection_fraction() const;
};

/// Tick of `timestamp` within its reference period, without clock jitter.
/// nullopt only when the offset falls in a trailing partial tick.
std::optional<Tick> quantize(Picoseconds timestamp, const ClockConfig& config);

/// As above with the measured offset perturbed by round(jitter_sigma * z)
/// and wrapped into [0, period).
std::optional<Tick> quantize(Picoseconds timestamp, const ClockConfig& config, Xoshiro256ss& clock_rng);

/// Digit for `tick`, or nullopt when rejected. Throws ContractViolation if
/// tick >= n_ticks.
std::optional<Digit> encode_digit(Tick tick, const ClockConfig& config);

struct DigitStream {
    std::vector<Digit> digits;
    std::uint64_t accepted_count = 0;
    std::uint64_t rejected_count = 0;
};

/// log2(N_b) bits per digit, MSB first. Throws ParameterError unless N_b is
/// a power of two.
BitStream pack_bits(const DigitStream& digits, const ClockConfig& config);
BitStream pack_bits(std::span<const Digit> digits, const ClockConfig& config);

struct DigitizerStats {
    std::uint64_t events = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    double bits_per_digit = 0.0;
    Histogram histogram;

    [[nodiscard]] double rejection_fraction() const noexcept {
        return events == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(events);
    }
    [[nodiscard]] double bits_emitted() const noexcept { return static_cast<double>(accepted) * bits_per_digit; }
    /// Output bit rate over an observation window of `seconds`.
    [[nodiscard]] double throughput_bps(double seconds) const noexcept {
        return seconds > 0.0 ? bits_emitted() / seconds : 0.0;
    }
};

/// Bit rate for a detection rate `event_rate` with uniformly distributed ticks.
double expected_throughput_bps(double event_rate, const ClockConfig& config);

/// Incremental quantize -> encode with running statistics.
class DigitEncoder {
public:
    explicit DigitEncoder(const ClockConfig& config);

    std::optional<Digit> process(const DetectionEvent& event);
    [[nodiscard]] const DigitizerStats& stats() const noexcept { return stats_; }
    [[nodiscard]] const ClockConfig& config() const noexcept { return config_; }

private:
    ClockConfig config_;
    Xoshiro256ss clock_rng_;
    DigitizerStats stats_;
};

std::pair<DigitStream, DigitizerStats> process_stream(std::span<const DetectionEvent> events,
                                                      const ClockConfig& config);

}  // namespace toa
