#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toa/bitstream.hpp"
#include "toa/detector.hpp"
#include "toa/digitizer.hpp"
#include "toa/ent.hpp"
#include "toa/entropy.hpp"
#include "toa/health.hpp"
#include "toa/histogram.hpp"
#include "toa/photon_source.hpp"
#include "toa/suite.hpp"

namespace toa::io {

// File formats. All text formats are '\n'-terminated ASCII.
//
//   raw bits        header-free bytes, MSB first; a partial last byte is zero padded
//   digit CSV       one decimal digit per line
//   histogram CSV   "digit,count" header, then one row per digit value
//   arrivals CSV    "# duration_ps=<N>" then one timestamp (ps) per line
//   detections CSV  "# duration_ps=<N>" then "timestamp,origin" rows, origin photon|dark
//   report          key=value lines, reals fixed to 6 decimals

void write_bits(const std::filesystem::path& path, const BitStream& bits);
/// Whole file, or its first `max_bits` bits.
BitStream read_bits(const std::filesystem::path& path, std::optional<std::uint64_t> max_bits = std::nullopt);

void write_digits_csv(const std::filesystem::path& path, std::span<const Digit> digits);
std::vector<Digit> read_digits_csv(const std::filesystem::path& path);

void write_histogram_csv(const std::filesystem::path& path, const Histogram& hist);

void write_arrivals(const std::filesystem::path& path, const ArrivalStream& stream);
ArrivalStream read_arrivals(const std::filesystem::path& path);

void write_detections(const std::filesystem::path& path, const DetectionStream& stream);
DetectionStream read_detections(const std::filesystem::path& path);

/// Ordered key=value report with diff-stable number formatting.
class Report {
public:
    void add(std::string key, std::string value);
    void add(std::string key, double value);  ///< "%.6f"; "inf" / "nan" for non-finite values
    void add(std::string key, std::uint64_t value);
    void add(std::string key, bool value);
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }

    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
        return entries_;
    }
    [[nodiscard]] std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_fixed(double value);

void add_entropy(Report& report, const EntropyReport& entropy);
void add_ent(Report& report, const EntReport& ent);
void add_suite(Report& report, const SuiteSummary& suite);
void add_health(Report& report, const HealthStatus& health);

}  // namespace toa::io
