#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace prevplot {

// Locale-independent number formatting: decimal point, no grouping.
// Machine-readable outputs (CSV, JSON, SVG) all go through these helpers.

/// Shortest decimal string that round-trips to the same double ("17.182130584192443").
inline std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

/// Fixed-point with the given number of decimals ("0.06" at precision 2).
inline std::string format_fixed(double value, int precision) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
    if (ec != std::errc{}) return format_double(value);
    return std::string(buf, ptr);
}

/// Display rounding for probabilities in prose: 0.5637 -> "56%".
inline std::string format_percent(double probability) {
    return std::to_string(std::lround(probability * 100.0)) + "%";
}

/// Display rounding to the nearest whole number: 17.18 -> "17".
inline std::string format_whole(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return std::to_string(std::llround(value));
}

}  // namespace prevplot
