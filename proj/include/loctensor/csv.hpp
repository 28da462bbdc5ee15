#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>

// Numeric text output: '.' decimal separator, no grouping, 6 significant
// digits by default. Uses to_chars, so output is locale-independent and
// byte-stable across runs.

namespace loctensor::csv {

inline constexpr const char* kVersion = "0.1.0";

inline std::string fmt(double x, int significant = 6) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general,
                                   significant);
    return std::string(buf, res.ptr);
}

inline std::string fmt_fixed(double x, int decimals) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

// comment-line header carried by every numeric output file
inline std::string metadata_header(const std::string& flags, std::uint64_t seed) {
    std::ostringstream ss;
    ss << "# version: " << kVersion << "\n";
    ss << "# flags: " << flags << "\n";
    ss << "# seed: " << seed << "\n";
    return ss.str();
}

} // namespace loctensor::csv
