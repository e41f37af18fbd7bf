#pragma once
// Locale-independent CSV emission.  All floats go through std::to_chars with
// 17 significant digits, which round-trips IEEE doubles exactly and never
// consults the global locale, so output bytes are reproducible everywhere.

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

namespace fracdecay {

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_int(long long v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// One CSV record; cells are written verbatim (callers keep commas out of
// labels, every numeric cell comes from the formatters above).
inline void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

} // namespace fracdecay
