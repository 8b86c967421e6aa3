#pragma once

#include <charconv>
#include <concepts>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "fixed.hpp"

namespace pvreconf::csv {

/// Shortest decimal that parses back to the same double.
inline std::string format(double x) {
    if (!std::isfinite(x)) {
        if (std::isnan(x)) return "nan";
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    if (res.ec != std::errc{}) throw std::runtime_error("csv::format: to_chars failed");
    return {buf, res.ptr};
}

inline std::string format(Fixed x) { return x.str(); }
template <std::integral T>
    requires(!std::is_same_v<T, bool> && !std::is_same_v<T, char>)
std::string format(T x) {
    return std::to_string(x);
}
inline std::string format(bool x) { return x ? "true" : "false"; }
inline std::string format(const std::string& s) { return s; }
inline std::string format(std::string_view s) { return std::string(s); }
inline std::string format(const char* s) { return s; }

inline double parse_double(std::string_view s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: not a number: '" + std::string(s) + "'");
    return v;
}

/// Fields never contain commas or quotes in this project, so no quoting is done.
class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}

    template <typename... Ts>
    Writer& row(const Ts&... fields) {
        bool first = true;
        ((os_ << (first ? "" : ",") << format(fields), first = false), ...);
        os_ << '\n';
        return *this;
    }

    Writer& row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << fields[i];
        os_ << '\n';
        return *this;
    }

private:
    std::ostream& os_;
};

using Table = std::vector<std::vector<std::string>>;

inline std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline Table read(std::istream& in) {
    Table t;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        t.push_back(split_line(line));
    }
    return t;
}

inline Table read_string(const std::string& text) {
    std::istringstream in(text);
    return read(in);
}

}  // namespace pvreconf::csv
