#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pvreconf {

/// Exact decimal quantity stored as an integer number of thousandths.
///
/// Irradiance strengths, row currents (in units of I_m) and array powers (in
/// units of V_m*I_m) all live on this grid, so sums, minima and table
/// comparisons are exact. Conversion to double happens only at the fitness
/// and reporting boundary.
class Fixed {
public:
    static constexpr std::int64_t kScale = 1000;

    constexpr Fixed() = default;

    static constexpr Fixed from_raw(std::int64_t milli) {
        Fixed f;
        f.raw_ = milli;
        return f;
    }

    /// Rounds to the nearest thousandth (half away from zero).
    static Fixed from_double(double value) {
        if (!std::isfinite(value)) {
            throw std::invalid_argument("Fixed::from_double: non-finite value");
        }
        const double scaled = value * static_cast<double>(kScale);
        if (std::fabs(scaled) > 9.0e15) {
            throw std::out_of_range("Fixed::from_double: value out of range");
        }
        return from_raw(static_cast<std::int64_t>(std::llround(scaled)));
    }

    [[nodiscard]] constexpr std::int64_t raw() const { return raw_; }
    [[nodiscard]] constexpr double to_double() const {
        return static_cast<double>(raw_) / static_cast<double>(kScale);
    }

    constexpr Fixed& operator+=(Fixed o) {
        raw_ += o.raw_;
        return *this;
    }
    constexpr Fixed& operator-=(Fixed o) {
        raw_ -= o.raw_;
        return *this;
    }
    friend constexpr Fixed operator+(Fixed a, Fixed b) { return a += b; }
    friend constexpr Fixed operator-(Fixed a, Fixed b) { return a -= b; }
    friend constexpr Fixed operator-(Fixed a) { return from_raw(-a.raw_); }
    friend constexpr Fixed operator*(Fixed a, std::int64_t n) { return from_raw(a.raw_ * n); }
    friend constexpr Fixed operator*(std::int64_t n, Fixed a) { return from_raw(a.raw_ * n); }

    friend constexpr auto operator<=>(Fixed, Fixed) = default;
    friend constexpr bool operator==(Fixed, Fixed) = default;

    /// Shortest exact decimal rendering: 56.7, 8.1, 0.455, -1.5, 0.
    [[nodiscard]] std::string str() const {
        const bool negative = raw_ < 0;
        const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(raw_ + 1)) + 1
                                           : static_cast<std::uint64_t>(raw_);
        std::string out = negative ? "-" : "";
        out += std::to_string(mag / kScale);
        std::uint64_t frac = mag % kScale;
        if (frac != 0) {
            std::string digits = std::to_string(frac);
            digits.insert(0, 3 - digits.size(), '0');
            while (!digits.empty() && digits.back() == '0') digits.pop_back();
            out += '.';
            out += digits;
        }
        return out;
    }

    /// Parses a plain decimal literal exactly (at most three fractional digits).
    static Fixed parse(const std::string& text) {
        std::size_t pos = 0;
        bool negative = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            negative = text[pos] == '-';
            ++pos;
        }
        std::int64_t whole = 0;
        std::int64_t frac = 0;
        int fracDigits = 0;
        bool any = false;
        for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
            whole = whole * 10 + (text[pos] - '0');
            any = true;
        }
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
                if (fracDigits == 3) {
                    throw std::invalid_argument("Fixed::parse: more than three decimals in '" + text + "'");
                }
                frac = frac * 10 + (text[pos] - '0');
                ++fracDigits;
                any = true;
            }
        }
        if (!any || pos != text.size()) {
            throw std::invalid_argument("Fixed::parse: not a decimal literal '" + text + "'");
        }
        for (int d = fracDigits; d < 3; ++d) frac *= 10;
        const std::int64_t raw = whole * kScale + frac;
        return from_raw(negative ? -raw : raw);
    }

private:
    std::int64_t raw_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Fixed f) { return os << f.str(); }

namespace literals {
/// 8.1_fx -> Fixed(8100 thousandths)
inline Fixed operator""_fx(long double v) { return Fixed::from_double(static_cast<double>(v)); }
inline Fixed operator""_fx(unsigned long long v) {
    return Fixed::from_raw(static_cast<std::int64_t>(v) * Fixed::kScale);
}
}  // namespace literals

}  // namespace pvreconf
