#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "field.hpp"

namespace pvreconf {

struct ShadingCase {
    std::string name;  // short-wide | long-narrow | short-narrow | long-wide | custom
    int number = 0;    // 1..4 for built-ins, 0 for custom
    IrradianceField field;
    bool reconstructed = false;  // grid rebuilt from tabulated row currents, not from a drawn layout
};

inline constexpr std::array<std::string_view, 4> kBuiltinCaseNames = {"short-wide", "long-narrow", "short-narrow",
                                                                      "long-wide"};

namespace detail {

// Grids in tenths of G0 (9 = 900 W/m^2).
using Grid9 = std::array<std::array<int, 9>, 9>;

inline IrradianceField field_from_tenths(const Grid9& g) {
    std::vector<Fixed> v;
    v.reserve(81);
    for (const auto& row : g)
        for (int x : row) v.push_back(Fixed::from_raw(static_cast<std::int64_t>(x) * 100));
    return {9, 9, std::move(v)};
}

// Rows 1-5 unshaded at 900; row 6 has five cells at 600; rows 7-9 carry three
// cells each at 600, 400 and 200 W/m^2, laid out as column blocks.
inline constexpr Grid9 kShortWide = {{
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {6, 6, 6, 6, 6, 9, 9, 9, 9},
    {6, 6, 6, 4, 4, 4, 2, 2, 2},
    {6, 6, 6, 4, 4, 4, 2, 2, 2},
    {6, 6, 6, 4, 4, 4, 2, 2, 2},
}};

// Narrow vertical strip over columns 7-9: 600/400/300 W/m^2 on 17 cells.
inline constexpr Grid9 kLongNarrow = {{
    {9, 9, 9, 9, 9, 9, 4, 4, 6},
    {9, 9, 9, 9, 9, 9, 4, 4, 6},
    {9, 9, 9, 9, 9, 9, 4, 4, 6},
    {9, 9, 9, 9, 9, 9, 4, 4, 6},
    {9, 9, 9, 9, 9, 9, 4, 4, 3},
    {9, 9, 9, 9, 9, 9, 4, 4, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
}};

// Rows 6-7: 7x900 + 600 + 400 (7.3 I_m); rows 8-9: 3x900 + 5x600 + 400 (6.1 I_m).
inline constexpr Grid9 kShortNarrow = {{
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 6, 4, 9, 9, 9},
    {9, 9, 9, 9, 6, 4, 9, 9, 9},
    {6, 6, 6, 6, 6, 4, 9, 9, 9},
    {6, 6, 6, 6, 6, 4, 9, 9, 9},
}};

// Rows 4-9 shaded at 600/500/400/200 W/m^2: 51 of 81 cells.
inline constexpr Grid9 kLongWide = {{
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {9, 9, 9, 9, 9, 9, 9, 9, 9},
    {6, 6, 6, 6, 6, 4, 9, 9, 9},
    {6, 6, 6, 6, 6, 6, 6, 6, 6},
    {6, 6, 6, 5, 5, 5, 5, 5, 5},
    {5, 5, 5, 5, 5, 5, 4, 4, 4},
    {4, 4, 4, 4, 4, 4, 4, 4, 4},
    {2, 2, 2, 2, 2, 2, 2, 2, 2},
}};

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace detail

/// Resolves "short-wide", "1", "case1", ... to a built-in case number, or 0.
inline int builtin_case_number(std::string_view name) {
    const std::string n = detail::lower(name);
    for (std::size_t k = 0; k < kBuiltinCaseNames.size(); ++k) {
        const std::string num = std::to_string(k + 1);
        if (n == kBuiltinCaseNames[k] || n == num || n == "case" + num || n == "case-" + num ||
            n == "case_" + num) {
            return static_cast<int>(k + 1);
        }
    }
    return 0;
}

inline ShadingCase builtin_case(std::string_view name) {
    const int number = builtin_case_number(name);
    switch (number) {
        case 1: return {"short-wide", 1, detail::field_from_tenths(detail::kShortWide), false};
        case 2: return {"long-narrow", 2, detail::field_from_tenths(detail::kLongNarrow), true};
        case 3: return {"short-narrow", 3, detail::field_from_tenths(detail::kShortNarrow), true};
        case 4: return {"long-wide", 4, detail::field_from_tenths(detail::kLongWide), true};
        default: throw std::invalid_argument("unknown shading case '" + std::string(name) + "'");
    }
}

inline std::vector<ShadingCase> builtin_cases() {
    std::vector<ShadingCase> out;
    for (auto name : kBuiltinCaseNames) out.push_back(builtin_case(name));
    return out;
}

}  // namespace pvreconf
