// Copyright 2026 The weldtree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace weldtree {

// Edge colors, ordered red < green < blue for deterministic iteration.
enum class Color : uint8_t { red = 0, green = 1, blue = 2 };

inline constexpr std::array<Color, 3> kColors = {Color::red, Color::green, Color::blue};

inline constexpr int color_index(Color c) { return static_cast<int>(c); }

inline constexpr Color color_from_index(int i) { return static_cast<Color>(i); }

inline std::string_view color_name(Color c) {
    switch (c) {
        case Color::red:
            return "red";
        case Color::green:
            return "green";
        case Color::blue:
            return "blue";
    }
    return "?";
}

inline char color_letter(Color c) { return "rgb"[color_index(c)]; }

inline Color parse_color(std::string_view s) {
    if (s == "red" || s == "r") {
        return Color::red;
    }
    if (s == "green" || s == "g") {
        return Color::green;
    }
    if (s == "blue" || s == "b") {
        return Color::blue;
    }
    throw std::invalid_argument("unknown color '" + std::string(s) + "'");
}

// The color that is neither a nor b (a != b).
inline constexpr Color third_color(Color a, Color b) {
    return color_from_index(3 - color_index(a) - color_index(b));
}

}  // namespace weldtree
