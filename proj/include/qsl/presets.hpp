// qsl/presets.hpp: closed-form exponential sums used as reference cases.

#pragma once

#include "qsl/error.hpp"
#include "qsl/wiener.hpp"

#include <cmath>
#include <string>
#include <string_view>

namespace qsl::presets {

/// e^{πiz} - e^{-πiz} = 2i sin(πz); zeros at the integers.
[[nodiscard]] inline ExpSum sine() { return ExpSum({{0.5, 1.0}, {-0.5, -1.0}}); }

/// e^{πiz} + e^{-πiz} = 2cos(πz); zeros at ℤ + ½.
[[nodiscard]] inline ExpSum cosine() { return ExpSum({{0.5, 1.0}, {-0.5, 1.0}}); }

/// 2cos(2πz) + 3; zeros at k + ½ ± i·arccosh(3/2)/(2π).
[[nodiscard]] inline ExpSum cos3() { return ExpSum({{-1.0, 1.0}, {0.0, 3.0}, {1.0, 1.0}}); }

/// e^{πiz} - e^{-πiz} + 0.3·e^{πi√2 z}; incommensurable frequencies.
[[nodiscard]] inline ExpSum threefreq() {
    return ExpSum({{0.5, 1.0}, {-0.5, -1.0}, {std::sqrt(2.0) / 2.0, 0.3}});
}

[[nodiscard]] inline ExpSum by_name(std::string_view name) {
    if (name == "sin") return sine();
    if (name == "cos") return cosine();
    if (name == "cos3") return cos3();
    if (name == "threefreq") return threefreq();
    fail(ErrorKind::InvalidArgument, "unknown preset '" + std::string(name) + "' (sin, cos, cos3, threefreq)");
}

}  // namespace qsl::presets
