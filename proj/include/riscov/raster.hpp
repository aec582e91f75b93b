#pragma once

#include <cstdint>
#include <vector>

#include "riscov/coverage.hpp"

namespace riscov {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Linear color mapping over [min_db, max_db]; values are clamped into the
/// range, sentinel (+inf) cells use the reserved color.
struct ColorScale {
    double min_db = 60.0;
    double max_db = 160.0;
    std::vector<Rgb> stops; // >= 2
    Rgb sentinel{0, 0, 0};
};

/// 60-160 dB over a blue-to-dark-red ramp, black sentinel.
ColorScale default_color_scale();

Rgb map_value_to_color(double value_db, const ColorScale& scale);

/// Binary portable pixmap (P6), one pixel per grid cell, row y = 0 at top.
/// Deterministic: byte-identical across runs.
std::vector<std::uint8_t> render_map(const PathLossMap& m, const ColorScale& scale);

/// Per-point a - b in dB with winners cleared; points non-finite on either
/// side become sentinels. Maps must share dimensions and world fingerprint.
PathLossMap diff_map(const PathLossMap& a, const PathLossMap& b);

} // namespace riscov
