#pragma once

#include "schur/lattice.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace schur {

class RenderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Rgb {
    std::uint8_t r, g, b;
};

/// Fixed palette, color c uses entry c-1.
inline constexpr std::array<Rgb, 8> render_palette{{
    {0x1f, 0x77, 0xb4}, // blue
    {0xff, 0x7f, 0x0e}, // orange
    {0x2c, 0xa0, 0x2c}, // green
    {0xd6, 0x27, 0x28}, // red
    {0x94, 0x67, 0xbd}, // purple
    {0x8c, 0x56, 0x4b}, // brown
    {0xe3, 0x77, 0xc2}, // pink
    {0x7f, 0x7f, 0x7f}, // grey
}};

// All renderers take d = 1 (one row) or d = 2. For d = 2 the first
// coordinate runs left to right and the second bottom to top, so the row
// with second coordinate N comes first.

/// One line per lattice row, one digit per point (space separated when r > 9).
std::string render_ascii(const Coloring& chi);
/// Binary P6 image, `cell` pixels per point.
std::string render_ppm(const Coloring& chi, int cell = 16);
std::string render_svg(const Coloring& chi, int cell = 16);

} // namespace schur
