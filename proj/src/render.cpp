#include "schur/render.hpp"

#include <sstream>

namespace schur {

namespace {

int rows(const Coloring& chi)
{
    if (chi.d() > 2)
        throw RenderError("cannot render a " + std::to_string(chi.d()) + "-dimensional coloring; only d <= 2");
    return chi.d() == 1 ? 1 : chi.n();
}

// Color at grid cell (column x, row from top).
int cell_color(const Coloring& chi, int x, int top_row)
{
    if (chi.d() == 1)
        return chi.at(Point{x});
    return chi.at(Point{x, chi.n() - top_row});
}

void require_palette(const Coloring& chi)
{
    if (chi.r() > static_cast<int>(render_palette.size()))
        throw RenderError("palette has " + std::to_string(render_palette.size()) + " colors but r = " +
                          std::to_string(chi.r()) + "; use the ascii format");
}

} // namespace

std::string render_ascii(const Coloring& chi)
{
    const int h = rows(chi);
    std::string out;
    for (int row = 0; row < h; ++row) {
        for (int x = 1; x <= chi.n(); ++x) {
            if (chi.r() > 9 && x > 1)
                out += ' ';
            out += std::to_string(cell_color(chi, x, row));
        }
        out += '\n';
    }
    return out;
}

std::string render_ppm(const Coloring& chi, int cell)
{
    require_palette(chi);
    if (cell < 1)
        throw RenderError("cell size must be >= 1");
    const int h = rows(chi);
    const int width = chi.n() * cell;
    const int height = h * cell;
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(width) * height * 3);
    for (int py = 0; py < height; ++py)
        for (int px = 0; px < width; ++px) {
            const Rgb c = render_palette[cell_color(chi, px / cell + 1, py / cell) - 1];
            out += static_cast<char>(c.r);
            out += static_cast<char>(c.g);
            out += static_cast<char>(c.b);
        }
    return out;
}

std::string render_svg(const Coloring& chi, int cell)
{
    require_palette(chi);
    if (cell < 1)
        throw RenderError("cell size must be >= 1");
    const int h = rows(chi);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chi.n() * cell << "\" height=\"" << h * cell
       << "\" shape-rendering=\"crispEdges\">\n";
    char hex[8];
    for (int row = 0; row < h; ++row)
        for (int x = 1; x <= chi.n(); ++x) {
            const int c = cell_color(chi, x, row);
            const Rgb rgb = render_palette[c - 1];
            std::snprintf(hex, sizeof hex, "#%02x%02x%02x", rgb.r, rgb.g, rgb.b);
            os << "<rect x=\"" << (x - 1) * cell << "\" y=\"" << row * cell << "\" width=\"" << cell
               << "\" height=\"" << cell << "\" fill=\"" << hex << "\" data-color=\"" << c << "\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

} // namespace schur
