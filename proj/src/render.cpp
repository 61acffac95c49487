#include "sepshift/render.hpp"

#include "sepshift/error.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace sepshift {

const std::vector<std::string> & default_palette()
{
    static const std::vector<std::string> palette{
        "#d9d9ff", "#ffd9d9", "#d9ffd9", "#ffffd9", "#ffd9ff", "#d9ffff", "#ece0d0", "#e0e0e0"};
    return palette;
}

namespace {

struct Grid {
    std::int64_t x0 = 0, y0 = 0, width = 1, height = 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> cells; // (column, row from top) per carrier point
};

Grid layout(const Window & w)
{
    const auto & G = w.group();
    if (!G.is_zd() || G.dim() > 2)
        fail(ErrorKind::Unsupported, "rendering supports windows over Z and Z^2 only");
    const bool flat = G.dim() == 1;
    Grid g;
    std::int64_t xmin = std::numeric_limits<std::int64_t>::max(), xmax = std::numeric_limits<std::int64_t>::min();
    std::int64_t ymin = 0, ymax = 0;
    if (!flat) {
        ymin = xmin;
        ymax = xmax;
    }
    for (const auto & p : w.carrier()) {
        auto c = p.coords();
        xmin = std::min(xmin, c[0]);
        xmax = std::max(xmax, c[0]);
        if (!flat) {
            ymin = std::min(ymin, c[1]);
            ymax = std::max(ymax, c[1]);
        }
    }
    g.x0 = xmin;
    g.y0 = ymin;
    g.width = xmax - xmin + 1;
    g.height = ymax - ymin + 1;
    for (const auto & p : w.carrier()) {
        auto c = p.coords();
        auto y = flat ? 0 : c[1];
        g.cells.emplace_back(c[0] - xmin, ymax - y);
    }
    return g;
}

} // namespace

std::string render_svg(const Labeling & labeling, const RenderOptions & options)
{
    labeling.validate();
    if (options.cell < 1)
        fail(ErrorKind::Usage, "cell size must be positive");
    const auto & palette = options.palette.empty() ? default_palette() : options.palette;
    if (static_cast<std::size_t>(labeling.k) > palette.size())
        fail(ErrorKind::Usage,
            "palette has " + std::to_string(palette.size()) + " colors for an alphabet of " + std::to_string(labeling.k));
    auto grid = layout(*labeling.window);
    const auto c = options.cell;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << grid.width * c << "\" height=\"" << grid.height * c
        << "\" viewBox=\"0 0 " << grid.width * c << ' ' << grid.height * c << "\">\n";
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        const auto [col, row] = grid.cells[i];
        out << "<rect x=\"" << col * c << "\" y=\"" << row * c << "\" width=\"" << c << "\" height=\"" << c
            << "\" fill=\"" << palette[static_cast<std::size_t>(labeling.values[i])] << '"';
        if (options.outline)
            out << " stroke=\"#808080\" stroke-width=\"0.5\"";
        out << "/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_pgm(const Labeling & labeling, const RenderOptions & options)
{
    labeling.validate();
    if (options.cell < 1)
        fail(ErrorKind::Usage, "cell size must be positive");
    auto grid = layout(*labeling.window);
    const auto c = options.cell;
    const auto w = grid.width * c, h = grid.height * c;
    std::string pixels(static_cast<std::size_t>(w * h), static_cast<char>(255));
    const int step = labeling.k > 1 ? 255 / (labeling.k - 1) : 0;
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        const auto [col, row] = grid.cells[i];
        const auto gray = static_cast<char>(255 - labeling.values[i] * step);
        for (std::int64_t dy = 0; dy < c; ++dy)
            std::fill_n(pixels.begin() + static_cast<std::ptrdiff_t>((row * c + dy) * w + col * c), c, gray);
    }
    std::ostringstream out;
    out << "P5\n" << w << ' ' << h << "\n255\n" << pixels;
    return out.str();
}

} // namespace sepshift
