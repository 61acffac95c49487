#pragma once

// Raster and vector pictures of labelings on Z and Z^2 windows. One cell per
// carrier point; the first axis runs left to right and the second bottom to
// top. A Z window is drawn as a single strip.

#include "sepshift/window.hpp"

#include <string>
#include <vector>

namespace sepshift {

/// Default fills: light blue, light red, then further light tints.
const std::vector<std::string> & default_palette();

struct RenderOptions {
    int cell = 16;                    // pixels per point
    std::vector<std::string> palette; // empty: default_palette()
    bool outline = true;              // thin cell borders in the SVG
};

/// Throws Unsupported unless the window is over Z or Z^2.
std::string render_svg(const Labeling & labeling, const RenderOptions & options = {});
/// Binary PGM; color c is drawn with gray level 255 - c·floor(255/(k-1)) (white for k = 1).
std::string render_pgm(const Labeling & labeling, const RenderOptions & options = {});

} // namespace sepshift
